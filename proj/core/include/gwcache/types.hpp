#pragma once

#include <stdexcept>
#include <string>

namespace gwcache {

// Rates and entropies are measured in bits (log base 2) throughout.
using Bits = double;

// Thrown when an argument violates a documented precondition. CLI maps this to exit code 2.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a request is well formed but cannot be satisfied (e.g. no feasible
// point found under the requested constraint set). CLI maps this to exit code 3.
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RateTriplet {
    Bits r0 = 0;  // shared description rate
    Bits r1 = 0;  // private rate, receiver 1
    Bits r2 = 0;  // private rate, receiver 2
};

struct Interval {
    double lo = 0;
    double hi = 0;

    bool contains(double x, double tol = 0) const { return x >= lo - tol && x <= hi + tol; }
    double width() const { return hi - lo; }
};

}  // namespace gwcache
