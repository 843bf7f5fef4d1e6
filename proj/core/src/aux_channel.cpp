#include "gwcache/aux_channel.hpp"

#include <cmath>
#include <string>

namespace gwcache {

AuxChannel::AuxChannel(int nu, int cols, std::vector<double> w)
    : nu_(nu), cols_(cols), w_(std::move(w)) {
    if (nu_ < 1) throw ValidationError("AuxChannel: nu must be >= 1");
    if (cols_ < 1) throw ValidationError("AuxChannel: column count must be >= 1");
    if (w_.size() != static_cast<size_t>(nu_) * cols_)
        throw ValidationError("AuxChannel: expected " + std::to_string(nu_ * cols_) +
                              " entries, got " + std::to_string(w_.size()));
    for (int c = 0; c < cols_; ++c) {
        double s = 0;
        for (int u = 0; u < nu_; ++u) {
            double& v = w_[static_cast<size_t>(u) * cols_ + c];
            if (!(v >= -1e-12))
                throw ValidationError("AuxChannel: negative entry in column " + std::to_string(c));
            if (v < 0) v = 0;
            s += v;
        }
        if (std::abs(s - 1.0) > 1e-9)
            throw ValidationError("AuxChannel: column " + std::to_string(c) + " mass " +
                                  std::to_string(s) + ", expected 1");
        if (std::abs(s - 1.0) > 1e-15)
            for (int u = 0; u < nu_; ++u) w_[static_cast<size_t>(u) * cols_ + c] /= s;
    }
}

AuxChannel AuxChannel::constant(int cols) {
    return AuxChannel(1, cols, std::vector<double>(cols, 1.0));
}

AuxChannel AuxChannel::identity_pair(int cols) {
    std::vector<double> w(static_cast<size_t>(cols) * cols, 0.0);
    for (int c = 0; c < cols; ++c) w[static_cast<size_t>(c) * cols + c] = 1.0;
    return AuxChannel(cols, cols, std::move(w));
}

}  // namespace gwcache
