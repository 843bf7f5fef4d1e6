#pragma once

#include <string>
#include <utility>
#include <vector>

namespace gwcache::cli {

struct SvgSeries {
    std::string name;
    std::string color;
    std::vector<std::pair<double, double>> pts;  // (x, y), already in data units
};

// Minimal self-contained line chart, both axes anchored at zero. CSV stays the
// canonical output; this exists so a sweep can be eyeballed without tooling.
std::string render_chart(const std::vector<SvgSeries>& series, const std::string& x_label,
                         const std::string& y_label);

}  // namespace gwcache::cli
