#include "gwcache/json_io.hpp"

#include <json.hpp>

#include "gwcache/types.hpp"

namespace gwcache {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw ValidationError("malformed json");
    return doc;
}

// Nested array of numbers -> rows, all required to share one width.
std::vector<std::vector<double>> rows_of(const json& arr, const char* what) {
    if (!arr.is_array() || arr.empty())
        throw ValidationError(std::string(what) + " must be a nonempty array of rows");
    std::vector<std::vector<double>> rows;
    for (const auto& r : arr) {
        if (!r.is_array() || r.empty())
            throw ValidationError(std::string(what) + " rows must be nonempty arrays");
        std::vector<double> row;
        for (const auto& v : r) {
            if (!v.is_number()) throw ValidationError(std::string(what) + " entries must be numbers");
            row.push_back(v.get<double>());
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw ValidationError(std::string(what) + " rows must share one length");
        rows.push_back(std::move(row));
    }
    return rows;
}

int int_field(const json& doc, const char* key) {
    if (!doc.contains(key) || !doc[key].is_number_integer())
        throw ValidationError(std::string("missing integer field \"") + key + "\"");
    return doc[key].get<int>();
}

}  // namespace

std::string pmf_to_json(const JointPmf2& j) {
    json rows = json::array();
    for (int x1 = 0; x1 < j.n1(); ++x1) {
        json row = json::array();
        for (int x2 = 0; x2 < j.n2(); ++x2) row.push_back(j.at(x1, x2));
        rows.push_back(std::move(row));
    }
    json doc{{"n1", j.n1()}, {"n2", j.n2()}, {"p", std::move(rows)}};
    return doc.dump(2) + "\n";
}

JointPmf2 pmf_from_json(const std::string& text) {
    json doc = parse(text);
    if (!doc.is_object()) throw ValidationError("pmf json must be an object");
    int n1 = int_field(doc, "n1"), n2 = int_field(doc, "n2");
    if (!doc.contains("p")) throw ValidationError("pmf json needs a \"p\" array");
    auto rows = rows_of(doc["p"], "\"p\"");
    if (static_cast<int>(rows.size()) != n1 || static_cast<int>(rows.front().size()) != n2)
        throw ValidationError("\"p\" shape disagrees with n1 x n2");
    std::vector<double> flat;
    flat.reserve(static_cast<size_t>(n1) * n2);
    for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    return JointPmf2(n1, n2, std::move(flat));
}

std::string aux_to_json(const AuxChannel& a) {
    json rows = json::array();
    for (int u = 0; u < a.nu(); ++u) {
        json row = json::array();
        for (int c = 0; c < a.cols(); ++c) row.push_back(a.p(u, c));
        rows.push_back(std::move(row));
    }
    json doc{{"nu", a.nu()}, {"w", std::move(rows)}};
    return doc.dump(2) + "\n";
}

AuxChannel aux_from_json(const std::string& text) {
    json doc = parse(text);
    if (!doc.is_object()) throw ValidationError("aux json must be an object");
    int nu = int_field(doc, "nu");
    if (!doc.contains("w")) throw ValidationError("aux json needs a \"w\" array");
    auto rows = rows_of(doc["w"], "\"w\"");
    if (static_cast<int>(rows.size()) != nu)
        throw ValidationError("\"w\" must have nu rows");
    int cols = static_cast<int>(rows.front().size());
    std::vector<double> flat;
    flat.reserve(static_cast<size_t>(nu) * cols);
    for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    return AuxChannel(nu, cols, std::move(flat));
}

}  // namespace gwcache
