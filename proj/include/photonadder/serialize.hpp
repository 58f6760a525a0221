#pragma once

// JSON and CSV output.  Numbers serialize in scientific notation with 17
// significant digits so values round-trip exactly through text.
//
// FockVector JSON schema:
//   { "cutoff": n, "re": [...], "im": [...], "tail_bound": t }

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fock.hpp"

namespace photonadder::serialize {

using fock::FockVector;
using json = nlohmann::json;

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

inline json to_json(const FockVector& s) {
    json j;
    j["cutoff"] = s.cutoff();
    j["tail_bound"] = s.tail_bound;
    auto& re = j["re"] = json::array();
    auto& im = j["im"] = json::array();
    for (const auto& a : s.amps) {
        re.push_back(a.real());
        im.push_back(a.imag());
    }
    return j;
}

inline FockVector fockvector_from_json(const json& j) {
    if (!j.contains("re") || !j.contains("im"))
        throw std::invalid_argument("FockVector JSON: missing re/im arrays");
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (re.size() != im.size() || re.empty())
        throw std::invalid_argument("FockVector JSON: re/im size mismatch or empty");
    if (j.contains("cutoff") && j.at("cutoff").get<std::size_t>() + 1 != re.size())
        throw std::invalid_argument("FockVector JSON: cutoff does not match array length");
    std::vector<std::complex<double>> amps(re.size());
    for (std::size_t n = 0; n < amps.size(); ++n)
        amps[n] = {re.at(n).get<double>(), im.at(n).get<double>()};
    const double tail = j.value("tail_bound", 0.0);
    return FockVector(std::move(amps), tail);
}

inline FockVector load_fockvector(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return fockvector_from_json(j);
}

// CSV table: header row, then one row per record.  Columns beyond the first
// come from `rows`, whose entries must all have the same length as `header`.
inline void write_csv(std::ostream& os, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
    for (std::size_t c = 0; c < header.size(); ++c)
        os << (c ? "," : "") << header[c];
    os << '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw std::invalid_argument("write_csv: row width mismatch");
        for (std::size_t c = 0; c < row.size(); ++c)
            os << (c ? "," : "") << fmt(row[c]);
        os << '\n';
    }
}

} // namespace photonadder::serialize
