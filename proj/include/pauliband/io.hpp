// Copyright 2026 The pauliband Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

/// @file io.hpp
/// JSON and CSV forms of band matrices and decompositions.
///
/// A band matrix is {"n": 3, "d": 1, "bands": {"0": [...], "1": [...], "-1": [...]}}
/// where band k holds the 2^n - |k| entries (i, i + k). Missing bands are zero.

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "pauliband/band_matrix.hpp"
#include "pauliband/decompose.hpp"

namespace pauliband {

using Json = nlohmann::ordered_json;

/// Input that could not be parsed; what() names the field or position.
class ParseError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline int json_int_field(const Json &j, const char *name) {
    if (!j.contains(name)) throw ParseError(std::string("band json: missing field '") + name + "'");
    const auto &v = j.at(name);
    if (!v.is_number_integer()) throw ParseError(std::string("band json: field '") + name + "' must be an integer");
    return v.get<int>();
}

}  // namespace detail

inline BandMatrix band_matrix_from_json(const Json &j) {
    if (!j.is_object()) throw ParseError("band json: top level must be an object");
    const int n = detail::json_int_field(j, "n");
    const int d = detail::json_int_field(j, "d");
    BandMatrix b;
    try {
        b = BandMatrix(n, d);
    } catch (const std::invalid_argument &e) {
        throw ParseError(std::string("band json: ") + e.what());
    }
    if (!j.contains("bands")) return b;
    const auto &bands = j.at("bands");
    if (!bands.is_object()) throw ParseError("band json: field 'bands' must be an object");
    for (const auto &[key, vals] : bands.items()) {
        const std::string where = "band json: field 'bands." + key + "'";
        int k = 0;
        try {
            std::size_t used = 0;
            k = std::stoi(key, &used);
            if (used != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception &) {
            throw ParseError(where + ": key is not an integer offset");
        }
        if (std::abs(k) > d) throw ParseError(where + ": offset outside bandwidth " + std::to_string(d));
        if (!vals.is_array()) throw ParseError(where + ": expected an array");
        const std::size_t want = static_cast<std::size_t>(b.size() - std::abs(k));
        if (vals.size() != want) {
            throw ParseError(where + ": expected " + std::to_string(want) + " entries, got " +
                             std::to_string(vals.size()));
        }
        std::vector<double> v(want);
        for (std::size_t i = 0; i < want; ++i) {
            if (!vals[i].is_number()) throw ParseError(where + "[" + std::to_string(i) + "]: expected a number");
            v[i] = vals[i].get<double>();
            if (!std::isfinite(v[i])) throw ParseError(where + "[" + std::to_string(i) + "]: not finite");
        }
        b.set_diagonal(k, std::move(v));
    }
    return b;
}

inline BandMatrix parse_band_matrix(const std::string &text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(std::string("band json: ") + e.what());
    }
    return band_matrix_from_json(j);
}

inline Json band_matrix_to_json(const BandMatrix &b) {
    Json j;
    j["n"] = b.qubits();
    j["d"] = b.bandwidth();
    Json bands = Json::object();
    for (int k = -b.bandwidth(); k <= b.bandwidth(); ++k) bands[std::to_string(k)] = b.diagonal(k);
    j["bands"] = bands;
    return j;
}

inline Json term_to_json(const PauliTerm &t) {
    return Json{{"x", t.x.to_string()},
                {"z", t.z.to_string()},
                {"pauli", pauli_string(t.x, t.z)},
                {"weight", t.weight.real()},
                {"weight_imag", t.weight.imag()},
                {"parity", y_parity(t.x, t.z)}};
}

inline Json decomposition_to_json(const Decomposition &dec) {
    Json j;
    j["num_qubits"] = dec.num_qubits;
    j["source_qubits"] = dec.source_qubits;
    j["bandwidth"] = dec.bandwidth;
    j["symmetrized"] = dec.symmetrized;
    j["prune_tolerance"] = dec.prune_tolerance;
    j["summary"] = Json{{"num_sets", dec.sets.size()},
                        {"num_terms", dec.num_terms()},
                        {"num_subsets", dec.num_subsets()}};
    Json sets = Json::array();
    for (const auto &s : dec.sets) {
        Json js;
        js["x"] = s.x.to_string();
        js["even_terms"] = s.even_z.size();
        js["odd_terms"] = s.odd_z.size();
        Json terms = Json::array();
        for (const auto &t : s.terms) terms.push_back(term_to_json(t));
        js["terms"] = std::move(terms);
        sets.push_back(std::move(js));
    }
    j["sets"] = std::move(sets);
    return j;
}

namespace detail {

inline std::string csv_double(double v) {
    if (std::isnan(v)) return "NA";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10e", v);
    return buf;
}

}  // namespace detail

/// One row per term: set,x,z,pauli,weight,weight_imag,parity.
inline std::string decomposition_to_csv(const Decomposition &dec) {
    std::ostringstream os;
    os << "set,x,z,pauli,weight,weight_imag,parity\n";
    for (std::size_t s = 0; s < dec.sets.size(); ++s) {
        for (const auto &t : dec.sets[s].terms) {
            os << s << ',' << t.x.to_string() << ',' << t.z.to_string() << ',' << pauli_string(t.x, t.z) << ','
               << detail::csv_double(t.weight.real()) << ',' << detail::csv_double(t.weight.imag()) << ','
               << y_parity(t.x, t.z) << '\n';
        }
    }
    return os.str();
}

}  // namespace pauliband
