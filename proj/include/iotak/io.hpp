#pragma once

// JSON form of iota_K-complexes and invariant reports.
//
//   {"name": ..., "generators": [{"name", "gr_u", "gr_v"}, ...],
//    "differential": [{"from", "to", "mono": [[i, j], ...]}, ...],
//    "iota": [...]}
//
// Entries are sorted by source generator, then by target generator, so the
// output is byte-deterministic.

#include "iotak/invariants.hpp"
#include "iotak/iota.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace iotak {

class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

namespace detail {

inline Json entries_to_json(const PolyMatrix &m, const FreeComplex &c) {
    Json out = Json::array();
    for (std::size_t x = 0; x < m.cols(); ++x)
        for (const auto &[y, p] : m.column(x)) {
            Json mono = Json::array();
            for (const auto &t : p.terms())
                mono.push_back({t.u, t.v});
            out.push_back({{"from", c[x].name}, {"to", c[y].name}, {"mono", std::move(mono)}});
        }
    return out;
}

template <class T> T require(const Json &j, const char *key, const std::string &where) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(where + ": missing \"" + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(where + ": bad \"" + key + "\": " + e.what());
    }
}

inline int require_int(const Json &j, const char *key, const std::string &where) {
    const Json &v = j.contains(key) ? j.at(key) : Json();
    if (!v.is_number_integer())
        throw ParseError(where + ": \"" + key + "\" must be an integer");
    const auto n = v.get<long long>();
    if (n < std::numeric_limits<int>::min() || n > std::numeric_limits<int>::max())
        throw ParseError(where + ": \"" + key + "\" out of range");
    return static_cast<int>(n);
}

inline LaurentPoly parse_mono(const Json &mono, const std::string &where) {
    if (!mono.is_array())
        throw ParseError(where + ": \"mono\" must be an array");
    std::vector<Monomial> terms;
    for (const auto &m : mono) {
        if (!m.is_array() || m.size() != 2 || !m[0].is_number_integer() || !m[1].is_number_integer())
            throw ParseError(where + ": monomials are [i, j] integer pairs");
        const auto i = m[0].get<long long>();
        const auto j = m[1].get<long long>();
        constexpr long long bound = 1'000'000;
        if (i < -bound || i > bound || j < -bound || j > bound)
            throw ParseError(where + ": exponent out of range");
        terms.push_back({static_cast<Exponent>(i), static_cast<Exponent>(j)});
    }
    auto sorted = terms;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ParseError(where + ": repeated monomial");
    return LaurentPoly::from_terms(std::move(terms));
}

inline PolyMatrix parse_entries(const Json &j, const char *key, const std::unordered_map<std::string, std::size_t> &index,
                                std::size_t n) {
    PolyMatrix m(n, n);
    if (!j.contains(key))
        throw ParseError(std::string("missing \"") + key + "\"");
    const Json &arr = j.at(key);
    if (!arr.is_array())
        throw ParseError(std::string("\"") + key + "\" must be an array");
    for (std::size_t e = 0; e < arr.size(); ++e) {
        const std::string where = std::string(key) + "[" + std::to_string(e) + "]";
        const auto from = require<std::string>(arr[e], "from", where);
        const auto to = require<std::string>(arr[e], "to", where);
        const auto fi = index.find(from);
        const auto ti = index.find(to);
        if (fi == index.end())
            throw ParseError(where + ": unknown generator \"" + from + "\"");
        if (ti == index.end())
            throw ParseError(where + ": unknown generator \"" + to + "\"");
        if (!arr[e].contains("mono"))
            throw ParseError(where + ": missing \"mono\"");
        if (!m.at(ti->second, fi->second).is_zero())
            throw ParseError(where + ": repeated entry " + from + " -> " + to);
        m.set(ti->second, fi->second, parse_mono(arr[e].at("mono"), where));
    }
    return m;
}

} // namespace detail

inline Json to_json(const IotaComplex &ic) {
    const auto &c = ic.complex;
    Json gens = Json::array();
    for (const auto &b : c.basis())
        gens.push_back({{"name", b.name}, {"gr_u", b.gr_u}, {"gr_v", b.gr_v}});
    Json j;
    j["name"] = ic.name;
    j["generators"] = std::move(gens);
    j["differential"] = detail::entries_to_json(c.diff(), c);
    j["iota"] = detail::entries_to_json(ic.iota.matrix, c);
    return j;
}

/// Structural parse only; run verify_iota_complex for the axioms.
inline IotaComplex iota_complex_from_json(const Json &j) {
    if (!j.is_object())
        throw ParseError("complex file must hold a JSON object");
    IotaComplex ic;
    ic.name = detail::require<std::string>(j, "name", "complex");
    if (!j.contains("generators") || !j.at("generators").is_array())
        throw ParseError("\"generators\" must be an array");
    std::vector<BasisElement> basis;
    std::unordered_map<std::string, std::size_t> index;
    for (const auto &g : j.at("generators")) {
        const std::string where = "generators[" + std::to_string(basis.size()) + "]";
        BasisElement b{detail::require<std::string>(g, "name", where), detail::require_int(g, "gr_u", where),
                       detail::require_int(g, "gr_v", where)};
        if ((b.gr_u - b.gr_v) % 2 != 0)
            throw ParseError(where + ": gr_u and gr_v must have the same parity");
        if (!index.emplace(b.name, basis.size()).second)
            throw ParseError(where + ": duplicate generator \"" + b.name + "\"");
        basis.push_back(std::move(b));
    }
    const std::size_t n = basis.size();
    PolyMatrix diff = detail::parse_entries(j, "differential", index, n);
    PolyMatrix iota = detail::parse_entries(j, "iota", index, n);
    ic.complex = FreeComplex(std::move(basis), std::move(diff));
    ic.iota = {std::move(iota), Variance::skew, {}};
    return ic;
}

inline std::string dump(const Json &j) { return j.dump(2) + "\n"; }

/// One generator or entry per line.
inline std::string dump_complex(const Json &j) {
    std::string out = "{\n";
    bool first_key = true;
    for (const auto &[key, value] : j.items()) {
        out += first_key ? "" : ",\n";
        first_key = false;
        out += "  " + Json(key).dump() + ": ";
        if (!value.is_array()) {
            out += value.dump();
            continue;
        }
        if (value.empty()) {
            out += "[]";
            continue;
        }
        out += "[\n";
        for (std::size_t i = 0; i < value.size(); ++i)
            out += "    " + value[i].dump() + (i + 1 < value.size() ? ",\n" : "\n");
        out += "  ]";
    }
    return out + "\n}\n";
}

inline IotaComplex parse_iota_complex(const std::string &text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return iota_complex_from_json(j);
}

inline IotaComplex read_iota_complex(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_iota_complex(ss.str());
}

inline void write_iota_complex(const IotaComplex &ic, const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << dump_complex(to_json(ic));
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

inline Json to_json(const InvariantReport &r) {
    Json j;
    j["d"] = r.d;
    j["d_bar"] = r.d_bar;
    j["d_under"] = r.d_under;
    j["V0"] = r.V0;
    j["V0_bar"] = r.V0_bar;
    j["V0_under"] = r.V0_under;
    return j;
}

} // namespace iotak
