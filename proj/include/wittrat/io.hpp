#pragma once

// JSON and CSV renderings of the library's result types. Integers that fit in
// 64 bits are JSON numbers; larger ones are decimal strings; non-integral
// rationals are "a/b" strings.

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wittrat/explicit_formula.hpp"
#include "wittrat/integer.hpp"
#include "wittrat/orbit.hpp"
#include "wittrat/reciprocity.hpp"
#include "wittrat/ring.hpp"
#include "wittrat/witt.hpp"
#include "wittrat/zeta.hpp"

namespace wittrat::io {

using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal form of a double.
inline std::string format_double(double v) {
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

inline Json json_value(const Integer& v) {
    if (fits_int64(v)) return v.convert_to<std::int64_t>();
    return to_string(v);
}

inline Json json_value(const Rational& v) {
    if (denominator(v) == 1) return json_value(numerator(v));
    return to_string(numerator(v)) + "/" + to_string(denominator(v));
}

inline Json json_value(const PrimeFieldElem& v) { return v.value(); }

template <CoefficientRing R>
Json json_coeffs(const Polynomial<R>& p) {
    Json arr = Json::array();
    for (const auto& c : p.coeffs()) arr.push_back(json_value(c));
    return arr;
}

template <CoefficientRing R>
Json json_witt(const WittVector<R>& f) {
    Json j;
    j["num"] = json_coeffs(f.num());
    j["den"] = json_coeffs(f.den());
    j["ring"] = f.ring().name();
    j["text"] = to_string(f);
    return j;
}

template <CoefficientRing R>
Json json_matrix(const Matrix<R>& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.size(); ++j) row.push_back(json_value(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <CoefficientRing R>
Json json_ghost(const GhostSequence<R>& g) {
    Json j;
    j["order"] = g.order();
    Json vals = Json::array();
    for (const auto& v : g.values) vals.push_back(json_value(v));
    j["values"] = std::move(vals);
    return j;
}

inline Json json_packet(const PacketSummary& s) {
    Json j;
    j["p"] = s.p;
    j["n"] = s.n;
    j["m"] = s.m;
    j["faithful_count"] = s.faithful_count;
    j["orbit_count"] = s.orbit_count;
    j["orbit_length"] = s.orbit_length;
    j["suspension_length"] = s.suspension_length;
    j["orbits"] = s.orbits;
    j["orbits_truncated"] = s.orbits_truncated;
    return j;
}

inline Json json_point(const FiniteLevelPoint& pt) {
    Json j;
    j["p"] = pt.p;
    j["n"] = pt.n;
    j["m"] = pt.m;
    j["a"] = pt.a;
    j["faithful"] = pt.faithful();
    return j;
}

inline Json json_complex(std::complex<double> z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

inline Json json_ledger(const ClosedPointLedger& l) {
    Json j;
    j["source"] = l.source.describe();
    j["bound"] = l.bound;
    Json entries = Json::array();
    for (const auto& e : l.entries) entries.push_back({{"norm", e.norm}, {"length", e.length}, {"multiplicity", e.multiplicity}});
    j["entries"] = std::move(entries);
    return j;
}

inline Json json_euler_ruelle(const EulerRuelleReport& r) {
    Json j;
    j["s"] = r.s;
    j["euler"] = r.euler;
    j["ruelle"] = r.ruelle;
    j["ulps"] = ulp_distance(r.euler, r.ruelle);
    j["reference"] = r.reference ? Json(*r.reference) : Json(nullptr);
    j["gap"] = r.gap ? Json(*r.gap) : Json(nullptr);
    return j;
}

inline Json json_explicit_formula(const ExplicitFormulaReport& r) {
    Json j;
    Json bumps = Json::array();
    for (const auto& b : r.phi.bumps) bumps.push_back({{"c", b.c}, {"r", b.r}, {"weight", b.weight}});
    j["test_function"] = {{"kind", "bump"}, {"bumps", std::move(bumps)}};
    j["max_zeros"] = r.k;
    j["prime_bound"] = r.prime_bound;
    j["zero_side"] = r.zeros.value;
    j["zero_side_imag_residue"] = r.zeros.imag_residue;
    j["prime_sum"] = r.primes.prime_sum;
    j["archimedean"] = r.primes.archimedean;
    j["prime_side"] = r.primes.value;
    j["defect"] = r.defect;
    Json conv = Json::array();
    for (const auto& row : r.convergence) conv.push_back({{"K", row.k}, {"zero_side", row.zero_side}, {"defect", row.defect}});
    j["convergence"] = std::move(conv);
    return j;
}

inline Json json_linking(const LinkingEntry& e) {
    return {{"p", e.p},           {"l", e.l},           {"p_mod4", e.p_mod4},          {"l_mod4", e.l_mod4},
            {"sym_pl", e.symbol_pl}, {"sym_lp", e.symbol_lp}, {"relation_ok", e.relation_ok}};
}

inline Json json_redei(const RedeiResult& r) {
    Json j;
    j["p"] = r.p;
    j["l"] = r.l;
    j["q"] = r.q;
    j["symbol_pl"] = r.symbol_pl;
    j["symbol_pq"] = r.symbol_pq;
    j["symbol_lq"] = r.symbol_lq;
    j["solution"] = {{"x", r.solution.x}, {"y", r.solution.y}, {"z", r.solution.z}};
    j["roots"] = {r.roots[0], r.roots[1]};
    j["solutions_checked"] = r.solutions_checked;
    j["search_bound"] = r.search_bound;
    j["symbol"] = r.symbol;
    return j;
}

/// CSV field, quoted when needed.
inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

/// Parses a variety description {p, vars, equations: [[coeff, [exps]], ...]}; a
/// list of such term lists gives several equations.
inline AffineVariety variety_from_json(const Json& j) {
    try {
        const auto p = j.at("p").get<std::uint64_t>();
        const auto vars = j.at("vars").get<unsigned>();
        const auto& eqs = j.at("equations");
        if (!eqs.is_array()) throw math_error("equations must be an array");
        using Term = std::pair<std::int64_t, std::vector<unsigned>>;
        std::vector<std::vector<Term>> out;
        auto parse_equation = [&](const Json& eq) {
            std::vector<Term> terms;
            for (const auto& t : eq) {
                if (!t.is_array() || t.size() != 2) throw math_error("term must be [coeff, [exponents]]");
                terms.emplace_back(t[0].get<std::int64_t>(), t[1].get<std::vector<unsigned>>());
            }
            return terms;
        };
        // a single equation is a list of terms, each [number, [...]]
        const bool single = !eqs.empty() && eqs[0].is_array() && eqs[0].size() == 2 && eqs[0][0].is_number();
        if (single) {
            out.push_back(parse_equation(eqs));
        } else {
            for (const auto& eq : eqs) out.push_back(parse_equation(eq));
        }
        return AffineVariety::make(p, vars, out);
    } catch (const nlohmann::json::exception& e) {
        throw math_error(std::string("invalid variety description: ") + e.what());
    }
}

}  // namespace wittrat::io
