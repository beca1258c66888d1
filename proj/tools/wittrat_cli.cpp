// wittrat: command-line front end for rational Witt vectors, zeta functions,
// orbit packets, the explicit formula and residue symbols.

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "wittrat/explicit_formula.hpp"
#include "wittrat/io.hpp"
#include "wittrat/orbit.hpp"
#include "wittrat/parse.hpp"
#include "wittrat/reciprocity.hpp"
#include "wittrat/witt.hpp"
#include "wittrat/zeta.hpp"

namespace {

using namespace wittrat;
using io::Json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

struct Report {
    Json body = Json::object();
    std::vector<std::string> plain;
    std::optional<Table> table;
};

enum class Format { plain, json, csv };

std::string scalar_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return io::format_double(v.get<double>());
    if (v.is_null()) return "null";
    return v.dump();
}

std::string flat_text(const Json& v) {
    if (v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_primitive(); })) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + scalar_text(v[i]);
        return s;
    }
    if (v.is_primitive()) return scalar_text(v);
    return v.dump();
}

std::string render(const Json& config, const Report& r, Format f) {
    std::ostringstream out;
    switch (f) {
        case Format::json: {
            Json doc;
            doc["config"] = config;
            for (const auto& [k, v] : r.body.items()) doc[k] = v;
            out << doc.dump(2) << "\n";
            break;
        }
        case Format::plain:
            for (const auto& [k, v] : config.items()) out << "# " << k << ": " << flat_text(v) << "\n";
            for (const auto& line : r.plain) out << line << "\n";
            break;
        case Format::csv:
            for (const auto& [k, v] : config.items()) out << "# " << k << "=" << flat_text(v) << "\n";
            if (r.table) {
                for (std::size_t i = 0; i < r.table->columns.size(); ++i) out << (i ? "," : "") << r.table->columns[i];
                out << "\n";
                for (const auto& row : r.table->rows) {
                    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << io::csv_field(row[i]);
                    out << "\n";
                }
            } else {
                out << "key,value\n";
                for (const auto& [k, v] : r.body.items()) out << io::csv_field(k) << "," << io::csv_field(flat_text(v)) << "\n";
            }
            break;
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Argument helpers.

Rational parse_rational_literal(const std::string& s) {
    static const std::regex pattern(R"(\s*(-?\d+)(\s*/\s*(\d+))?\s*)");
    std::smatch m;
    if (!std::regex_match(s, m, pattern)) throw UsageError("expected an integer or a/b, got '" + s + "'");
    const Integer n(m[1].str());
    const Integer d(m[3].matched ? m[3].str() : std::string("1"));
    if (d == 0) throw UsageError("zero denominator in '" + s + "'");
    return Rational(n, d);
}

template <class Fn>
Report with_ring(const std::string& ring, Fn&& fn) {
    if (ring == "Z") return fn(Integers{});
    if (ring == "Q") return fn(Rationals{});
    static const std::regex fp(R"((?:Fp:|F_?)(\d+))");
    std::smatch m;
    if (std::regex_match(ring, m, fp)) return fn(PrimeField(std::stoull(m[1].str())));
    throw UsageError("unknown ring '" + ring + "' (use Z, Q or Fp:<prime>)");
}

template <CoefficientRing R>
std::string value_text(const typename R::value_type& v) {
    return scalar_text(io::json_value(v));
}

template <CoefficientRing R>
Report witt_report(const WittVector<R>& f) {
    Report r;
    r.body = io::json_witt(f);
    r.plain.push_back(to_string(f));
    return r;
}

std::string complex_text(std::complex<double> z) {
    const double im = z.imag();
    return io::format_double(z.real()) + (std::signbit(im) ? " - " : " + ") + io::format_double(std::abs(im)) + "i";
}

LedgerSource parse_source(const std::string& s) {
    static const std::regex quad(R"(quadratic:(-?\d+))");
    static const std::regex p1(R"(p1:(\d+))");
    std::smatch m;
    if (s == "specz" || s == "spec-z" || s == "Z") return LedgerSource::spec_z();
    if (std::regex_match(s, m, quad)) return LedgerSource::quadratic(std::stoll(m[1].str()));
    if (std::regex_match(s, m, p1)) return LedgerSource::projective_line(std::stoull(m[1].str()));
    throw UsageError("unknown source '" + s + "' (use specz, quadratic:<d> or p1:<q>)");
}

// ---------------------------------------------------------------------------

struct Cli {
    CLI::App app{"Rational Witt vectors, zeta functions and arithmetic dynamics"};
    std::string format_name = "plain";
    bool format_given = false;
    unsigned threads = 1;
    std::string out_path;
    std::string command;
    Json config = Json::object();
    std::function<Report()> action;
    Format default_format = Format::plain;

    void set(const std::string& name, std::function<Report()> fn, Format preferred = Format::plain) {
        command = name;
        action = std::move(fn);
        default_format = preferred;
    }

    Cli() {
        app.require_subcommand(1);
        app.fallthrough();
        app.add_option("--format", format_name, "Output format")->check(CLI::IsMember({"plain", "json", "csv"}));
        app.add_option("--threads", threads, "Worker threads for partitioned work")->check(CLI::Range(1U, 256U));
        app.add_option("--out", out_path, "Write output to this file instead of stdout");
        add_witt();
        add_zeta();
        add_orbits();
        add_explicit_formula();
        add_linking();
        add_redei();
        add_product_formula();
    }

    // -- witt ---------------------------------------------------------------
    std::string ring = "Z";
    std::size_t matrix_cap = 64;
    std::vector<std::string> exprs;
    std::string expr;
    std::size_t ghost_order = 10;
    int nu = 1;
    std::string teich_value;

    void add_witt() {
        auto* w = app.add_subcommand("witt", "Arithmetic in W_rat(R)");
        w->require_subcommand(1);
        w->add_option("--ring", ring, "Coefficient ring: Z, Q or Fp:<prime>");
        w->add_option("--matrix-cap", matrix_cap, "Largest Kronecker matrix allowed in products");

        auto binary = [&](const char* name, const char* help, auto op) {
            auto* s = w->add_subcommand(name, help);
            s->add_option("f", exprs, "Witt vectors as rational expressions in t")->required()->expected(2);
            s->callback([this, name, op] {
                set(std::string("witt ") + name, [this, op] {
                    return with_ring(ring, [&](const auto& r) {
                        const auto f = parse_witt(exprs[0], r);
                        const auto g = parse_witt(exprs[1], r);
                        return witt_report(op(f, g, WittConfig{matrix_cap}));
                    });
                });
            });
        };
        binary("add", "Witt sum (product of rational functions)", [](const auto& f, const auto& g, const WittConfig&) { return witt_add(f, g); });
        binary("sub", "Witt difference", [](const auto& f, const auto& g, const WittConfig&) { return witt_sub(f, g); });
        binary("mul", "Witt product", [](const auto& f, const auto& g, const WittConfig& c) { return witt_mul(f, g, c); });

        auto* neg = w->add_subcommand("neg", "Additive inverse");
        neg->add_option("f", expr, "Witt vector as a rational expression in t")->required();
        neg->callback([this] {
            set("witt neg", [this] { return with_ring(ring, [&](const auto& r) { return witt_report(witt_neg(parse_witt(expr, r))); }); });
        });

        auto* gh = w->add_subcommand("ghost", "Ghost components g_1..g_N");
        gh->add_option("f", expr, "Witt vector as a rational expression in t")->required();
        gh->add_option("--order", ghost_order, "Number of components")->check(CLI::Range(1, 10000));
        gh->callback([this] {
            config["order"] = ghost_order;
            set("witt ghost", [this] {
                return with_ring(ring, [&](const auto& r) {
                    using R = std::decay_t<decltype(r)>;
                    const auto g = ghost(parse_witt(expr, r), ghost_order);
                    Report rep;
                    rep.body = io::json_ghost(g);
                    Table t{{"n", "g_n"}, {}};
                    for (std::size_t n = 1; n <= g.order(); ++n) {
                        rep.plain.push_back("g_" + std::to_string(n) + " = " + value_text<R>(g[n]));
                        t.rows.push_back({std::to_string(n), value_text<R>(g[n])});
                    }
                    rep.table = std::move(t);
                    return rep;
                });
            });
        });

        auto unary_nu = [&](const char* name, const char* help, auto op) {
            auto* s = w->add_subcommand(name, help);
            s->add_option("f", expr, "Witt vector as a rational expression in t")->required();
            s->add_option("nu", nu, "Index nu >= 1")->required()->check(CLI::Range(1, 1000));
            s->callback([this, name, op] {
                config["nu"] = nu;
                set(std::string("witt ") + name, [this, op] {
                    return with_ring(ring, [&](const auto& r) { return witt_report(op(parse_witt(expr, r), nu, WittConfig{matrix_cap})); });
                });
            });
        };
        unary_nu("frobenius", "Frobenius F_nu", [](const auto& f, int k, const WittConfig& c) { return frobenius(f, k, c); });
        unary_nu("verschiebung", "Verschiebung V_nu", [](const auto& f, int k, const WittConfig&) { return verschiebung(f, k); });

        auto* te = w->add_subcommand("teichmuller", "Teichmuller lift [r] = 1 - rt");
        te->add_option("r", teich_value, "Ring element (integer or a/b)")->required();
        te->callback([this] {
            set("witt teichmuller", [this] {
                const auto v = parse_rational_literal(teich_value);
                return with_ring(ring, [&](const auto& r) { return witt_report(teichmuller(r, r.from_rational(v))); });
            });
        });

        auto* pr = w->add_subcommand("project", "Canonical projection -f'(0)/f(0)");
        pr->add_option("f", expr, "Witt vector as a rational expression in t")->required();
        pr->callback([this] {
            set("witt project", [this] {
                return with_ring(ring, [&](const auto& r) {
                    using R = std::decay_t<decltype(r)>;
                    const auto v = canonical_projection(parse_witt(expr, r));
                    Report rep;
                    rep.body["value"] = io::json_value(v);
                    rep.plain.push_back(value_text<R>(v));
                    return rep;
                });
            });
        });

        auto* co = w->add_subcommand("companion", "Companion matrix pair with f = det(1-tA)/det(1-tB)");
        co->add_option("f", expr, "Witt vector as a rational expression in t")->required();
        co->callback([this] {
            set("witt companion", [this] {
                return with_ring(ring, [&](const auto& r) {
                    using R = std::decay_t<decltype(r)>;
                    const auto pair = companion_pair(parse_witt(expr, r));
                    Report rep;
                    rep.body["a"] = io::json_matrix(pair.a);
                    rep.body["b"] = io::json_matrix(pair.b);
                    for (const auto* m : {&pair.a, &pair.b}) {
                        rep.plain.push_back(m == &pair.a ? "A:" : "B:");
                        if (m->size() == 0) rep.plain.push_back("  (empty)");
                        for (std::size_t i = 0; i < m->size(); ++i) {
                            std::string line = " ";
                            for (std::size_t j = 0; j < m->size(); ++j) line += " " + value_text<R>((*m)(i, j));
                            rep.plain.push_back(line);
                        }
                    }
                    return rep;
                });
            });
        });
    }

    // -- zeta ---------------------------------------------------------------
    std::string variety_path;
    std::size_t max_n = 4;
    bool projective = false;
    int dnum = -1, dden = -1;
    std::uint64_t cap = 100'000'000;
    std::string source = "specz";
    double bound = 100;
    double s_value = 2;

    void add_zeta() {
        auto* z = app.add_subcommand("zeta", "Point counts, zeta functions and closed-point ledgers");
        z->require_subcommand(1);

        auto* count = z->add_subcommand("count", "Count points and reconstruct Z(X, t)");
        count->add_option("--variety", variety_path, "Variety description (JSON)")->required();
        count->add_option("--max-n", max_n, "Count over F_{p^n} for n = 1..max-n")->check(CLI::Range(1, 64));
        count->add_flag("--projective", projective, "Count points of the projective closure");
        count->add_option("--dnum", dnum, "Numerator degree (default: smallest that fits)");
        count->add_option("--dden", dden, "Denominator degree (default: smallest that fits)");
        count->add_option("--cap", cap, "Enumeration cap in evaluation steps");
        count->callback([this] {
            set("zeta count", [this] { return zeta_count(); });
        });

        auto* ledger = z->add_subcommand("ledger", "Closed points up to a norm bound");
        ledger->add_option("--source", source, "specz, quadratic:<d> or p1:<q>");
        ledger->add_option("--bound", bound, "Largest norm");
        ledger->callback([this] {
            config["source"] = source;
            config["bound"] = bound;
            set("zeta ledger", [this] {
                const auto l = closed_points(parse_source(source), bound);
                Report rep;
                rep.body = io::json_ledger(l);
                Table t{{"norm", "length", "multiplicity"}, {}};
                for (const auto& e : l.entries) {
                    t.rows.push_back({std::to_string(e.norm), io::format_double(e.length), std::to_string(e.multiplicity)});
                    rep.plain.push_back(std::to_string(e.norm) + " " + io::format_double(e.length) + " " + std::to_string(e.multiplicity));
                }
                rep.table = std::move(t);
                return rep;
            }, Format::csv);
        });

        auto* er = z->add_subcommand("euler", "Truncated Euler and Ruelle products");
        er->add_option("--source", source, "specz, quadratic:<d> or p1:<q>");
        er->add_option("--bound", bound, "Largest norm");
        er->add_option("--s", s_value, "Real s > 1");
        er->callback([this] {
            config["source"] = source;
            config["bound"] = bound;
            config["s"] = s_value;
            set("zeta euler", [this] {
                const auto l = closed_points(parse_source(source), bound);
                const auto r = euler_vs_ruelle(l, s_value);
                Report rep;
                rep.body = io::json_euler_ruelle(r);
                rep.body["source"] = l.source.describe();
                rep.plain.push_back("euler  " + io::format_double(r.euler));
                rep.plain.push_back("ruelle " + io::format_double(r.ruelle));
                rep.plain.push_back("ulps   " + std::to_string(ulp_distance(r.euler, r.ruelle)));
                if (r.reference) {
                    rep.plain.push_back("reference " + io::format_double(*r.reference));
                    rep.plain.push_back("gap       " + io::format_double(*r.gap));
                }
                return rep;
            });
        });
    }

    Report zeta_count() {
        std::ifstream in(variety_path);
        if (!in) throw math_error("cannot open variety file " + variety_path);
        Json j;
        try {
            j = Json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw math_error(std::string("variety file is not valid JSON: ") + e.what());
        }
        const auto x = io::variety_from_json(j);
        const bool proj = projective || j.value("projective", false);
        config["variety"] = variety_path;
        config["max_n"] = max_n;
        config["projective"] = proj;
        config["cap"] = cap;
        config["dnum"] = dnum < 0 ? Json("auto") : Json(dnum);
        config["dden"] = dden < 0 ? Json("auto") : Json(dden);
        CountOptions opt;
        opt.cap = cap;
        opt.threads = threads;
        const auto table = point_count_table(x, max_n, proj, opt);

        std::optional<WittVector<Integers>> zeta;
        std::size_t dn = 0, dd = 0;
        if (dnum >= 0 || dden >= 0) {
            if (dnum < 0 || dden < 0) throw UsageError("give both --dnum and --dden, or neither");
            dn = static_cast<std::size_t>(dnum);
            dd = static_cast<std::size_t>(dden);
            zeta = zeta_rational(table, dn, dd);
        } else {
            for (std::size_t total = 0; total + 2 <= max_n && !zeta; ++total)
                for (std::size_t a = 0; a <= total && !zeta; ++a) {
                    try {
                        zeta = zeta_rational(table, a, total - a);
                        dn = a;
                        dd = total - a;
                    } catch (const math_error&) {
                    }
                }
            if (!zeta) throw math_error("zeta not rational at given degrees (no fit with two spare counts; raise --max-n or give --dnum/--dden)");
        }

        Report rep;
        rep.body["p"] = x.p;
        rep.body["vars"] = x.vars;
        rep.body["projective"] = proj;
        rep.body["counts"] = table.counts;
        Json series = Json::array();
        for (const auto& c : zeta_series(table).coeffs()) series.push_back(io::json_value(c));
        rep.body["series"] = std::move(series);
        rep.body["degrees"] = {{"num", dn}, {"den", dd}};
        rep.body["zeta"] = io::json_witt(*zeta);
        Table t{{"n", "count"}, {}};
        for (std::size_t n = 1; n <= table.order(); ++n) {
            rep.plain.push_back("N_" + std::to_string(n) + " = " + std::to_string(table.counts[n - 1]));
            t.rows.push_back({std::to_string(n), std::to_string(table.counts[n - 1])});
        }
        rep.plain.push_back("Z(t) = " + to_string(*zeta));
        if (zeta->num().degree() == 2 && zeta->den().degree() == 2) {
            const auto h = hasse_check(*zeta, x.p);
            rep.body["hasse"] = {{"a", io::json_value(h.a)}, {"leading", io::json_value(h.leading)}, {"bound", h.bound}, {"ok", h.ok}};
            rep.plain.push_back("hasse a = " + to_string(h.a) + ", |a| <= " + std::to_string(h.bound) + (h.ok ? " ok" : " FAILED"));
        }
        rep.table = std::move(t);
        return rep;
    }

    // -- orbits -------------------------------------------------------------
    std::uint64_t op_p = 2, op_a = 0, op_nu = 1;
    unsigned op_n = 1;
    std::string op_f;
    std::size_t max_listed = 100'000;
    std::int64_t witness_limit = 50;

    void point_config() {
        config["p"] = op_p;
        config["n"] = op_n;
        config["a"] = op_a;
    }

    void add_orbits() {
        auto* o = app.add_subcommand("orbits", "Frobenius orbits of characters at finite level");
        o->require_subcommand(1);

        auto* packet = o->add_subcommand("packet", "Orbit packet over F_{p^n}");
        packet->add_option("p", op_p)->required();
        packet->add_option("n", op_n)->required()->check(CLI::Range(1, 64));
        packet->add_option("--max-listed", max_listed, "Orbits listed in the output");
        packet->callback([this] {
            config["p"] = op_p;
            config["n"] = op_n;
            config["max_listed"] = max_listed;
            set("orbits packet", [this] {
                PacketOptions opt;
                opt.threads = threads;
                opt.max_listed_orbits = max_listed;
                const auto s = packet_summary(op_p, op_n, opt);
                Report rep;
                rep.body = io::json_packet(s);
                rep.plain.push_back("faithful_count " + std::to_string(s.faithful_count));
                rep.plain.push_back("orbit_count " + std::to_string(s.orbit_count));
                rep.plain.push_back("orbit_length " + std::to_string(s.orbit_length));
                rep.plain.push_back("suspension_length " + io::format_double(s.suspension_length));
                Table t{{"orbit", "members"}, {}};
                for (std::size_t i = 0; i < s.orbits.size(); ++i) {
                    std::string members;
                    for (std::size_t k = 0; k < s.orbits[i].size(); ++k) members += (k ? " " : "") + std::to_string(s.orbits[i][k]);
                    rep.plain.push_back("orbit " + members);
                    t.rows.push_back({std::to_string(i), members});
                }
                rep.table = std::move(t);
                return rep;
            });
        });

        auto* orbit = o->add_subcommand("orbit", "Frobenius orbit of the point chi_a");
        orbit->add_option("p", op_p)->required();
        orbit->add_option("n", op_n)->required()->check(CLI::Range(1, 64));
        orbit->add_option("a", op_a)->required();
        orbit->callback([this] {
            point_config();
            set("orbits orbit", [this] {
                const auto pt = make_point(op_p, op_n, op_a);
                const auto orb = orbit_of(pt);
                Report rep;
                rep.body["point"] = io::json_point(pt);
                Json idx = Json::array();
                std::string line;
                for (const auto& q : orb) {
                    idx.push_back(q.a);
                    line += (line.empty() ? "" : " ") + std::to_string(q.a);
                }
                rep.body["orbit"] = std::move(idx);
                rep.body["length"] = orb.size();
                rep.plain.push_back(line);
                rep.plain.push_back("length " + std::to_string(orb.size()));
                return rep;
            });
        });

        auto* ev = o->add_subcommand("evaluate", "Value of an integer at the point chi_a");
        ev->add_option("f", op_f)->required();
        ev->add_option("p", op_p)->required();
        ev->add_option("n", op_n)->required()->check(CLI::Range(1, 64));
        ev->add_option("a", op_a)->required();
        ev->callback([this] {
            point_config();
            config["f"] = op_f;
            set("orbits evaluate", [this] {
                const auto pt = make_point(op_p, op_n, op_a);
                const auto f = integer_arg(op_f);
                const auto idx = character_index(f, pt);
                const auto z = evaluate_integer(f, pt);
                Report rep;
                rep.body["point"] = io::json_point(pt);
                rep.body["f"] = io::json_value(f);
                rep.body["generator"] = generator_tag(pt);
                rep.body["index"] = idx ? Json(*idx) : Json(nullptr);
                rep.body["value"] = io::json_complex(z);
                rep.plain.push_back("generator " + generator_tag(pt));
                rep.plain.push_back(idx ? "exp(2 pi i " + std::to_string(*idx) + "/" + std::to_string(pt.m) + ")" : "0");
                rep.plain.push_back(complex_text(z));
                return rep;
            });
        });

        auto* eq = o->add_subcommand("equivariance", "Check evaluate(f, F_nu P) = evaluate(f, P)^nu");
        eq->add_option("f", op_f)->required();
        eq->add_option("p", op_p)->required();
        eq->add_option("n", op_n)->required()->check(CLI::Range(1, 64));
        eq->add_option("a", op_a)->required();
        eq->add_option("nu", op_nu)->required();
        eq->callback([this] {
            point_config();
            config["f"] = op_f;
            config["nu"] = op_nu;
            set("orbits equivariance", [this] {
                const auto pt = make_point(op_p, op_n, op_a);
                const bool ok = frobenius_equivariance_check(integer_arg(op_f), pt, op_nu);
                Report rep;
                rep.body["point"] = io::json_point(pt);
                rep.body["holds"] = ok;
                rep.plain.push_back(ok ? "holds" : "fails");
                return rep;
            });
        });

        auto* add = o->add_subcommand("additivity", "Search for a pair (f, g) where evaluation is not additive");
        add->add_option("p", op_p)->required();
        add->add_option("n", op_n)->required()->check(CLI::Range(1, 64));
        add->add_option("a", op_a)->required();
        add->add_option("--limit", witness_limit, "Search 1 <= f <= g <= limit");
        add->callback([this] {
            point_config();
            config["limit"] = witness_limit;
            set("orbits additivity", [this] {
                const auto pt = make_point(op_p, op_n, op_a);
                const auto w = find_additivity_failure(pt, witness_limit);
                Report rep;
                rep.body["point"] = io::json_point(pt);
                if (w) {
                    rep.body["witness"] = {{"f", io::json_value(w->f)},
                                           {"g", io::json_value(w->g)},
                                           {"value_of_sum", io::json_complex(w->value_sum)},
                                           {"sum_of_values", io::json_complex(w->sum_values)}};
                    rep.plain.push_back("f = " + to_string(w->f) + ", g = " + to_string(w->g));
                    rep.plain.push_back("evaluate(f+g)           = " + complex_text(w->value_sum));
                    rep.plain.push_back("evaluate(f)+evaluate(g) = " + complex_text(w->sum_values));
                } else {
                    rep.body["witness"] = nullptr;
                    rep.plain.push_back("no witness found");
                }
                return rep;
            });
        });
    }

    static Integer integer_arg(const std::string& s) {
        const auto v = parse_rational_literal(s);
        if (denominator(v) != 1) throw UsageError("expected an integer, got '" + s + "'");
        return numerator(v);
    }

    // -- explicit-formula ---------------------------------------------------
    std::string zeros_path;
    std::vector<double> bump{1.5, 0.7};
    std::size_t max_zeros = 1000;
    std::uint64_t prime_bound = 10'000;

    void add_explicit_formula() {
        auto* e = app.add_subcommand("explicit-formula", "Zero side against prime side for a bump test function");
        e->require_subcommand(1);
        auto* run = e->add_subcommand("run", "Evaluate both sides and the defect");
        run->add_option("--zeros", zeros_path, "Zero table: one ordinate per line, '#' comments")->required();
        run->add_option("--bump", bump, "Center and radius: c,r")->delimiter(',')->expected(2);
        run->add_option("--max-zeros", max_zeros, "Number of zeros K (capped at the table size)");
        run->add_option("--prime-bound", prime_bound, "Largest prime on the prime side");
        run->callback([this] {
            config["zeros"] = zeros_path;
            config["bump"] = {{"c", bump[0]}, {"r", bump[1]}};
            config["max_zeros"] = max_zeros;
            config["prime_bound"] = prime_bound;
            set("explicit-formula run", [this] {
                const auto table = load_zeros(zeros_path);
                const auto phi = TestFunction::bump(bump[0], bump[1]);
                const auto k = std::min(max_zeros, table.size());
                const auto r = explicit_formula_defect(phi, table, k, prime_bound, threads);
                Report rep;
                rep.body = io::json_explicit_formula(r);
                rep.body["zeros_loaded"] = table.size();
                rep.plain.push_back("zeros loaded " + std::to_string(table.size()) + ", using K = " + std::to_string(k));
                rep.plain.push_back("zero side  " + io::format_double(r.zeros.value));
                rep.plain.push_back("prime side " + io::format_double(r.primes.value) + " (primes " +
                                    io::format_double(r.primes.prime_sum) + ", archimedean " +
                                    io::format_double(r.primes.archimedean) + ")");
                rep.plain.push_back("defect     " + io::format_double(r.defect));
                Table t{{"K", "zero_side", "defect"}, {}};
                for (const auto& row : r.convergence) {
                    rep.plain.push_back("K = " + std::to_string(row.k) + ": defect " + io::format_double(row.defect));
                    t.rows.push_back({std::to_string(row.k), io::format_double(row.zero_side), io::format_double(row.defect)});
                }
                rep.table = std::move(t);
                return rep;
            });
        });
    }

    // -- linking / redei ----------------------------------------------------
    std::uint64_t link_bound = 100;
    std::uint64_t rp = 5, rl = 41, rq = 61;

    void add_linking() {
        auto* l = app.add_subcommand("linking", "Quadratic residue symbols as linking numbers");
        l->require_subcommand(1);
        auto* t = l->add_subcommand("table", "All ordered pairs of distinct odd primes below a bound");
        t->add_option("--bound", link_bound, "Primes strictly below this bound")->required();
        t->callback([this] {
            config["bound"] = link_bound;
            set("linking table", [this] {
                const auto rows = linking_table(link_bound, threads);
                Report rep;
                Json arr = Json::array();
                Table tab{{"p", "l", "p_mod4", "l_mod4", "sym_pl", "sym_lp", "relation_ok"}, {}};
                std::size_t violations = 0;
                for (const auto& e : rows) {
                    arr.push_back(io::json_linking(e));
                    if (!e.relation_ok) ++violations;
                    tab.rows.push_back({std::to_string(e.p), std::to_string(e.l), std::to_string(e.p_mod4), std::to_string(e.l_mod4),
                                        std::to_string(e.symbol_pl), std::to_string(e.symbol_lp), e.relation_ok ? "true" : "false"});
                    rep.plain.push_back("(" + std::to_string(e.p) + "/" + std::to_string(e.l) + ") = " + std::to_string(e.symbol_pl) +
                                        ", (" + std::to_string(e.l) + "/" + std::to_string(e.p) + ") = " + std::to_string(e.symbol_lp) +
                                        (e.relation_ok ? "" : "  VIOLATION"));
                }
                rep.body["bound"] = link_bound;
                rep.body["pairs"] = rows.size();
                rep.body["violations"] = violations;
                rep.body["rows"] = std::move(arr);
                rep.plain.push_back(std::to_string(rows.size()) + " pairs, " + std::to_string(violations) + " violations");
                rep.table = std::move(tab);
                return rep;
            }, Format::csv);
        });
    }

    void add_redei() {
        auto* r = app.add_subcommand("redei", "Redei symbol of three primes 1 mod 4");
        r->add_option("p", rp)->required();
        r->add_option("l", rl)->required();
        r->add_option("q", rq)->required();
        r->callback([this] {
            config["p"] = rp;
            config["l"] = rl;
            config["q"] = rq;
            set("redei", [this] {
                const auto res = redei_symbol(rp, rl, rq);
                Report rep;
                rep.body = io::json_redei(res);
                rep.plain.push_back("[" + std::to_string(rp) + ", " + std::to_string(rl) + ", " + std::to_string(rq) + "] = " +
                                    std::to_string(res.symbol));
                rep.plain.push_back("pairwise symbols " + std::to_string(res.symbol_pl) + " " + std::to_string(res.symbol_pq) + " " +
                                    std::to_string(res.symbol_lq));
                rep.plain.push_back("solution x=" + std::to_string(res.solution.x) + " y=" + std::to_string(res.solution.y) +
                                    " z=" + std::to_string(res.solution.z) + " (" + std::to_string(res.solutions_checked) +
                                    " solutions checked, bound " + std::to_string(res.search_bound) + ")");
                return rep;
            });
        });
    }

    // -- product-formula ----------------------------------------------------
    std::string pf_value;
    std::uint64_t pf_p = 2;

    void add_product_formula() {
        auto* pf = app.add_subcommand("product-formula", "Product formulas over Q and over F_p(t)");
        pf->require_subcommand(1);
        auto* rat = pf->add_subcommand("rational", "sum_p ord_p(f) log p - log|f| for a nonzero rational f");
        rat->add_option("f", pf_value, "Integer or a/b")->required();
        rat->callback([this] {
            config["f"] = pf_value;
            set("product-formula rational", [this] {
                const auto f = parse_rational_literal(pf_value);
                const auto r = product_formula_defect(f);
                Report rep;
                rep.body["f"] = io::json_value(f);
                Json vals = Json::array();
                std::string line;
                for (auto [p, e] : r.valuations) {
                    vals.push_back({p, e});
                    line += (line.empty() ? "" : " ") + std::to_string(p) + "^" + std::to_string(e);
                }
                rep.body["valuations"] = std::move(vals);
                rep.body["log_abs"] = r.log_abs;
                rep.body["defect"] = r.defect;
                rep.body["scale"] = r.scale;
                rep.body["ok"] = r.ok;
                rep.plain.push_back("valuations " + (line.empty() ? std::string("(none)") : line));
                rep.plain.push_back("defect " + io::format_double(r.defect) + (r.ok ? " ok" : " FAILED"));
                return rep;
            });
        });
        auto* fun = pf->add_subcommand("function", "Degree-weighted orders of f in F_p(t) over P^1");
        fun->add_option("p", pf_p, "Prime")->required();
        fun->add_option("f", pf_value, "Rational expression in t")->required();
        fun->callback([this] {
            config["p"] = pf_p;
            config["f"] = pf_value;
            set("product-formula function", [this] {
                const PrimeField fp(pf_p);
                const auto rf = parse_rational_function(pf_value);
                auto to_fp = [&](const Rational& v) { return fp.from_rational(v); };
                const auto num = map_coefficients(rf.num, fp, to_fp);
                const auto den = map_coefficients(rf.den, fp, to_fp);
                const auto r = function_field_product_formula(num, den);
                Report rep;
                rep.body["p"] = pf_p;
                rep.body["num"] = io::json_coeffs(num);
                rep.body["den"] = io::json_coeffs(den);
                Json places = Json::array();
                for (const auto& [pi, e] : r.valuations) {
                    places.push_back({{"place", to_string(pi)}, {"degree", pi.degree()}, {"order", e}});
                    rep.plain.push_back("ord_{" + to_string(pi) + "} = " + std::to_string(e));
                }
                rep.body["places"] = std::move(places);
                rep.body["ord_infinity"] = r.ord_infinity;
                rep.body["sum"] = r.sum;
                rep.plain.push_back("ord_inf = " + std::to_string(r.ord_infinity));
                rep.plain.push_back("sum = " + std::to_string(r.sum));
                return rep;
            });
        });
    }

    Json resolved_config(Format f) const {
        Json c;
        c["program"] = "wittrat";
        c["command"] = command;
        c["format"] = f == Format::json ? "json" : f == Format::csv ? "csv" : "plain";
        c["threads"] = threads;
        c["out"] = out_path.empty() ? Json(nullptr) : Json(out_path);
        if (command.rfind("witt", 0) == 0) {
            c["ring"] = ring;
            c["matrix_cap"] = matrix_cap;
            if (!exprs.empty()) c["args"] = exprs;
            if (!expr.empty()) c["args"] = {expr};
            if (command == "witt teichmuller") c["args"] = {teich_value};
        }
        for (const auto& [k, v] : config.items()) c[k] = v;
        return c;
    }
};

}  // namespace

int main(int argc, char** argv) {
    Cli cli;
    try {
        cli.app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return cli.app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return cli.app.exit(e);
    } catch (const CLI::ParseError& e) {
        cli.app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }
    if (!cli.action) {
        std::cerr << "error: no command given\n";
        return 2;
    }
    auto format_of = [](const std::string& name) {
        return name == "json" ? Format::json : name == "csv" ? Format::csv : Format::plain;
    };
    auto ends_with = [](const std::string& s, const std::string& suffix) {
        return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    Format format = cli.default_format;
    const bool explicit_format = cli.app.get_option("--format")->count() > 0;
    if (cli.out_path == "plain" || cli.out_path == "json" || cli.out_path == "csv") {
        // --out <format> selects the format and keeps stdout
        if (!explicit_format) format = format_of(cli.out_path);
        cli.out_path.clear();
    } else if (!explicit_format && ends_with(cli.out_path, ".json")) {
        format = Format::json;
    } else if (!explicit_format && ends_with(cli.out_path, ".csv")) {
        format = Format::csv;
    }
    if (explicit_format) format = format_of(cli.format_name);
    try {
        const Report report = cli.action();
        const auto text = render(cli.resolved_config(format), report, format);
        if (cli.out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(cli.out_path, std::ios::binary);
            if (!out) throw math_error("cannot write " + cli.out_path);
            out << text;
        }
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const parse_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
