#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "gfn/flat_coords.hpp"
#include "gfn/getzler.hpp"
#include "gfn/ring_table.hpp"

namespace gfn {

using Json = nlohmann::json;

inline Rat parse_rational(const std::string& s) {
    if (!s.empty() && s.front() == '+') return Rat(s.substr(1));
    return Rat(s);
}

// Accepts "2i", "1+2i", "0.5-1/3i", "i", "-i", plain reals. The imaginary
// part, when present, terminates the string with 'i'.
inline BigComplex parse_complex(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw UsageError("parse_complex: empty string");
    if (s.back() != 'i') return BigComplex(BigFloat(parse_rational(s)));
    s.pop_back();
    // split at the last +/- that is not leading and not an exponent sign
    size_t split = std::string::npos;
    for (size_t i = s.size(); i-- > 1;) {
        if (s[i] == '+' || s[i] == '-') {
            split = i;
            break;
        }
    }
    auto imag_part = [](const std::string& t) {
        if (t.empty() || t == "+") return Rat(1);
        if (t == "-") return Rat(-1);
        return parse_rational(t);
    };
    if (split == std::string::npos)
        return BigComplex(BigFloat(0), BigFloat(imag_part(s)));
    std::string re = s.substr(0, split);
    std::string im = s.substr(split); // sign retained
    return BigComplex(BigFloat(parse_rational(re)), BigFloat(imag_part(im)));
}

namespace detail {

inline Rat json_rat(const Json& j, const char* what) {
    if (j.is_number_integer()) return Rat(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw UsageError(std::string("expected rational string for ") + what);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Linearization schema files. Indices are 1-based on disk, 0-based in memory.
// A term is {"coeff": "p/q", "spow": k, "pow_1mu": "p/q", "hyp": H} where H
// is "g", "gprime", {"a","b","c"} hypergeometric parameters, or a list of
// those (products); absent H means a pure power term.
// ---------------------------------------------------------------------------

namespace detail {

inline void apply_hyp_token(LinTerm& t, const Json& h) {
    if (h.is_string()) {
        std::string s = h.get<std::string>();
        if (s == "g")
            t.g_pow += 1;
        else if (s == "gprime")
            t.gprime_pow += 1;
        else
            throw UsageError("linearization term: unknown hyp token '" + s + "'");
        return;
    }
    if (h.is_object()) {
        if (t.hyp) throw UsageError("linearization term: at most one explicit 2F1 factor");
        t.hyp = HypParams{json_rat(h.at("a"), "hyp.a"), json_rat(h.at("b"), "hyp.b"),
                          json_rat(h.at("c"), "hyp.c")};
        return;
    }
    throw UsageError("linearization term: bad hyp entry");
}

inline LinTerm term_from_json(const Json& j) {
    LinTerm t;
    t.coeff = json_rat(j.at("coeff"), "coeff");
    if (j.contains("spow")) t.spow = j.at("spow").get<long>();
    if (j.contains("pow_1mu")) t.pow_1mu = json_rat(j.at("pow_1mu"), "pow_1mu");
    if (j.contains("hyp")) {
        const Json& h = j.at("hyp");
        if (h.is_array())
            for (const auto& e : h) apply_hyp_token(t, e);
        else
            apply_hyp_token(t, h);
    }
    return t;
}

inline Json term_to_json(const LinTerm& t) {
    Json j;
    j["coeff"] = t.coeff.to_string();
    if (t.spow != 0) j["spow"] = t.spow;
    if (!t.pow_1mu.is_zero()) j["pow_1mu"] = t.pow_1mu.to_string();
    Json hyp = Json::array();
    for (int k = 0; k < t.g_pow; ++k) hyp.push_back("g");
    for (int k = 0; k < t.gprime_pow; ++k) hyp.push_back("gprime");
    if (t.hyp)
        hyp.push_back({{"a", t.hyp->a.to_string()},
                       {"b", t.hyp->b.to_string()},
                       {"c", t.hyp->c.to_string()}});
    if (hyp.size() == 1)
        j["hyp"] = hyp[0];
    else if (!hyp.empty())
        j["hyp"] = hyp;
    return j;
}

} // namespace detail

inline LinSchema lin_schema_from_json(const Json& j) {
    LinSchema sch;
    sch.model = model_from_name(j.at("model").get<std::string>());
    sch.source = "external-file";
    size_t n = build_model(sch.model).n;
    sch.diag.assign(n, {});
    std::vector<bool> seen(n, false);
    for (const auto& d : j.at("diag")) {
        long idx = d.at("index").get<long>();
        if (idx < 1 || static_cast<size_t>(idx) > n)
            throw UsageError("linearization file: diag index out of range");
        size_t a = static_cast<size_t>(idx - 1);
        if (seen[a]) throw UsageError("linearization file: duplicate diag index");
        seen[a] = true;
        for (const auto& t : d.at("pairs")) sch.diag[a].push_back(detail::term_from_json(t));
    }
    for (size_t a = 0; a < n; ++a)
        if (!seen[a]) throw UsageError("linearization file: missing diag index");
    if (j.contains("cross"))
        for (const auto& c : j.at("cross")) {
            LinSchema::CrossEntry e;
            long a = c.at("a").get<long>();
            long mu = c.at("mu").get<long>();
            long mustar = c.at("mustar").get<long>();
            if (a < 1 || mu < 1 || mustar < 1 || static_cast<size_t>(a) > n ||
                static_cast<size_t>(mu) > n || static_cast<size_t>(mustar) > n)
                throw UsageError("linearization file: cross index out of range");
            e.a = static_cast<size_t>(a - 1);
            e.mu = static_cast<size_t>(mu - 1);
            e.mustar = static_cast<size_t>(mustar - 1);
            for (const auto& t : c.at("terms")) e.terms.push_back(detail::term_from_json(t));
            sch.cross.push_back(std::move(e));
        }
    return sch;
}

inline Json lin_schema_to_json(const LinSchema& sch) {
    Json j;
    j["model"] = model_name(sch.model);
    j["diag"] = Json::array();
    for (size_t a = 0; a < sch.diag.size(); ++a) {
        Json d;
        d["index"] = static_cast<long>(a + 1);
        d["pairs"] = Json::array();
        for (const auto& t : sch.diag[a]) d["pairs"].push_back(detail::term_to_json(t));
        j["diag"].push_back(std::move(d));
    }
    j["cross"] = Json::array();
    for (const auto& c : sch.cross) {
        Json e;
        e["a"] = static_cast<long>(c.a + 1);
        e["mu"] = static_cast<long>(c.mu + 1);
        e["mustar"] = static_cast<long>(c.mustar + 1);
        e["terms"] = Json::array();
        for (const auto& t : c.terms) e["terms"].push_back(detail::term_to_json(t));
        j["cross"].push_back(std::move(e));
    }
    return j;
}

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open file: " + path);
    Json j;
    in >> j;
    return j;
}

inline LinSchema load_lin_schema(const std::string& path) {
    return lin_schema_from_json(load_json_file(path));
}

// ---------------------------------------------------------------------------
// Ring tables: basis exponent vectors plus dense value/slope rational arrays.
// ---------------------------------------------------------------------------

inline Json ring_table_to_json(const RingTable& tab) {
    Json j;
    j["model"] = model_name(tab.model);
    j["s"] = Json::array();
    for (const auto& v : tab.point.s) j["s"].push_back(v.to_string());
    if (tab.point.jet_direction >= 0)
        j["jet_direction"] = tab.point.jet_direction + 1;
    else
        j["jet_direction"] = nullptr;
    j["basis"] = Json::array();
    for (const auto& m : tab.basis) j["basis"].push_back(m.exps);
    size_t n = tab.basis.size();
    Json cv = Json::array(), cs = Json::array();
    for (size_t a = 0; a < n; ++a) {
        Json pv = Json::array(), ps = Json::array();
        for (size_t b = 0; b < n; ++b) {
            Json rv = Json::array(), rs = Json::array();
            for (size_t k = 0; k < n; ++k) {
                const Jet& e = tab.at(a, b, k);
                rv.push_back(e.value.to_string());
                rs.push_back(e.slope.to_string());
            }
            pv.push_back(std::move(rv));
            ps.push_back(std::move(rs));
        }
        cv.push_back(std::move(pv));
        cs.push_back(std::move(ps));
    }
    j["c"] = std::move(cv);
    j["c_slope"] = std::move(cs);
    return j;
}

// ---------------------------------------------------------------------------
// Prepotential files: monomial list, constant metric, Euler weights.
// ---------------------------------------------------------------------------

struct PrepotentialFile {
    RatPoly poly;
    std::vector<std::vector<Rat>> metric;
    std::vector<Rat> weights;
    Rat charge;
};

inline PrepotentialFile prepotential_from_json(const Json& j) {
    PrepotentialFile f;
    const Json& monos = j.at("monomials");
    if (!monos.is_array() || monos.empty())
        throw UsageError("prepotential file: monomials must be a non-empty array");
    size_t n = monos[0].at("exps").size();
    f.poly = RatPoly::zero(n);
    for (const auto& m : monos) {
        std::vector<int> e = m.at("exps").get<std::vector<int>>();
        if (e.size() != n) throw UsageError("prepotential file: ragged exps");
        f.poly.add_term(Monomial(std::move(e)), detail::json_rat(m.at("coeff"), "coeff"));
    }
    for (const auto& row : j.at("metric")) {
        std::vector<Rat> r;
        for (const auto& x : row) r.push_back(detail::json_rat(x, "metric"));
        if (r.size() != n) throw UsageError("prepotential file: metric shape");
        f.metric.push_back(std::move(r));
    }
    if (f.metric.size() != n) throw UsageError("prepotential file: metric shape");
    for (const auto& x : j.at("weights")) f.weights.push_back(detail::json_rat(x, "weights"));
    if (f.weights.size() != n) throw UsageError("prepotential file: weights shape");
    f.charge = j.contains("charge") ? detail::json_rat(j.at("charge"), "charge") : Rat(0);
    return f;
}

inline PrepotentialFile load_prepotential(const std::string& path) {
    return prepotential_from_json(load_json_file(path));
}

template <typename S>
PrepotentialOracle<S> oracle_from_file(const PrepotentialFile& f) {
    return polynomial_oracle<S>(f.poly, f.metric, f.weights, f.charge);
}

// ---------------------------------------------------------------------------
// Scan reports.
// ---------------------------------------------------------------------------

template <typename S>
Json scan_report_to_json(const GetzlerScanReport<S>& rep, long digits) {
    Json j;
    j["max_residual"] = rep.max_residual.to_string(digits);
    j["max_eta_residual"] = rep.max_eta_residual.to_string(digits);
    j["entries"] = Json::array();
    for (const auto& e : rep.entries) {
        Json row;
        row["point"] = Json::array();
        for (const auto& x : e.point) row["point"].push_back(x.to_string(digits));
        row["probe"] = Json::array();
        for (const auto& x : e.probe) row["probe"].push_back(x.to_string(digits));
        row["residual"] = e.residual.to_string(digits);
        j["entries"].push_back(std::move(row));
    }
    return j;
}

} // namespace gfn
