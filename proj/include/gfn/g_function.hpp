#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gfn/flat_coords.hpp"
#include "gfn/ring_table.hpp"

namespace gfn {

// ---------------------------------------------------------------------------
// Closed-form G along the marginal axis: G = -(1/24)[alpha log s'(t)
//                                                    - beta log(1-u)]
// with s'(t) = ds/dt = (1-u) g(u)^2 and the gauge G(0) = 0.
// ---------------------------------------------------------------------------

struct GClosedParams {
    Rat alpha, beta;
};

inline GClosedParams g_closed_params(ModelId id) {
    switch (id) {
        case ModelId::E6t: return {Rat(2), Rat(1)};
        case ModelId::E7t: return {Rat(3, 2), Rat(1)};
        case ModelId::E8t: return {Rat(1), Rat(5, 6)};
    }
    throw UsageError("g_closed_params: bad id");
}

inline BigFloat g_closed_at_s(ModelId id, const BigFloat& s) {
    FlatMap fm(id);
    GClosedParams p = g_closed_params(id);
    BigFloat u = fm.u_of_s(s);
    BigFloat one_minus_u = BigFloat(1) - u;
    BigFloat gg = fm.g(u);
    BigFloat sprime = one_minus_u * gg * gg;
    return BigFloat(Rat(-1, 24)) *
           (BigFloat(p.alpha) * sprime.log() - BigFloat(p.beta) * one_minus_u.log());
}

inline BigFloat g_closed(ModelId id, const BigFloat& t) {
    return g_closed_at_s(id, FlatMap(id).s_of_t(t).s);
}

// Analytic derivative of the closed form, as a function of marginal s:
// dG/ds = -(u'/24) [alpha (2 g'/g - 1/(1-u)) + beta/(1-u)], then dG/dt
// through ds/dt = (1-u) g^2.
inline BigFloat dg_ds_closed(ModelId id, const BigFloat& s) {
    FlatMap fm(id);
    GClosedParams p = g_closed_params(id);
    BigFloat u = fm.u_of_s(s);
    BigFloat one_minus_u = BigFloat(1) - u;
    BigFloat gg = fm.g(u), gp = fm.gprime(u);
    BigFloat bracket = BigFloat(p.alpha) * (BigFloat(2) * gp / gg - BigFloat(1) / one_minus_u) +
                       BigFloat(p.beta) / one_minus_u;
    return BigFloat(Rat(-1, 24)) * fm.du_ds(s) * bracket;
}

inline BigFloat dg_dt_closed_at_s(ModelId id, const BigFloat& s) {
    FlatMap fm(id);
    BigFloat u = fm.u_of_s(s);
    BigFloat gg = fm.g(u);
    return dg_ds_closed(id, s) * (BigFloat(1) - u) * gg * gg;
}

// ---------------------------------------------------------------------------
// Ring route: dG/dt = K * sum_nu c_{nu nu* mu,mu*}(t), with the trace sum
// assembled from the linearization factors and the jet table, and K fixed by
// requiring the per-index weight
//   A_nu = (1/24)[(d^mu)^2 + (d^mu*)^2] - (1/2)(1/2 - d^nu)^2
// to be constant across the middle indices (the end indices drop out since a
// fourth derivative of F with a t^1 leg vanishes in flat coordinates).
// ---------------------------------------------------------------------------

// Per-index weight of the coefficient-extraction route; all indices 1-based.
inline Rat pairing_weight(const SingularityModel& m, size_t mu, size_t nu) {
    size_t mustar = m.n + 1 - mu;
    Rat dmu = m.d[mu - 1], dms = m.d[mustar - 1];
    Rat delta = Rat(1, 2) - m.d[nu - 1];
    return (dmu * dmu + dms * dms) / Rat(24) - delta * delta / Rat(2);
}

inline void require_middle_pair(const SingularityModel& m, size_t mu) {
    if (mu < 2 || mu > m.n - 1)
        throw UnsupportedPairingError("pairing index " + std::to_string(mu) +
                                      " is not a middle index");
    if (m.d[mu - 1].is_zero() || m.d[m.n - mu].is_zero())
        throw UnsupportedPairingError("pair (" + std::to_string(mu) + "," +
                                      std::to_string(m.n + 1 - mu) +
                                      ") has a weight-0 member");
}

// Collapsed constant K with dG/dt = K * sum_nu c_{nu nu* mu,mu*}(t), valid
// only when the per-index weight is constant across the middle block (the
// cubic-surface case, where it gives K = 1/48).
inline Rat pairing_constant(const SingularityModel& m, size_t mu) {
    require_middle_pair(m, mu);
    size_t n = m.n;
    Rat dmu = m.d[mu - 1], dms = m.d[n - mu];
    std::optional<Rat> A;
    for (size_t nu = 2; nu <= n - 1; ++nu) {
        Rat Anu = pairing_weight(m, mu, nu);
        if (!A)
            A = Anu;
        else if (*A != Anu)
            throw UnsupportedPairingError(
                "per-index weight A_nu is not constant across the middle block");
    }
    return *A / (Rat(2) * dmu * dms);
}

// The diagonal entries T_nu = c^nu_{nu mu,mu*}(t)|0* of the raised four-index
// tensor, assembled by the chain rule from the linearization factors D_a,
// the identity-direction cross coefficient X = d2 s^1/dt^mu dt^mu*, and the
// jet table along s^{mu*}:
//   T_nu  = X + D_mu D_mu* slope_nu            (middle nu, generic)
//   T_mu  gains an extra X; T_mu* loses D_mu D'_mu* c^top_{mu mu*} / D_n
//   T_1   = 0 exactly; T_n = 0 by flatness (kept as a residual diagnostic).
struct RingRouteData {
    size_t mu = 0, mustar = 0;       // 1-based pair
    BigFloat cross;                  // X
    BigFloat dd;                     // D_mu D_mu*
    std::vector<BigFloat> t_diag;    // T_nu, entry nu-1
    BigFloat flatness_residual;      // assembled T_n, should vanish
    BigFloat total;                  // n X + D_mu D_mu* sum_p slope_p
};

inline RingRouteData ring_route_data(const SingularityModel& m, const LinearizationData& lin,
                                     const RingTable& jets, size_t mu) {
    require_middle_pair(m, mu);
    size_t n = m.n;
    size_t mustar = n + 1 - mu;
    if (jets.point.jet_direction != static_cast<int>(mustar - 1))
        throw UsageError("ring route: jet table direction does not match the pair");
    if (lin.diag.size() != n || lin.diag_dt.size() != n)
        throw UsageError("ring route: linearization size mismatch");

    Jet tr = jets.trace(mu - 1);
    if (!tr.value.is_zero())
        throw DegenerateRingError(
            "ring route: graded trace has a nonzero value part at the reduced point");

    RingRouteData rd;
    rd.mu = mu;
    rd.mustar = mustar;
    if (const BigFloat* cv = lin.cross_value(0, mu - 1, mustar - 1)) rd.cross = *cv;
    rd.dd = lin.diag[mu - 1] * lin.diag[mustar - 1];

    BigFloat ctop(jets.at(mu - 1, mustar - 1, n - 1).value);
    BigFloat corr = lin.diag[mu - 1] * lin.diag_dt[mustar - 1] * ctop / lin.diag[n - 1];

    rd.t_diag.assign(n, BigFloat(0));
    for (size_t nu = 2; nu <= n - 1; ++nu) {
        BigFloat t = rd.cross + rd.dd * BigFloat(jets.at(nu - 1, mu - 1, nu - 1).slope);
        if (nu == mu) t = t + rd.cross;
        if (nu == mustar) t = t - corr;
        rd.t_diag[nu - 1] = t;
    }
    rd.flatness_residual =
        rd.cross + rd.dd * BigFloat(jets.at(n - 1, mu - 1, n - 1).slope) + corr;
    rd.total = BigFloat(Rat(static_cast<long>(n))) * rd.cross + rd.dd * BigFloat(tr.slope);
    return rd;
}

// sum_nu c_{nu nu* mu,mu*}(t) = n X + D_mu D_mu* sum_p c^p_{p mu,mu*}(s).
inline BigFloat trace_sum(const SingularityModel& m, const LinearizationData& lin,
                          const RingTable& jets, size_t mu) {
    return ring_route_data(m, lin, jets, mu).total;
}

// Ring-route derivative: weighted middle-block sum of the diagonal entries.
// The end indices drop out exactly (a fourth derivative with a t^1 leg
// vanishes in flat coordinates).
inline BigFloat dg_dt_ring(const SingularityModel& m, const LinearizationData& lin,
                           const RingTable& jets, size_t mu = 2) {
    RingRouteData rd = ring_route_data(m, lin, jets, mu);
    Rat dmu = m.d[mu - 1], dms = m.d[m.n - mu];
    BigFloat acc(0);
    for (size_t nu = 2; nu <= m.n - 1; ++nu)
        acc = acc + BigFloat(pairing_weight(m, mu, nu)) * rd.t_diag[nu - 1];
    return acc / BigFloat(Rat(2) * dmu * dms);
}

inline RingTable ring_route_jets(const SingularityModel& m, const Rat& s, size_t mu) {
    size_t mustar = m.n + 1 - mu;
    return multiplication_table(m, marginal_point(m, s, static_cast<int>(mustar - 1)));
}

// One-call ring-route derivative at exact marginal value s. A schema may be
// supplied for models without builtin linearization data.
inline BigFloat dg_dt_ring_at_s(const SingularityModel& m, const Rat& s, size_t mu = 2,
                                const LinSchema* schema = nullptr) {
    LinearizationData lin =
        schema ? linearization(*schema, BigFloat(s)) : linearization(m.id, BigFloat(s));
    return dg_dt_ring(m, lin, ring_route_jets(m, s, mu), mu);
}

// Same entry point from the flat coordinate: inverts t -> s and continues on
// the exact dyadic rational carried by the float.
inline BigFloat dg_dt_ring_at_t(const SingularityModel& m, const BigFloat& t, size_t mu = 2,
                                const LinSchema* schema = nullptr) {
    return dg_dt_ring_at_s(m, to_rational(FlatMap(m.id).s_of_t(t).s), mu, schema);
}

// Collapsed uniform-weight variant (valid where pairing_constant is):
// dG/dt = K * trace_sum.
inline BigFloat dg_dt_ring_uniform(const SingularityModel& m, const Rat& s, size_t mu = 2,
                                   const LinSchema* schema = nullptr) {
    Rat K = pairing_constant(m, mu);
    LinearizationData lin =
        schema ? linearization(*schema, BigFloat(s)) : linearization(m.id, BigFloat(s));
    return BigFloat(K) * trace_sum(m, lin, ring_route_jets(m, s, mu), mu);
}

// Symmetric-sum variant, averaging the uniform-weight route over all middle
// pairs: 2 (sum_mu d^mu d^mu*) dG/dt
//   = sum_mu [-1/12 + (5/12) d^mu d^mu*] sum_nu c_{nu nu* mu,mu*}.
// Valid where uniform weights are (the cubic-surface spectrum); end pairs
// carry vanishing traces, so only middle pairs run.
inline BigFloat dg_dt_ring_symmetric(const SingularityModel& m, const Rat& s,
                                     const LinSchema* schema = nullptr) {
    size_t n = m.n;
    LinearizationData lin =
        schema ? linearization(*schema, BigFloat(s)) : linearization(m.id, BigFloat(s));
    Rat denom(0);
    for (size_t mu = 1; mu <= n; ++mu) denom += m.d[mu - 1] * m.d[n - mu];
    BigFloat acc(0);
    for (size_t mu = 2; mu <= n - 1; ++mu) {
        Rat w = Rat(-1, 12) + Rat(5, 12) * m.d[mu - 1] * m.d[n - mu];
        acc = acc + BigFloat(w) * trace_sum(m, lin, ring_route_jets(m, s, mu), mu);
    }
    return acc / (BigFloat(2) * BigFloat(denom));
}

// ---------------------------------------------------------------------------
// Scaling anomaly and Virasoro derivatives.
// ---------------------------------------------------------------------------

// gamma = n d / 48 - (1/4) sum mu_alpha^2; the value of L_E G.
inline Rat scaling_anomaly(const SpectrumData& sp) {
    Rat musq(0);
    for (const auto& ma : sp.mu) musq += ma * ma;
    return Rat(static_cast<long>(sp.n)) * sp.d_charge / Rat(48) - musq / Rat(4);
}

namespace detail {

template <typename S>
using Mat = std::vector<std::vector<S>>;

template <typename S>
Mat<S> mat_mul(const Mat<S>& a, const Mat<S>& b) {
    size_t n = a.size();
    Mat<S> r(n, std::vector<S>(n, S(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k)
            for (size_t j = 0; j < n; ++j) r[i][j] = r[i][j] + a[i][k] * b[k][j];
    return r;
}

template <typename S>
std::vector<S> mat_vec(const Mat<S>& a, const std::vector<S>& x) {
    size_t n = a.size();
    std::vector<S> r(n, S(0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) r[i] = r[i] + a[i][j] * x[j];
    return r;
}

template <typename S>
S mat_trace(const Mat<S>& a) {
    S t(0);
    for (size_t i = 0; i < a.size(); ++i) t = t + a[i][i];
    return t;
}

// Exact inverse of the (rational, constant) flat metric.
inline std::vector<std::vector<Rat>> invert_eta(std::vector<std::vector<Rat>> a) {
    size_t n = a.size();
    std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n, Rat(0)));
    for (size_t i = 0; i < n; ++i) inv[i][i] = Rat(1);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col].is_zero()) ++piv;
        if (piv == n) throw UsageError("flat metric is singular");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Rat d = a[col][col].inverse();
        for (size_t j = 0; j < n; ++j) {
            a[col][j] *= d;
            inv[col][j] *= d;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            Rat f = a[r][col];
            for (size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

} // namespace detail

// Frobenius-algebra data at one point, over a real or complex scalar:
// constant metric eta, all-lower structure tensor c_{abc} = d3F, and the
// Euler components E^a.
template <typename S>
struct FrobeniusPointData {
    std::vector<std::vector<Rat>> eta;
    std::vector<std::vector<std::vector<S>>> c;
    std::vector<S> euler;
};

// Right-hand side of the L_{E^k} G formula:
//   k = 1: n d/48 - (1/4) tr mu^2
//   k >= 2: -(1/4) tr(mu sum_j U^j mu U^{k-1-j})
//           -(1/24) < (sum_j U^j mu U^{k-2-j}) E - (d/2) U^{k-2} E, H >
// with U^nu_mu = c^nu_{mu sigma} E^sigma and H^alpha = eta^{alpha sigma} tr C_sigma.
template <typename S>
S virasoro_rhs(long k, const FrobeniusPointData<S>& pd, const SpectrumData& sp) {
    if (k < 1) throw UsageError("virasoro_rhs: k must be >= 1");
    if (k == 1) return S(scaling_anomaly(sp));
    size_t n = sp.n;
    if (pd.eta.size() != n || pd.c.size() != n || pd.euler.size() != n)
        throw UsageError("virasoro_rhs: dimension mismatch");

    auto eta_inv = detail::invert_eta(pd.eta);

    // U^nu_mu = eta^{nu l} c_{l mu s} E^s
    detail::Mat<S> U(n, std::vector<S>(n, S(0)));
    for (size_t nu = 0; nu < n; ++nu)
        for (size_t mu = 0; mu < n; ++mu) {
            S acc(0);
            for (size_t l = 0; l < n; ++l) {
                if (eta_inv[nu][l].is_zero()) continue;
                S inner(0);
                for (size_t s = 0; s < n; ++s) inner = inner + pd.c[l][mu][s] * pd.euler[s];
                acc = acc + S(eta_inv[nu][l]) * inner;
            }
            U[nu][mu] = acc;
        }

    detail::Mat<S> muM(n, std::vector<S>(n, S(0)));
    for (size_t i = 0; i < n; ++i) muM[i][i] = S(sp.mu[i]);

    std::vector<detail::Mat<S>> Upow;  // U^0 .. U^{k-1}
    detail::Mat<S> id(n, std::vector<S>(n, S(0)));
    for (size_t i = 0; i < n; ++i) id[i][i] = S(1);
    Upow.push_back(id);
    for (long j = 1; j <= k - 1; ++j) Upow.push_back(detail::mat_mul(Upow.back(), U));

    detail::Mat<S> trace_part(n, std::vector<S>(n, S(0)));
    for (long j = 0; j <= k - 1; ++j) {
        auto term = detail::mat_mul(Upow[j], detail::mat_mul(muM, Upow[k - 1 - j]));
        for (size_t i = 0; i < n; ++i)
            for (size_t l = 0; l < n; ++l) trace_part[i][l] = trace_part[i][l] + term[i][l];
    }
    S t1 = S(Rat(-1, 4)) * detail::mat_trace(detail::mat_mul(muM, trace_part));

    detail::Mat<S> bracket_sum(n, std::vector<S>(n, S(0)));
    for (long j = 0; j <= k - 2; ++j) {
        auto term = detail::mat_mul(Upow[j], detail::mat_mul(muM, Upow[k - 2 - j]));
        for (size_t i = 0; i < n; ++i)
            for (size_t l = 0; l < n; ++l) bracket_sum[i][l] = bracket_sum[i][l] + term[i][l];
    }
    S half_d = S(sp.d_charge / Rat(2));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < n; ++l)
            bracket_sum[i][l] = bracket_sum[i][l] - half_d * Upow[k - 2][i][l];
    std::vector<S> X = detail::mat_vec(bracket_sum, pd.euler);

    // H^alpha = eta^{alpha s} tr C_s, (C_s)^nu_mu = eta^{nu l} c_{l s mu}
    std::vector<S> H(n, S(0));
    for (size_t alpha = 0; alpha < n; ++alpha) {
        S acc(0);
        for (size_t s = 0; s < n; ++s) {
            if (eta_inv[alpha][s].is_zero()) continue;
            S tr(0);
            for (size_t nu = 0; nu < n; ++nu)
                for (size_t l = 0; l < n; ++l) {
                    if (eta_inv[nu][l].is_zero()) continue;
                    tr = tr + S(eta_inv[nu][l]) * pd.c[l][s][nu];
                }
            acc = acc + S(eta_inv[alpha][s]) * tr;
        }
        H[alpha] = acc;
    }

    S pairing(0);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            if (pd.eta[a][b].is_zero()) continue;
            pairing = pairing + S(pd.eta[a][b]) * X[a] * H[b];
        }
    return t1 + S(Rat(-1, 24)) * pairing;
}

// ---------------------------------------------------------------------------
// Coxeter caustic data and G coefficients.
// ---------------------------------------------------------------------------

struct CausticDatum {
    std::string group;
    int caustic_count = 0;
    std::vector<long> N_values;
};

// Caustic data per group family; I2(h) takes its parameter from the label.
inline CausticDatum caustic_data(const std::string& group) {
    std::string g;
    for (char ch : group)
        if (!std::isspace(static_cast<unsigned char>(ch))) g.push_back(ch);
    if (g.empty()) throw UsageError("caustic_data: empty group label");

    if (g.size() >= 3 && (g.rfind("I2(", 0) == 0 || g.rfind("i2(", 0) == 0)) {
        if (g.back() != ')') throw UsageError("caustic_data: malformed I2(h) label");
        long h = 0;
        try {
            h = std::stol(g.substr(3, g.size() - 4));
        } catch (...) {
            throw UsageError("caustic_data: malformed I2(h) label");
        }
        if (h < 3) throw UsageError("caustic_data: I2(h) needs h >= 3");
        return {"I2(" + std::to_string(h) + ")", 1, {h}};
    }

    char c = static_cast<char>(std::toupper(static_cast<unsigned char>(g[0])));
    std::string tail = g.substr(1);
    bool tail_numeric = !tail.empty();
    for (char ch : tail)
        if (!std::isdigit(static_cast<unsigned char>(ch))) tail_numeric = false;
    if (!tail.empty() && !tail_numeric) throw UsageError("unknown Coxeter group '" + group + "'");

    switch (c) {
        case 'A':
        case 'D':
        case 'E': return {std::string(1, c) + tail, 1, {3}};
        case 'B': return {"B" + tail, 2, {4, 3}};
        case 'F':
            if (tail == "4") return {"F4", 3, {4, 3, 3}};
            break;
        case 'H':
            if (tail == "3") return {"H3", 2, {5, 3}};
            if (tail == "4") return {"H4", 2, {5, 3}};
            break;
        default: break;
    }
    throw UsageError("unknown Coxeter group '" + group + "'");
}

// G = -(1/24) sum_i (N_i-2)(N_i-3)/N_i log kappa_i; entries with N = 3 carry
// coefficient zero and are omitted, so an empty list means G = 0.
inline std::vector<std::pair<long, Rat>> coxeter_g_coefficient(const std::string& group) {
    CausticDatum cd = caustic_data(group);
    std::vector<std::pair<long, Rat>> out;
    for (long N : cd.N_values)
        if (N > 3) out.emplace_back(N, Rat(-(N - 2) * (N - 3), 24 * N));
    return out;
}

// ---------------------------------------------------------------------------
// Folded elliptic root systems: G = (gamma/deg kappa) log kappa
//                                   - (1/2) log eta(t^n).
// ---------------------------------------------------------------------------

struct FoldingDatum {
    std::string system;
    Rat gamma;
    Rat deg_kappa;
    std::string sigma;
};

inline std::vector<FoldingDatum> folding_table() {
    return {
        {"B3^(1,1)", Rat(-1, 48), Rat(1), "t4 = t5"},
        {"B2^(2,1)", Rat(-1, 24), Rat(2), "t2 = t3, t4 = t5"},
        {"G2^(1,1)", Rat(-1, 24), Rat(1, 2), "t3 = t4 = t5"},
    };
}

struct FoldingG {
    Rat gamma;
    Rat kappa_coefficient;   // coefficient of log kappa (kappa_1 where applicable)
    Rat eta_coefficient;     // coefficient of log eta(t^n)
    Rat lambda_coefficient;  // coefficient of log lambda_t (one exceptional case)
};

inline FoldingG folding_g(const std::string& system) {
    std::string key;
    for (char ch : system)
        if (std::isalnum(static_cast<unsigned char>(ch)))
            key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    if (key == "d411") return {Rat(0), Rat(0), Rat(-1, 2), Rat(0)};
    if (key == "g231") return {Rat(-1, 18), Rat(-1, 12), Rat(0), Rat(5, 24)};
    for (const auto& row : folding_table()) {
        std::string rk;
        for (char ch : row.system)
            if (std::isalnum(static_cast<unsigned char>(ch)))
                rk.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
        if (rk == key) return {row.gamma, row.gamma / row.deg_kappa, Rat(-1, 2), Rat(0)};
    }
    throw UsageError("unknown folded system '" + system + "'");
}

// ---------------------------------------------------------------------------
// Inversion symmetry I and the induced G shift.
// ---------------------------------------------------------------------------

// Flat antidiagonal pairing eta_{a b} = delta_{a+b, n+1}.
inline std::vector<std::vector<Rat>> model_eta(const SingularityModel& m) {
    std::vector<std::vector<Rat>> eta(m.n, std::vector<Rat>(m.n, Rat(0)));
    for (size_t a = 0; a < m.n; ++a) eta[a][m.n - 1 - a] = Rat(1);
    return eta;
}

struct InversionResult {
    std::vector<BigFloat> t_hat;
    Rat shift_coefficient;  // n/24 - 1/2
    BigFloat g_shift;       // (n/24 - 1/2) log |t^n|; branch choices live upstairs
};

inline InversionResult inversion_transform(const SingularityModel& m,
                                           const std::vector<BigFloat>& t) {
    size_t n = m.n;
    if (t.size() != n) throw UsageError("inversion_transform: expected " + std::to_string(n) +
                                        " coordinates");
    const BigFloat& tn = t[n - 1];
    if (tn.is_zero()) throw UsageError("inversion_transform: t^n must be nonzero");

    // t_sigma t^sigma under the antidiagonal pairing
    BigFloat quad(0);
    for (size_t a = 0; a < n; ++a) quad = quad + t[a] * t[n - 1 - a];

    InversionResult out;
    out.t_hat.resize(n);
    out.t_hat[0] = quad / (BigFloat(2) * tn);
    for (size_t i = 1; i + 1 < n; ++i) out.t_hat[i] = t[i] / tn;
    out.t_hat[n - 1] = -BigFloat(1) / tn;
    out.shift_coefficient = Rat(static_cast<long>(n), 24) - Rat(1, 2);
    out.g_shift = BigFloat(out.shift_coefficient) * tn.abs().log();
    return out;
}

// ---------------------------------------------------------------------------
// Isomonodromic tau assembly: tau_I^{-48} = s'(t)^4 / (1-u)^2 * det(m_Hess).
// ---------------------------------------------------------------------------

struct TauFactors {
    BigFloat sprime_pow4;
    Rat disc;       // 1 - u at the marginal value
    Rat hess_det;   // exact determinant of Hessian multiplication
    BigFloat tau_inv48;
};

inline TauFactors tau_inv48_factors(const SingularityModel& m, const RingPoint& pt) {
    Rat s = pt.s[m.marginal()];
    FlatMap fm(m.id);
    BigFloat sp = BigFloat(1) / fm.dt_ds(BigFloat(s));
    TauFactors tf;
    tf.sprime_pow4 = sp.pow_si(4);
    tf.disc = m.discriminant(s);
    tf.hess_det = hessian_mult_det(m, pt);
    tf.tau_inv48 = tf.sprime_pow4 / BigFloat(tf.disc * tf.disc) * BigFloat(tf.hess_det);
    return tf;
}

} // namespace gfn
