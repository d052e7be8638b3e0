#pragma once

#include <array>
#include <map>
#include <mutex>
#include <sstream>

#include "gfn/getzler.hpp"
#include "gfn/modular.hpp"
#include "gfn/polynomial.hpp"

namespace gfn {

struct HalphenState {
    BigComplex tau;
    BigComplex u, v, w;
};

inline std::array<BigComplex, 3> halphen_rhs(const HalphenState& s) {
    return {s.u * s.v + s.u * s.w - s.v * s.w,
            s.v * s.u + s.v * s.w - s.u * s.w,
            s.w * s.u + s.w * s.v - s.u * s.v};
}

// ---------------------------------------------------------------------------
// Theta-constant solutions.
//
// The candidate set is every assignment u, v, w <- sign * 2 (log theta_k)'
// with (k) a permutation of (2, 3, 4) and a global sign. Which member solves
// the system is decided by the residual procedure below, not assumed; the
// winner is frozen as kThetaConvention and re-derived in the test suite.
// ---------------------------------------------------------------------------

struct ThetaConvention {
    std::array<int, 3> kinds; // theta indices assigned to (u, v, w)
    int sign;                 // +1 or -1
};

inline const std::array<ThetaConvention, 12>& theta_conventions() {
    static const std::array<ThetaConvention, 12> table = {{
        {{2, 3, 4}, +1}, {{2, 4, 3}, +1}, {{3, 2, 4}, +1}, {{3, 4, 2}, +1},
        {{4, 2, 3}, +1}, {{4, 3, 2}, +1}, {{2, 3, 4}, -1}, {{2, 4, 3}, -1},
        {{3, 2, 4}, -1}, {{3, 4, 2}, -1}, {{4, 2, 3}, -1}, {{4, 3, 2}, -1},
    }};
    return table;
}

inline HalphenState theta_triple(const ThetaConvention& conv, const BigComplex& tau) {
    if (tau.im < BigFloat(1))
        throw DomainError("theta_triple: Im(tau) must be >= 1 for series accuracy");
    BigComplex s(static_cast<long>(conv.sign));
    HalphenState st;
    st.tau = tau;
    st.u = s * BigComplex(2) * theta_log_deriv(conv.kinds[0], tau, 1);
    st.v = s * BigComplex(2) * theta_log_deriv(conv.kinds[1], tau, 1);
    st.w = s * BigComplex(2) * theta_log_deriv(conv.kinds[2], tau, 1);
    return st;
}

// max component mismatch between the triple's tau-derivative and the system
inline BigFloat theta_convention_residual(const ThetaConvention& conv, const BigComplex& tau) {
    HalphenState st = theta_triple(conv, tau);
    auto rhs = halphen_rhs(st);
    BigComplex s(static_cast<long>(conv.sign));
    BigFloat worst(0);
    for (int i = 0; i < 3; ++i) {
        BigComplex ddt = s * BigComplex(2) * theta_log_deriv(conv.kinds[i], tau, 2);
        BigFloat r = (ddt - rhs[static_cast<size_t>(i)]).abs();
        if (worst < r) worst = r;
    }
    return worst;
}

// Frozen outcome of select_theta_convention at tau = 2i: identity assignment
// (u, v, w) = +2 (log theta_2, log theta_3, log theta_4)'.
inline constexpr size_t kThetaConvention = 0;

inline HalphenState theta_candidate(const BigComplex& tau) {
    const ThetaConvention& conv = theta_conventions()[kThetaConvention];
    BigFloat res = theta_convention_residual(conv, tau);
    if (res < BigFloat::pow10(-20)) return theta_triple(conv, tau);
    std::ostringstream msg;
    msg << "theta_candidate: no convention meets the residual gate at tau = "
        << tau.to_string(8) << "; residuals:";
    for (const auto& c : theta_conventions()) {
        msg << " [" << (c.sign > 0 ? "+" : "-") << c.kinds[0] << c.kinds[1] << c.kinds[2]
            << "] " << theta_convention_residual(c, tau).to_string(4) << ";";
    }
    throw ConventionError(msg.str());
}

// ---------------------------------------------------------------------------
// Adaptive Runge-Kutta integration along the straight segment tau0 -> tau1.
// ---------------------------------------------------------------------------

namespace detail {

inline HalphenState rk4_step(const HalphenState& s, const BigComplex& h) {
    auto scaled = [&](const HalphenState& base, const std::array<BigComplex, 3>& k,
                      const Rat& f) {
        HalphenState r = base;
        BigComplex fh = h * BigComplex(f);
        r.tau = base.tau + fh;
        r.u = base.u + fh * k[0];
        r.v = base.v + fh * k[1];
        r.w = base.w + fh * k[2];
        return r;
    };
    auto k1 = halphen_rhs(s);
    auto k2 = halphen_rhs(scaled(s, k1, Rat(1, 2)));
    auto k3 = halphen_rhs(scaled(s, k2, Rat(1, 2)));
    auto k4 = halphen_rhs(scaled(s, k3, Rat(1)));
    HalphenState out = s;
    out.tau = s.tau + h;
    BigComplex h6 = h / BigComplex(6);
    out.u = s.u + h6 * (k1[0] + BigComplex(2) * (k2[0] + k3[0]) + k4[0]);
    out.v = s.v + h6 * (k1[1] + BigComplex(2) * (k2[1] + k3[1]) + k4[1]);
    out.w = s.w + h6 * (k1[2] + BigComplex(2) * (k2[2] + k3[2]) + k4[2]);
    return out;
}

inline BigFloat state_gap(const HalphenState& a, const HalphenState& b) {
    BigFloat g = (a.u - b.u).abs();
    BigFloat gv = (a.v - b.v).abs();
    BigFloat gw = (a.w - b.w).abs();
    if (g < gv) g = gv;
    if (g < gw) g = gw;
    return g;
}

} // namespace detail

struct HalphenStepControl {
    BigFloat tol = BigFloat::pow10(-20); // local error target per step
    long max_steps = 200000;
};

// Step-doubling RK4: one full step against two half steps; the gap estimates
// the local error. Step underflow (poles of the system) raises
// IntegrationError carrying the last good state in the message.
inline HalphenState halphen_integrate(const HalphenState& state0, const BigComplex& tau1,
                                      const HalphenStepControl& ctl = {}) {
    BigComplex span = tau1 - state0.tau;
    if (span.abs().is_zero()) return state0;
    HalphenState cur = state0;
    BigFloat remaining = span.abs();
    BigComplex dir = span / BigComplex(remaining);
    BigFloat h = remaining / BigFloat(16);
    BigFloat floor_h = remaining * BigFloat::pow10(-28);
    for (long step = 0; step < ctl.max_steps; ++step) {
        BigFloat dist = (tau1 - cur.tau).abs();
        if (dist < remaining * BigFloat::pow10(-30)) return cur;
        if (h > dist) h = dist;
        BigComplex hc = dir * BigComplex(h);
        HalphenState full = detail::rk4_step(cur, hc);
        BigComplex half = hc / BigComplex(2);
        HalphenState two = detail::rk4_step(detail::rk4_step(cur, half), half);
        BigFloat err = detail::state_gap(full, two) / BigFloat(15);
        BigFloat scale = BigFloat(1) + two.u.abs() + two.v.abs() + two.w.abs();
        if (err < ctl.tol * scale) {
            cur = two;
            if (err * BigFloat(32) < ctl.tol * scale) h = h * BigFloat(2);
        } else {
            h = h / BigFloat(2);
            if (h < floor_h) {
                std::ostringstream msg;
                msg << "halphen_integrate: step underflow near tau = " << cur.tau.to_string(12)
                    << " (last good state u = " << cur.u.to_string(12)
                    << ", v = " << cur.v.to_string(12) << ", w = " << cur.w.to_string(12)
                    << ")";
                throw IntegrationError(msg.str());
            }
        }
    }
    throw IntegrationError("halphen_integrate: step budget exhausted");
}

// ---------------------------------------------------------------------------
// Coefficient jets: tau-derivatives of (u, v, w) to arbitrary order by
// Leibniz differentiation of the system itself, never numerically.
// ---------------------------------------------------------------------------

inline std::array<std::vector<BigComplex>, 3> halphen_jet(const HalphenState& s, int orders) {
    if (orders < 0) throw UsageError("halphen_jet: orders must be >= 0");
    size_t m = static_cast<size_t>(orders);
    std::array<std::vector<BigComplex>, 3> d;
    for (auto& col : d) col.assign(m + 1, BigComplex(0));
    d[0][0] = s.u;
    d[1][0] = s.v;
    d[2][0] = s.w;
    std::vector<std::vector<Rat>> binom(m + 1, std::vector<Rat>(m + 1, Rat(0)));
    for (size_t i = 0; i <= m; ++i) {
        binom[i][0] = Rat(1);
        for (size_t j = 1; j <= i; ++j)
            binom[i][j] = binom[i - 1][j - 1] + (j <= i - 1 ? binom[i - 1][j] : Rat(0));
    }
    // d^{k+1} x = d^k (x y + x z - y z) for the cyclic assignments
    for (size_t k = 0; k + 1 <= m; ++k)
        for (int c = 0; c < 3; ++c) {
            const auto& x = d[static_cast<size_t>(c)];
            const auto& y = d[static_cast<size_t>((c + 1) % 3)];
            const auto& z = d[static_cast<size_t>((c + 2) % 3)];
            BigComplex acc(0);
            for (size_t j = 0; j <= k; ++j) {
                BigComplex b{BigFloat(binom[k][j])};
                acc = acc + b * (x[j] * y[k - j] + x[j] * z[k - j] - y[j] * z[k - j]);
            }
            d[static_cast<size_t>(c)][k + 1] = acc;
        }
    return d;
}

// ---------------------------------------------------------------------------
// The six-variable prepotential with Halphen coefficient functions:
//   F = (1/4) t1^2 t6 + (1/2) t1 (t2^2+..+t5^2)
//       - (1/24)(t2^4+..+t5^4)(u+v+w) - (1/4)(sum_{i<j} ti^2 tj^2)(u+v)
//       - t2 t3 t4 t5 (u-v),
// u, v, w functions of t6 alone. The displayed pair list has one slot
// printed as t2^3 t4^2; degree counting and associativity force the
// symmetric pair sum, so t3^2 t4^2 is used.
// ---------------------------------------------------------------------------

namespace detail {

struct D4Channel {
    RatPoly poly;                              // polynomial part in t1..t5
    std::function<BigComplex(const std::vector<BigComplex>&, size_t)> coeff;
};

inline RatPoly d4_mono(std::vector<int> e, Rat c) {
    return RatPoly::term(5, Monomial(std::move(e)), std::move(c));
}

// per-tau coefficient jets, memoized: 5 channels x orders 0..5
struct D4CoeffCache {
    std::mutex mu;
    std::map<std::string, std::array<std::vector<BigComplex>, 3>> jets;

    const std::array<std::vector<BigComplex>, 3>& get(const BigComplex& tau) {
        std::lock_guard<std::mutex> lock(mu);
        std::string key = tau.to_string(static_cast<int>(BigFloat::default_digits()));
        auto it = jets.find(key);
        if (it == jets.end()) {
            if (tau.im < BigFloat(1))
                throw DomainError("d4 oracle: Im(t6) must be >= 1");
            HalphenState st = theta_candidate(tau);
            it = jets.emplace(key, halphen_jet(st, 5)).first;
        }
        return it->second;
    }
};

} // namespace detail

struct D4Oracles {
    PrepotentialOracle<BigComplex> f;
    GOracle<BigComplex> g;
};

inline SpectrumData d4_spectrum() {
    return make_spectrum(Rat(1), {Rat(0), Rat(1, 2), Rat(1, 2), Rat(1, 2), Rat(1, 2), Rat(1)});
}

inline D4Oracles d4_oracles(size_t convention = kThetaConvention) {
    using C = BigComplex;
    auto cache = std::make_shared<detail::D4CoeffCache>();
    const ThetaConvention conv = theta_conventions()[convention];

    // channels: polynomial in t1..t5 times coefficient function of t6
    struct Chan {
        RatPoly poly;
        int kind; // 0: t6 itself, 1: u+v+w, 2: u+v, 3: u-v, 4: constant 1
    };
    auto chans = std::make_shared<std::vector<Chan>>();
    {
        RatPoly p_sq = detail::d4_mono({2, 0, 0, 0, 0}, Rat(1, 4));
        chans->push_back({p_sq, 0});
        RatPoly p_quad = RatPoly::zero(5);
        for (size_t i = 1; i <= 4; ++i) {
            std::vector<int> e(5, 0);
            e[0] = 1;
            e[i] = 2;
            p_quad = p_quad + detail::d4_mono(e, Rat(1, 2));
        }
        chans->push_back({p_quad, 4});
        RatPoly p4 = RatPoly::zero(5);
        for (size_t i = 1; i <= 4; ++i) {
            std::vector<int> e(5, 0);
            e[i] = 4;
            p4 = p4 + detail::d4_mono(e, Rat(-1, 24));
        }
        chans->push_back({p4, 1});
        RatPoly pp = RatPoly::zero(5);
        for (size_t i = 1; i <= 4; ++i)
            for (size_t j = i + 1; j <= 4; ++j) {
                std::vector<int> e(5, 0);
                e[i] = 2;
                e[j] = 2;
                pp = pp + detail::d4_mono(e, Rat(-1, 4));
            }
        chans->push_back({pp, 2});
        chans->push_back({detail::d4_mono({0, 1, 1, 1, 1}, Rat(-1)), 3});
    }

    // all t1..t5 derivative polynomials to order five, keyed by channel+tuple
    auto derivs =
        std::make_shared<std::map<std::pair<size_t, std::vector<size_t>>, RatPoly>>();
    for (size_t ci = 0; ci < chans->size(); ++ci) {
        std::function<void(const RatPoly&, std::vector<size_t>, size_t, int)> build =
            [&](const RatPoly& base, std::vector<size_t> idx, size_t from, int depth) {
                (*derivs)[{ci, idx}] = base;
                if (depth == 5) return;
                for (size_t v = from; v < 5; ++v) {
                    auto key = idx;
                    key.push_back(v);
                    build(base.derivative(v), key, v, depth + 1);
                }
            };
        build((*chans)[ci].poly, {}, 0, 0);
    }

    auto coeff_jet = [cache, conv](const C& tau, int kind, size_t order) -> C {
        if (kind == 4) return order == 0 ? C(1) : C(0);
        if (kind == 0) {
            if (order == 0) return tau;
            return order == 1 ? C(1) : C(0);
        }
        const auto& j = cache->get(tau);
        const C& du = j[0][order];
        const C& dv = j[1][order];
        const C& dw = j[2][order];
        if (kind == 1) return du + dv + C(4) * dw;
        if (kind == 2) return du + dv;
        return du - dv;
    };

    auto eval = [chans, derivs, coeff_jet](const std::vector<C>& pt,
                                           std::vector<size_t> idx) -> C {
        if (pt.size() != 6) throw UsageError("d4 oracle: point must have six coordinates");
        size_t tau_order = 0;
        std::vector<size_t> rest;
        for (size_t i : idx) {
            if (i == 5)
                ++tau_order;
            else
                rest.push_back(i);
        }
        std::sort(rest.begin(), rest.end());
        C total(0);
        for (size_t ci = 0; ci < chans->size(); ++ci) {
            auto it = derivs->find({ci, rest});
            if (it == derivs->end()) continue; // order exceeds polynomial degree
            if (it->second.is_zero()) continue;
            C cfun = coeff_jet(pt[5], (*chans)[ci].kind, tau_order);
            if (cfun.is_zero()) continue;
            C pval(0);
            for (const auto& [mono, coc] : it->second.terms()) {
                C term{C(coc)};
                for (size_t v = 0; v < 5; ++v)
                    for (int k = 0; k < mono.exps[v]; ++k) term = term * pt[v];
                pval = pval + term;
            }
            total = total + pval * cfun;
        }
        return total;
    };

    D4Oracles out;
    out.f.n = 6;
    out.f.eta.assign(6, std::vector<Rat>(6, Rat(0)));
    out.f.eta[0][5] = out.f.eta[5][0] = Rat(1, 2);
    for (size_t i = 1; i <= 4; ++i) out.f.eta[i][i] = Rat(1);
    out.f.d_weights = {Rat(1), Rat(1, 2), Rat(1, 2), Rat(1, 2), Rat(1, 2), Rat(0)};
    out.f.d_charge = Rat(1);
    out.f.d3 = [eval](const std::vector<C>& pt, size_t a, size_t b, size_t c) {
        return eval(pt, {a, b, c});
    };
    out.f.d4 = [eval](const std::vector<C>& pt, size_t a, size_t b, size_t c, size_t d) {
        return eval(pt, {a, b, c, d});
    };
    out.f.d5 = [eval](const std::vector<C>& pt, size_t a, size_t b, size_t c, size_t d,
                      size_t e) { return eval(pt, {a, b, c, d, e}); };
    out.f.sample = [](std::mt19937_64& rng) {
        std::vector<C> pt(6);
        for (size_t a = 0; a < 5; ++a) pt[a] = C(Rat(scan_draw(rng, -200, 200), 100));
        pt[5] = C(BigFloat(Rat(scan_draw(rng, -100, 100), 100)),
                  BigFloat(Rat(150 + scan_draw(rng, 0, 100), 100)));
        return pt;
    };

    out.g.g1 = [](const std::vector<C>& pt, size_t a) {
        if (a != 5) return C(0);
        return C(Rat(-1, 2)) * eta_log_deriv(pt[5], 1);
    };
    out.g.g2 = [](const std::vector<C>& pt, size_t a, size_t b) {
        if (a != 5 || b != 5) return C(0);
        return C(Rat(-1, 2)) * eta_log_deriv(pt[5], 2);
    };
    return out;
}

// Residual-minimization over the convention set: gate by the system residual,
// then rank surviving conventions by the WDVV defect of the full oracle at a
// fixed probe point. Returns the winning index.
inline size_t select_theta_convention(const BigComplex& tau) {
    std::vector<BigComplex> probe = {
        BigComplex(Rat(1, 3)),  BigComplex(Rat(-1, 2)), BigComplex(Rat(2, 5)),
        BigComplex(Rat(3, 7)),  BigComplex(Rat(-2, 3)), tau};
    size_t best = theta_conventions().size();
    BigFloat best_wdvv(0);
    std::ostringstream report;
    for (size_t i = 0; i < theta_conventions().size(); ++i) {
        BigFloat ode = theta_convention_residual(theta_conventions()[i], tau);
        report << " [" << i << "] ode " << ode.to_string(4);
        if (!(ode < BigFloat::pow10(-20))) {
            report << ";";
            continue;
        }
        BigFloat w = wdvv_residual(d4_oracles(i).f, probe);
        report << " wdvv " << w.to_string(4) << ";";
        // margin beats last-bit noise: earlier conventions win ties
        if (best == theta_conventions().size() || w * BigFloat(2) < best_wdvv) {
            best = i;
            best_wdvv = w;
        }
    }
    if (best == theta_conventions().size())
        throw ConventionError("select_theta_convention: no convention passes:" + report.str());
    return best;
}

} // namespace gfn
