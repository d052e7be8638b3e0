#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gfn/bigfloat.hpp"
#include "gfn/hypergeometric.hpp"
#include "gfn/singularity.hpp"

namespace gfn {

// Marginal-direction flat coordinate t(s) = s * F(num; u(s)) / F(den; u(s))
// with u a cubic or quadratic monomial in s. Its derivative collapses through
// the hypergeometric Wronskian to dt/ds = 1 / ((1-u) g(u)^2), where
// g = F(den; .) is the denominator factor; that closed form drives the Newton
// inversion s(t).
class FlatMap {
  public:
    explicit FlatMap(ModelId id) : id_(id) {
        switch (id) {
            case ModelId::E6t:
                num_ = {Rat(2, 3), Rat(2, 3), Rat(4, 3)};
                den_ = {Rat(1, 3), Rat(1, 3), Rat(2, 3)};
                u_coeff_ = Rat(-1, 27);
                u_pow_ = 3;
                break;
            case ModelId::E7t:
                num_ = {Rat(3, 4), Rat(3, 4), Rat(3, 2)};
                den_ = {Rat(1, 4), Rat(1, 4), Rat(1, 2)};
                u_coeff_ = Rat(1, 4);
                u_pow_ = 2;
                break;
            case ModelId::E8t:
                num_ = {Rat(5, 12), Rat(11, 12), Rat(4, 3)};
                den_ = {Rat(1, 12), Rat(7, 12), Rat(2, 3)};
                u_coeff_ = Rat(-4, 27);
                u_pow_ = 3;
                break;
        }
    }

    ModelId id() const { return id_; }
    const HypParams& num_params() const { return num_; }
    const HypParams& den_params() const { return den_; }

    Rat u_of_s_exact(const Rat& s) const { return u_coeff_ * s.pow(u_pow_); }
    BigFloat u_of_s(const BigFloat& s) const { return BigFloat(u_coeff_) * s.pow_si(u_pow_); }
    BigFloat du_ds(const BigFloat& s) const {
        return BigFloat(u_coeff_ * Rat(u_pow_)) * s.pow_si(u_pow_ - 1);
    }

    BigFloat f(const BigFloat& u) const { return hyp2f1(num_, u); }
    BigFloat g(const BigFloat& u) const { return hyp2f1(den_, u); }
    BigFloat fprime(const BigFloat& u) const { return hyp2f1(num_, u, 1); }
    BigFloat gprime(const BigFloat& u) const { return hyp2f1(den_, u, 1); }

    BigFloat t_of_s(const BigFloat& s) const {
        BigFloat u = u_of_s(s);
        return s * f(u) / g(u);
    }

    // Wronskian closed form of the derivative.
    BigFloat dt_ds(const BigFloat& s) const {
        BigFloat u = u_of_s(s);
        BigFloat gg = g(u);
        return BigFloat(1) / ((BigFloat(1) - u) * gg * gg);
    }

    // Same derivative assembled by the quotient rule from four series
    // evaluations; kept as an independent route for cross-checks.
    BigFloat dt_ds_series(const BigFloat& s) const {
        BigFloat u = u_of_s(s);
        BigFloat fv = f(u), gv = g(u);
        return fv / gv + s * du_ds(s) * (fprime(u) * gv - fv * gprime(u)) / (gv * gv);
    }

    struct InverseResult {
        BigFloat s;
        int iterations = 0;  // Newton steps; >= 100 means the bisection path ran
    };

    // Newton inversion seeded at s = t (the map is tangent to the identity at
    // the origin). t(s) is strictly increasing where defined, so a bracketed
    // bisection covers the rare case Newton fails to settle.
    InverseResult s_of_t(const BigFloat& t) const {
        const BigFloat tol = BigFloat::pow10(-(BigFloat::default_digits() - 6));
        if (t.is_zero()) return {BigFloat(0), 0};

        BigFloat s = t, last_good(0);
        for (int it = 1; it <= 100; ++it) {
            BigFloat resid, deriv;
            try {
                resid = t_of_s(s) - t;
                deriv = dt_ds(s);
            } catch (const DomainError&) {
                s = (s + last_good) / BigFloat(2);
                continue;
            }
            if (deriv.sign() <= 0) break;
            last_good = s;
            BigFloat step = resid / deriv;
            s = s - step;
            if (step.abs() <= tol) return {s, it};
        }
        return bisect(t, tol);
    }

    // Bracketed fallback; public so callers can force the slow path.
    InverseResult bisect(const BigFloat& t, const BigFloat& tol) const {
        const int dir = t.sign();
        BigFloat lo(0), hi(dir);
        try {
            bool bracketed = false;
            for (int k = 0; k < 64 && !bracketed; ++k) {
                BigFloat fh = t_of_s(hi) - t;
                if (fh.sign() * dir >= 0) {
                    bracketed = true;
                } else {
                    lo = hi;
                    hi = hi * BigFloat(2);
                }
            }
            if (!bracketed) throw ConvergenceError("s_of_t: cannot bracket the target");
            int steps = 0;
            while ((hi - lo).abs() > tol && steps < 4000) {
                BigFloat mid = (lo + hi) / BigFloat(2);
                BigFloat fm = t_of_s(mid) - t;
                if (fm.sign() * dir >= 0)
                    hi = mid;
                else
                    lo = mid;
                ++steps;
            }
            if (steps >= 4000) throw ConvergenceError("s_of_t: bisection stalled");
            return {(lo + hi) / BigFloat(2), 100 + steps};
        } catch (const DomainError&) {
            throw ConvergenceError("s_of_t: inverse left the hypergeometric domain");
        }
    }

  private:
    ModelId id_;
    HypParams num_, den_;
    Rat u_coeff_;
    long u_pow_ = 0;
};

// One multiplicative term of a linearization coefficient:
//   coeff * s^spow * (1-u)^pow_1mu * g(u)^g_pow * g'(u)^gprime_pow * F(hyp; u)
struct LinTerm {
    Rat coeff;
    long spow = 0;
    Rat pow_1mu = Rat(0);
    int g_pow = 0;
    int gprime_pow = 0;
    std::optional<HypParams> hyp;
};

// First-order data of the coordinate change s(t) along the marginal axis:
// diagonal factors ds^a/dt^a and the second-derivative cross coefficients
// d2 s^a / dt^mu dt^mustar, each a sum of LinTerms. Indices are 0-based.
struct LinSchema {
    ModelId model;
    std::string source;  // "builtin-paper" or "external-file"
    std::vector<std::vector<LinTerm>> diag;
    struct CrossEntry {
        size_t a = 0, mu = 0, mustar = 0;
        std::vector<LinTerm> terms;
    };
    std::vector<CrossEntry> cross;
};

// The cubic-surface family: s^a = (1-u)^{2/3} g t^a for the three weight-1/3
// directions, (1-u)^{1/3} g t^a + O(t^2) for the three weight-2/3 ones, and
// the only second-order cross terms feed the identity direction with
// coefficient (1/9) s^2 (1-u) g g' for each dual pair.
inline LinSchema builtin_e6_schema() {
    LinSchema sch;
    sch.model = ModelId::E6t;
    sch.source = "builtin-paper";
    auto one = [](Rat c, long sp, Rat p1mu, int gp, int gpp) {
        LinTerm t;
        t.coeff = std::move(c);
        t.spow = sp;
        t.pow_1mu = std::move(p1mu);
        t.g_pow = gp;
        t.gprime_pow = gpp;
        return std::vector<LinTerm>{t};
    };
    sch.diag.resize(8);
    sch.diag[0] = one(Rat(1), 0, Rat(0), 0, 0);
    for (size_t a : {1, 2, 3}) sch.diag[a] = one(Rat(1), 0, Rat(1, 3), 1, 0);
    for (size_t a : {4, 5, 6}) sch.diag[a] = one(Rat(1), 0, Rat(2, 3), 1, 0);
    sch.diag[7] = one(Rat(1), 0, Rat(1), 2, 0);
    for (auto [mu, mustar] : {std::pair<size_t, size_t>{1, 6}, {2, 5}, {3, 4}})
        sch.cross.push_back({0, mu, mustar, one(Rat(1, 9), 2, Rat(1), 1, 1)});
    return sch;
}

// Evaluated linearization at one marginal point. diag_dt carries the
// t-derivative of each diagonal factor along the marginal axis, needed by the
// ring-route trace conversion where one leg of the pair is differentiated.
struct LinearizationData {
    ModelId model;
    std::string source;
    std::vector<BigFloat> diag;
    std::vector<BigFloat> diag_dt;
    struct Cross {
        size_t a = 0, mu = 0, mustar = 0;
        BigFloat value;
    };
    std::vector<Cross> cross;

    const BigFloat* cross_value(size_t a, size_t mu, size_t mustar) const {
        for (const auto& c : cross) {
            if (c.a == a && ((c.mu == mu && c.mustar == mustar) ||
                             (c.mu == mustar && c.mustar == mu)))
                return &c.value;
        }
        return nullptr;
    }
};

namespace detail {

struct LinContext {
    BigFloat s, one_minus_u, g, gp, gpp, u, du_ds;
};

inline BigFloat eval_lin_term(const LinTerm& t, const LinContext& ctx) {
    BigFloat v(t.coeff);
    if (t.spow != 0) v = v * ctx.s.pow_si(t.spow);
    if (!t.pow_1mu.is_zero()) v = v * pow_rat(ctx.one_minus_u, t.pow_1mu);
    for (int k = 0; k < t.g_pow; ++k) v = v * ctx.g;
    for (int k = 0; k < t.gprime_pow; ++k) v = v * ctx.gp;
    if (t.hyp) v = v * hyp2f1(*t.hyp, ctx.u);
    return v;
}

// d/ds of one term: the explicit s-power plus the chain rule through u(s).
inline BigFloat eval_lin_term_ds(const LinTerm& t, const LinContext& ctx) {
    BigFloat spow = t.spow != 0 ? ctx.s.pow_si(t.spow) : BigFloat(1);
    BigFloat p1mu = t.pow_1mu.is_zero() ? BigFloat(1) : pow_rat(ctx.one_minus_u, t.pow_1mu);
    BigFloat gpow(1), gppow(1);
    for (int k = 0; k < t.g_pow; ++k) gpow = gpow * ctx.g;
    for (int k = 0; k < t.gprime_pow; ++k) gppow = gppow * ctx.gp;
    BigFloat h = t.hyp ? hyp2f1(*t.hyp, ctx.u) : BigFloat(1);
    BigFloat phi = p1mu * gpow * gppow * h;

    BigFloat dphi(0);
    if (!t.pow_1mu.is_zero())
        dphi = dphi - BigFloat(t.pow_1mu) * pow_rat(ctx.one_minus_u, t.pow_1mu - Rat(1)) *
                          gpow * gppow * h;
    if (t.g_pow > 0) {
        BigFloat gm(t.g_pow);
        for (int k = 0; k < t.g_pow - 1; ++k) gm = gm * ctx.g;
        dphi = dphi + p1mu * gm * ctx.gp * gppow * h;
    }
    if (t.gprime_pow > 0) {
        BigFloat gpm(t.gprime_pow);
        for (int k = 0; k < t.gprime_pow - 1; ++k) gpm = gpm * ctx.gp;
        dphi = dphi + p1mu * gpow * gpm * ctx.gpp * h;
    }
    if (t.hyp) dphi = dphi + p1mu * gpow * gppow * hyp2f1(*t.hyp, ctx.u, 1);

    BigFloat out = spow * dphi * ctx.du_ds;
    if (t.spow != 0)
        out = out + BigFloat(Rat(t.spow)) * ctx.s.pow_si(t.spow - 1) * phi;
    return out * BigFloat(t.coeff);
}

} // namespace detail

inline LinearizationData linearization(const LinSchema& sch, const BigFloat& s) {
    FlatMap fm(sch.model);
    detail::LinContext ctx;
    ctx.s = s;
    ctx.u = fm.u_of_s(s);
    ctx.one_minus_u = BigFloat(1) - ctx.u;
    ctx.g = fm.g(ctx.u);
    ctx.gp = fm.gprime(ctx.u);
    ctx.gpp = hyp2f1(fm.den_params(), ctx.u, 2);
    ctx.du_ds = fm.du_ds(s);
    BigFloat ds_dt = ctx.one_minus_u * ctx.g * ctx.g;

    LinearizationData data;
    data.model = sch.model;
    data.source = sch.source;
    for (const auto& terms : sch.diag) {
        BigFloat v(0), dv(0);
        for (const auto& t : terms) {
            v = v + detail::eval_lin_term(t, ctx);
            dv = dv + detail::eval_lin_term_ds(t, ctx);
        }
        data.diag.push_back(v);
        data.diag_dt.push_back(dv * ds_dt);
    }
    for (const auto& ce : sch.cross) {
        BigFloat v(0);
        for (const auto& t : ce.terms) v = v + detail::eval_lin_term(t, ctx);
        data.cross.push_back({ce.a, ce.mu, ce.mustar, v});
    }
    return data;
}

inline LinearizationData linearization(ModelId id, const BigFloat& s) {
    if (id == ModelId::E6t) return linearization(builtin_e6_schema(), s);
    throw MissingDataError("linearization data for " + model_name(id) +
                           " is not built in; supply a data file");
}

} // namespace gfn
