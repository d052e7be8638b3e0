#pragma once

#include "gfn/bigfloat.hpp"
#include "gfn/errors.hpp"
#include "gfn/rational.hpp"

namespace gfn {

namespace detail {

// Gauss series sum_k (a)_k (b)_k / ((c)_k k!) u^k, u inside the unit disc.
inline BigFloat gauss_series(const Rat& a, const Rat& b, const Rat& c, const BigFloat& u) {
    if (c.is_integer() && c.sign() <= 0)
        throw DomainError("hyp2f1: lower parameter is a non-positive integer");
    BigFloat eps = BigFloat(1) / BigFloat(10).pow_si(BigFloat::default_digits() + 6);
    BigFloat term(1), sum(1);
    const long kmax = 200000;
    for (long k = 0; k < kmax; ++k) {
        Rat ratio = (a + Rat(k)) * (b + Rat(k)) / ((c + Rat(k)) * Rat(k + 1));
        term = term * BigFloat(ratio) * u;
        sum += term;
        if (term.abs() < eps * (BigFloat(1) + sum.abs())) return sum;
    }
    throw ConvergenceError("hyp2f1: series did not converge within " + std::to_string(kmax) +
                           " terms");
}

} // namespace detail

// 2F1(a,b;c;u) for rational parameters and real u. Arguments u < -1/2 are
// routed through the Pfaff transform
//   F(a,b;c;u) = (1-u)^(-a) F(a, c-b; c; u/(u-1)),
// which maps u in (-49, -1/2) to (1/3, 0.98). Effective arguments beyond
// 0.98 in absolute value are refused.
inline BigFloat hyp2f1(const Rat& a, const Rat& b, const Rat& c, const BigFloat& u) {
    const BigFloat limit = BigFloat(Rat(98, 100));
    if (u < BigFloat(Rat(-1, 2))) {
        BigFloat w = u / (u - BigFloat(1));
        if (w.abs() > limit)
            throw DomainError("hyp2f1: argument too far in the left half line");
        BigFloat factor = (BigFloat(1) - u).pow(BigFloat(-a));
        return factor * detail::gauss_series(a, c - b, c, w);
    }
    if (u.abs() > limit) throw DomainError("hyp2f1: argument too close to the singular point 1");
    return detail::gauss_series(a, b, c, u);
}

// d/du 2F1(a,b;c;u) = (a b / c) 2F1(a+1,b+1;c+1;u)
inline BigFloat hyp2f1_deriv(const Rat& a, const Rat& b, const Rat& c, const BigFloat& u) {
    return BigFloat(a * b / c) * hyp2f1(a + Rat(1), b + Rat(1), c + Rat(1), u);
}

// Parameter triple (a, b, c) of a Gauss hypergeometric factor.
struct HypParams {
    Rat a, b, c;
    bool operator==(const HypParams& o) const { return a == o.a && b == o.b && c == o.c; }
};

// d^k/du^k F(a,b;c;u) via the contiguous ladder
// F' = (ab/c) F(a+1,b+1;c+1;u).
inline BigFloat hyp2f1(const HypParams& p, const BigFloat& u, int derivative_order = 0) {
    if (derivative_order < 0) throw UsageError("hyp2f1: negative derivative order");
    Rat a = p.a, b = p.b, c = p.c, f(1);
    for (int k = 0; k < derivative_order; ++k) {
        f *= a * b / c;
        a += Rat(1);
        b += Rat(1);
        c += Rat(1);
    }
    BigFloat v = hyp2f1(a, b, c, u);
    return f == Rat(1) ? v : BigFloat(f) * v;
}

} // namespace gfn
