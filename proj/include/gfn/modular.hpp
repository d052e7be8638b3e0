#pragma once

#include "gfn/bigfloat.hpp"
#include "gfn/errors.hpp"

namespace gfn {

namespace detail {

inline void require_upper_half(const BigComplex& tau, const char* who) {
    if (tau.im.sign() <= 0) throw DomainError(std::string(who) + ": Im(tau) must be positive");
}

inline BigFloat series_eps() {
    return BigFloat(1) / BigFloat(10).pow_si(BigFloat::default_digits() + 8);
}

} // namespace detail

// q = exp(2 pi i tau), |q| < 1 on the upper half plane
inline BigComplex nome_q(const BigComplex& tau) {
    detail::require_upper_half(tau, "nome_q");
    BigFloat two_pi = BigFloat(2) * BigFloat::pi();
    return (BigComplex(BigFloat(0), two_pi) * tau).exp();
}

// Dedekind eta via the product q^(1/24) prod_{n>=1} (1 - q^n). The prefactor
// is exp(pi i tau / 12), fixing the branch directly in tau.
inline BigComplex eta(const BigComplex& tau) {
    detail::require_upper_half(tau, "eta");
    BigComplex q = nome_q(tau);
    BigFloat qa = q.abs();
    if (qa > BigFloat(Rat(999, 1000)))
        throw ConvergenceError("eta: |q| too close to 1, move tau away from the real axis");
    BigFloat eps = detail::series_eps();
    BigComplex prefac = (BigComplex(BigFloat(0), BigFloat::pi() / BigFloat(12)) * tau).exp();
    BigComplex prod(1), qn(1);
    BigFloat qan(1);
    for (long n = 1; n < 2000000; ++n) {
        qn *= q;
        qan *= qa;
        prod *= BigComplex(1) - qn;
        if (qan < eps) return prefac * prod;
    }
    throw ConvergenceError("eta: product truncation bound exceeded");
}

// d^order/dtau^order of log eta, order in {1,2}:
//   (log eta)'  = i pi / 12 - 2 pi i sum n q^n / (1 - q^n)
//   (log eta)'' = 4 pi^2 sum n^2 q^n / (1 - q^n)^2
inline BigComplex eta_log_deriv(const BigComplex& tau, int order) {
    if (order != 1 && order != 2) throw UsageError("eta_log_deriv: order must be 1 or 2");
    detail::require_upper_half(tau, "eta_log_deriv");
    BigComplex q = nome_q(tau);
    BigFloat qa = q.abs();
    if (qa > BigFloat(Rat(999, 1000)))
        throw ConvergenceError("eta_log_deriv: |q| too close to 1");
    BigFloat eps = detail::series_eps();
    BigComplex sum(0), qn(1);
    BigFloat qan(1);
    for (long n = 1; n < 2000000; ++n) {
        qn *= q;
        qan *= qa;
        BigComplex den = BigComplex(1) - qn;
        if (order == 1)
            sum += BigComplex(Rat(n)) * qn / den;
        else
            sum += BigComplex(Rat(n) * Rat(n)) * qn / (den * den);
        if (BigFloat(n) * qan / (BigFloat(1) - qa) < eps) break;
        if (n + 1 == 2000000) throw ConvergenceError("eta_log_deriv: truncation bound exceeded");
    }
    BigFloat pi = BigFloat::pi();
    if (order == 1)
        return BigComplex(BigFloat(0), pi / BigFloat(12)) -
               BigComplex(BigFloat(0), BigFloat(2) * pi) * sum;
    return BigComplex(BigFloat(4) * pi * pi) * sum;
}

namespace detail {

// Theta constants as sparse power series in p = exp(i pi tau):
//   theta2 = 2 sum_{n>=0} p^((n+1/2)^2)   (exponents 1/4, 9/4, ...)
//   theta3 = 1 + 2 sum_{n>=1} p^(n^2)
//   theta4 = 1 + 2 sum_{n>=1} (-1)^n p^(n^2)
// The m-th tau-derivative multiplies each term by (i pi e)^m where e is the
// exponent. Fractional powers of p come from exp(i pi tau e) directly.
inline BigComplex theta_term(const BigComplex& tau, const Rat& e, int m) {
    BigComplex ipite = BigComplex(BigFloat(0), BigFloat::pi() * BigFloat(e));
    BigComplex val = (ipite * tau).exp();
    return val * ipite.pow_si(m);
}

} // namespace detail

// d^m/dtau^m of the theta constant of the given kind (2, 3 or 4)
inline BigComplex theta_constant(int kind, const BigComplex& tau, int m = 0) {
    if (kind < 2 || kind > 4) throw UsageError("theta_constant: kind must be 2, 3 or 4");
    if (m < 0 || m > 2) throw UsageError("theta_constant: derivative order must be 0, 1 or 2");
    detail::require_upper_half(tau, "theta_constant");
    BigFloat pa = nome_q(tau).abs().sqrt(); // |p|
    if (pa > BigFloat(Rat(999, 1000))) throw ConvergenceError("theta_constant: |p| too close to 1");
    BigFloat eps = detail::series_eps();
    BigComplex sum(0);
    if (kind == 2) {
        for (long n = 0; n < 100000; ++n) {
            Rat e = (Rat(n) + Rat(1, 2)) * (Rat(n) + Rat(1, 2));
            BigComplex term = BigComplex(2) * detail::theta_term(tau, e, m);
            sum += term;
            if (term.abs() < eps && n > 2) return sum;
        }
    } else {
        if (m == 0) sum = BigComplex(1);
        for (long n = 1; n < 100000; ++n) {
            long sign_n = (kind == 4 && n % 2) ? -1 : 1;
            BigComplex term =
                BigComplex(Rat(2 * sign_n)) * detail::theta_term(tau, Rat(n) * Rat(n), m);
            sum += term;
            if (term.abs() < eps && n > 2) return sum;
        }
    }
    throw ConvergenceError("theta_constant: truncation bound exceeded");
}

// d^order/dtau^order of log theta_kind, order in {1,2}
inline BigComplex theta_log_deriv(int kind, const BigComplex& tau, int order) {
    if (order != 1 && order != 2) throw UsageError("theta_log_deriv: order must be 1 or 2");
    BigComplex t0 = theta_constant(kind, tau, 0);
    BigComplex t1 = theta_constant(kind, tau, 1);
    if (t0.is_zero()) throw DomainError("theta_log_deriv: theta constant vanishes");
    BigComplex l1 = t1 / t0;
    if (order == 1) return l1;
    BigComplex t2 = theta_constant(kind, tau, 2);
    return t2 / t0 - l1 * l1;
}

} // namespace gfn
