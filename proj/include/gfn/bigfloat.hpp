#pragma once

#include <cstdio> // before mpfr.h so mpfr_asprintf gets declared

#include <mpfr.h>

#include <algorithm>
#include <cstdlib>
#include <string>
#include <utility>

#include "gfn/errors.hpp"
#include "gfn/rational.hpp"

namespace gfn {

// Arbitrary-precision real number. Working precision (decimal digits) comes
// from the GFN_PRECISION environment variable, default 64; each value carries
// its own mpfr precision and binary operations take the max of the operands.
class BigFloat {
  public:
    static long default_digits() {
        static long digits = [] {
            const char* env = std::getenv("GFN_PRECISION");
            if (!env) return 64L;
            long v = std::strtol(env, nullptr, 10);
            if (v < 16 || v > 100000) throw UsageError("GFN_PRECISION out of range [16,100000]");
            return v;
        }();
        return digits;
    }
    static mpfr_prec_t default_prec() {
        return static_cast<mpfr_prec_t>(default_digits() * 3.3219280948873626 + 32);
    }

    BigFloat() { mpfr_init2(v_, default_prec()); mpfr_set_zero(v_, 1); }
    BigFloat(long x) { mpfr_init2(v_, default_prec()); mpfr_set_si(v_, x, MPFR_RNDN); }
    BigFloat(const Rat& r) {
        mpfr_init2(v_, default_prec());
        mpfr_set_q(v_, r.raw(), MPFR_RNDN);
    }
    explicit BigFloat(const std::string& s) {
        mpfr_init2(v_, default_prec());
        if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw UsageError("BigFloat: cannot parse '" + s + "'");
    }
    static BigFloat from_double(double x) {
        BigFloat r;
        mpfr_set_d(r.v_, x, MPFR_RNDN);
        return r;
    }

    BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
        BigFloat r = with_prec(a, b);
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
        BigFloat r = with_prec(a, b);
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
        BigFloat r = with_prec(a, b);
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
        if (mpfr_zero_p(b.v_)) throw DomainError("BigFloat: division by zero");
        BigFloat r = with_prec(a, b);
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    BigFloat operator-() const {
        BigFloat r(*this);
        mpfr_neg(r.v_, r.v_, MPFR_RNDN);
        return r;
    }
    BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
    BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
    BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }
    BigFloat& operator/=(const BigFloat& o) { return *this = *this / o; }

    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
    friend bool operator!=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) != 0; }
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    BigFloat abs() const {
        BigFloat r(*this);
        mpfr_abs(r.v_, r.v_, MPFR_RNDN);
        return r;
    }
    BigFloat sqrt() const {
        if (sign() < 0) throw DomainError("BigFloat: sqrt of negative");
        BigFloat r(*this);
        mpfr_sqrt(r.v_, r.v_, MPFR_RNDN);
        return r;
    }
    BigFloat exp() const {
        BigFloat r(*this);
        mpfr_exp(r.v_, r.v_, MPFR_RNDN);
        return r;
    }
    BigFloat log() const {
        if (sign() <= 0) throw DomainError("BigFloat: log of non-positive value");
        BigFloat r(*this);
        mpfr_log(r.v_, r.v_, MPFR_RNDN);
        return r;
    }
    BigFloat sin() const {
        BigFloat r(*this);
        mpfr_sin(r.v_, r.v_, MPFR_RNDN);
        return r;
    }
    BigFloat cos() const {
        BigFloat r(*this);
        mpfr_cos(r.v_, r.v_, MPFR_RNDN);
        return r;
    }
    // a^x for positive base (principal real power)
    BigFloat pow(const BigFloat& x) const {
        if (sign() <= 0) throw DomainError("BigFloat: pow needs positive base");
        BigFloat r = with_prec(*this, x);
        mpfr_pow(r.v_, v_, x.v_, MPFR_RNDN);
        return r;
    }
    BigFloat pow_si(long e) const {
        BigFloat r(*this);
        mpfr_pow_si(r.v_, v_, e, MPFR_RNDN);
        return r;
    }
    static BigFloat pi() {
        BigFloat r;
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }
    static BigFloat atan2f(const BigFloat& y, const BigFloat& x) {
        BigFloat r = with_prec(y, x);
        mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
        return r;
    }
    static BigFloat hypot(const BigFloat& x, const BigFloat& y) {
        BigFloat r = with_prec(x, y);
        mpfr_hypot(r.v_, x.v_, y.v_, MPFR_RNDN);
        return r;
    }
    // 10^-k at default precision, for tolerance thresholds
    static BigFloat pow10(long k) {
        BigFloat r(10);
        return r.pow_si(k);
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    std::string to_string(long digits = 0) const {
        if (digits <= 0) digits = default_digits();
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%%.%ldRg", digits);
        char* out = nullptr;
        if (mpfr_asprintf(&out, buf, v_) < 0) throw UsageError("BigFloat: formatting failed");
        std::string s(out);
        mpfr_free_str(out);
        return s;
    }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

  private:
    static BigFloat with_prec(const BigFloat& a, const BigFloat& b) {
        BigFloat r;
        mpfr_set_prec(r.v_, std::max(mpfr_get_prec(a.v_), mpfr_get_prec(b.v_)));
        mpfr_set_zero(r.v_, 1);
        return r;
    }
    mpfr_t v_;
};

inline std::ostream& operator<<(std::ostream& os, const BigFloat& x) {
    return os << x.to_string(20);
}

// base^e with exact rational exponent; integer exponents work for any base,
// fractional ones require a positive base (principal real root).
inline BigFloat pow_rat(const BigFloat& base, const Rat& e) {
    if (e.is_zero()) return BigFloat(1);
    if (e.is_integer() && e.fits_long()) return base.pow_si(e.to_long());
    return base.pow(BigFloat(e));
}

// Exact dyadic rational represented by a binary float: x = z * 2^e.
inline Rat to_rational(const BigFloat& x) {
    if (x.is_zero()) return Rat(0);
    mpz_t z;
    mpz_init(z);
    mpfr_exp_t e = mpfr_get_z_2exp(z, x.raw());
    mpq_t q;
    mpq_init(q);
    mpq_set_z(q, z);
    mpq_t two_e;
    mpq_init(two_e);
    mpq_set_ui(two_e, 1, 1);
    if (e >= 0)
        mpz_mul_2exp(mpq_numref(two_e), mpq_numref(two_e), static_cast<mp_bitcnt_t>(e));
    else
        mpz_mul_2exp(mpq_denref(two_e), mpq_denref(two_e), static_cast<mp_bitcnt_t>(-e));
    mpq_mul(q, q, two_e);
    mpq_canonicalize(q);
    Rat out(q);
    mpq_clear(q);
    mpq_clear(two_e);
    mpz_clear(z);
    return out;
}

// Complex numbers over BigFloat, with the principal-branch transcendentals
// needed for modular forms on the upper half plane.
struct BigComplex {
    BigFloat re, im;

    BigComplex() = default;
    BigComplex(BigFloat r) : re(std::move(r)) {}
    BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
    BigComplex(long r) : re(r) {}
    BigComplex(const Rat& r) : re(r) {}
    static BigComplex i() { return BigComplex(BigFloat(0), BigFloat(1)); }

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
        BigFloat n = b.re * b.re + b.im * b.im;
        if (n.is_zero()) throw DomainError("BigComplex: division by zero");
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    BigComplex operator-() const { return {-re, -im}; }
    BigComplex& operator+=(const BigComplex& o) { return *this = *this + o; }
    BigComplex& operator-=(const BigComplex& o) { return *this = *this - o; }
    BigComplex& operator*=(const BigComplex& o) { return *this = *this * o; }
    BigComplex& operator/=(const BigComplex& o) { return *this = *this / o; }

    BigComplex conj() const { return {re, -im}; }
    BigFloat abs() const { return BigFloat::hypot(re, im); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    BigComplex exp() const {
        BigFloat m = re.exp();
        return {m * im.cos(), m * im.sin()};
    }
    BigComplex log() const {
        if (is_zero()) throw DomainError("BigComplex: log of zero");
        return {abs().log(), BigFloat::atan2f(im, re)};
    }
    BigComplex sqrt() const {
        if (is_zero()) return {};
        return (log() * BigComplex(Rat(1, 2))).exp();
    }
    BigComplex pow(const Rat& e) const {
        if (is_zero()) {
            if (e.sign() <= 0) throw DomainError("BigComplex: 0 to non-positive power");
            return {};
        }
        return (log() * BigComplex(e)).exp();
    }
    BigComplex pow_si(long e) const {
        if (e < 0) return (BigComplex(1) / *this).pow_si(-e);
        BigComplex acc(1), base = *this;
        while (e > 0) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    std::string to_string(long digits = 0) const {
        return re.to_string(digits) + (im.sign() < 0 ? " - " : " + ") +
               im.abs().to_string(digits) + "i";
    }
};

inline std::ostream& operator<<(std::ostream& os, const BigComplex& z) {
    return os << z.to_string(20);
}

} // namespace gfn
