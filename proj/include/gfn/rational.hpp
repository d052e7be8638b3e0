#pragma once

#include <gmp.h>

#include <cstdint>
#include <iosfwd>
#include <ostream>
#include <string>
#include <utility>

#include "gfn/errors.hpp"

namespace gfn {

// Arbitrary-precision rational, always canonical: lowest terms, denominator > 0.
// Thin RAII wrapper over GMP mpq_t; value semantics.
class Rat {
  public:
    Rat() { mpq_init(q_); }
    Rat(long n) {
        mpq_init(q_);
        mpq_set_si(q_, n, 1);
    }
    Rat(long num, long den) {
        if (den == 0) throw DomainError("Rat: zero denominator");
        // mpq_set_si takes an unsigned denominator; route through mpq_div so
        // negative (and LONG_MIN) denominators keep their sign
        mpq_init(q_);
        mpq_set_si(q_, num, 1);
        mpq_t d;
        mpq_init(d);
        mpq_set_si(d, den, 1);
        mpq_div(q_, q_, d);
        mpq_clear(d);
    }
    // Accepts "p", "p/q", and plain decimal strings like "-0.375".
    explicit Rat(const mpq_t& q) {
        mpq_init(q_);
        mpq_set(q_, q);
    }
    explicit Rat(const std::string& s) {
        mpq_init(q_);
        set_from_string(s);
    }

    Rat(const Rat& o) {
        mpq_init(q_);
        mpq_set(q_, o.q_);
    }
    Rat(Rat&& o) noexcept {
        mpq_init(q_);
        mpq_swap(q_, o.q_);
    }
    Rat& operator=(const Rat& o) {
        if (this != &o) mpq_set(q_, o.q_);
        return *this;
    }
    Rat& operator=(Rat&& o) noexcept {
        if (this != &o) mpq_swap(q_, o.q_);
        return *this;
    }
    ~Rat() { mpq_clear(q_); }

    friend Rat operator+(const Rat& a, const Rat& b) {
        Rat r;
        mpq_add(r.q_, a.q_, b.q_);
        return r;
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        Rat r;
        mpq_sub(r.q_, a.q_, b.q_);
        return r;
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        Rat r;
        mpq_mul(r.q_, a.q_, b.q_);
        return r;
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.is_zero()) throw DomainError("Rat: division by zero");
        Rat r;
        mpq_div(r.q_, a.q_, b.q_);
        return r;
    }
    Rat operator-() const {
        Rat r;
        mpq_neg(r.q_, q_);
        return r;
    }
    Rat& operator+=(const Rat& o) {
        mpq_add(q_, q_, o.q_);
        return *this;
    }
    Rat& operator-=(const Rat& o) {
        mpq_sub(q_, q_, o.q_);
        return *this;
    }
    Rat& operator*=(const Rat& o) {
        mpq_mul(q_, q_, o.q_);
        return *this;
    }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) throw DomainError("Rat: division by zero");
        mpq_div(q_, q_, o.q_);
        return *this;
    }

    friend bool operator==(const Rat& a, const Rat& b) { return mpq_equal(a.q_, b.q_) != 0; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) { return mpq_cmp(a.q_, b.q_) < 0; }
    friend bool operator<=(const Rat& a, const Rat& b) { return mpq_cmp(a.q_, b.q_) <= 0; }
    friend bool operator>(const Rat& a, const Rat& b) { return mpq_cmp(a.q_, b.q_) > 0; }
    friend bool operator>=(const Rat& a, const Rat& b) { return mpq_cmp(a.q_, b.q_) >= 0; }

    bool is_zero() const { return mpq_sgn(q_) == 0; }
    int sign() const { return mpq_sgn(q_); }
    Rat abs() const {
        Rat r;
        mpq_abs(r.q_, q_);
        return r;
    }
    Rat inverse() const {
        if (is_zero()) throw UsageError("Rat: inverse of zero");
        Rat r;
        mpq_inv(r.q_, q_);
        return r;
    }

    // Integer exponent; negative exponents invert (error on zero base).
    Rat pow(long e) const {
        if (e == 0) return Rat(1);
        Rat base = e < 0 ? inverse() : *this;
        unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
        Rat r(1);
        while (k) {
            if (k & 1) r *= base;
            base *= base;
            k >>= 1;
        }
        return r;
    }

    std::string num_string() const { return mpz_to_string(mpq_numref(q_)); }
    std::string den_string() const { return mpz_to_string(mpq_denref(q_)); }
    // "p" when the denominator is 1, otherwise "p/q".
    std::string to_string() const {
        if (mpz_cmp_ui(mpq_denref(q_), 1) == 0) return num_string();
        return num_string() + "/" + den_string();
    }

    bool fits_long() const {
        return mpz_fits_slong_p(mpq_numref(q_)) && mpz_cmp_ui(mpq_denref(q_), 1) == 0;
    }
    long to_long() const {
        if (!fits_long()) throw UsageError("Rat: not a small integer: " + to_string());
        return mpz_get_si(mpq_numref(q_));
    }
    bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }

    const mpq_t& raw() const { return q_; }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.to_string(); }

  private:
    static std::string mpz_to_string(const mpz_t z) {
        char* s = mpz_get_str(nullptr, 10, z);
        std::string out(s);
        void (*freefn)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefn);
        freefn(s, out.size() + 1);
        return out;
    }

    void set_from_string(const std::string& s) {
        if (s.empty()) throw UsageError("Rat: empty string");
        auto dot = s.find('.');
        if (dot == std::string::npos) {
            if (mpq_set_str(q_, s.c_str(), 10) != 0 || mpz_sgn(mpq_denref(q_)) == 0)
                throw UsageError("Rat: bad rational string '" + s + "'");
            mpq_canonicalize(q_);
            if (mpz_sgn(mpq_denref(q_)) < 0) mpq_neg(q_, q_);
            return;
        }
        // Decimal form: digits '.' digits  ->  scaled integer over a power of ten.
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        size_t frac = s.size() - dot - 1;
        if (digits.empty() || digits == "-" || digits == "+")
            throw UsageError("Rat: bad decimal string '" + s + "'");
        mpz_t num;
        mpz_init(num);
        if (mpz_set_str(num, digits.c_str(), 10) != 0) {
            mpz_clear(num);
            throw UsageError("Rat: bad decimal string '" + s + "'");
        }
        mpz_set(mpq_numref(q_), num);
        mpz_ui_pow_ui(mpq_denref(q_), 10, frac);
        mpz_clear(num);
        mpq_canonicalize(q_);
    }

    mpq_t q_;
};

} // namespace gfn
