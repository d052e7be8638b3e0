#pragma once

#include <ostream>
#include <string>

#include "gfn/rational.hpp"

namespace gfn {

// First-order jet a + b*eps with eps^2 = 0. Exact coefficients.
// Multiplication carries (a1 + b1 eps)(a2 + b2 eps) = a1 a2 + (a1 b2 + a2 b1) eps.
struct Jet {
    Rat value;
    Rat slope;

    Jet() = default;
    Jet(Rat v) : value(std::move(v)) {}
    Jet(long v) : value(v) {}
    Jet(Rat v, Rat s) : value(std::move(v)), slope(std::move(s)) {}

    bool is_zero() const { return value.is_zero() && slope.is_zero(); }

    friend Jet operator+(const Jet& a, const Jet& b) {
        return Jet(a.value + b.value, a.slope + b.slope);
    }
    friend Jet operator-(const Jet& a, const Jet& b) {
        return Jet(a.value - b.value, a.slope - b.slope);
    }
    Jet operator-() const { return Jet(-value, -slope); }
    friend Jet operator*(const Jet& a, const Jet& b) {
        return Jet(a.value * b.value, a.value * b.slope + b.value * a.slope);
    }
    // Defined only when the divisor has nonzero value part (eps is not invertible).
    friend Jet operator/(const Jet& a, const Jet& b) {
        if (b.value.is_zero()) throw UsageError("Jet: division by pure-slope jet");
        Rat v = a.value / b.value;
        return Jet(v, (a.slope - v * b.slope) / b.value);
    }
    Jet& operator+=(const Jet& o) {
        value += o.value;
        slope += o.slope;
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        value -= o.value;
        slope -= o.slope;
        return *this;
    }
    Jet& operator*=(const Jet& o) { return *this = *this * o; }

    friend bool operator==(const Jet& a, const Jet& b) {
        return a.value == b.value && a.slope == b.slope;
    }
    friend bool operator!=(const Jet& a, const Jet& b) { return !(a == b); }

    std::string to_string() const {
        if (slope.is_zero()) return value.to_string();
        return value.to_string() + " + (" + slope.to_string() + ")*eps";
    }
    friend std::ostream& operator<<(std::ostream& os, const Jet& j) { return os << j.to_string(); }
};

} // namespace gfn
