#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "gfn/errors.hpp"

namespace gfn {

// Exponent vector over a fixed variable arity. Immutable value type.
struct Monomial {
    std::vector<int> exps;

    Monomial() = default;
    explicit Monomial(std::vector<int> e) : exps(std::move(e)) {}
    static Monomial one(size_t arity) { return Monomial(std::vector<int>(arity, 0)); }

    size_t arity() const { return exps.size(); }
    int total_degree() const { return std::accumulate(exps.begin(), exps.end(), 0); }
    long weighted_degree(const std::vector<long>& w) const {
        long d = 0;
        for (size_t i = 0; i < exps.size(); ++i) d += w[i] * exps[i];
        return d;
    }
    bool is_one() const {
        for (int e : exps)
            if (e) return false;
        return true;
    }

    bool divides(const Monomial& m) const {
        for (size_t i = 0; i < exps.size(); ++i)
            if (exps[i] > m.exps[i]) return false;
        return true;
    }
    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r = a;
        for (size_t i = 0; i < r.exps.size(); ++i) r.exps[i] += b.exps[i];
        return r;
    }
    // Requires divisibility.
    friend Monomial operator/(const Monomial& a, const Monomial& b) {
        Monomial r = a;
        for (size_t i = 0; i < r.exps.size(); ++i) {
            r.exps[i] -= b.exps[i];
            if (r.exps[i] < 0) throw UsageError("Monomial: non-divisible quotient");
        }
        return r;
    }
    static Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r = a;
        for (size_t i = 0; i < r.exps.size(); ++i)
            if (b.exps[i] > r.exps[i]) r.exps[i] = b.exps[i];
        return r;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps == b.exps; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
    // Arbitrary canonical order for container keys; not a monomial order.
    friend bool operator<(const Monomial& a, const Monomial& b) { return a.exps < b.exps; }

    std::string to_string(const std::vector<std::string>& names) const {
        std::string s;
        for (size_t i = 0; i < exps.size(); ++i) {
            if (!exps[i]) continue;
            if (!s.empty()) s += "*";
            s += names[i];
            if (exps[i] != 1) s += "^" + std::to_string(exps[i]);
        }
        return s.empty() ? "1" : s;
    }
};

// Term orders. grevlex is the default everywhere.
//   grevlex: higher total degree wins; ties broken so the last nonzero entry of
//            (a - b) being negative makes a larger.
//   grlex:   higher total degree wins; ties broken lexicographically.
//   weighted: higher weighted degree wins (integer weights); grevlex tie-break.
struct MonomialOrder {
    enum class Kind { grevlex, grlex, weighted } kind = Kind::grevlex;
    std::vector<long> weights; // used by Kind::weighted only

    static MonomialOrder grevlex() { return {}; }
    static MonomialOrder grlex() { return {Kind::grlex, {}}; }
    static MonomialOrder weighted(std::vector<long> w) { return {Kind::weighted, std::move(w)}; }

    // Strict "a comes after b" test: true when a > b in the order.
    bool greater(const Monomial& a, const Monomial& b) const {
        switch (kind) {
            case Kind::grlex: {
                int da = a.total_degree(), db = b.total_degree();
                if (da != db) return da > db;
                return a.exps > b.exps;
            }
            case Kind::weighted: {
                if (weights.size() != a.arity())
                    throw UsageError("MonomialOrder: weight arity mismatch");
                long da = a.weighted_degree(weights), db = b.weighted_degree(weights);
                if (da != db) return da > db;
                return grevlex_tie(a, b);
            }
            case Kind::grevlex:
            default: {
                int da = a.total_degree(), db = b.total_degree();
                if (da != db) return da > db;
                return grevlex_tie(a, b);
            }
        }
    }

  private:
    static bool grevlex_tie(const Monomial& a, const Monomial& b) {
        for (size_t i = a.exps.size(); i-- > 0;) {
            int d = a.exps[i] - b.exps[i];
            if (d) return d < 0;
        }
        return false;
    }
};

} // namespace gfn
