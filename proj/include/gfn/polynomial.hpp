#pragma once

#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "gfn/jet.hpp"
#include "gfn/monomial.hpp"
#include "gfn/rational.hpp"

namespace gfn {

// Sparse multivariate polynomial with exact coefficients (Rat or Jet).
// Canonical representation: monomial -> nonzero coefficient, fixed arity.
template <class C>
class MultiPoly {
  public:
    using coeff_type = C;
    using term_map = std::map<Monomial, C>;

    MultiPoly() : arity_(0) {}
    explicit MultiPoly(size_t arity) : arity_(arity) {}

    static MultiPoly zero(size_t arity) { return MultiPoly(arity); }
    static MultiPoly constant(size_t arity, C c) {
        MultiPoly p(arity);
        p.add_term(Monomial::one(arity), std::move(c));
        return p;
    }
    static MultiPoly variable(size_t arity, size_t idx) {
        MultiPoly p(arity);
        std::vector<int> e(arity, 0);
        e[idx] = 1;
        p.add_term(Monomial(e), C(1));
        return p;
    }
    static MultiPoly term(size_t arity, Monomial m, C c) {
        MultiPoly p(arity);
        p.add_term(std::move(m), std::move(c));
        return p;
    }

    size_t arity() const { return arity_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const term_map& terms() const { return terms_; }

    void add_term(Monomial m, C c) {
        if (m.arity() != arity_) throw UsageError("MultiPoly: term arity mismatch");
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!c.is_zero()) terms_.emplace(std::move(m), std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    C coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? C(0) : it->second;
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        check_arity(a, b);
        MultiPoly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
        check_arity(a, b);
        MultiPoly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }
    MultiPoly operator-() const {
        MultiPoly r(arity_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        check_arity(a, b);
        MultiPoly r(a.arity_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }
    MultiPoly scaled(const C& c) const {
        MultiPoly r(arity_);
        if (c.is_zero()) return r;
        for (const auto& [m, co] : terms_) r.add_term(m, co * c);
        return r;
    }
    MultiPoly times_monomial(const Monomial& m) const {
        MultiPoly r(arity_);
        for (const auto& [mm, c] : terms_) r.terms_.emplace(mm * m, c);
        return r;
    }
    MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
    MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    MultiPoly derivative(size_t var) const {
        MultiPoly r(arity_);
        for (const auto& [m, c] : terms_) {
            int e = m.exps[var];
            if (!e) continue;
            Monomial mm = m;
            mm.exps[var] -= 1;
            r.add_term(std::move(mm), c * C(e));
        }
        return r;
    }

    // Full substitution at a rational point (coefficient ring must embed the result).
    C eval(const std::vector<C>& at) const {
        if (at.size() != arity_) throw UsageError("MultiPoly: eval arity mismatch");
        C acc(0);
        for (const auto& [m, c] : terms_) {
            C t = c;
            for (size_t i = 0; i < arity_; ++i)
                for (int k = 0; k < m.exps[i]; ++k) t *= at[i];
            acc += t;
        }
        return acc;
    }

    // Leading term under an order; polynomial must be nonzero.
    std::pair<Monomial, C> leading_term(const MonomialOrder& ord) const {
        if (terms_.empty()) throw UsageError("MultiPoly: leading term of zero");
        auto best = terms_.begin();
        for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
            if (ord.greater(it->first, best->first)) best = it;
        return {best->first, best->second};
    }

    int total_degree() const {
        int d = 0;
        for (const auto& [m, c] : terms_)
            if (m.total_degree() > d) d = m.total_degree();
        return d;
    }

    std::string to_string(const std::vector<std::string>& names) const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [m, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += "(" + c.to_string() + ")";
            if (!m.is_one()) s += "*" + m.to_string(names);
        }
        return s;
    }

  private:
    static void check_arity(const MultiPoly& a, const MultiPoly& b) {
        if (a.arity_ != b.arity_) throw UsageError("MultiPoly: arity mismatch");
    }

    size_t arity_;
    term_map terms_;
};

using RatPoly = MultiPoly<Rat>;
using JetPoly = MultiPoly<Jet>;

// Embedding between jet-coefficient polynomials in k variables and
// field-coefficient polynomials in k+1 variables, where the appended last
// variable is the jet direction eps. Slope parts become eps-linear terms.
inline RatPoly jet_to_field(const JetPoly& p) {
    RatPoly r(p.arity() + 1);
    for (const auto& [m, c] : p.terms()) {
        std::vector<int> e = m.exps;
        e.push_back(0);
        if (!c.value.is_zero()) r.add_term(Monomial(e), c.value);
        if (!c.slope.is_zero()) {
            e.back() = 1;
            r.add_term(Monomial(e), c.slope);
        }
    }
    return r;
}

// Inverse of jet_to_field; requires eps-degree <= 1.
inline JetPoly field_to_jet(const RatPoly& p) {
    if (p.arity() == 0) throw UsageError("field_to_jet: no eps variable");
    JetPoly r(p.arity() - 1);
    for (const auto& [m, c] : p.terms()) {
        int eexp = m.exps.back();
        if (eexp > 1) throw UsageError("field_to_jet: eps degree exceeds 1");
        std::vector<int> e(m.exps.begin(), m.exps.end() - 1);
        r.add_term(Monomial(std::move(e)), eexp ? Jet(Rat(0), c) : Jet(c));
    }
    return r;
}

} // namespace gfn
