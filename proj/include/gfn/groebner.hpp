#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <vector>

#include "gfn/polynomial.hpp"

namespace gfn {

// Remainder of p under full multivariate division by basis (need not be a
// Groebner basis; remainder is canonical only when it is). Deterministic:
// always reduces the order-largest reducible monomial by the first divisor.
inline RatPoly normal_form(const RatPoly& p, const std::vector<RatPoly>& basis,
                           const MonomialOrder& ord) {
    RatPoly rem(p.arity());
    RatPoly work = p;
    while (!work.is_zero()) {
        auto [m, c] = work.leading_term(ord);
        bool reduced = false;
        for (const auto& g : basis) {
            if (g.is_zero()) continue;
            auto [gm, gc] = g.leading_term(ord);
            if (gm.divides(m)) {
                work -= g.times_monomial(m / gm).scaled(c / gc);
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            rem.add_term(m, c);
            work.add_term(m, -c);
        }
    }
    return rem;
}

namespace detail {

inline RatPoly make_monic(const RatPoly& p, const MonomialOrder& ord) {
    if (p.is_zero()) return p;
    return p.scaled(p.leading_term(ord).second.inverse());
}

inline RatPoly s_polynomial(const RatPoly& f, const RatPoly& g, const MonomialOrder& ord) {
    auto [fm, fc] = f.leading_term(ord);
    auto [gm, gc] = g.leading_term(ord);
    Monomial l = Monomial::lcm(fm, gm);
    return f.times_monomial(l / fm).scaled(fc.inverse()) -
           g.times_monomial(l / gm).scaled(gc.inverse());
}

} // namespace detail

// Buchberger with the coprime-leading-term criterion and a step budget.
// Returns the reduced Groebner basis: monic, inter-reduced, sorted by leading
// monomial ascending. Throws ConvergenceError if the budget is exhausted and
// verifies that every input generator reduces to zero against the result.
inline std::vector<RatPoly> groebner_basis(std::vector<RatPoly> gens, const MonomialOrder& ord,
                                           size_t max_steps = 20000) {
    std::vector<RatPoly> basis;
    for (auto& g : gens)
        if (!g.is_zero()) basis.push_back(detail::make_monic(g, ord));
    if (basis.empty()) return basis;

    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = i + 1; j < basis.size(); ++j) pairs.emplace_back(i, j);

    size_t steps = 0;
    while (!pairs.empty()) {
        if (++steps > max_steps)
            throw ConvergenceError("groebner_basis: step budget exhausted after " +
                                   std::to_string(max_steps) + " reductions");
        // Normal selection: smallest lcm degree first.
        size_t pick = 0;
        int best = -1;
        for (size_t k = 0; k < pairs.size(); ++k) {
            const auto& [i, j] = pairs[k];
            int d = Monomial::lcm(basis[i].leading_term(ord).first,
                                  basis[j].leading_term(ord).first)
                        .total_degree();
            if (best < 0 || d < best) {
                best = d;
                pick = k;
            }
        }
        auto [i, j] = pairs[pick];
        pairs.erase(pairs.begin() + pick);

        const Monomial& mi = basis[i].leading_term(ord).first;
        const Monomial& mj = basis[j].leading_term(ord).first;
        if (Monomial::lcm(mi, mj) == mi * mj) continue; // coprime criterion

        RatPoly s = normal_form(detail::s_polynomial(basis[i], basis[j], ord), basis, ord);
        if (s.is_zero()) continue;
        basis.push_back(detail::make_monic(s, ord));
        for (size_t k = 0; k + 1 < basis.size(); ++k) pairs.emplace_back(k, basis.size() - 1);
    }

    // Minimize: ascending by leading monomial, keep an element only when no
    // kept element's leading monomial divides its own (divisors sort first).
    std::sort(basis.begin(), basis.end(), [&](const RatPoly& a, const RatPoly& b) {
        return ord.greater(b.leading_term(ord).first, a.leading_term(ord).first);
    });
    std::vector<RatPoly> minimal;
    for (const auto& g : basis) {
        const Monomial& m = g.leading_term(ord).first;
        bool redundant = false;
        for (const auto& kept : minimal)
            if (kept.leading_term(ord).first.divides(m)) {
                redundant = true;
                break;
            }
        if (!redundant) minimal.push_back(g);
    }
    // Inter-reduce tails.
    std::vector<RatPoly> reduced;
    for (size_t i = 0; i < minimal.size(); ++i) {
        std::vector<RatPoly> others;
        for (size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        RatPoly r = normal_form(minimal[i], others, ord);
        if (!r.is_zero()) reduced.push_back(detail::make_monic(r, ord));
    }
    std::sort(reduced.begin(), reduced.end(), [&](const RatPoly& a, const RatPoly& b) {
        return ord.greater(b.leading_term(ord).first, a.leading_term(ord).first);
    });

    for (const auto& g : gens)
        if (!g.is_zero() && !normal_form(g, reduced, ord).is_zero())
            throw ConvergenceError("groebner_basis: input generator fails membership check");
    return reduced;
}

// Monomials outside the leading-term ideal of gb, enumerated degree by degree.
// Throws DegenerateRingError when the count exceeds bound (infinite quotient
// or a quotient larger than the caller expects).
inline std::vector<Monomial> quotient_staircase(const std::vector<RatPoly>& gb,
                                                const MonomialOrder& ord, size_t bound) {
    if (gb.empty()) throw DegenerateRingError("quotient_staircase: empty basis, quotient infinite");
    size_t arity = gb.front().arity();
    std::vector<Monomial> lts;
    for (const auto& g : gb) lts.push_back(g.leading_term(ord).first);

    auto in_ideal = [&](const Monomial& m) {
        for (const auto& l : lts)
            if (l.divides(m)) return true;
        return false;
    };

    std::vector<Monomial> stair;
    std::vector<Monomial> layer{Monomial::one(arity)};
    if (!in_ideal(layer[0])) stair.push_back(layer[0]);
    while (!layer.empty()) {
        std::vector<Monomial> next;
        for (const auto& m : layer) {
            for (size_t v = 0; v < arity; ++v) {
                Monomial mm = m;
                mm.exps[v] += 1;
                // Generate each monomial once: bump only variables at or after
                // the last incremented position.
                bool canonical = true;
                for (size_t w = v + 1; w < arity; ++w)
                    if (m.exps[w] != 0) {
                        canonical = false;
                        break;
                    }
                if (!canonical) continue;
                if (in_ideal(mm)) continue;
                next.push_back(mm);
                stair.push_back(mm);
                if (stair.size() > bound)
                    throw DegenerateRingError(
                        "quotient_staircase: more than " + std::to_string(bound) +
                        " standard monomials; quotient too large or infinite");
            }
        }
        layer = std::move(next);
    }
    std::sort(stair.begin(), stair.end(),
              [&](const Monomial& a, const Monomial& b) { return ord.greater(b, a); });
    return stair;
}

// Jet-coefficient facade: the jet direction is adjoined as one extra variable
// eps together with the generator eps^2, and the field-coefficient engine runs
// on the embedded ideal. The returned basis is mapped back to jet polynomials
// (the implicit eps^2 element is re-appended by normal_form below).
inline std::vector<JetPoly> groebner_basis_jets(const std::vector<JetPoly>& gens,
                                                const MonomialOrder& ord,
                                                size_t max_steps = 20000) {
    if (gens.empty()) return {};
    size_t arity = gens.front().arity();
    std::vector<RatPoly> emb;
    for (const auto& g : gens) emb.push_back(jet_to_field(g));
    std::vector<int> e(arity + 1, 0);
    e.back() = 2;
    emb.push_back(RatPoly::term(arity + 1, Monomial(e), Rat(1)));
    std::vector<JetPoly> out;
    for (const auto& g : groebner_basis(std::move(emb), ord, max_steps)) {
        bool is_eps_sq = g.term_count() == 1 && g.terms().begin()->first.exps.back() == 2;
        if (!is_eps_sq) out.push_back(field_to_jet(g));
    }
    return out;
}

inline JetPoly normal_form(const JetPoly& p, const std::vector<JetPoly>& basis,
                           const MonomialOrder& ord) {
    if (basis.empty()) return p;
    size_t arity = p.arity();
    std::vector<RatPoly> emb;
    for (const auto& g : basis) emb.push_back(jet_to_field(g));
    std::vector<int> e(arity + 1, 0);
    e.back() = 2;
    emb.push_back(RatPoly::term(arity + 1, Monomial(e), Rat(1)));
    return field_to_jet(normal_form(jet_to_field(p), emb, ord));
}

} // namespace gfn
