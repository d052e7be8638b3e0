#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "gfn/groebner.hpp"
#include "gfn/polynomial.hpp"

namespace gfn {

enum class ModelId { E6t, E7t, E8t };

inline std::string model_name(ModelId id) {
    switch (id) {
        case ModelId::E6t: return "e6t";
        case ModelId::E7t: return "e7t";
        case ModelId::E8t: return "e8t";
    }
    throw UsageError("model_name: bad id");
}

inline ModelId model_from_name(const std::string& s) {
    if (s == "e6t") return ModelId::E6t;
    if (s == "e7t") return ModelId::E7t;
    if (s == "e8t") return ModelId::E8t;
    throw UsageError("unknown model '" + s + "' (expected e6t, e7t, e8t)");
}

// One-parameter versal family for a unimodal quasihomogeneous singularity.
// The deformation variable list s_1..s_n pairs each coefficient with a
// monomial; the last one (weight 0) is the marginal modulus s.
struct SingularityModel {
    ModelId id;
    size_t nvars = 0;
    std::vector<std::string> var_names;
    std::vector<Rat> var_weights;   // quasihomogeneous weights, sum of deg-1 monomials
    std::vector<long> int_weights;  // var_weights * weight_scale, integers
    long weight_scale = 1;
    RatPoly fixed_part;             // undeformed superpotential
    size_t n = 0;                   // Milnor number = deformation dimension
    std::vector<Monomial> deformation_monomials; // index a (0-based) for s_{a+1}
    std::vector<Rat> d;             // scaling weight of s_{a+1}; d[n-1] = 0
    std::vector<Monomial> basis;    // quotient basis at generic marginal value

    size_t marginal() const { return n - 1; }

    std::string name() const { return model_name(id); }

    Rat u_of_s(const Rat& s) const {
        switch (id) {
            case ModelId::E6t: return -(s * s * s) / Rat(27);
            case ModelId::E7t: return s * s / Rat(4);
            case ModelId::E8t: return Rat(-4) * s * s * s / Rat(27);
        }
        throw UsageError("u_of_s: bad id");
    }
    // Finite-dimensionality condition: discriminant(s) = 1 - u(s) != 0.
    Rat discriminant(const Rat& s) const { return Rat(1) - u_of_s(s); }

    Rat weighted_degree(const Monomial& m) const {
        Rat deg(0);
        for (size_t i = 0; i < nvars; ++i) deg += var_weights[i] * Rat(m.exps[i]);
        return deg;
    }

    // Superpotential with coefficient assignment; jet_direction (0-based index
    // into s, or -1) adds eps to that coefficient.
    JetPoly superpotential(const std::vector<Rat>& s_assign, int jet_direction) const {
        if (s_assign.size() != n) throw UsageError("superpotential: expected " +
                                                   std::to_string(n) + " coefficients");
        JetPoly w(nvars);
        for (const auto& [m, c] : fixed_part.terms()) w.add_term(m, Jet(c));
        for (size_t a = 0; a < n; ++a) {
            Jet coeff(s_assign[a], a == static_cast<size_t>(jet_direction) ? Rat(1) : Rat(0));
            if (!coeff.is_zero()) w.add_term(deformation_monomials[a], coeff);
        }
        return w;
    }
};

namespace detail {

inline Monomial mono(std::vector<int> e) { return Monomial(std::move(e)); }

// Sort ascending by weighted degree, then ascending grevlex, so that basis
// index a and its dual n-1-a sit at mirrored positions.
inline void sort_basis(std::vector<Monomial>& basis, const std::vector<long>& w) {
    MonomialOrder grev = MonomialOrder::grevlex();
    std::sort(basis.begin(), basis.end(), [&](const Monomial& a, const Monomial& b) {
        long da = a.weighted_degree(w), db = b.weighted_degree(w);
        if (da != db) return da < db;
        return grev.greater(b, a);
    });
}

} // namespace detail

inline SingularityModel build_model(ModelId id) {
    using detail::mono;
    SingularityModel m;
    m.id = id;
    switch (id) {
        case ModelId::E6t: {
            m.nvars = 3;
            m.var_names = {"x", "y", "z"};
            m.var_weights = {Rat(1, 3), Rat(1, 3), Rat(1, 3)};
            m.int_weights = {1, 1, 1};
            m.weight_scale = 3;
            m.fixed_part = RatPoly(3);
            m.fixed_part.add_term(mono({3, 0, 0}), Rat(1));
            m.fixed_part.add_term(mono({0, 3, 0}), Rat(1));
            m.fixed_part.add_term(mono({0, 0, 3}), Rat(1));
            m.n = 8;
            m.deformation_monomials = {mono({0, 0, 0}), mono({0, 0, 1}), mono({0, 1, 0}),
                                       mono({1, 0, 0}), mono({0, 1, 1}), mono({1, 0, 1}),
                                       mono({1, 1, 0}), mono({1, 1, 1})};
            break;
        }
        case ModelId::E7t: {
            m.nvars = 2;
            m.var_names = {"x", "y"};
            m.var_weights = {Rat(1, 4), Rat(1, 4)};
            m.int_weights = {1, 1};
            m.weight_scale = 4;
            m.fixed_part = RatPoly(2);
            m.fixed_part.add_term(mono({4, 0}), Rat(1));
            m.fixed_part.add_term(mono({0, 4}), Rat(1));
            m.n = 9;
            m.deformation_monomials = {mono({0, 0}), mono({0, 1}), mono({1, 0}),
                                       mono({0, 2}), mono({1, 1}), mono({2, 0}),
                                       mono({1, 2}), mono({2, 1}), mono({2, 2})};
            break;
        }
        case ModelId::E8t: {
            m.nvars = 2;
            m.var_names = {"x", "y"};
            m.var_weights = {Rat(1, 6), Rat(1, 3)};
            m.int_weights = {1, 2};
            m.weight_scale = 6;
            m.fixed_part = RatPoly(2);
            m.fixed_part.add_term(mono({6, 0}), Rat(1));
            m.fixed_part.add_term(mono({0, 3}), Rat(1));
            m.n = 10;
            m.deformation_monomials = {mono({0, 0}), mono({1, 0}), mono({0, 1}),
                                       mono({2, 0}), mono({1, 1}), mono({3, 0}),
                                       mono({2, 1}), mono({4, 0}), mono({3, 1}),
                                       mono({4, 1})};
            break;
        }
    }

    // Scaling weights of the deformation coefficients, fixed by homogeneity:
    // d_a = 1 - weighted degree of the paired monomial. Marginal entry is 0.
    for (const auto& mon : m.deformation_monomials)
        m.d.push_back(Rat(1) - m.weighted_degree(mon));
    if (!m.d.front().is_integer() || m.d.front() != Rat(1) || !m.d.back().is_zero())
        throw UsageError("build_model: deformation weights violate homogeneity");
    for (size_t a = 0; a < m.n; ++a)
        if (m.d[a] + m.d[m.n - 1 - a] != Rat(1))
            throw UsageError("build_model: weights fail the pairing d_a + d_a* = 1");

    if (id == ModelId::E6t) {
        // The classical basis 1, z, y, x, yz, xz, xy, xyz. It is not a
        // Groebner staircase for s != 0 (no monomial order ranks all three
        // squares above their partners), so tables later expand products on
        // the point staircase and change basis back to this list.
        m.basis = {mono({0, 0, 0}), mono({0, 0, 1}), mono({0, 1, 0}), mono({1, 0, 0}),
                   mono({0, 1, 1}), mono({1, 0, 1}), mono({1, 1, 0}), mono({1, 1, 1})};
    } else {
        // Staircase complement at a reference marginal value, which is the
        // same staircase for every nonzero marginal value (leading terms only
        // jump at s = 0 and on the discriminant).
        std::vector<Rat> s0(m.n, Rat(0));
        s0[m.marginal()] = Rat(1);
        JetPoly w = m.superpotential(s0, -1);
        std::vector<RatPoly> gens;
        for (size_t v = 0; v < m.nvars; ++v) {
            RatPoly dv(m.nvars);
            JetPoly wd = w.derivative(v);
            for (const auto& [mm, c] : wd.terms()) dv.add_term(mm, c.value);
            gens.push_back(dv);
        }
        MonomialOrder ord = MonomialOrder::grevlex();
        auto gb = groebner_basis(gens, ord);
        m.basis = quotient_staircase(gb, ord, 4 * m.n);
        if (m.basis.size() != m.n)
            throw DegenerateRingError("build_model: staircase size " +
                                      std::to_string(m.basis.size()) + " != " +
                                      std::to_string(m.n));
        detail::sort_basis(m.basis, m.int_weights);
    }

    // Basis degree must pair like the deformation weights: deg phi_a = 1 - d_a.
    for (size_t a = 0; a < m.n; ++a)
        if (m.weighted_degree(m.basis[a]) != Rat(1) - m.d[a])
            throw DegenerateRingError("build_model: basis grading does not match weights");
    return m;
}

// Spectrum of a charge-d Frobenius structure: charges q_alpha and the
// skew eigenvalues mu_alpha = q_alpha - d/2.
struct SpectrumData {
    size_t n = 0;
    Rat d_charge;
    std::vector<Rat> q;
    std::vector<Rat> mu;
};

inline SpectrumData make_spectrum(Rat d_charge, std::vector<Rat> q) {
    SpectrumData sp;
    sp.n = q.size();
    sp.d_charge = std::move(d_charge);
    sp.q = std::move(q);
    for (const auto& qa : sp.q) sp.mu.push_back(qa - sp.d_charge / Rat(2));
    return sp;
}

// Elliptic models: d = 1 and q_a = 1 - d_a, so mu pairs to zero across the
// antidiagonal.
inline SpectrumData model_spectrum(const SingularityModel& m) {
    std::vector<Rat> q;
    for (const auto& da : m.d) q.push_back(Rat(1) - da);
    return make_spectrum(Rat(1), std::move(q));
}

} // namespace gfn
