#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gfn/groebner.hpp"
#include "gfn/singularity.hpp"

namespace gfn {

// Evaluation point in the deformation space: values of s_1..s_n plus an
// optional first-order jet direction (0-based index, -1 for none).
struct RingPoint {
    std::vector<Rat> s;
    int jet_direction = -1;
};

inline RingPoint marginal_point(const SingularityModel& m, const Rat& s_value,
                                int jet_direction = -1) {
    RingPoint p;
    p.s.assign(m.n, Rat(0));
    p.s[m.marginal()] = s_value;
    p.jet_direction = jet_direction;
    return p;
}

// Structure constants of the Milnor ring at a point: phi_a phi_b = c[a][b][k] phi_k.
// Entries are first-order jets in the chosen deformation direction.
struct RingTable {
    ModelId model;
    RingPoint point;
    std::vector<Monomial> basis;
    std::vector<std::vector<std::vector<Jet>>> c;

    size_t n() const { return basis.size(); }

    const Jet& at(size_t a, size_t b, size_t k) const { return c[a][b][k]; }

    // trace of multiplication by phi_a: sum_p c^p_{p a}
    Jet trace(size_t a) const {
        Jet t;
        for (size_t p = 0; p < n(); ++p) t += c[p][a][p];
        return t;
    }
};

namespace detail {

// Reduced basis of the Jacobian ideal of W at the point, together with the
// staircase monomials. Throws DegenerateRingError off the versal stratum.
struct JacobiData {
    std::vector<JetPoly> gb;     // over nvars variables, jet coefficients
    std::vector<Monomial> basis; // staircase, sorted by weighted degree + grevlex
    MonomialOrder ord;
};

inline JacobiData jacobi_data(const SingularityModel& m, const RingPoint& pt) {
    if (pt.s.size() != m.n) throw UsageError("jacobi_data: bad coefficient count");
    if (m.discriminant(pt.s[m.marginal()]).is_zero())
        throw DegenerateRingError("marginal value s = " + pt.s[m.marginal()].to_string() +
                                  " lies on the discriminant");
    JetPoly w = m.superpotential(pt.s, pt.jet_direction);
    std::vector<JetPoly> gens;
    for (size_t v = 0; v < m.nvars; ++v) gens.push_back(w.derivative(v));

    JacobiData out{{}, {}, MonomialOrder::grevlex()};
    out.gb = groebner_basis_jets(gens, out.ord);

    // Staircase of the value-part ideal. The jet direction is nilpotent so it
    // cannot change leading terms away from the discriminant.
    std::vector<RatPoly> value_gb;
    for (const auto& g : out.gb) {
        RatPoly v(m.nvars);
        for (const auto& [mm, cc] : g.terms())
            if (!cc.value.is_zero()) v.add_term(mm, cc.value);
        if (!v.is_zero()) value_gb.push_back(v);
    }
    out.basis = quotient_staircase(value_gb, out.ord, 4 * m.n);
    if (out.basis.size() != m.n)
        throw DegenerateRingError("quotient dimension " + std::to_string(out.basis.size()) +
                                  " != " + std::to_string(m.n) + " at this point");
    sort_basis(out.basis, m.int_weights);
    return out;
}

inline std::map<Monomial, size_t> index_of(const std::vector<Monomial>& basis) {
    std::map<Monomial, size_t> idx;
    for (size_t k = 0; k < basis.size(); ++k) idx[basis[k]] = k;
    return idx;
}

// Expand a normal form on the staircase; any stray monomial is a logic error.
inline std::vector<Jet> expand_on_basis(const JetPoly& nf,
                                        const std::map<Monomial, size_t>& idx, size_t n) {
    std::vector<Jet> row(n, Jet());
    for (const auto& [mm, cc] : nf.terms()) {
        auto it = idx.find(mm);
        if (it == idx.end())
            throw DegenerateRingError("normal form leaves the staircase span");
        row[it->second] = cc;
    }
    return row;
}

// Exact LU solver for the change-of-basis problem M x = v with jet entries.
// Splitting M = M0 + eps M1 gives x0 = M0^-1 v0 and x1 = M0^-1 (v1 - M1 x0).
class JetSolver {
  public:
    JetSolver(std::vector<std::vector<Jet>> m, std::string context)
        : n_(m.size()), m1_(n_, std::vector<Rat>(n_, Rat(0))), lu_(n_, std::vector<Rat>(n_)),
          perm_(n_) {
        for (size_t i = 0; i < n_; ++i)
            for (size_t j = 0; j < n_; ++j) {
                lu_[i][j] = m[i][j].value;
                m1_[i][j] = m[i][j].slope;
            }
        for (size_t i = 0; i < n_; ++i) perm_[i] = i;
        for (size_t col = 0; col < n_; ++col) {
            size_t piv = col;
            while (piv < n_ && lu_[piv][col].is_zero()) ++piv;
            if (piv == n_)
                throw DegenerateRingError(context + ": basis degenerates at this point");
            if (piv != col) {
                std::swap(lu_[piv], lu_[col]);
                std::swap(perm_[piv], perm_[col]);
            }
            Rat inv = lu_[col][col].inverse();
            for (size_t r = col + 1; r < n_; ++r) {
                if (lu_[r][col].is_zero()) continue;
                lu_[r][col] *= inv;
                for (size_t c = col + 1; c < n_; ++c) lu_[r][c] -= lu_[r][col] * lu_[col][c];
            }
        }
    }

    std::vector<Rat> solve_values(std::vector<Rat> b) const {
        std::vector<Rat> pb(n_);
        for (size_t i = 0; i < n_; ++i) pb[i] = b[perm_[i]];
        for (size_t i = 0; i < n_; ++i)
            for (size_t j = 0; j < i; ++j) pb[i] -= lu_[i][j] * pb[j];
        for (size_t i = n_; i-- > 0;) {
            for (size_t j = i + 1; j < n_; ++j) pb[i] -= lu_[i][j] * pb[j];
            pb[i] /= lu_[i][i];
        }
        return pb;
    }

    std::vector<Jet> solve(const std::vector<Jet>& v) const {
        std::vector<Rat> v0(n_), v1(n_);
        for (size_t i = 0; i < n_; ++i) {
            v0[i] = v[i].value;
            v1[i] = v[i].slope;
        }
        std::vector<Rat> x0 = solve_values(v0);
        for (size_t i = 0; i < n_; ++i)
            for (size_t j = 0; j < n_; ++j) v1[i] -= m1_[i][j] * x0[j];
        std::vector<Rat> x1 = solve_values(v1);
        std::vector<Jet> x(n_);
        for (size_t i = 0; i < n_; ++i) x[i] = Jet(x0[i], x1[i]);
        return x;
    }

  private:
    size_t n_;
    std::vector<std::vector<Rat>> m1_;
    std::vector<std::vector<Rat>> lu_;
    std::vector<size_t> perm_;
};

} // namespace detail

// Structure constants in the model's canonical basis. Products are reduced to
// the point's Groebner staircase and converted back through the exact linear
// system M c = v, where column a of M is the staircase expansion of phi_a.
inline RingTable multiplication_table(const SingularityModel& m, const RingPoint& pt) {
    auto jd = detail::jacobi_data(m, pt);
    auto idx = detail::index_of(jd.basis);
    const size_t n = m.n;

    std::vector<std::vector<Jet>> M(n, std::vector<Jet>(n, Jet()));
    std::vector<JetPoly> nf_basis;
    for (size_t a = 0; a < n; ++a) {
        JetPoly nf = normal_form(JetPoly::term(m.nvars, m.basis[a], Jet(Rat(1))), jd.gb, jd.ord);
        nf_basis.push_back(nf);
        auto col = detail::expand_on_basis(nf, idx, n);
        for (size_t k = 0; k < n; ++k) M[k][a] = col[k];
    }
    detail::JetSolver solver(std::move(M), "multiplication_table");

    RingTable table;
    table.model = m.id;
    table.point = pt;
    table.basis = m.basis;
    table.c.assign(n, std::vector<std::vector<Jet>>(n, std::vector<Jet>(n, Jet())));

    for (size_t a = 0; a < n; ++a) {
        for (size_t b = a; b < n; ++b) {
            JetPoly prod = nf_basis[a] * nf_basis[b];
            JetPoly nf = normal_form(prod, jd.gb, jd.ord);
            auto row = solver.solve(detail::expand_on_basis(nf, idx, n));
            table.c[a][b] = row;
            if (b != a) table.c[b][a] = row;
        }
    }
    return table;
}

// Determinant of multiplication by the Hessian of W on the Milnor ring,
// from the value parts of the structure data (exact rational).
inline Rat hessian_mult_det(const SingularityModel& m, const RingPoint& pt) {
    auto jd = detail::jacobi_data(m, pt);
    auto idx = detail::index_of(jd.basis);
    const size_t n = m.n;

    JetPoly w = m.superpotential(pt.s, pt.jet_direction);
    std::vector<std::vector<JetPoly>> hess(m.nvars,
                                           std::vector<JetPoly>(m.nvars, JetPoly(m.nvars)));
    for (size_t i = 0; i < m.nvars; ++i)
        for (size_t j = 0; j < m.nvars; ++j) hess[i][j] = w.derivative(i).derivative(j);

    // Laplace expansion; nvars <= 3 so this stays tiny.
    std::vector<size_t> cols(m.nvars);
    for (size_t j = 0; j < m.nvars; ++j) cols[j] = j;
    std::function<JetPoly(size_t, std::vector<size_t>)> det =
        [&](size_t row, std::vector<size_t> cc) -> JetPoly {
        if (cc.empty()) return JetPoly::constant(m.nvars, Jet(Rat(1)));
        JetPoly acc(m.nvars);
        for (size_t j = 0; j < cc.size(); ++j) {
            std::vector<size_t> rest;
            for (size_t k = 0; k < cc.size(); ++k)
                if (k != j) rest.push_back(cc[k]);
            JetPoly sub = hess[row][cc[j]] * det(row + 1, rest);
            acc = (j % 2 == 0) ? acc + sub : acc - sub;
        }
        return acc;
    };
    JetPoly hdet = det(0, cols);

    // Matrix of multiplication by det(Hess) in the staircase basis.
    std::vector<std::vector<Rat>> mat(n, std::vector<Rat>(n, Rat(0)));
    for (size_t a = 0; a < n; ++a) {
        JetPoly prod = hdet * JetPoly::term(m.nvars, jd.basis[a], Jet(Rat(1)));
        auto row = detail::expand_on_basis(normal_form(prod, jd.gb, jd.ord), idx, n);
        for (size_t k = 0; k < n; ++k) mat[k][a] = row[k].value;
    }

    // Exact Gaussian elimination.
    Rat detv(1);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && mat[piv][col].is_zero()) ++piv;
        if (piv == n) return Rat(0);
        if (piv != col) {
            std::swap(mat[piv], mat[col]);
            detv = -detv;
        }
        detv *= mat[col][col];
        Rat inv = mat[col][col].inverse();
        for (size_t r = col + 1; r < n; ++r) {
            if (mat[r][col].is_zero()) continue;
            Rat f = mat[r][col] * inv;
            for (size_t cxx = col; cxx < n; ++cxx) mat[r][cxx] -= f * mat[col][cxx];
        }
    }
    return detv;
}

} // namespace gfn
