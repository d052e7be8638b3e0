#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <memory>
#include <map>
#include <random>
#include <vector>

#include "gfn/g_function.hpp"

namespace gfn {

// Point-evaluated derivative suppliers of a prepotential F, over a real or
// complex scalar S. The metric is constant; d3/d4/d5 return lower-index
// derivative tensors at a point; Euler data is the weight system of the
// scaling field E = sum d_alpha t^alpha d/dt^alpha.
template <typename S>
struct PrepotentialOracle {
    size_t n = 0;
    std::vector<std::vector<Rat>> eta;
    std::vector<Rat> d_weights;
    Rat d_charge;
    std::function<S(const std::vector<S>&, size_t, size_t, size_t)> d3;
    std::function<S(const std::vector<S>&, size_t, size_t, size_t, size_t)> d4;
    std::function<S(const std::vector<S>&, size_t, size_t, size_t, size_t, size_t)> d5;
    std::function<std::vector<S>(std::mt19937_64&)> sample;
};

template <typename S>
struct GOracle {
    std::function<S(const std::vector<S>&, size_t)> g1;
    std::function<S(const std::vector<S>&, size_t, size_t)> g2;
};

template <typename S>
GOracle<S> zero_g_oracle() {
    GOracle<S> g;
    g.g1 = [](const std::vector<S>&, size_t) { return S(0); };
    g.g2 = [](const std::vector<S>&, size_t, size_t) { return S(0); };
    return g;
}

namespace detail {

// Dense per-point tensors, filled from sorted index tuples only (all
// suppliers are totally symmetric).
template <typename S>
struct PointTensors {
    size_t n;
    std::vector<S> d3, d4, d5;

    PointTensors(const PrepotentialOracle<S>& f, const std::vector<S>& pt) : n(f.n) {
        d3.assign(n * n * n, S(0));
        d4.assign(n * n * n * n, S(0));
        d5.assign(n * n * n * n * n, S(0));
        for (size_t a = 0; a < n; ++a)
            for (size_t b = a; b < n; ++b)
                for (size_t c = b; c < n; ++c) {
                    S v3 = f.d3(pt, a, b, c);
                    assign_sym(d3, {a, b, c}, v3);
                    for (size_t d = c; d < n; ++d) {
                        S v4 = f.d4(pt, a, b, c, d);
                        assign_sym(d4, {a, b, c, d}, v4);
                        for (size_t e = d; e < n; ++e) {
                            S v5 = f.d5(pt, a, b, c, d, e);
                            assign_sym(d5, {a, b, c, d, e}, v5);
                        }
                    }
                }
    }

    const S& t3(size_t a, size_t b, size_t c) const { return d3[(a * n + b) * n + c]; }
    const S& t4(size_t a, size_t b, size_t c, size_t d) const {
        return d4[((a * n + b) * n + c) * n + d];
    }
    const S& t5(size_t a, size_t b, size_t c, size_t d, size_t e) const {
        return d5[(((a * n + b) * n + c) * n + d) * n + e];
    }

  private:
    void assign_sym(std::vector<S>& t, std::vector<size_t> idx, const S& v) {
        std::sort(idx.begin(), idx.end());
        do {
            size_t flat = 0;
            for (size_t i : idx) flat = flat * n + i;
            t[flat] = v;
        } while (std::next_permutation(idx.begin(), idx.end()));
    }
};

} // namespace detail

// One-point evaluator of the rank-4 residual contraction. Materializes the
// derivative tensors once; every probe contraction is then plain arithmetic.
template <typename S>
class GetzlerEvaluator {
  public:
    GetzlerEvaluator(const PrepotentialOracle<S>& f, const GOracle<S>& g,
                     std::vector<S> point)
        : n_(f.n), point_(checked_point(f, std::move(point))), tensors_(f, point_),
          einv_(detail::invert_eta(f.eta)) {
        g1_.resize(n_);
        g2_.assign(n_, std::vector<S>(n_));
        for (size_t a = 0; a < n_; ++a) {
            g1_[a] = g.g1(point_, a);
            for (size_t b = 0; b < n_; ++b) g2_[a][b] = g.g2(point_, a, b);
        }
        h_.assign(n_, S(0));
        for (size_t mu = 0; mu < n_; ++mu)
            for (size_t nu = 0; nu < n_; ++nu)
                for (size_t r = 0; r < n_; ++r) {
                    if (einv_[nu][r].is_zero()) continue;
                    h_[mu] = h_[mu] + S(einv_[nu][r]) * tensors_.t3(r, mu, nu);
                }
    }

    // The seven displayed terms, prefactors included, contracted against the
    // ordered probe assignment (z1, z2, z3, z4).
    std::array<S, 7> terms_ordered(const std::vector<S>& z1, const std::vector<S>& z2,
                                   const std::vector<S>& z3, const std::vector<S>& z4) const {
        if (z1.size() != n_ || z2.size() != n_ || z3.size() != n_ || z4.size() != n_)
            throw UsageError("getzler: probe dimension mismatch");
        std::array<S, 7> out{S(0), S(0), S(0), S(0), S(0), S(0), S(0)};
        std::vector<S> A = c3_raised(z1, z2);
        std::vector<S> C = c3_raised(z3, z4);
        std::vector<S> P = c4_raised(z1, z2, z3);

        // 3 c^mu(z1,z2) c^nu(z3,z4) G''_{mu nu}
        S t1(0);
        for (size_t mu = 0; mu < n_; ++mu)
            for (size_t nu = 0; nu < n_; ++nu) t1 = t1 + A[mu] * C[nu] * g2_[mu][nu];
        out[0] = S(3) * t1;

        // -4 c^mu(z1,z2) c^nu(z3, e_mu) G''(z4, e_nu)
        std::vector<S> g2z4(n_, S(0));
        for (size_t nu = 0; nu < n_; ++nu)
            for (size_t b = 0; b < n_; ++b) g2z4[nu] = g2z4[nu] + g2_[b][nu] * z4[b];
        S t2(0);
        for (size_t mu = 0; mu < n_; ++mu) {
            S inner(0);
            for (size_t nu = 0; nu < n_; ++nu) inner = inner + c3_rs(z3, mu, nu) * g2z4[nu];
            t2 = t2 + A[mu] * inner;
        }
        out[1] = S(-4) * t2;

        // - c^mu(z1,z2) c^nu(z3,z4,e_mu) G'_nu
        S t3(0);
        for (size_t mu = 0; mu < n_; ++mu) {
            S inner(0);
            for (size_t nu = 0; nu < n_; ++nu)
                inner = inner + c4_rs(z3, z4, mu, nu) * g1_[nu];
            t3 = t3 + A[mu] * inner;
        }
        out[2] = S(-1) * t3;

        // +2 c^mu(z1,z2,z3) c^nu(z4, e_mu) G'_nu
        S t4(0);
        for (size_t mu = 0; mu < n_; ++mu) {
            S inner(0);
            for (size_t nu = 0; nu < n_; ++nu) inner = inner + c3_rs(z4, mu, nu) * g1_[nu];
            t4 = t4 + P[mu] * inner;
        }
        out[3] = S(2) * t4;

        // (1/6) c^mu(z1,z2,z3) c^nu(z4, e_mu, e_nu) summed over nu
        S t5(0);
        for (size_t mu = 0; mu < n_; ++mu) {
            S w(0);
            for (size_t nu = 0; nu < n_; ++nu)
                for (size_t r = 0; r < n_; ++r) {
                    if (einv_[nu][r].is_zero()) continue;
                    S acc(0);
                    for (size_t a = 0; a < n_; ++a)
                        acc = acc + tensors_.t4(r, a, mu, nu) * z4[a];
                    w = w + S(einv_[nu][r]) * acc;
                }
            t5 = t5 + P[mu] * w;
        }
        out[4] = S(Rat(1, 6)) * t5;

        // (1/24) c^mu(z1,z2,z3,z4) c^nu_{mu nu}
        S t6(0);
        for (size_t mu = 0; mu < n_; ++mu) t6 = t6 + c5_raised(z1, z2, z3, z4, mu) * h_[mu];
        out[5] = S(Rat(1, 24)) * t6;

        // -(1/4) c^mu(z1,z2,e_nu) c^nu(z3,z4,e_mu)
        S t7(0);
        for (size_t mu = 0; mu < n_; ++mu)
            for (size_t nu = 0; nu < n_; ++nu)
                t7 = t7 + c4_rs(z1, z2, nu, mu) * c4_rs(z3, z4, mu, nu);
        out[6] = S(Rat(-1, 4)) * t7;
        return out;
    }

    std::array<S, 7> terms(const std::vector<S>& z) const {
        return terms_ordered(z, z, z, z);
    }

    S delta(const std::vector<S>& z) const {
        auto t = terms(z);
        S acc(0);
        for (const S& v : t) acc = acc + v;
        return acc;
    }

    // Contraction against the symmetrization of z1 x z2 x z3 x z4 (the
    // displayed sum fixes only the fully symmetric part).
    S delta4(const std::vector<S>& z1, const std::vector<S>& z2, const std::vector<S>& z3,
             const std::vector<S>& z4) const {
        std::array<const std::vector<S>*, 4> zs{&z1, &z2, &z3, &z4};
        std::array<size_t, 4> idx{0, 1, 2, 3};
        S acc(0);
        size_t count = 0;
        do {
            auto t = terms_ordered(*zs[idx[0]], *zs[idx[1]], *zs[idx[2]], *zs[idx[3]]);
            for (const S& v : t) acc = acc + v;
            ++count;
        } while (std::next_permutation(idx.begin(), idx.end()));
        return acc / S(static_cast<long>(count));
    }

    // max |eta_{ab} - d3(t^1, a, b)|: flat-unit compatibility of the oracle
    BigFloat eta_residual(const std::vector<std::vector<Rat>>& eta) const {
        BigFloat worst(0);
        for (size_t a = 0; a < n_; ++a)
            for (size_t b = 0; b < n_; ++b) {
                BigFloat r = (tensors_.t3(0, a, b) - S(eta[a][b])).abs();
                if (worst < r) worst = r;
            }
        return worst;
    }

  private:
    // c^mu with two probe legs: eta^{mu r} d3(r, ., .) x y
    std::vector<S> c3_raised(const std::vector<S>& x, const std::vector<S>& y) const {
        std::vector<S> lower(n_, S(0));
        for (size_t r = 0; r < n_; ++r) {
            S acc(0);
            for (size_t a = 0; a < n_; ++a) {
                S inner(0);
                for (size_t b = 0; b < n_; ++b) inner = inner + tensors_.t3(r, a, b) * y[b];
                acc = acc + x[a] * inner;
            }
            lower[r] = acc;
        }
        return raise(lower);
    }
    // c^nu(x, e_mu): one probe leg, one free lower leg
    S c3_rs(const std::vector<S>& x, size_t mu, size_t nu) const {
        S acc(0);
        for (size_t r = 0; r < n_; ++r) {
            if (einv_[nu][r].is_zero()) continue;
            S inner(0);
            for (size_t a = 0; a < n_; ++a) inner = inner + tensors_.t3(r, a, mu) * x[a];
            acc = acc + S(einv_[nu][r]) * inner;
        }
        return acc;
    }
    std::vector<S> c4_raised(const std::vector<S>& x, const std::vector<S>& y,
                             const std::vector<S>& w) const {
        std::vector<S> lower(n_, S(0));
        for (size_t r = 0; r < n_; ++r) {
            S acc(0);
            for (size_t a = 0; a < n_; ++a)
                for (size_t b = 0; b < n_; ++b) {
                    S inner(0);
                    for (size_t c = 0; c < n_; ++c)
                        inner = inner + tensors_.t4(r, a, b, c) * w[c];
                    acc = acc + x[a] * y[b] * inner;
                }
            lower[r] = acc;
        }
        return raise(lower);
    }
    // c^nu(x, y, e_mu)
    S c4_rs(const std::vector<S>& x, const std::vector<S>& y, size_t mu, size_t nu) const {
        S acc(0);
        for (size_t r = 0; r < n_; ++r) {
            if (einv_[nu][r].is_zero()) continue;
            S inner(0);
            for (size_t a = 0; a < n_; ++a)
                for (size_t b = 0; b < n_; ++b)
                    inner = inner + tensors_.t4(r, a, b, mu) * x[a] * y[b];
            acc = acc + S(einv_[nu][r]) * inner;
        }
        return acc;
    }
    S c5_raised(const std::vector<S>& z1, const std::vector<S>& z2, const std::vector<S>& z3,
                const std::vector<S>& z4, size_t mu) const {
        S acc(0);
        for (size_t r = 0; r < n_; ++r) {
            if (einv_[mu][r].is_zero()) continue;
            S sum(0);
            for (size_t a = 0; a < n_; ++a)
                for (size_t b = 0; b < n_; ++b)
                    for (size_t c = 0; c < n_; ++c) {
                        S inner(0);
                        for (size_t d = 0; d < n_; ++d)
                            inner = inner + tensors_.t5(r, a, b, c, d) * z4[d];
                        sum = sum + z1[a] * z2[b] * z3[c] * inner;
                    }
            acc = acc + S(einv_[mu][r]) * sum;
        }
        return acc;
    }
    static std::vector<S> checked_point(const PrepotentialOracle<S>& f, std::vector<S> pt) {
        if (f.eta.size() != f.n || pt.size() != f.n)
            throw UsageError("getzler: dimension mismatch");
        return pt;
    }
    std::vector<S> raise(const std::vector<S>& lower) const {
        std::vector<S> out(n_, S(0));
        for (size_t mu = 0; mu < n_; ++mu)
            for (size_t r = 0; r < n_; ++r) {
                if (einv_[mu][r].is_zero()) continue;
                out[mu] = out[mu] + S(einv_[mu][r]) * lower[r];
            }
        return out;
    }

    size_t n_;
    std::vector<S> point_;
    detail::PointTensors<S> tensors_;
    std::vector<std::vector<Rat>> einv_;
    std::vector<S> g1_;
    std::vector<std::vector<S>> g2_;
    std::vector<S> h_;
};

template <typename S>
std::array<S, 7> getzler_terms(const PrepotentialOracle<S>& f, const GOracle<S>& g,
                               const std::vector<S>& point, const std::vector<S>& z) {
    return GetzlerEvaluator<S>(f, g, point).terms(z);
}

template <typename S>
S getzler_delta(const PrepotentialOracle<S>& f, const GOracle<S>& g,
                const std::vector<S>& point, const std::vector<S>& z) {
    return GetzlerEvaluator<S>(f, g, point).delta(z);
}

// max over index pairs of the WDVV associativity defect
// | c_{ab}^mu c_{mu cd} - c_{cb}^mu c_{mu ad} | at a point.
template <typename S>
BigFloat wdvv_residual(const PrepotentialOracle<S>& f, const std::vector<S>& point) {
    detail::PointTensors<S> t(f, point);
    auto einv = detail::invert_eta(f.eta);
    size_t n = f.n;
    BigFloat worst(0);
    auto contracted = [&](size_t a, size_t b, size_t c, size_t d) {
        S acc(0);
        for (size_t mu = 0; mu < n; ++mu)
            for (size_t r = 0; r < n; ++r) {
                if (einv[mu][r].is_zero()) continue;
                acc = acc + t.t3(a, b, r) * S(einv[r][mu]) * t.t3(mu, c, d);
            }
        return acc;
    };
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t c = 0; c < n; ++c)
                for (size_t d = 0; d < n; ++d) {
                    BigFloat r = (contracted(a, b, c, d) - contracted(c, b, a, d)).abs();
                    if (worst < r) worst = r;
                }
    return worst;
}

// Point data for the Virasoro right-hand sides, taken from an oracle:
// all-lower c at the point and Euler components E^a = d_a t^a.
template <typename S>
FrobeniusPointData<S> frobenius_point_data(const PrepotentialOracle<S>& f,
                                           const std::vector<S>& point) {
    FrobeniusPointData<S> pd;
    pd.eta = f.eta;
    detail::PointTensors<S> t(f, point);
    pd.c.assign(f.n, std::vector<std::vector<S>>(f.n, std::vector<S>(f.n, S(0))));
    for (size_t a = 0; a < f.n; ++a)
        for (size_t b = 0; b < f.n; ++b)
            for (size_t c = 0; c < f.n; ++c) pd.c[a][b][c] = t.t3(a, b, c);
    pd.euler.reserve(f.n);
    for (size_t a = 0; a < f.n; ++a) pd.euler.push_back(S(f.d_weights[a]) * point[a]);
    return pd;
}

// ---------------------------------------------------------------------------
// Deterministic residual scan.
// ---------------------------------------------------------------------------

template <typename S>
struct GetzlerScanEntry {
    std::vector<S> point;
    std::vector<S> probe;
    BigFloat residual;
};

template <typename S>
struct GetzlerScanReport {
    std::vector<GetzlerScanEntry<S>> entries;
    BigFloat max_residual;
    BigFloat max_eta_residual;
};

// Integer probe components in [-5, 5] drawn by explicit modulo so the stream
// depends only on the seed, not on library distribution internals.
inline long scan_draw(std::mt19937_64& rng, long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

template <typename S>
GetzlerScanReport<S> getzler_scan(const PrepotentialOracle<S>& f, const GOracle<S>& g,
                                  size_t n_points, unsigned long seed) {
    if (!f.sample) throw UsageError("getzler_scan: oracle has no point sampler");
    std::mt19937_64 rng(seed);
    GetzlerScanReport<S> rep;
    rep.max_residual = BigFloat(0);
    rep.max_eta_residual = BigFloat(0);
    for (size_t i = 0; i < n_points; ++i) {
        std::vector<S> pt = f.sample(rng);
        std::vector<S> z(f.n);
        bool nonzero = false;
        for (size_t a = 0; a < f.n; ++a) {
            long v = scan_draw(rng, -5, 5);
            if (v != 0) nonzero = true;
            z[a] = S(v);
        }
        if (!nonzero) z[0] = S(1);
        GetzlerEvaluator<S> ev(f, g, pt);
        BigFloat res = ev.delta(z).abs();
        BigFloat etar = ev.eta_residual(f.eta);
        if (rep.max_residual < res) rep.max_residual = res;
        if (rep.max_eta_residual < etar) rep.max_eta_residual = etar;
        rep.entries.push_back({std::move(pt), std::move(z), res});
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Exact polynomial prepotential oracle.
// ---------------------------------------------------------------------------

template <typename S>
PrepotentialOracle<S> polynomial_oracle(const RatPoly& f, std::vector<std::vector<Rat>> eta,
                                        std::vector<Rat> d_weights, Rat d_charge) {
    size_t n = f.arity();
    if (eta.size() != n || d_weights.size() != n)
        throw UsageError("polynomial_oracle: dimension mismatch");

    // all derivative polynomials up to order five, keyed by sorted index tuple
    auto derivs = std::make_shared<std::map<std::vector<size_t>, RatPoly>>();
    std::function<void(const RatPoly&, std::vector<size_t>, size_t, int)> build =
        [&](const RatPoly& base, std::vector<size_t> idx, size_t from, int depth) {
            if (depth == 5) return;
            for (size_t v = from; v < n; ++v) {
                RatPoly d = base.derivative(v);
                auto key = idx;
                key.push_back(v);
                (*derivs)[key] = d;
                build(d, key, v, depth + 1);
            }
        };
    build(f, {}, 0, 0);

    auto eval_deriv = [derivs, n](const std::vector<S>& pt, std::vector<size_t> idx) -> S {
        std::sort(idx.begin(), idx.end());
        auto it = derivs->find(idx);
        if (it == derivs->end()) throw UsageError("polynomial_oracle: bad index");
        S acc(0);
        for (const auto& [mono, coeff] : it->second.terms()) {
            S term{S(coeff)};
            for (size_t v = 0; v < n; ++v)
                for (long k = 0; k < mono.exps[v]; ++k) term = term * pt[v];
            acc = acc + term;
        }
        return acc;
    };

    PrepotentialOracle<S> o;
    o.n = n;
    o.eta = std::move(eta);
    o.d_weights = std::move(d_weights);
    o.d_charge = std::move(d_charge);
    o.d3 = [eval_deriv](const std::vector<S>& pt, size_t a, size_t b, size_t c) {
        return eval_deriv(pt, {a, b, c});
    };
    o.d4 = [eval_deriv](const std::vector<S>& pt, size_t a, size_t b, size_t c, size_t d) {
        return eval_deriv(pt, {a, b, c, d});
    };
    o.d5 = [eval_deriv](const std::vector<S>& pt, size_t a, size_t b, size_t c, size_t d,
                        size_t e) { return eval_deriv(pt, {a, b, c, d, e}); };
    o.sample = [n](std::mt19937_64& rng) {
        std::vector<S> pt(n);
        for (size_t a = 0; a < n; ++a) pt[a] = S(Rat(scan_draw(rng, -200, 200), 100));
        return pt;
    };
    return o;
}

// Stock examples: the one-variable cubic (free energy of a point, residual
// identically zero) and the A2 polynomial prepotential.
inline PrepotentialOracle<BigFloat> trivial_cubic_oracle() {
    RatPoly f = RatPoly::term(1, Monomial({3}), Rat(1, 6));
    return polynomial_oracle<BigFloat>(f, {{Rat(1)}}, {Rat(1)}, Rat(0));
}

inline PrepotentialOracle<BigFloat> a2_oracle() {
    RatPoly f = RatPoly::term(2, Monomial({2, 1}), Rat(1, 2)) +
                RatPoly::term(2, Monomial({0, 4}), Rat(1, 72));
    std::vector<std::vector<Rat>> eta = {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}};
    return polynomial_oracle<BigFloat>(f, eta, {Rat(1), Rat(2, 3)}, Rat(1, 3));
}

inline SpectrumData a2_spectrum() { return make_spectrum(Rat(1, 3), {Rat(0), Rat(1, 3)}); }

} // namespace gfn
