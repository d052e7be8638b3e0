// End-to-end acceptance gate. Each criterion prints exactly one PASS/FAIL
// line; the process exits 0 only if every criterion holds. Tolerances are
// pinned here on purpose: loosening them is a visible diff.

#include <gfn/g_function.hpp>
#include <gfn/getzler.hpp>
#include <gfn/halphen.hpp>
#include <gfn/io.hpp>
#include <gfn/suites.hpp>

#include "oracles.hpp"

#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace gfn;

namespace {

int failures = 0;

void report(int k, const std::string& what, bool ok, const std::string& detail) {
    std::string line = std::string(ok ? "PASS" : "FAIL") + " criterion-" + std::to_string(k) +
                       ": " + what;
    if (!ok && !detail.empty()) line += " [" + detail + "]";
    std::puts(line.c_str());
    if (!ok) ++failures;
}

void run(int k, const std::string& what, const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    report(k, what, ok, detail);
}

const std::vector<Rat>& sample_grid() {
    static const std::vector<Rat> g = {Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(1), Rat(3, 2)};
    return g;
}

bool leq(const BigFloat& err, const BigFloat& tol, const char* tag, std::string& detail) {
    if (err < tol) return true;
    detail = std::string(tag) + " err " + err.to_string(6) + " tol " + tol.to_string(2);
    return false;
}

RatPoly basis_product(const RingTable& tab, size_t a, size_t b, size_t nvars) {
    return RatPoly::term(nvars, tab.basis[a], Rat(1)).times_monomial(tab.basis[b]);
}

bool criterion1(std::string& detail) {
    const BigFloat tol = BigFloat::pow10(-10);
    const BigFloat h = BigFloat::pow10(-15);
    SingularityModel m = build_model(ModelId::E6t);
    FlatMap fm(ModelId::E6t);
    for (const Rat& s : sample_grid()) {
        BigFloat ring = dg_dt_ring_at_s(m, s);
        BigFloat t = fm.t_of_s(BigFloat(s));
        BigFloat fd =
            (g_closed(ModelId::E6t, t + h) - g_closed(ModelId::E6t, t - h)) / (BigFloat(2) * h);
        if (!leq((ring - fd).abs(), tol, ("s=" + s.to_string()).c_str(), detail)) return false;
    }
    return true;
}

bool criterion2(std::string& detail) {
    SingularityModel m = build_model(ModelId::E6t);
    for (const Rat& s : sample_grid()) {
        // deform along s_6, read the slopes off the dual phi_1 column
        RingTable tab = multiplication_table(m, marginal_point(m, s, 6));
        Rat expect = Rat(-2, 27) * s * s / m.discriminant(s);
        for (size_t p : {4u, 5u, 7u})
            if (tab.at(p, 1, p).slope != expect) {
                detail = "diagonal slope mismatch at s=" + s.to_string();
                return false;
            }
        for (size_t p : {0u, 1u, 2u, 3u, 6u})
            if (!tab.at(p, 1, p).slope.is_zero()) {
                detail = "unexpected nonzero slope at s=" + s.to_string();
                return false;
            }
        if (tab.trace(1).slope != Rat(-2, 9) * s * s / m.discriminant(s) ||
            !tab.trace(1).value.is_zero()) {
            detail = "trace jet mismatch at s=" + s.to_string();
            return false;
        }
    }
    return true;
}

bool criterion3(std::string& detail) {
    const BigFloat tol = BigFloat::pow10(-30);
    const long pts = 20;
    struct Row {
        ModelId id;
        long spow;
        Rat constant;
    };
    const Row rows[] = {{ModelId::E6t, 2, Rat(9)},
                        {ModelId::E7t, 1, Rat(-2)},
                        {ModelId::E8t, 2, Rat(9, 4)}};
    for (const Row& r : rows) {
        FlatMap fm(r.id);
        for (long k = 0; k < pts; ++k) {
            BigFloat s(Rat(3 * (k + 1), 2 * (pts + 1)));
            BigFloat u = fm.u_of_s(s);
            BigFloat g = fm.g(u);
            BigFloat series = fm.dt_ds_series(s);
            BigFloat e1 = (series * (BigFloat(1) - u) * g * g - BigFloat(1)).abs();
            std::string tag = model_name(r.id);
            if (!leq(e1, tol, (tag + " dt/ds").c_str(), detail)) return false;
            BigFloat dlog = -fm.du_ds(s) / (BigFloat(1) - u) / series;
            BigFloat e2 = (s.pow_si(r.spow) * g * g - BigFloat(r.constant) * dlog).abs();
            if (!leq(e2, tol, (tag + " s^p g^2").c_str(), detail)) return false;
        }
    }
    FlatMap fm6(ModelId::E6t);
    for (long k = 0; k < 10; ++k) {
        BigFloat s(Rat(3 * (k + 1), 22));
        LinearizationData lin = linearization(ModelId::E6t, s);
        BigFloat prod(1);
        for (const BigFloat& d : lin.diag) prod = prod * d;
        BigFloat ds_dt = BigFloat(1) / fm6.dt_ds_series(s);
        if (!leq((prod - ds_dt.pow_si(4)).abs(), tol, "jacobian", detail)) return false;
    }
    return true;
}

bool criterion4(std::string& detail) {
    for (ModelId id : {ModelId::E6t, ModelId::E7t, ModelId::E8t})
        if (scaling_anomaly(model_spectrum(build_model(id))) != Rat(0)) {
            detail = "nonzero anomaly for " + model_name(id);
            return false;
        }
    const std::pair<const char*, Rat> folded[] = {
        {"B3^(1,1)", Rat(-1, 48)},
        {"B2^(2,1)", Rat(-1, 24)},
        {"G2^(1,1)", Rat(-1, 24)},
        {"G2^(3,1)", Rat(-1, 18)},
    };
    for (const auto& [sys, g] : folded)
        if (folding_g(sys).gamma != g) {
            detail = std::string("folded anomaly mismatch for ") + sys;
            return false;
        }
    using Pairs = std::vector<std::pair<long, Rat>>;
    const std::pair<const char*, Pairs> cox[] = {
        {"A3", {}},
        {"D5", {}},
        {"E6", {}},
        {"B4", {{4, Rat(-1, 48)}}},
        {"F4", {{4, Rat(-1, 48)}}},
        {"H3", {{5, Rat(-1, 20)}}},
        {"H4", {{5, Rat(-1, 20)}}},
        {"I2(5)", {{5, Rat(-1, 20)}}},
        {"I2(7)", {{7, Rat(-5, 42)}}},
    };
    for (const auto& [group, ref] : cox)
        if (coxeter_g_coefficient(group) != ref) {
            detail = std::string("Coxeter coefficient mismatch for ") + group;
            return false;
        }
    auto table = folding_table();
    if (table.size() != 3 || table[0].system != "B3^(1,1)" || table[0].gamma != Rat(-1, 48) ||
        table[1].deg_kappa != Rat(2) || table[2].gamma != Rat(-1, 24)) {
        detail = "folding table contents changed";
        return false;
    }
    return true;
}

bool criterion5(std::string& detail) {
    auto triv = getzler_scan(trivial_cubic_oracle(), zero_g_oracle<BigFloat>(), 3, 1);
    if (!triv.max_residual.is_zero()) {
        detail = "one-variable residual not identically zero";
        return false;
    }
    auto a2 = getzler_scan(a2_oracle(), zero_g_oracle<BigFloat>(), 5, 1);
    if (!leq(a2.max_residual, BigFloat::pow10(-30), "A2 scan", detail)) return false;

    GOracle<BigFloat> pert;
    pert.g1 = [](const std::vector<BigFloat>& p, size_t a) {
        return a == 0 ? BigFloat(2) * p[0] : BigFloat(0);
    };
    pert.g2 = [](const std::vector<BigFloat>&, size_t a, size_t b) {
        return (a == 0 && b == 0) ? BigFloat(2) : BigFloat(0);
    };
    if (!(getzler_scan(a2_oracle(), pert, 2, 1).max_residual > BigFloat::pow10(-6))) {
        detail = "perturbed G not rejected";
        return false;
    }

    try {
        D4Oracles d4 = d4_oracles();
        auto scan = getzler_scan(d4.f, d4.g, 3, 1);
        for (const auto& e : scan.entries)
            if (e.point[5].im < BigFloat(Rat(3, 2))) {
                detail = "sample point below the modulus strip";
                return false;
            }
        if (!leq(scan.max_residual, BigFloat::pow10(-20), "four-variable scan", detail))
            return false;
    } catch (const ConventionError& e) {
        detail = std::string("theta convention gate: ") + e.what();
        return false;
    }
    return true;
}

bool criterion6(std::string& detail) {
    const BigFloat tol = BigFloat::pow10(-50);
    const long pts = 20;
    for (ModelId id : {ModelId::E6t, ModelId::E7t, ModelId::E8t}) {
        FlatMap fm(id);
        for (long k = 0; k < pts; ++k) {
            BigFloat s(Rat(3 * (k + 1), 2 * (pts + 1)));
            auto inv = fm.s_of_t(fm.t_of_s(s));
            std::string tag = model_name(id) + " roundtrip";
            if (!leq((inv.s - s).abs(), tol, tag.c_str(), detail)) return false;
            if (inv.iterations > 20) {
                detail = model_name(id) + " Newton used " + std::to_string(inv.iterations) +
                         " iterations";
                return false;
            }
        }
    }
    return true;
}

bool criterion7(std::string& detail) {
    SingularityModel m = build_model(ModelId::E6t);
    RingPoint pt = marginal_point(m, Rat(1));
    RingTable tab = multiplication_table(m, pt);
    oracle::DenseSliceReducer dense(oracle::gradient_values(m, pt), m.nvars);
    auto idx = gfn::detail::index_of(tab.basis);
    size_t n = tab.n();

    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            auto nf = dense.reduce(basis_product(tab, a, b, m.nvars));
            std::vector<Rat> coeffs(n, Rat(0));
            for (const auto& [mm, cc] : nf) {
                auto it = idx.find(mm);
                if (it == idx.end()) {
                    detail = "dense remainder leaves the staircase";
                    return false;
                }
                coeffs[it->second] = cc;
            }
            for (size_t k = 0; k < n; ++k)
                if (coeffs[k] != tab.at(a, b, k).value) {
                    std::ostringstream os;
                    os << "normal form mismatch at (" << a << "," << b << "," << k << ")";
                    detail = os.str();
                    return false;
                }
        }

    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t c = 0; c < n; ++c)
                for (size_t mth = 0; mth < n; ++mth) {
                    Rat lhs(0), rhs(0);
                    for (size_t k = 0; k < n; ++k) {
                        lhs += tab.at(a, b, k).value * tab.at(k, c, mth).value;
                        rhs += tab.at(b, c, k).value * tab.at(a, k, mth).value;
                    }
                    if (lhs != rhs) {
                        detail = "associativity defect";
                        return false;
                    }
                }
    return true;
}

bool criterion8(std::string& detail) {
    BigComplex tau(BigFloat(0), BigFloat(2));
    BigComplex shift = eta(tau + BigComplex(1)) / eta(tau);
    BigComplex root24 = BigComplex(BigFloat(0), BigFloat::pi() / BigFloat(12)).exp();
    if (!leq((shift - root24).abs(), BigFloat::pow10(-40), "eta shift", detail)) return false;

    for (const BigComplex& t :
         {BigComplex(BigFloat(0), BigFloat(2)),
          BigComplex(BigFloat(Rat(1, 3)), BigFloat(Rat(3, 2)))}) {
        BigComplex prod = theta_constant(2, t) * theta_constant(3, t) * theta_constant(4, t);
        BigComplex e3 = BigComplex(2) * eta(t).pow_si(3);
        if (!leq((prod - e3).abs(), BigFloat::pow10(-40), "theta product", detail)) return false;
    }

    BigComplex gshift =
        BigComplex(Rat(-1, 2)) * (eta(tau + BigComplex(1)).log() - eta(tau).log());
    BigComplex want(BigFloat(0), -BigFloat::pi() / BigFloat(24));
    if (!leq((gshift - want).abs(), BigFloat::pow10(-30), "G unit shift", detail)) return false;

    SingularityModel m = build_model(ModelId::E6t);
    std::vector<BigFloat> tvec = {BigFloat(Rat(3, 10)), BigFloat(Rat(-1, 4)),
                                  BigFloat(Rat(1, 5)),  BigFloat(Rat(7, 10)),
                                  BigFloat(Rat(-2, 5)), BigFloat(Rat(1, 2)),
                                  BigFloat(Rat(9, 10)), BigFloat(Rat(4, 5))};
    if (inversion_transform(m, tvec).shift_coefficient != Rat(-1, 6)) {
        detail = "inversion shift coefficient is not -1/6";
        return false;
    }
    return true;
}

} // namespace

int main() {
    std::printf("acceptance gate, %ld decimal digits working precision\n",
                BigFloat::default_digits());

    run(1, "cubic family dG/dt: ring route vs differentiated closed form (tol 1e-10)",
        criterion1);
    run(2, "exact first-order jets of the marginal deformation at rational points", criterion2);
    run(3, "hypergeometric Wronskian identities and Jacobian factorization (tol 1e-30)",
        criterion3);
    run(4, "anomaly values, Coxeter coefficients and folding tables (exact)", criterion4);
    run(5, "Getzler residuals: polynomial models vanish, perturbation rejected, "
           "four-variable family below 1e-20",
        criterion5);
    run(6, "flat coordinate roundtrip below 1e-50 with at most 20 Newton steps", criterion6);
    run(7, "Groebner normal forms equal dense slice reduction on all products (exact)",
        criterion7);
    run(8, "modular identities, unit shift of G, inversion shift coefficient", criterion8);

    if (failures == 0) {
        std::puts("acceptance: all criteria hold");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", failures);
    return 1;
}
