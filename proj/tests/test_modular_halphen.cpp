#include <catch2/catch_amalgamated.hpp>

#include <gfn/halphen.hpp>
#include <gfn/modular.hpp>

#include "oracles.hpp"

using namespace gfn;

namespace {

BigFloat tol10(int e) { return BigFloat::pow10(e); }

BigComplex tau_2i() { return BigComplex(BigFloat(0), BigFloat(2)); }

// Central difference of a holomorphic function along the real tau direction.
template <typename F>
BigComplex complex_central_diff(F f, const BigComplex& tau, const BigFloat& h) {
    BigComplex hh(h, BigFloat(0));
    return (f(tau + hh) - f(tau - hh)) / (hh * BigComplex(2));
}

BigFloat state_gap(const HalphenState& a, const HalphenState& b) {
    BigFloat e = (a.u - b.u).abs();
    BigFloat ev = (a.v - b.v).abs();
    if (e < ev) e = ev;
    BigFloat ew = (a.w - b.w).abs();
    if (e < ew) e = ew;
    return e;
}

} // namespace

TEST_CASE("eta matches the pentagonal-number oracle", "[modular]") {
    for (const BigComplex& tau :
         {tau_2i(), BigComplex(BigFloat(Rat(1, 3)), BigFloat(Rat(3, 2)))}) {
        BigComplex lhs = eta(tau);
        BigComplex rhs = oracle::eta_pentagonal(tau);
        REQUIRE((lhs - rhs).abs() < tol10(-50));
    }
}

TEST_CASE("eta translation picks up e^{i pi / 12}", "[modular]") {
    for (const BigComplex& tau :
         {tau_2i(), BigComplex(BigFloat(Rat(-2, 5)), BigFloat(Rat(7, 4)))}) {
        BigComplex phase = BigComplex(BigFloat(0), BigFloat::pi() / BigFloat(12)).exp();
        BigComplex lhs = eta(tau + BigComplex(1));
        REQUIRE((lhs - phase * eta(tau)).abs() < tol10(-50));
    }
}

TEST_CASE("eta inversion picks up sqrt(-i tau)", "[modular]") {
    for (const BigComplex& tau :
         {tau_2i(), BigComplex(BigFloat(Rat(1, 2)), BigFloat(2))}) {
        BigComplex lhs = eta(-BigComplex(1) / tau);
        BigComplex rhs = (BigComplex(BigFloat(0), BigFloat(-1)) * tau).sqrt() * eta(tau);
        REQUIRE((lhs - rhs).abs() < tol10(-50));
    }
}

TEST_CASE("theta product identity theta2 theta3 theta4 = 2 eta^3", "[modular]") {
    for (const BigComplex& tau :
         {tau_2i(), BigComplex(BigFloat(Rat(1, 3)), BigFloat(Rat(3, 2)))}) {
        BigComplex lhs = theta_constant(2, tau) * theta_constant(3, tau) * theta_constant(4, tau);
        BigComplex rhs = BigComplex(2) * eta(tau).pow_si(3);
        REQUIRE((lhs - rhs).abs() < tol10(-40));
    }
}

TEST_CASE("log-derivatives agree with finite differences", "[modular]") {
    BigComplex tau = tau_2i();
    BigFloat h = tol10(-15);

    SECTION("eta, first order") {
        BigComplex fd = complex_central_diff([](const BigComplex& t) { return eta(t); }, tau, h);
        REQUIRE((fd / eta(tau) - eta_log_deriv(tau, 1)).abs() < tol10(-28));
    }
    SECTION("eta, second order") {
        BigComplex fd = complex_central_diff(
            [](const BigComplex& t) { return eta_log_deriv(t, 1); }, tau, h);
        REQUIRE((fd - eta_log_deriv(tau, 2)).abs() < tol10(-28));
    }
    SECTION("theta, both orders, all kinds") {
        for (int kind : {2, 3, 4}) {
            BigComplex fd1 = complex_central_diff(
                [kind](const BigComplex& t) { return theta_constant(kind, t); }, tau, h);
            REQUIRE((fd1 / theta_constant(kind, tau) - theta_log_deriv(kind, tau, 1)).abs() <
                    tol10(-28));
            BigComplex fd2 = complex_central_diff(
                [kind](const BigComplex& t) { return theta_log_deriv(kind, t, 1); }, tau, h);
            REQUIRE((fd2 - theta_log_deriv(kind, tau, 2)).abs() < tol10(-28));
        }
    }
}

TEST_CASE("eta and theta reject tau off the upper half plane", "[modular]") {
    REQUIRE_THROWS_AS(eta(BigComplex(1)), DomainError);
    REQUIRE_THROWS_AS(theta_constant(3, BigComplex(BigFloat(0), BigFloat(-1))), DomainError);
    REQUIRE_THROWS_AS(theta_constant(5, tau_2i()), UsageError);
    REQUIRE_THROWS_AS(eta_log_deriv(tau_2i(), 3), UsageError);
}

TEST_CASE("halphen right-hand side on integers", "[halphen]") {
    HalphenState s;
    s.u = BigComplex(2);
    s.v = BigComplex(3);
    s.w = BigComplex(5);
    auto rhs = halphen_rhs(s);
    REQUIRE((rhs[0] - BigComplex(1)).is_zero());
    REQUIRE((rhs[1] - BigComplex(11)).is_zero());
    REQUIRE((rhs[2] - BigComplex(19)).is_zero());
}

TEST_CASE("halphen right-hand side is S3 equivariant", "[halphen]") {
    std::array<BigComplex, 3> vals = {BigComplex(Rat(2, 7)), BigComplex(Rat(-3, 5)),
                                      BigComplex(BigFloat(Rat(1, 3)), BigFloat(Rat(5, 4)))};
    HalphenState base;
    base.u = vals[0];
    base.v = vals[1];
    base.w = vals[2];
    auto base_rhs = halphen_rhs(base);

    std::array<size_t, 3> perm = {0, 1, 2};
    do {
        HalphenState p;
        p.u = vals[perm[0]];
        p.v = vals[perm[1]];
        p.w = vals[perm[2]];
        auto rhs = halphen_rhs(p);
        for (size_t i = 0; i < 3; ++i) REQUIRE((rhs[i] - base_rhs[perm[i]]).is_zero());
    } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("only the plus-sign theta assignments solve the system", "[halphen]") {
    BigComplex tau = tau_2i();
    const auto& convs = theta_conventions();
    REQUIRE(convs.size() == 12);
    int plus_seen = 0, minus_seen = 0;
    for (const auto& conv : convs) {
        BigFloat res = theta_convention_residual(conv, tau);
        if (conv.sign > 0) {
            ++plus_seen;
            REQUIRE(res < tol10(-20));
        } else {
            ++minus_seen;
            REQUIRE(res > tol10(-3));
        }
    }
    REQUIRE(plus_seen == 6);
    REQUIRE(minus_seen == 6);
}

TEST_CASE("theta candidate uses the frozen identity assignment", "[halphen]") {
    BigComplex tau = tau_2i();
    HalphenState st = theta_candidate(tau);
    REQUIRE((st.u - BigComplex(2) * theta_log_deriv(2, tau, 1)).abs() < tol10(-60));
    REQUIRE((st.v - BigComplex(2) * theta_log_deriv(3, tau, 1)).abs() < tol10(-60));
    REQUIRE((st.w - BigComplex(2) * theta_log_deriv(4, tau, 1)).abs() < tol10(-60));

    // trace identity: u + v + w = 6 (log eta)'
    BigComplex trace = st.u + st.v + st.w;
    REQUIRE((trace - BigComplex(6) * eta_log_deriv(tau, 1)).abs() < tol10(-50));

    REQUIRE_THROWS_AS(theta_candidate(BigComplex(BigFloat(0), BigFloat(Rat(1, 2)))), DomainError);
}

TEST_CASE("halphen jet matches finite differences of the theta solution", "[halphen]") {
    BigComplex tau = tau_2i();
    HalphenState st = theta_candidate(tau);
    auto jet = halphen_jet(st, 2);

    for (size_t c = 0; c < 3; ++c) REQUIRE(jet[c].size() == 3);
    REQUIRE((jet[0][0] - st.u).is_zero());
    REQUIRE((jet[1][0] - st.v).is_zero());
    REQUIRE((jet[2][0] - st.w).is_zero());

    auto comp = [](const HalphenState& s, size_t c) { return c == 0 ? s.u : (c == 1 ? s.v : s.w); };

    BigFloat h1 = tol10(-15);
    for (size_t c = 0; c < 3; ++c) {
        BigComplex fd = complex_central_diff(
            [&](const BigComplex& t) { return comp(theta_candidate(t), c); }, tau, h1);
        REQUIRE((fd - jet[c][1]).abs() < tol10(-25));
    }

    BigFloat h2 = tol10(-10);
    BigComplex hh(h2, BigFloat(0));
    for (size_t c = 0; c < 3; ++c) {
        BigComplex fd2 = (comp(theta_candidate(tau + hh), c) -
                          BigComplex(2) * comp(theta_candidate(tau), c) +
                          comp(theta_candidate(tau - hh), c)) /
                         BigComplex(h2 * h2);
        REQUIRE((fd2 - jet[c][2]).abs() < tol10(-18));
    }

    REQUIRE_THROWS_AS(halphen_jet(st, -1), UsageError);
}

TEST_CASE("rk4 step doubling shows fifth-order local error", "[halphen]") {
    BigComplex tau0 = tau_2i();
    HalphenState s0 = theta_candidate(tau0);
    BigComplex h(BigFloat(0), BigFloat(Rat(1, 16)));
    HalphenState truth = theta_candidate(tau0 + h);

    HalphenState full = detail::rk4_step(s0, h);
    HalphenState halves =
        detail::rk4_step(detail::rk4_step(s0, h / BigComplex(2)), h / BigComplex(2));

    BigFloat e_full = state_gap(full, truth);
    BigFloat e_half = state_gap(halves, truth);
    // asymptotic ratio for a fifth-order local error is 16
    REQUIRE(e_full > e_half * BigFloat(13));
    REQUIRE(e_full < e_half * BigFloat(22));
}

TEST_CASE("adaptive integration lands on the theta solution", "[halphen]") {
    BigComplex tau0 = tau_2i();
    BigComplex tau1(BigFloat(0), BigFloat(Rat(5, 2)));
    HalphenState end = halphen_integrate(theta_candidate(tau0), tau1);
    REQUIRE(state_gap(end, theta_candidate(tau1)) < tol10(-15));

    // zero-length span is the identity
    HalphenState still = halphen_integrate(theta_candidate(tau0), tau0);
    REQUIRE(state_gap(still, theta_candidate(tau0)) == BigFloat(0));

    HalphenStepControl tight;
    tight.tol = tol10(-40);
    tight.max_steps = 2;
    REQUIRE_THROWS_AS(halphen_integrate(theta_candidate(tau0), tau1, tight), IntegrationError);
}

TEST_CASE("four-variable oracle reproduces the prepotential channels", "[d4]") {
    D4Oracles d4 = d4_oracles();
    REQUIRE(d4.f.n == 6);

    std::vector<BigComplex> pt = {BigComplex(Rat(1, 3)),  BigComplex(Rat(-1, 2)),
                                  BigComplex(Rat(2, 5)),  BigComplex(Rat(1, 7)),
                                  BigComplex(Rat(-3, 4)), tau_2i()};
    HalphenState st = theta_candidate(pt[5]);
    BigComplex u = st.u, v = st.v, w = st.w;
    BigFloat tol = tol10(-40);

    // cubic channels: (1/4) t1^2 t6 and (1/2) t1 sum_i t_i^2
    REQUIRE((d4.f.d3(pt, 0, 0, 5) - BigComplex(Rat(1, 2))).abs() < tol);
    for (size_t i = 1; i <= 4; ++i)
        REQUIRE((d4.f.d3(pt, 0, i, i) - BigComplex(1)).abs() < tol);
    REQUIRE(d4.f.d3(pt, 0, 0, 0).is_zero());

    // quartic channels, coefficients taken from the theta solution
    REQUIRE((d4.f.d4(pt, 1, 1, 1, 1) + (u + v + BigComplex(4) * w)).abs() < tol);
    REQUIRE((d4.f.d4(pt, 2, 2, 3, 3) + (u + v)).abs() < tol);
    REQUIRE((d4.f.d4(pt, 1, 2, 3, 4) + (u - v)).abs() < tol);

    // metric eta = c(e_1, ., .): half-weight t1 <-> t6 pairing, middles diagonal
    REQUIRE(d4.f.eta[0][5] == Rat(1, 2));
    REQUIRE(d4.f.eta[5][0] == Rat(1, 2));
    for (size_t i = 1; i <= 4; ++i) REQUIRE(d4.f.eta[i][i] == Rat(1));
    REQUIRE(d4.f.eta[0][0] == Rat(0));

    // G-oracle: only the modulus direction carries the eta log-derivative
    REQUIRE((d4.g.g1(pt, 5) + BigComplex(Rat(1, 2)) * eta_log_deriv(pt[5], 1)).abs() < tol10(-55));
    REQUIRE(d4.g.g1(pt, 2).is_zero());
    REQUIRE((d4.g.g2(pt, 5, 5) + BigComplex(Rat(1, 2)) * eta_log_deriv(pt[5], 2)).abs() <
            tol10(-55));
    REQUIRE(d4.g.g2(pt, 5, 1).is_zero());

    REQUIRE(wdvv_residual(d4.f, pt) < tol10(-40));
}

TEST_CASE("four-variable sampler stays in the gated strip", "[d4]") {
    D4Oracles d4 = d4_oracles();
    std::mt19937_64 rng(7);
    for (int k = 0; k < 8; ++k) {
        std::vector<BigComplex> pt = d4.f.sample(rng);
        REQUIRE(pt.size() == 6);
        for (size_t a = 0; a < 5; ++a) REQUIRE(pt[a].im.is_zero());
        REQUIRE(pt[5].im >= BigFloat(Rat(3, 2)));
        REQUIRE(pt[5].im <= BigFloat(Rat(5, 2)));
        REQUIRE(pt[5].re.abs() <= BigFloat(1));
    }
}

TEST_CASE("spectrum of the four-variable model has zero anomaly", "[d4]") {
    SpectrumData sp = d4_spectrum();
    REQUIRE(sp.n == 6);
    REQUIRE(sp.d_charge == Rat(1));
    REQUIRE(sp.mu[0] == Rat(-1, 2));
    REQUIRE(sp.mu[5] == Rat(1, 2));
    for (size_t a = 1; a <= 4; ++a) REQUIRE(sp.mu[a] == Rat(0));
    REQUIRE(scaling_anomaly(sp) == Rat(0));
}

TEST_CASE("convention selection lands on the frozen index", "[d4]") {
    REQUIRE(select_theta_convention(tau_2i()) == kThetaConvention);
}
