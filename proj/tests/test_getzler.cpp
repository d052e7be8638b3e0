#include <catch2/catch_amalgamated.hpp>

#include "gfn/getzler.hpp"

using namespace gfn;

namespace {

BigFloat tol(long exp10) { return BigFloat::pow10(exp10); }

std::vector<BigFloat> pt2(Rat a, Rat b) { return {BigFloat(a), BigFloat(b)}; }

} // namespace

TEST_CASE("free energy of a point has zero residual, exactly") {
    auto f = trivial_cubic_oracle();
    GetzlerEvaluator<BigFloat> ev(f, zero_g_oracle<BigFloat>(), {BigFloat(Rat(7, 5))});
    for (const Rat& z : {Rat(1), Rat(-3, 2), Rat(11, 7)})
        CHECK(ev.delta({BigFloat(z)}).is_zero());
    auto rep = getzler_scan(f, zero_g_oracle<BigFloat>(), 4, 11);
    CHECK(rep.max_residual.is_zero());
}

TEST_CASE("A2 residual vanishes with the trivial G-function") {
    auto f = a2_oracle();
    auto rep = getzler_scan(f, zero_g_oracle<BigFloat>(), 6, 3);
    CHECK(rep.max_residual < tol(-40));
    CHECK(rep.max_eta_residual < tol(-50));
    CHECK(rep.entries.size() == 6);
    CHECK(wdvv_residual(f, pt2(Rat(1, 3), Rat(-5, 4))) < tol(-55));
}

TEST_CASE("scan stream is reproducible and seed-dependent") {
    auto f = a2_oracle();
    auto a = getzler_scan(f, zero_g_oracle<BigFloat>(), 3, 5);
    auto b = getzler_scan(f, zero_g_oracle<BigFloat>(), 3, 5);
    auto c = getzler_scan(f, zero_g_oracle<BigFloat>(), 3, 6);
    REQUIRE(a.entries.size() == 3);
    for (size_t i = 0; i < 3; ++i) {
        CHECK(a.entries[i].point == b.entries[i].point);
        CHECK(a.entries[i].probe == b.entries[i].probe);
    }
    bool same = true;
    for (size_t i = 0; i < 3; ++i) same = same && a.entries[i].point == c.entries[i].point;
    CHECK_FALSE(same);
}

TEST_CASE("perturbed G-functions are rejected") {
    auto f = a2_oracle();
    GOracle<BigFloat> pert;
    pert.g1 = [](const std::vector<BigFloat>& p, size_t a) {
        return a == 0 ? BigFloat(2) * p[0] : BigFloat(0);
    };
    pert.g2 = [](const std::vector<BigFloat>&, size_t a, size_t b) {
        return (a == 0 && b == 0) ? BigFloat(2) : BigFloat(0);
    };
    auto rep = getzler_scan(f, pert, 3, 1);
    CHECK(rep.max_residual > tol(-6));
}

TEST_CASE("quartic polarization recovers the full symmetric form") {
    auto f = a2_oracle();
    GOracle<BigFloat> g;
    // an arbitrary smooth G to make delta4 nontrivial
    g.g1 = [](const std::vector<BigFloat>& p, size_t a) { return p[a] * p[1 - a]; };
    g.g2 = [](const std::vector<BigFloat>& p, size_t a, size_t b) {
        return a == b ? BigFloat(0) : BigFloat(1) + BigFloat(0) * p[0];
    };
    GetzlerEvaluator<BigFloat> ev(f, g, pt2(Rat(2, 5), Rat(-1, 2)));
    std::vector<BigFloat> za = pt2(Rat(1), Rat(2)), zb = pt2(Rat(-1, 3), Rat(3, 2));
    std::vector<BigFloat> zsum = {za[0] + zb[0], za[1] + zb[1]};
    std::vector<BigFloat> zdif = {za[0] - zb[0], za[1] - zb[1]};
    BigFloat lhs = ev.delta4(za, za, zb, zb);
    BigFloat rhs = (ev.delta(zsum) + ev.delta(zdif) - BigFloat(2) * ev.delta(za) -
                    BigFloat(2) * ev.delta(zb)) /
                   BigFloat(12);
    CHECK((lhs - rhs).abs() < tol(-50));

    // delta is a quartic form: delta(2z) = 16 delta(z)
    CHECK((ev.delta(zsum) * BigFloat(16) -
           ev.delta({BigFloat(2) * zsum[0], BigFloat(2) * zsum[1]}))
              .abs() < tol(-50));

    // delta4 is symmetric in its slots
    CHECK((ev.delta4(za, zb, za, zb) - ev.delta4(za, za, zb, zb)).abs() < tol(-50));
}

TEST_CASE("term-by-term linearity in G") {
    auto f = a2_oracle();
    GOracle<BigFloat> g1;
    g1.g1 = [](const std::vector<BigFloat>& p, size_t a) { return p[a]; };
    g1.g2 = [](const std::vector<BigFloat>&, size_t a, size_t b) {
        return a == b ? BigFloat(1) : BigFloat(0);
    };
    GOracle<BigFloat> g2;
    g2.g1 = [](const std::vector<BigFloat>& p, size_t a) { return BigFloat(2) * p[a]; };
    g2.g2 = [](const std::vector<BigFloat>&, size_t a, size_t b) {
        return a == b ? BigFloat(2) : BigFloat(0);
    };
    std::vector<BigFloat> pt = pt2(Rat(1, 4), Rat(5, 7));
    std::vector<BigFloat> z = pt2(Rat(3), Rat(-2));
    auto ta = GetzlerEvaluator<BigFloat>(f, g1, pt).terms(z);
    auto tb = GetzlerEvaluator<BigFloat>(f, g2, pt).terms(z);
    // the first four displayed terms carry G and double with it; the last
    // three are G-independent
    for (size_t i = 0; i < 4; ++i) CHECK((tb[i] - BigFloat(2) * ta[i]).abs() < tol(-50));
    for (size_t i = 4; i < 7; ++i) CHECK((tb[i] - ta[i]).abs() < tol(-50));
}

TEST_CASE("third derivatives at the identity reproduce the metric") {
    auto f = a2_oracle();
    GetzlerEvaluator<BigFloat> ev(f, zero_g_oracle<BigFloat>(), pt2(Rat(1, 2), Rat(1, 3)));
    CHECK(ev.eta_residual({{Rat(0), Rat(1)}, {Rat(1), Rat(0)}}).is_zero());
    CHECK(ev.eta_residual({{Rat(0), Rat(1)}, {Rat(1), Rat(1)}}) == BigFloat(1));
}

TEST_CASE("dimension mismatches are refused") {
    auto f = a2_oracle();
    CHECK_THROWS_AS(
        (GetzlerEvaluator<BigFloat>(f, zero_g_oracle<BigFloat>(), {BigFloat(1)})), UsageError);
    GetzlerEvaluator<BigFloat> ev(f, zero_g_oracle<BigFloat>(), pt2(Rat(1), Rat(1)));
    CHECK_THROWS_AS(ev.delta({BigFloat(1)}), UsageError);
}

TEST_CASE("oracles without samplers cannot be scanned") {
    PrepotentialOracle<BigFloat> f = a2_oracle();
    f.sample = nullptr;
    CHECK_THROWS_AS(getzler_scan(f, zero_g_oracle<BigFloat>(), 1, 1), UsageError);
}

TEST_CASE("euler scaling of the A2 prepotential") {
    // L_E F = (3 - d) F with E = t1 d1 + (2/3) t2 d2 and d = 1/3
    auto f = a2_oracle();
    RatPoly F = RatPoly::term(2, Monomial({2, 1}), Rat(1, 2)) +
                RatPoly::term(2, Monomial({0, 4}), Rat(1, 72));
    RatPoly lhs(2);
    RatPoly t1 = RatPoly::term(2, Monomial({1, 0}), Rat(1));
    RatPoly t2 = RatPoly::term(2, Monomial({0, 1}), Rat(2, 3));
    lhs = t1 * F.derivative(0) + t2 * F.derivative(1);
    CHECK(lhs == F.scaled(Rat(3) - Rat(1, 3)));
    CHECK(f.d_charge == Rat(1, 3));
}
