#include <catch2/catch_amalgamated.hpp>

#include "gfn/flat_coords.hpp"

#include "oracles.hpp"

using namespace gfn;

namespace {

BigFloat tol(long exp10) { return BigFloat::pow10(exp10); }

} // namespace

TEST_CASE("2F1 matches exact partial sums") {
    // |u| <= 1/4 and 60 terms put the truncation error far below 1e-40
    for (const auto& p : {HypParams{Rat(1, 3), Rat(1, 3), Rat(2, 3)},
                          HypParams{Rat(1, 12), Rat(7, 12), Rat(2, 3)},
                          HypParams{Rat(3, 4), Rat(3, 4), Rat(3, 2)}}) {
        for (const Rat& u : {Rat(-1, 27), Rat(1, 10), Rat(-1, 4), Rat(1, 4)}) {
            Rat ref = oracle::hyp2f1_partial(p, u, 120);
            CHECK((hyp2f1(p, BigFloat(u)) - BigFloat(ref)).abs() < tol(-40));
        }
    }
}

TEST_CASE("2F1 derivative ladder agrees with finite differences") {
    HypParams p{Rat(1, 3), Rat(1, 3), Rat(2, 3)};
    BigFloat h = tol(-20);
    for (const Rat& u : {Rat(-1, 27), Rat(1, 8)}) {
        BigFloat x(u);
        BigFloat fd = oracle::central_diff(
            [&](const BigFloat& v) { return hyp2f1(p, v); }, x, h);
        CHECK((hyp2f1(p, x, 1) - fd).abs() < tol(-18));
        BigFloat fd2 = oracle::central_diff(
            [&](const BigFloat& v) { return hyp2f1(p, v, 1); }, x, h);
        CHECK((hyp2f1(p, x, 2) - fd2).abs() < tol(-18));
    }
}

TEST_CASE("flat coordinate of the cubic family at s = 1") {
    FlatMap fm(ModelId::E6t);
    Rat u(-1, 27);
    Rat ref = oracle::hyp2f1_partial(fm.num_params(), u, 120) /
              oracle::hyp2f1_partial(fm.den_params(), u, 120);
    CHECK((fm.t_of_s(BigFloat(1)) - BigFloat(ref)).abs() < tol(-40));
}

TEST_CASE("derivative routes agree") {
    for (ModelId id : {ModelId::E6t, ModelId::E7t, ModelId::E8t}) {
        FlatMap fm(id);
        for (const Rat& s : {Rat(1, 8), Rat(1, 2), Rat(9, 8)}) {
            BigFloat x(s);
            CHECK((fm.dt_ds(x) - fm.dt_ds_series(x)).abs() < tol(-50));
            BigFloat fd = oracle::central_diff(
                [&](const BigFloat& v) { return fm.t_of_s(v); }, x, tol(-20));
            CHECK((fm.dt_ds(x) - fd).abs() < tol(-18));
        }
    }
}

TEST_CASE("t_of_s is strictly increasing on the sampled range") {
    for (ModelId id : {ModelId::E6t, ModelId::E7t, ModelId::E8t}) {
        FlatMap fm(id);
        BigFloat last(-1);
        for (long k = 1; k <= 28; ++k) {
            BigFloat t = fm.t_of_s(BigFloat(Rat(k, 16)));
            CHECK(t > last);
            last = t;
        }
    }
}

TEST_CASE("inversion round trips and stays in the Newton regime") {
    for (ModelId id : {ModelId::E6t, ModelId::E7t, ModelId::E8t}) {
        FlatMap fm(id);
        for (long k = 1; k <= 20; ++k) {
            BigFloat s(Rat(3 * k, 2 * 21));
            BigFloat t = fm.t_of_s(s);
            auto inv = fm.s_of_t(t);
            CHECK((inv.s - s).abs() < tol(-50));
            CHECK(inv.iterations <= 20);
        }
        // the origin maps to itself without iteration
        auto zero = fm.s_of_t(BigFloat(0));
        CHECK(zero.s.is_zero());
        CHECK(zero.iterations == 0);
    }
}

TEST_CASE("bisection fallback lands on the same inverse") {
    FlatMap fm(ModelId::E6t);
    BigFloat t = fm.t_of_s(BigFloat(Rat(5, 4)));
    auto newton = fm.s_of_t(t);
    auto bis = fm.bisect(t, tol(-55));
    CHECK(newton.iterations < 100);
    CHECK(bis.iterations >= 100);
    CHECK((newton.s - bis.s).abs() < tol(-50));
}

TEST_CASE("negative arguments invert too") {
    FlatMap fm(ModelId::E6t);
    BigFloat t = fm.t_of_s(BigFloat(Rat(-3, 4)));
    auto inv = fm.s_of_t(t);
    CHECK((inv.s - BigFloat(Rat(-3, 4))).abs() < tol(-50));
}
