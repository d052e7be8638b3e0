#include <catch2/catch_amalgamated.hpp>

#include "gfn/g_function.hpp"
#include "gfn/io.hpp"

#include "oracles.hpp"

using namespace gfn;

namespace {

BigFloat tol(long exp10) { return BigFloat::pow10(exp10); }

} // namespace

TEST_CASE("builtin schema evaluates to the expected diagonal factors") {
    FlatMap fm(ModelId::E6t);
    for (const Rat& sr : {Rat(1, 2), Rat(1)}) {
        BigFloat s(sr);
        BigFloat u = fm.u_of_s(s), omu = BigFloat(1) - u, g = fm.g(u);
        LinearizationData lin = linearization(ModelId::E6t, s);
        REQUIRE(lin.diag.size() == 8);
        CHECK((lin.diag[0] - BigFloat(1)).abs() < tol(-55));
        for (size_t a : {1u, 2u, 3u})
            CHECK((lin.diag[a] - pow_rat(omu, Rat(1, 3)) * g).abs() < tol(-55));
        for (size_t a : {4u, 5u, 6u})
            CHECK((lin.diag[a] - pow_rat(omu, Rat(2, 3)) * g).abs() < tol(-55));
        CHECK((lin.diag[7] - omu * g * g).abs() < tol(-55));
        // second-order cross terms only feed the identity direction
        for (const auto& c : lin.cross) CHECK(c.a == 0);
        CHECK(lin.cross.size() == 3);
        CHECK(lin.source == "builtin-paper");
    }
}

TEST_CASE("diagonal t-derivatives agree with finite differences") {
    FlatMap fm(ModelId::E6t);
    BigFloat s(Rat(3, 4));
    LinearizationData lin = linearization(ModelId::E6t, s);
    BigFloat h = tol(-18);
    for (size_t a = 0; a < 8; ++a) {
        // d/dt = (ds/dt) d/ds with ds/dt = (1-u) g^2
        BigFloat fd = oracle::central_diff(
            [&](const BigFloat& v) { return linearization(ModelId::E6t, v).diag[a]; }, s, h);
        BigFloat u = fm.u_of_s(s);
        BigFloat ds_dt = (BigFloat(1) - u) * fm.g(u) * fm.g(u);
        CHECK((lin.diag_dt[a] - fd * ds_dt).abs() < tol(-15));
    }
}

TEST_CASE("schema JSON round trip is lossless") {
    LinSchema sch = builtin_e6_schema();
    Json j = lin_schema_to_json(sch);
    LinSchema back = lin_schema_from_json(j);
    CHECK(lin_schema_to_json(back).dump() == j.dump());
    CHECK(back.source == "external-file");
    // malformed files are refused
    Json broken = j;
    broken["diag"].erase(0);
    CHECK_THROWS_AS(lin_schema_from_json(broken), UsageError);
    Json dup = j;
    dup["diag"][0]["index"] = 2;
    CHECK_THROWS_AS(lin_schema_from_json(dup), UsageError);
}

TEST_CASE("ring route equals closed route on the marginal axis") {
    SingularityModel m = build_model(ModelId::E6t);
    for (const Rat& s : {Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(1), Rat(3, 2)}) {
        BigFloat ring = dg_dt_ring_at_s(m, s);
        BigFloat closed = dg_dt_closed_at_s(ModelId::E6t, BigFloat(s));
        CHECK((ring - closed).abs() < tol(-40));
    }
}

TEST_CASE("ring route is independent of the differentiation direction") {
    SingularityModel m = build_model(ModelId::E6t);
    Rat s(3, 4);
    BigFloat base = dg_dt_ring_at_s(m, s, 2);
    for (size_t mu = 3; mu <= 7; ++mu)
        CHECK((dg_dt_ring_at_s(m, s, mu) - base).abs() < tol(-55));
}

TEST_CASE("closed form matches its log decomposition") {
    struct Coef {
        ModelId id;
        Rat alpha, beta;
    };
    // G = -(1/24)(alpha log s' - beta log(1-u)) with s' = ds/dt = (1-u) g^2
    for (const Coef& c : {Coef{ModelId::E6t, Rat(2), Rat(1)},
                          Coef{ModelId::E7t, Rat(3, 2), Rat(1)},
                          Coef{ModelId::E8t, Rat(1), Rat(5, 6)}}) {
        FlatMap fm(c.id);
        for (const Rat& sr : {Rat(1, 2), Rat(1)}) {
            BigFloat s(sr);
            BigFloat u = fm.u_of_s(s);
            BigFloat sprime = (BigFloat(1) - u) * fm.g(u) * fm.g(u);
            BigFloat want = BigFloat(Rat(-1, 24)) *
                            (BigFloat(c.alpha) * sprime.log() -
                             BigFloat(c.beta) * (BigFloat(1) - u).log());
            CHECK((g_closed_at_s(c.id, s) - want).abs() < tol(-50));
        }
    }
}

TEST_CASE("closed derivative agrees with finite differences of G") {
    for (ModelId id : {ModelId::E6t, ModelId::E7t, ModelId::E8t}) {
        FlatMap fm(id);
        BigFloat s(Rat(2, 3));
        // dG/dt = (dG/ds) / (dt/ds)
        BigFloat fd = oracle::central_diff(
            [&](const BigFloat& v) { return g_closed_at_s(id, v); }, s, tol(-20));
        BigFloat want = fd / fm.dt_ds(s);
        CHECK((dg_dt_closed_at_s(id, s) - want).abs() < tol(-18));
    }
}

TEST_CASE("other models have no builtin linearization") {
    CHECK_THROWS_AS(linearization(ModelId::E7t, BigFloat(1)), MissingDataError);
    CHECK_THROWS_AS(linearization(ModelId::E8t, BigFloat(1)), MissingDataError);
    SingularityModel m7 = build_model(ModelId::E7t);
    CHECK_THROWS_AS(dg_dt_ring_at_s(m7, Rat(1, 2)), MissingDataError);
}

TEST_CASE("G of the exceptional fibers vanishes identically in gamma") {
    for (ModelId id : {ModelId::E6t, ModelId::E7t, ModelId::E8t})
        CHECK(scaling_anomaly(model_spectrum(build_model(id))).is_zero());
}
