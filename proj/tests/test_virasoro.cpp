#include <catch2/catch_amalgamated.hpp>

#include <gfn/getzler.hpp>
#include <gfn/halphen.hpp>

using namespace gfn;

namespace {

// E^k = U^{k-1} E with U^a_b = eta^{al} c_{lbs} E^s, i.e. multiplication by
// the Euler field in the flat frame.
template <typename S>
std::vector<S> euler_power(long k, const FrobeniusPointData<S>& pd) {
    size_t n = pd.euler.size();
    auto eta_inv = detail::invert_eta(pd.eta);
    std::vector<std::vector<S>> U(n, std::vector<S>(n, S(0)));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            S acc(0);
            for (size_t l = 0; l < n; ++l) {
                if (eta_inv[a][l].is_zero()) continue;
                for (size_t s = 0; s < n; ++s)
                    acc = acc + S(eta_inv[a][l]) * pd.c[l][b][s] * pd.euler[s];
            }
            U[a][b] = acc;
        }
    std::vector<S> vec = pd.euler;
    for (long step = 1; step < k; ++step) {
        std::vector<S> next(n, S(0));
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b) next[a] = next[a] + U[a][b] * vec[b];
        vec = std::move(next);
    }
    return vec;
}

} // namespace

TEST_CASE("polynomial model satisfies the constraints with zero G", "[virasoro]") {
    // both sides of L_{E^k} G vanish identically for the two-variable
    // polynomial model, so the right-hand side must evaluate to zero
    PrepotentialOracle<BigFloat> f = a2_oracle();
    SpectrumData sp = a2_spectrum();
    REQUIRE(scaling_anomaly(sp) == Rat(0));

    std::vector<std::vector<BigFloat>> points = {
        {BigFloat(Rat(1, 3)), BigFloat(Rat(-2, 5))},
        {BigFloat(Rat(7, 4)), BigFloat(Rat(1, 9))},
        {BigFloat(Rat(-5, 8)), BigFloat(Rat(3, 7))},
    };
    for (const auto& pt : points) {
        auto pd = frobenius_point_data(f, pt);
        REQUIRE(virasoro_rhs(1, pd, sp).is_zero());
        for (long k = 2; k <= 4; ++k)
            REQUIRE(virasoro_rhs(k, pd, sp).abs() < BigFloat::pow10(-50));
    }
}

TEST_CASE("four-variable model: derivative of G matches the right-hand side", "[virasoro]") {
    D4Oracles d4 = d4_oracles();
    SpectrumData sp = d4_spectrum();

    std::vector<std::vector<BigComplex>> points = {
        {BigComplex(Rat(1, 3)), BigComplex(Rat(-1, 2)), BigComplex(Rat(2, 5)),
         BigComplex(Rat(1, 7)), BigComplex(Rat(-3, 4)), BigComplex(BigFloat(0), BigFloat(2))},
        {BigComplex(Rat(-2, 9)), BigComplex(Rat(4, 5)), BigComplex(Rat(-1, 6)),
         BigComplex(Rat(5, 11)), BigComplex(Rat(2, 3)),
         BigComplex(BigFloat(Rat(1, 4)), BigFloat(Rat(9, 5)))},
    };
    for (const auto& pt : points) {
        auto pd = frobenius_point_data(d4.f, pt);

        // k = 1 is the anomaly, zero for this spectrum
        REQUIRE(virasoro_rhs(1, pd, sp).is_zero());

        // G depends on the modulus alone, so L_{E^k} G picks out the
        // modulus component of E^k against dG = -(1/2) (log eta)' dt6
        BigComplex dG = BigComplex(Rat(-1, 2)) * eta_log_deriv(pt[5], 1);
        for (long k = 2; k <= 4; ++k) {
            std::vector<BigComplex> ek = euler_power(k, pd);
            BigComplex lhs = ek[5] * dG;
            BigComplex rhs = virasoro_rhs(k, pd, sp);
            REQUIRE((lhs - rhs).abs() < BigFloat::pow10(-55));
        }
    }
}

TEST_CASE("right-hand side rejects bad arguments", "[virasoro]") {
    PrepotentialOracle<BigFloat> f = a2_oracle();
    SpectrumData sp = a2_spectrum();
    std::vector<BigFloat> pt = {BigFloat(Rat(1, 2)), BigFloat(Rat(1, 5))};
    auto pd = frobenius_point_data(f, pt);
    REQUIRE_THROWS_AS(virasoro_rhs(0, pd, sp), UsageError);
    SpectrumData wrong = make_spectrum(Rat(1), {Rat(0), Rat(1, 2), Rat(1)});
    REQUIRE_THROWS_AS(virasoro_rhs(2, pd, wrong), UsageError);
}
