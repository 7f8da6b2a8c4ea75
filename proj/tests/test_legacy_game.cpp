#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>

#include "ocm/error.hpp"
#include "ocm/legacy_game.hpp"
#include "ocm/rng.hpp"

using namespace ocm;
using namespace ocm::game;

namespace {

template <typename Fn>
std::string thrown_code(Fn&& fn) {
    try {
        fn();
        return "<none>";
    } catch (const Error& e) {
        return e.code();
    }
}

// The published numerical example of the one-shot model.
LegacyParams example_params(double M) {
    LegacyParams lp;
    lp.p = 0.1;
    lp.C = 1;
    lp.C_d = 0.1;
    lp.C_j = 1;
    lp.Q = 0.999;
    lp.M = M;
    lp.P_j = 0.999;
    lp.P_m = 0.75;
    lp.r = 1.5;
    lp.f = 150;
    lp.B = 2;
    return lp;
}

LegacyParams random_params(RngStream& rng) {
    LegacyParams lp;
    lp.p = rng.next_unit();
    lp.C = 0.1 + 2 * rng.next_unit();
    lp.C_d = lp.C * rng.next_unit();
    lp.C_j = 0.1 + 2 * rng.next_unit();
    lp.Q = rng.next_unit();
    lp.M = 5 * rng.next_unit();
    lp.P_j = 0.05 + 0.95 * rng.next_unit();
    lp.P_m = rng.next_unit();
    lp.r = 0.1 + 3 * rng.next_unit();
    lp.f = 200 * rng.next_unit();
    lp.B = 5 * rng.next_unit();
    return lp;
}

} // namespace

TEST_CASE("the published expected-utility table is reproduced") {
    // rounded table values: (0.550, 0.349), (13.535, -13.735),
    // (-73.901, 74.899), (-76.125, 76.025)
    const LegacyUtilities u = legacy_utilities(example_params(0));
    CHECK_THAT(u.complyComply.jc, Catch::Matchers::WithinAbs(0.550, 0.002));
    CHECK_THAT(u.complyComply.rp, Catch::Matchers::WithinAbs(0.349, 0.002));
    CHECK_THAT(u.complyDisobey.jc, Catch::Matchers::WithinAbs(13.535, 0.002));
    CHECK_THAT(u.complyDisobey.rp, Catch::Matchers::WithinAbs(-13.735, 0.002));
    CHECK_THAT(u.disobeyComply.jc, Catch::Matchers::WithinAbs(-73.901, 0.002));
    CHECK_THAT(u.disobeyComply.rp, Catch::Matchers::WithinAbs(74.899, 0.002));
    CHECK_THAT(u.disobeyDisobey.jc, Catch::Matchers::WithinAbs(-76.125, 0.002));
    CHECK_THAT(u.disobeyDisobey.rp, Catch::Matchers::WithinAbs(76.025, 0.002));

    // exact values of the same expressions
    CHECK_THAT(u.complyComply.jc, Catch::Matchers::WithinAbs(0.5495, 1e-12));
    CHECK_THAT(u.complyComply.rp, Catch::Matchers::WithinAbs(0.3485, 1e-12));
    CHECK_THAT(u.complyDisobey.jc, Catch::Matchers::WithinAbs(13.53485, 1e-12));
    CHECK_THAT(u.complyDisobey.rp,
               Catch::Matchers::WithinAbs(-13.73485, 1e-12));
    CHECK_THAT(u.disobeyComply.jc,
               Catch::Matchers::WithinAbs(-73.900875, 1e-12));
    CHECK_THAT(u.disobeyComply.rp,
               Catch::Matchers::WithinAbs(74.898875, 1e-12));
    CHECK_THAT(u.disobeyDisobey.jc, Catch::Matchers::WithinAbs(-76.125, 1e-12));
    CHECK_THAT(u.disobeyDisobey.rp, Catch::Matchers::WithinAbs(76.025, 1e-12));
}

TEST_CASE("the mediation surcharge only burdens the provider-side entries") {
    const LegacyUtilities u0 = legacy_utilities(example_params(0));
    const LegacyUtilities u3 = legacy_utilities(example_params(3));
    // JC(Cj,Cr) has no M term at all
    CHECK(u0.complyComply.jc == u3.complyComply.jc);
    // RP(Cj,Cr) pays (1-Q)*M more
    CHECK_THAT(u0.complyComply.rp - u3.complyComply.rp,
               Catch::Matchers::WithinAbs(0.001 * 3, 1e-12));
}

TEST_CASE("failure-free and verification-free limits collapse to net values") {
    LegacyParams lp = example_params(0);
    lp.Q = 1;
    lp.p = 0;
    const LegacyUtilities u = legacy_utilities(lp);
    CHECK_THAT(u.complyComply.jc, Catch::Matchers::WithinAbs(lp.B - lp.r, 1e-12));
    CHECK_THAT(u.complyComply.rp, Catch::Matchers::WithinAbs(lp.r - lp.C, 1e-12));
}

TEST_CASE("the honest-equilibrium window matches the published example") {
    const LegacyEquilibrium eq = legacy_honest_equilibrium(example_params(3));
    CHECK_THAT(eq.pLower, Catch::Matchers::WithinAbs(0.006832, 5e-7));
    CHECK_THAT(eq.pUpper, Catch::Matchers::WithinAbs(76.798125, 1e-9));
    CHECK(eq.isEquilibrium); // p = 0.1 lies inside the window
}

TEST_CASE("window membership equals the brute-force best-response check") {
    RngStream rng = make_stream(23, "legacy", 0, "bf");
    int boundary = 0;
    for (int t = 0; t < 1000; ++t) {
        const LegacyParams lp = random_params(rng);
        const LegacyUtilities u = legacy_utilities(lp);
        const LegacyEquilibrium eq = legacy_honest_equilibrium(lp);

        // mutual compliance is Nash iff neither side gains by deviating alone
        const double jcGain = u.disobeyComply.jc - u.complyComply.jc;
        const double rpGain = u.complyDisobey.rp - u.complyComply.rp;
        if (std::abs(jcGain) < 1e-9 || std::abs(rpGain) < 1e-9) {
            ++boundary; // indifferent deviations are knife-edge cases
            continue;
        }
        const bool nash = jcGain < 0 && rpGain < 0;
        CHECK(eq.isEquilibrium == nash);
    }
    CHECK(boundary < 50);
}

TEST_CASE("degenerate denominators are rejected") {
    auto lp = example_params(3);
    lp.C_j = 0;
    CHECK(thrown_code([&] { legacy_honest_equilibrium(lp); }) ==
          "ZeroDenominator");
    lp = example_params(3);
    lp.P_j = 0;
    CHECK(thrown_code([&] { legacy_honest_equilibrium(lp); }) ==
          "ZeroDenominator");
    lp = example_params(0);
    lp.r = 0;
    lp.f = 0;
    lp.M = 0;
    CHECK(thrown_code([&] { legacy_honest_equilibrium(lp); }) ==
          "ZeroDenominator");
}
