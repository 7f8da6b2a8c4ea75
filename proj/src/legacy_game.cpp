#include "ocm/legacy_game.hpp"

#include "ocm/error.hpp"

namespace ocm::game {

LegacyUtilities legacy_utilities(const LegacyParams& lp) {
    const double p = lp.p, C = lp.C, C_d = lp.C_d, C_j = lp.C_j, Q = lp.Q,
                 M = lp.M, P_j = lp.P_j, P_m = lp.P_m, r = lp.r, f = lp.f,
                 B = lp.B;
    LegacyUtilities u;
    u.complyComply.jc = Q * (B - r) + (1 - Q) * f - p * C_j;
    u.complyComply.rp = Q * r - (1 - Q) * (f + M) - C;

    u.complyDisobey.jc = -(1 - p * P_j) * r + p * P_j * f - p * C_j;
    u.complyDisobey.rp = (1 - p * P_j) * r - p * P_j * (f + M) - C_d;

    u.disobeyComply.jc =
        Q * (B + (1 - P_m) * f - P_m * (f + M + r)) + (1 - Q) * f;
    u.disobeyComply.rp =
        Q * (P_m * (f + r) - (1 - P_m) * (f + M)) - (1 - Q) * (f + M) - C;

    u.disobeyDisobey.jc = (1 - P_m) * f - P_m * (f + M + r);
    u.disobeyDisobey.rp = P_m * (f + r) - (1 - P_m) * (f + M) - C_d;
    return u;
}

LegacyEquilibrium legacy_honest_equilibrium(const LegacyParams& lp) {
    if (lp.C_j == 0)
        throw Error("ZeroDenominator", "C_j must be nonzero");
    if (lp.P_j == 0)
        throw Error("ZeroDenominator", "P_j must be nonzero");
    if (lp.r + lp.f + lp.M == 0)
        throw Error("ZeroDenominator", "r + f + M must be nonzero");
    LegacyEquilibrium eq;
    eq.pUpper =
        lp.Q * (lp.P_m * (2 * lp.f + lp.M + lp.r) - lp.r - lp.f) / lp.C_j;
    eq.pLower = (1 - lp.Q) / lp.P_j +
                (lp.C - lp.C_d) / (lp.P_j * (lp.r + lp.f + lp.M));
    eq.isEquilibrium = lp.p >= eq.pLower && lp.p <= eq.pUpper;
    return eq;
}

} // namespace ocm::game
