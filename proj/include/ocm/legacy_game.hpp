#pragma once

namespace ocm::game {

// Earlier one-shot comply/disobey market model. The job creator checks the
// returned result with probability p (cost C_j); a check exposes a cheating
// resource provider with probability P_j. An unchecked dispute goes to a
// mediator who rules correctly with probability P_m. Q is the probability
// honest execution is accepted without dispute, r the job reward, f the
// fine, M the mediation surcharge, B the JC's benefit, C and C_d the RP's
// costs of computing honestly and of fabricating.
struct LegacyParams {
    double p = 0;
    double C = 0;
    double C_d = 0;
    double C_j = 0;
    double Q = 0;
    double M = 0;
    double P_j = 0;
    double P_m = 0;
    double r = 0;
    double f = 0;
    double B = 0;
};

// Expected utilities of the four pure joint strategies, comply/disobey for
// the JC crossed with comply/disobey for the RP.
struct LegacyCell {
    double jc = 0;
    double rp = 0;
};
struct LegacyUtilities {
    LegacyCell complyComply;
    LegacyCell complyDisobey;
    LegacyCell disobeyComply;
    LegacyCell disobeyDisobey;
};

LegacyUtilities legacy_utilities(const LegacyParams& lp);

// The mutual-comply profile is a Nash equilibrium iff p lies in
// [pLower, pUpper]:
//   pUpper = Q * (P_m*(2f + M + r) - r - f) / C_j
//   pLower = (1-Q)/P_j + (C - C_d) / (P_j * (r + f + M))
// Throws "ZeroDenominator" when C_j, P_j or r+f+M is zero.
struct LegacyEquilibrium {
    double pLower = 0;
    double pUpper = 0;
    bool isEquilibrium = false;
};

LegacyEquilibrium legacy_honest_equilibrium(const LegacyParams& lp);

} // namespace ocm::game
