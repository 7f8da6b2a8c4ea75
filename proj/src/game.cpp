#include "ocm/game.hpp"

#include <cmath>

#include "ocm/error.hpp"

namespace ocm::game {

namespace {

double pow_n(double p_a, int n) { return std::pow(p_a, n); }

} // namespace

std::vector<std::string> validate(const GameParams& p) {
    std::vector<std::string> bad;
    if (!(p.b > p.pi_c + p.pi_a + p.g_j)) bad.push_back("benefit_exceeds_cost");
    if (!(p.theta >= 0)) bad.push_back("theta_nonnegative");
    if (!(p.n >= 1)) bad.push_back("n_positive");
    if (!(p.c_e > p.c_d && p.c_d > 0)) bad.push_back("execution_cost_order");
    if (!(p.pi_c_hat >= p.pi_c && p.pi_c >= p.pi_r && p.pi_r > p.c_e))
        bad.push_back("price_order");
    if (!(p.d + p.pi_a >= p.pi_c_hat * (p.theta + p.n) + p.pi_a))
        bad.push_back("deposit_minimum");
    return bad;
}

const char* to_string(Outcome o) {
    switch (o) {
    case Outcome::O1: return "o1";
    case Outcome::O2: return "o2";
    case Outcome::O3: return "o3";
    case Outcome::O4: return "o4";
    case Outcome::O5: return "o5";
    case Outcome::O6: return "o6";
    case Outcome::O7: return "o7";
    }
    return "?";
}

bool outcome_mediated(Outcome o) {
    return o == Outcome::O1 || o == Outcome::O2 || o == Outcome::O6 ||
           o == Outcome::O7;
}

double outcome_contract_payoff(const GameParams& p, Outcome o, Role role) {
    switch (role) {
    case Role::ResourceProvider:
        switch (o) {
        case Outcome::O1: return p.pi_d - p.g_r - p.pi_a;
        case Outcome::O2: return -p.d - p.g_r - p.pi_a;
        case Outcome::O3: return p.pi_c - p.g_r - p.pi_a;
        case Outcome::O4: return p.pi_c - p.g_r - p.pi_a;
        case Outcome::O5: return p.pi_c - p.g_r - p.pi_a;
        case Outcome::O6: return p.pi_d - p.g_r - p.pi_a;
        case Outcome::O7: return -p.d - p.g_r - p.pi_a;
        }
        break;
    case Role::JobCreator:
        switch (o) {
        case Outcome::O1: return -p.g_j - p.d - p.g_m - p.pi_a;
        case Outcome::O2: return p.pi_d - p.g_j - p.g_m - p.pi_a;
        case Outcome::O3: return -p.g_j - p.pi_c - p.pi_a;
        case Outcome::O4: return -p.g_j - p.pi_c - p.pi_a;
        case Outcome::O5: return -p.g_j - p.pi_c - p.pi_a;
        case Outcome::O6: return -p.g_j - p.d - p.g_m - p.pi_a;
        case Outcome::O7: return p.pi_d - p.g_j - p.g_m - p.pi_a;
        }
        break;
    case Role::Mediator:
        return outcome_mediated(o) ? p.pi_a + p.pi_m : p.pi_a;
    }
    return 0;
}

double outcome_self_benefit(const GameParams& p, Outcome o, Role role) {
    switch (role) {
    case Role::ResourceProvider:
        switch (o) {
        case Outcome::O1:
        case Outcome::O2:
        case Outcome::O3: return -p.c_d;
        case Outcome::O4:
        case Outcome::O5:
        case Outcome::O6:
        case Outcome::O7: return -p.c_e;
        }
        break;
    case Role::JobCreator:
        switch (o) {
        case Outcome::O1:
        case Outcome::O2: return -p.c_v;
        case Outcome::O3: return 0;
        case Outcome::O4: return p.b;
        case Outcome::O5:
        case Outcome::O6:
        case Outcome::O7: return p.b - p.c_v;
        }
        break;
    case Role::Mediator:
        return 0;
    }
    return 0;
}

double outcome_reward(const GameParams& p, Outcome o, Role role) {
    return outcome_contract_payoff(p, o, role) + outcome_self_benefit(p, o, role);
}

std::array<double, 7> outcome_probabilities(double p_a, int n, bool rpExecutes,
                                            bool jcVerifies) {
    std::array<double, 7> pr{};
    const double pan = pow_n(p_a, n);
    if (rpExecutes) {
        if (jcVerifies) {
            pr[4] = p_a;                          // o5: normal, accepted
            pr[5] = (1 - p_a) * (1 - pan);        // o6: anomalous, JC faulted
            pr[6] = (1 - p_a) * pan;              // o7: anomalous, RP faulted
        } else {
            pr[3] = 1;                            // o4
        }
    } else {
        if (jcVerifies) {
            pr[0] = 1 - pan;                      // o1: JC faulted
            pr[1] = pan;                          // o2: RP faulted
        } else {
            pr[2] = 1;                            // o3
        }
    }
    return pr;
}

ActionUtilities expected_utilities(const GameParams& p, double p_a) {
    const double pan = pow_n(p_a, p.n);
    ActionUtilities u;
    u.rpExecuteVerify = -p.c_e - p.g_r - p.pi_a + p_a * p.pi_c +
                        (1 - p_a) * (1 - pan) * p.pi_d - (1 - p_a) * pan * p.d;
    u.rpExecutePass = p.pi_c - p.c_e - p.g_r - p.pi_a;
    u.rpDeceiveVerify =
        -p.c_d - p.g_r - p.pi_a + (1 - pan) * p.pi_d - pan * p.d;
    u.rpDeceivePass = p.pi_c - p.c_d - p.g_r - p.pi_a;

    u.jcExecuteVerify = p.b - p.g_j - p.c_v - p.pi_a - p_a * p.pi_c -
                        (1 - p_a) * (1 - pan) * p.d +
                        (1 - p_a) * (pan * p.pi_d - p.g_m);
    u.jcExecutePass = p.b - p.g_j - p.pi_a - p.pi_c;
    u.jcDeceiveVerify =
        -p.g_j - p.g_m - p.c_v - p.pi_a - (1 - pan) * p.d + pan * p.pi_d;
    u.jcDeceivePass = -p.g_j - p.pi_a - p.pi_c;
    return u;
}

ActionUtilities simplified_dominance(const GameParams& p, double p_a) {
    if (p.pi_d != p.pi_c)
        throw Error("InvalidParams",
                    "dominance comparison table requires pi_d == pi_c");
    const double pan = pow_n(p_a, p.n);
    const double scale = p.pi_c * (p.n + p.theta + 1);
    ActionUtilities t;
    t.rpExecuteVerify = -p.c_e + p_a * pan * scale;
    t.rpExecutePass = -p.c_e;
    t.rpDeceiveVerify = -p.c_d;
    t.rpDeceivePass = -p.c_d;
    t.jcExecuteVerify =
        -(1 - p_a) * (1 - pan) * scale + (1 - p_a) * (2 * p.pi_c - p.g_m);
    t.jcExecutePass = p.c_v;
    t.jcDeceiveVerify = 2 * p.pi_c - p.g_m - (1 - pan) * scale;
    t.jcDeceivePass = p.c_v;
    return t;
}

bool rp_execute_condition(const GameParams& p, double p_a) {
    return pow_n(p_a, p.n + 1) * p.pi_c * (p.n + p.theta + 1) > p.c_e - p.c_d;
}

const char* to_string(JcType t) {
    switch (t) {
    case JcType::Type1: return "Type1";
    case JcType::Type2: return "Type2";
    case JcType::Type3: return "Type3";
    case JcType::Type4: return "Type4";
    }
    return "?";
}

JcClassification classify_jc_type(const GameParams& p, double p_a) {
    const ActionUtilities u = expected_utilities(p, p_a);
    const bool verifyVsExecute = u.jcExecuteVerify > u.jcExecutePass;
    const bool verifyVsDeceive = u.jcDeceiveVerify > u.jcDeceivePass;
    JcClassification c;
    if (verifyVsExecute && verifyVsDeceive)
        c.type = JcType::Type1;
    else if (verifyVsExecute)
        c.type = JcType::Type2;
    else if (verifyVsDeceive)
        c.type = JcType::Type3;
    else
        c.type = JcType::Type4;
    c.nonParticipation = c.type == JcType::Type4;
    return c;
}

EquilibriumValue equilibrium_pv(const GameParams& p, double p_a) {
    const double denom = pow_n(p_a, p.n + 1) * p.pi_c * (p.theta + p.n + 1);
    if (denom == 0)
        throw Error("ZeroDenominator",
                    "p_a^(n+1) * pi_c * (theta+n+1) is zero");
    EquilibriumValue ev;
    ev.value = (p.c_e - p.c_d) / denom;
    ev.outOfRange = !(ev.value >= 0 && ev.value <= 1);
    return ev;
}

EquilibriumValue equilibrium_pe(const GameParams& p, double p_a) {
    const double pan = pow_n(p_a, p.n);
    const double bracket =
        2 * p.pi_c - p.g_m - p.pi_c * (1 - pan) * (p.theta + p.n + 1);
    const double denom = p_a * bracket;
    if (denom == 0)
        throw Error("ZeroDenominator", "p_a * bracket term is zero");
    EquilibriumValue ev;
    ev.value = (bracket - p.c_v) / denom;
    ev.nonpositiveBracket = bracket <= 0;
    ev.outOfRange = !(ev.value >= 0 && ev.value <= 1);
    return ev;
}

double jc_total_utility(const GameParams& p, double p_a, double p_e, double p_v) {
    const ActionUtilities u = expected_utilities(p, p_a);
    return p_v * p_e * u.jcExecuteVerify + p_v * (1 - p_e) * u.jcDeceiveVerify +
           (1 - p_v) * p_e * u.jcExecutePass +
           (1 - p_v) * (1 - p_e) * u.jcDeceivePass;
}

double rp_total_utility(const GameParams& p, double p_a, double p_e, double p_v) {
    const ActionUtilities u = expected_utilities(p, p_a);
    return p_e * p_v * u.rpExecuteVerify + p_e * (1 - p_v) * u.rpExecutePass +
           (1 - p_e) * p_v * u.rpDeceiveVerify +
           (1 - p_e) * (1 - p_v) * u.rpDeceivePass;
}

double jc_utility_derivative_pa(const GameParams& p, double p_a, double p_e,
                                double p_v) {
    const int n = p.n;
    const double pan = pow_n(p_a, n);
    const double pan1 = n > 0 ? n * pow_n(p_a, n - 1) : 0; // d(p_a^n)/dp_a
    // d/dp_a of the execute+verify entry
    const double dEv = -p.pi_c + p.g_m +
                       p.d * ((1 - pan) + pan1 * (1 - p_a)) +
                       p.pi_d * (pan1 * (1 - p_a) - pan);
    // d/dp_a of the deceive+verify entry
    const double dDv = pan1 * (p.d + p.pi_d);
    return p_v * (p_e * dEv + (1 - p_e) * dDv);
}

double optimal_pa(const GameParams& p, double p_e) {
    constexpr double eps = 1e-9;
    auto f = [&](double pa) { return jc_utility_derivative_pa(p, pa, p_e, 1.0); };
    double lo = eps, hi = 1 - eps;
    double flo = f(lo), fhi = f(hi);
    if (flo == 0) return lo;
    if (fhi == 0) return hi;
    if ((flo > 0) == (fhi > 0))
        throw Error("NoRootInUnitInterval",
                    "utility derivative does not change sign on (0,1)");
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double min_optimal_pa(int n, double theta) {
    if (n < 1) throw Error("InvalidParams", "n must be >= 1");
    if (theta < 0) throw Error("InvalidParams", "theta must be >= 0");
    GameParams p;
    p.pi_c = 1;
    p.pi_c_hat = 1;
    p.pi_d = 1;
    p.d = 1 * (theta + n);
    p.theta = theta;
    p.n = n;
    p.g_m = 0;
    return optimal_pa(p, 1.0);
}

} // namespace ocm::game
