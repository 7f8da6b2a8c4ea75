#pragma once

#include <array>
#include <string>
#include <vector>

namespace ocm::game {

// Parameters of the single-job strategic interaction. All values are reals;
// money-valued entries use the same unit throughout (tests use abstract
// units, simulation-derived parameters use micro-units).
//
// d is the forfeitable stake: the posted deposit minus the availability
// provision pi_a. The closed-form utilities printed in the analysis
// literature correspond to d = pi_c * (theta + n) with pi_d = pi_c.
struct GameParams {
    double pi_c = 0;       // actual job price
    double pi_c_hat = 0;   // job price estimate (upper bound on pi_c)
    double pi_r = 0;       // resource provider's cost-covering floor price
    double pi_d = 0;       // damages paid to the wronged party
    double pi_m = 0;       // mediation fee (pihat_c * n under the default convention)
    double pi_a = 0;       // mediator availability payment, charged per party
    double d = 0;          // forfeitable deposit stake
    double theta = 0;      // penalty factor, >= 0
    int n = 1;             // mediator replication count, >= 1
    double g_j = 0;        // job-offer fee
    double g_r = 0;        // resource-offer fee
    double g_m = 0;        // mediation-request fee
    double c_e = 0;        // RP's cost of executing
    double c_d = 0;        // RP's cost of fabricating a result
    double c_v = 0;        // JC's cost of verifying
    double b = 0;          // JC's benefit from a correct result
};

// Identifiers of violated system constraints (empty when params are valid):
//   benefit_exceeds_cost   b > pi_c + pi_a + g_j
//   theta_nonnegative      theta >= 0
//   n_positive             n >= 1
//   execution_cost_order   c_e > c_d > 0
//   price_order            pi_c_hat >= pi_c >= pi_r > c_e
//   deposit_minimum        d + pi_a >= pihat_c * (theta + n) + pi_a
std::vector<std::string> validate(const GameParams& p);

// Terminal outcomes of the interaction:
//   O1 deceive+verify, mediator finds the job non-deterministic (JC faulted)
//   O2 deceive+verify, mediator replicates cleanly (RP faulted)
//   O3 deceive+pass
//   O4 execute+pass
//   O5 execute+verify, result normal (accepted)
//   O6 execute+verify, anomalous result, mediator confirms non-determinism (JC faulted)
//   O7 execute+verify, anomalous result, mediator replicates cleanly (RP faulted)
enum class Outcome { O1, O2, O3, O4, O5, O6, O7 };
inline constexpr std::array<Outcome, 7> kAllOutcomes = {
    Outcome::O1, Outcome::O2, Outcome::O3, Outcome::O4,
    Outcome::O5, Outcome::O6, Outcome::O7};

enum class Role { ResourceProvider, JobCreator, Mediator };

const char* to_string(Outcome o);
bool outcome_mediated(Outcome o);

// Ledger-visible payoff of the outcome (deposits, fees, damages, prices).
double outcome_contract_payoff(const GameParams& p, Outcome o, Role role);
// Off-ledger component: execution/fabrication/verification costs and the
// JC's benefit.
double outcome_self_benefit(const GameParams& p, Outcome o, Role role);
// Total reward, the sum of the two components.
double outcome_reward(const GameParams& p, Outcome o, Role role);

// Probability of each outcome under the given pure action pair, with the
// job returning a normal result per run with probability p_a.
std::array<double, 7> outcome_probabilities(double p_a, int n,
                                            bool rpExecutes, bool jcVerifies);

// Expected utilities of the four pure action pairs
// (execute/deceive x verify/pass), for both parties.
struct ActionUtilities {
    double rpExecuteVerify = 0, rpExecutePass = 0, rpDeceiveVerify = 0, rpDeceivePass = 0;
    double jcExecuteVerify = 0, jcExecutePass = 0, jcDeceiveVerify = 0, jcDeceivePass = 0;
};
ActionUtilities expected_utilities(const GameParams& p, double p_a);

// Dominance-comparison table under the pi_d = pi_c convention: for each
// action pair, the terms that differ between the two columns being compared
// (the verify column carries the mediation value, the pass column the
// competing cost). Rejects params with pi_d != pi_c.
ActionUtilities simplified_dominance(const GameParams& p, double p_a);

// Exact condition for execute to dominate deceive for the RP under the
// d = pi_c*(theta+n) convention: p_a^(n+1) * pi_c * (n+theta+1) > c_e - c_d.
bool rp_execute_condition(const GameParams& p, double p_a);

// JC classification by the sign pattern of verify-vs-pass comparisons:
//   Type1: verifying is better against both RP actions (always verifies)
//   Type2: better only against execute (two pure equilibria and a mixed one)
//   Type3: better only against deceive (unique mixed equilibrium)
//   Type4: never better; flagged as non-participating rather than rejected
enum class JcType { Type1, Type2, Type3, Type4 };
struct JcClassification {
    JcType type = JcType::Type4;
    bool nonParticipation = false;
};
const char* to_string(JcType t);
JcClassification classify_jc_type(const GameParams& p, double p_a);

// A mixed-equilibrium probability. Out-of-range or sign-defect values are
// reported through the flags and never clamped.
struct EquilibriumValue {
    double value = 0;
    bool outOfRange = false;        // value outside [0, 1]
    bool nonpositiveBracket = false; // equilibrium_pe only: bracket term <= 0
};

// Verification probability making the RP indifferent between execute and
// deceive: p_v = (c_e - c_d) / (p_a^(n+1) * pi_c * (theta+n+1)).
EquilibriumValue equilibrium_pv(const GameParams& p, double p_a);
// Execution probability making the JC indifferent between verify and pass:
// p_e = (K - c_v) / (p_a * K), K = 2*pi_c - g_m - pi_c*(1-p_a^n)*(theta+n+1).
EquilibriumValue equilibrium_pe(const GameParams& p, double p_a);

// Expected utility of the mixed profile (RP executes w.p. p_e, JC verifies
// w.p. p_v).
double jc_total_utility(const GameParams& p, double p_a, double p_e, double p_v);
double rp_total_utility(const GameParams& p, double p_a, double p_e, double p_v);

// Analytic partial derivative of jc_total_utility with respect to p_a.
double jc_utility_derivative_pa(const GameParams& p, double p_a, double p_e, double p_v);

// The stationary point of the JC's utility in p_a on (0,1), found by
// bisection on the analytic derivative over [eps, 1-eps] (eps = 1e-9) after
// a sign-change check; throws "NoRootInUnitInterval" when the derivative
// does not change sign.
double optimal_pa(const GameParams& p, double p_e);

// Lower bound on the detection probability a cheating JC needs: optimal_pa
// at the worst case g_m = 0, p_e = 1 under the d = pi_c*(theta+n),
// pi_d = pi_c convention (the job price cancels).
double min_optimal_pa(int n, double theta);

} // namespace ocm::game
