#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ocm/agents.hpp"
#include "ocm/scenario.hpp"

namespace ocm {

struct AgentMetrics {
    Money ledgerDelta = 0;       // final balance minus genesis balance
    double privateCost = 0;      // executed/fabricated/verified costs
    double benefit = 0;          // JC benefit from executed jobs
    double realizedUtility = 0;  // ledgerDelta + benefit - privateCost
    std::uint64_t jobs = 0;
};

struct Metrics {
    std::uint64_t jobsStarted = 0;
    std::uint64_t jobsClosed = 0;
    std::uint64_t jobsTimedOut = 0;
    std::uint64_t offersCanceled = 0;
    std::uint64_t matches = 0;
    std::uint64_t verifications = 0;
    std::uint64_t mediations = 0;
    std::array<std::uint64_t, 7> outcomeCounts{}; // O1..O7
    double mediationRate = 0;      // mediations per closed job
    double verificationRate = 0;   // verifications per closed job
    Money sinkBalance = 0;
    Money conservationResidual = 0;
    std::map<AccountId, AgentMetrics> agents;

    // Deterministic key=value rendering (sorted keys, full precision).
    std::string to_text() const;
};

struct SimResult {
    Metrics metrics;
    std::string traceCsv;
};

// Runs config.jobCount protocol rounds per job creator through the ledger:
// offers, matching, execution, reaction and mediation, advancing the block
// clock one block per protocol phase. Fully deterministic in (config, seed).
SimResult run_scenario(const ScenarioConfig& config);

// One grid axis of a parameter sweep: a scenario field name and the values
// it takes. Supported fields: platform.n, platform.theta, jobCount, seed,
// jc.<name>.p_a, jc.<name>.p_v, rp.<name>.p_e. Unknown fields are rejected
// (code "UnknownGridField").
struct GridAxis {
    std::string field;
    std::vector<std::string> values;
};

// Runs one scenario per grid point in row-major order (the first axis
// varies slowest) and returns CSV: grid fields, headline metrics, and the
// game module's closed-form predictions side by side.
std::string sweep(const ScenarioConfig& base, const std::vector<GridAxis>& grid);

// The analysis-module view of a scenario with one JC and one RP: prices and
// fees from the ledger parameters (micro-units as reals), costs and
// strategies from the agent configs.
struct ScenarioGameView {
    game::GameParams params;
    double p_a = 1.0;
    double p_e = 1.0;
    double p_v = 0;
};
ScenarioGameView scenario_game_view(const ScenarioConfig& config);

} // namespace ocm
