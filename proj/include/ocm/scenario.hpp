#pragma once

#include <string>
#include <vector>

#include "ocm/game.hpp"
#include "ocm/ledger.hpp"
#include "ocm/legacy_game.hpp"
#include "ocm/matching.hpp"

namespace ocm {

struct JcAgentConfig {
    AccountId id;
    Money balance = 0;
    std::vector<std::string> trustedMediators;
    std::string directory;
    std::string arch;
    // strategy
    double p_a = 1.0;
    double p_v = 0;
    bool rejectOnAnomaly = true;
    double c_v = 0;
    double b = 0;
    // job template
    std::uint64_t instructionLimit = 0;
    std::uint64_t bandwidthLimit = 0;
    std::uint64_t ramLimit = 0;
    std::uint64_t localStorageLimit = 0;
    Money instructionMaxPrice = 0;
    Money bandwidthMaxPrice = 0;
    std::uint64_t instructionsUsed = 0;  // true usage of one run
    std::uint64_t bandwidthUsed = 0;
    TimeMs deadlineMarginMs = 3600000;
    Money deposit = 0;                   // 0 = post the minimum deposit
    Money matchIncentive = 0;
};

struct RpAgentConfig {
    AccountId id;
    Money balance = 0;
    std::string arch;
    std::uint64_t timePerInstructionUs = 1;
    std::vector<std::string> trustedMediators;
    std::vector<std::string> trustedDirectories;
    std::uint64_t instructionCapacity = 0;
    std::uint64_t bandwidthCapacity = 0;
    std::uint64_t ramCapacity = 0;
    std::uint64_t localStorageCapacity = 0;
    Money instructionPrice = 0;
    Money bandwidthPrice = 0;
    // strategy
    double p_e = 1.0;
    double c_e = 0;
    double c_d = 0;
    Money deposit = 0;                   // 0 = post the minimum deposit
    Money matchIncentive = 0;
};

struct MediatorAgentConfig {
    AccountId id;
    Money balance = 0;
    std::string arch;
    std::vector<std::string> trustedDirectories;
};

struct ScenarioConfig {
    std::uint64_t seed = 1;
    std::uint64_t jobCount = 1;          // protocol rounds per job creator
    matching::SolverMode solverMode = matching::SolverMode::Greedy;
    AccountId solverAccount = "solver";
    PlatformParams platform;
    std::vector<JcAgentConfig> jcs;
    std::vector<RpAgentConfig> rps;
    std::vector<MediatorAgentConfig> mediators;
};

// Loads and schema-checks a scenario file. Sections: one [platform], one or
// more [jc NAME] / [rp NAME] / [mediator NAME]. Unknown sections, unknown
// keys and type errors are rejected (code "ConfigError").
ScenarioConfig load_scenario_file(const std::string& path);
ScenarioConfig load_scenario_text(const std::string& text);

// Loads a [game] section into analysis parameters. Defaults: pi_c_hat,
// pi_r and pi_d default to pi_c; pi_m to pi_c_hat*n; d to the stake
// pi_c_hat*(theta+n); fees and pi_a to 0.
struct GameFile {
    game::GameParams params;
    double p_a = 1.0;
    double p_e = 1.0;
    double p_v = 1.0;
    bool dExplicit = false;   // whether d was given rather than defaulted
};
GameFile load_game_file(const std::string& path);
GameFile load_game_text(const std::string& text);

// Loads a [legacy] section.
game::LegacyParams load_legacy_file(const std::string& path);
game::LegacyParams load_legacy_text(const std::string& text);

} // namespace ocm
