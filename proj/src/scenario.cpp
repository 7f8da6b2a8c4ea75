#include "ocm/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "ocm/config.hpp"
#include "ocm/error.hpp"

namespace ocm {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("IoError", "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void require_probability(const std::string& key, double v) {
    if (!(v >= 0.0 && v <= 1.0))
        throw Error("ConfigError",
                    "'" + key + "' must lie in [0, 1], got " + std::to_string(v));
}

void require_named(const ConfigSection& s) {
    if (s.name.empty())
        throw Error("ConfigError", "section [" + s.kind + "] at line " +
                                       std::to_string(s.line) + " needs a name");
}

PiAConvention parse_pia_convention(const std::string& s) {
    if (s == "per_actor") return PiAConvention::PerActor;
    if (s == "split_half") return PiAConvention::SplitHalf;
    throw Error("ConfigError", "unknown availability convention '" + s + "'");
}

PiDConvention parse_pid_convention(const std::string& s) {
    if (s == "actual_price") return PiDConvention::ActualPrice;
    if (s == "estimate") return PiDConvention::Estimate;
    throw Error("ConfigError", "unknown damages convention '" + s + "'");
}

PlatformParams load_platform(const ConfigSection& s) {
    SectionReader r(s);
    PlatformParams p;
    p.theta = static_cast<std::uint32_t>(r.get_uint("theta", p.theta));
    p.n = static_cast<std::uint32_t>(r.get_uint("n", p.n));
    p.g_j = r.get_money("g_j", p.g_j);
    p.g_r = r.get_money("g_r", p.g_r);
    p.g_m = r.get_money("g_m", p.g_m);
    p.pi_a = r.get_money("pi_a", p.pi_a);
    p.piAConvention =
        parse_pia_convention(r.get_string("availabilityConvention", "per_actor"));
    p.piDConvention =
        parse_pid_convention(r.get_string("damagesConvention", "actual_price"));
    p.blockIntervalMs = r.get_int("blockIntervalMs", p.blockIntervalMs);
    p.reactionDeadlineMs = r.get_int("reactionDeadlineMs", p.reactionDeadlineMs);
    p.mediationDeadlineMs = r.get_int("mediationDeadlineMs", p.mediationDeadlineMs);
    r.finish();
    return p;
}

JcAgentConfig load_jc(const ConfigSection& s) {
    require_named(s);
    SectionReader r(s);
    JcAgentConfig c;
    c.id = s.name;
    c.balance = r.get_money("balance");
    c.trustedMediators = r.get_list("trustedMediators");
    c.directory = r.get_string("directory");
    c.arch = r.get_string("arch");
    c.p_a = r.get_double("p_a", c.p_a);
    c.p_v = r.get_double("p_v", c.p_v);
    c.rejectOnAnomaly = r.get_bool("rejectOnAnomaly", c.rejectOnAnomaly);
    c.c_v = r.get_double("c_v", c.c_v);
    c.b = r.get_double("b", c.b);
    c.instructionLimit = r.get_uint("instructionLimit");
    c.bandwidthLimit = r.get_uint("bandwidthLimit");
    c.ramLimit = r.get_uint("ramLimit", c.ramLimit);
    c.localStorageLimit = r.get_uint("localStorageLimit", c.localStorageLimit);
    c.instructionMaxPrice = r.get_money("instructionMaxPrice");
    c.bandwidthMaxPrice = r.get_money("bandwidthMaxPrice");
    c.instructionsUsed = r.get_uint("instructionsUsed", c.instructionLimit);
    c.bandwidthUsed = r.get_uint("bandwidthUsed", c.bandwidthLimit);
    c.deadlineMarginMs = r.get_int("deadlineMarginMs", c.deadlineMarginMs);
    c.deposit = r.get_money("deposit", c.deposit);
    c.matchIncentive = r.get_money("matchIncentive", c.matchIncentive);
    r.finish();
    require_probability("p_a", c.p_a);
    require_probability("p_v", c.p_v);
    if (c.instructionsUsed > c.instructionLimit ||
        c.bandwidthUsed > c.bandwidthLimit)
        throw Error("ConfigError",
                    "[jc " + c.id + "] true usage exceeds the offer limits");
    return c;
}

RpAgentConfig load_rp(const ConfigSection& s) {
    require_named(s);
    SectionReader r(s);
    RpAgentConfig c;
    c.id = s.name;
    c.balance = r.get_money("balance");
    c.arch = r.get_string("arch");
    c.timePerInstructionUs = r.get_uint("timePerInstructionUs", c.timePerInstructionUs);
    c.trustedMediators = r.get_list("trustedMediators");
    c.trustedDirectories = r.get_list("trustedDirectories");
    c.instructionCapacity = r.get_uint("instructionCapacity");
    c.bandwidthCapacity = r.get_uint("bandwidthCapacity");
    c.ramCapacity = r.get_uint("ramCapacity", c.ramCapacity);
    c.localStorageCapacity = r.get_uint("localStorageCapacity", c.localStorageCapacity);
    c.instructionPrice = r.get_money("instructionPrice");
    c.bandwidthPrice = r.get_money("bandwidthPrice");
    c.p_e = r.get_double("p_e", c.p_e);
    c.c_e = r.get_double("c_e", c.c_e);
    c.c_d = r.get_double("c_d", c.c_d);
    c.deposit = r.get_money("deposit", c.deposit);
    c.matchIncentive = r.get_money("matchIncentive", c.matchIncentive);
    r.finish();
    require_probability("p_e", c.p_e);
    return c;
}

MediatorAgentConfig load_mediator(const ConfigSection& s) {
    require_named(s);
    SectionReader r(s);
    MediatorAgentConfig c;
    c.id = s.name;
    c.balance = r.get_money("balance");
    c.arch = r.get_string("arch");
    c.trustedDirectories = r.get_list("trustedDirectories");
    r.finish();
    return c;
}

} // namespace

ScenarioConfig load_scenario_text(const std::string& text) {
    ScenarioConfig cfg;
    bool sawScenario = false, sawPlatform = false;
    std::set<std::string> agentIds;
    for (const ConfigSection& s : parse_config_text(text)) {
        if (s.kind == "scenario") {
            if (sawScenario)
                throw Error("ConfigError", "duplicate [scenario] section");
            sawScenario = true;
            SectionReader r(s);
            cfg.seed = r.get_uint("seed", cfg.seed);
            cfg.jobCount = r.get_uint("jobCount", cfg.jobCount);
            cfg.solverMode =
                matching::parse_solver_mode(r.get_string("solver", "greedy"));
            cfg.solverAccount = r.get_string("solverAccount", cfg.solverAccount);
            r.finish();
        } else if (s.kind == "platform") {
            if (sawPlatform)
                throw Error("ConfigError", "duplicate [platform] section");
            sawPlatform = true;
            cfg.platform = load_platform(s);
        } else if (s.kind == "jc") {
            JcAgentConfig c = load_jc(s);
            if (!agentIds.insert(c.id).second)
                throw Error("ConfigError", "duplicate agent name '" + c.id + "'");
            cfg.jcs.push_back(std::move(c));
        } else if (s.kind == "rp") {
            RpAgentConfig c = load_rp(s);
            if (!agentIds.insert(c.id).second)
                throw Error("ConfigError", "duplicate agent name '" + c.id + "'");
            cfg.rps.push_back(std::move(c));
        } else if (s.kind == "mediator") {
            MediatorAgentConfig c = load_mediator(s);
            if (!agentIds.insert(c.id).second)
                throw Error("ConfigError", "duplicate agent name '" + c.id + "'");
            cfg.mediators.push_back(std::move(c));
        } else {
            throw Error("ConfigError", "unknown section [" + s.kind + "]");
        }
    }
    if (cfg.jcs.empty())
        throw Error("ConfigError", "scenario needs at least one [jc NAME]");
    if (cfg.rps.empty())
        throw Error("ConfigError", "scenario needs at least one [rp NAME]");
    if (cfg.mediators.empty())
        throw Error("ConfigError", "scenario needs at least one [mediator NAME]");
    if (agentIds.count(cfg.solverAccount))
        throw Error("ConfigError",
                    "solver account '" + cfg.solverAccount +
                        "' collides with an agent name");
    return cfg;
}

ScenarioConfig load_scenario_file(const std::string& path) {
    return load_scenario_text(read_file(path));
}

GameFile load_game_text(const std::string& text) {
    const std::vector<ConfigSection> sections = parse_config_text(text);
    const ConfigSection* gameSection = nullptr;
    for (const ConfigSection& s : sections) {
        if (s.kind != "game")
            throw Error("ConfigError", "unknown section [" + s.kind + "]");
        if (gameSection)
            throw Error("ConfigError", "duplicate [game] section");
        gameSection = &s;
    }
    if (!gameSection) throw Error("ConfigError", "missing [game] section");

    SectionReader r(*gameSection);
    GameFile f;
    game::GameParams& p = f.params;
    p.pi_c = r.get_double("pi_c");
    p.pi_c_hat = r.get_double("pi_c_hat", p.pi_c);
    p.pi_r = r.get_double("pi_r", p.pi_c);
    p.pi_d = r.get_double("pi_d", p.pi_c);
    p.theta = r.get_double("theta", 0.0);
    p.n = static_cast<int>(r.get_int("n", 1));
    p.pi_m = r.get_double("pi_m", p.pi_c_hat * p.n);
    p.pi_a = r.get_double("pi_a", 0.0);
    f.dExplicit = r.has("d");
    p.d = r.get_double("d", p.pi_c_hat * (p.theta + p.n));
    p.g_j = r.get_double("g_j", 0.0);
    p.g_r = r.get_double("g_r", 0.0);
    p.g_m = r.get_double("g_m", 0.0);
    p.c_e = r.get_double("c_e", 0.0);
    p.c_d = r.get_double("c_d", 0.0);
    p.c_v = r.get_double("c_v", 0.0);
    p.b = r.get_double("b", 0.0);
    f.p_a = r.get_double("p_a", f.p_a);
    f.p_e = r.get_double("p_e", f.p_e);
    f.p_v = r.get_double("p_v", f.p_v);
    r.finish();
    require_probability("p_a", f.p_a);
    require_probability("p_e", f.p_e);
    require_probability("p_v", f.p_v);
    if (p.n < 1)
        throw Error("ConfigError", "'n' must be at least 1");
    return f;
}

GameFile load_game_file(const std::string& path) {
    return load_game_text(read_file(path));
}

game::LegacyParams load_legacy_text(const std::string& text) {
    const std::vector<ConfigSection> sections = parse_config_text(text);
    const ConfigSection* legacySection = nullptr;
    for (const ConfigSection& s : sections) {
        if (s.kind != "legacy")
            throw Error("ConfigError", "unknown section [" + s.kind + "]");
        if (legacySection)
            throw Error("ConfigError", "duplicate [legacy] section");
        legacySection = &s;
    }
    if (!legacySection) throw Error("ConfigError", "missing [legacy] section");

    SectionReader r(*legacySection);
    game::LegacyParams p;
    p.p = r.get_double("p");
    p.C = r.get_double("C");
    p.C_d = r.get_double("C_d");
    p.C_j = r.get_double("C_j");
    p.Q = r.get_double("Q");
    p.M = r.get_double("M");
    p.P_j = r.get_double("P_j");
    p.P_m = r.get_double("P_m");
    p.r = r.get_double("r");
    p.f = r.get_double("f");
    p.B = r.get_double("B");
    r.finish();
    require_probability("p", p.p);
    require_probability("Q", p.Q);
    require_probability("P_j", p.P_j);
    require_probability("P_m", p.P_m);
    return p;
}

game::LegacyParams load_legacy_file(const std::string& path) {
    return load_legacy_text(read_file(path));
}

} // namespace ocm
