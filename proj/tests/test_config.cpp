#include <catch2/catch_amalgamated.hpp>

#include "ocm/config.hpp"
#include "ocm/error.hpp"
#include "ocm/scenario.hpp"

using namespace ocm;

namespace {

std::string code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}

const char* kScenario = R"(# full scenario
[scenario]
seed = 7
jobCount = 3
solver = maximum

[platform]
theta = 10
n = 2
pi_a = 5
g_j = 1
g_r = 2
g_m = 3

[jc alice]
balance = 100000000
trustedMediators = m1, m2
directory = d1
arch = amd64
p_v = 0.5
instructionLimit = 100
bandwidthLimit = 10
instructionMaxPrice = 3
bandwidthMaxPrice = 1

[rp bob]
balance = 100000000
arch = amd64
trustedMediators = m1
trustedDirectories = d1
instructionCapacity = 200
bandwidthCapacity = 20
instructionPrice = 2
bandwidthPrice = 1

[mediator m1]
balance = 0
arch = amd64
trustedDirectories = d1
)";

} // namespace

TEST_CASE("config parser handles sections, comments and trimming") {
    auto sections = parse_config_text(
        "# leading comment\n"
        "[alpha]\n"
        "key = value with spaces  # trailing comment\n"
        "\n"
        "[beta the name]\n"
        "  k2=v2\n");
    REQUIRE(sections.size() == 2);
    CHECK(sections[0].kind == "alpha");
    CHECK(sections[0].name.empty());
    REQUIRE(sections[0].entries.size() == 1);
    CHECK(sections[0].entries[0].first == "key");
    CHECK(sections[0].entries[0].second == "value with spaces");
    CHECK(sections[1].kind == "beta");
    CHECK(sections[1].name == "the name");
    CHECK(sections[1].entries[0] ==
          std::pair<std::string, std::string>("k2", "v2"));
}

TEST_CASE("config parser rejects malformed input") {
    CHECK(code_of([] { parse_config_text("key = 1\n"); }) == "ConfigError");
    CHECK(code_of([] { parse_config_text("[a]\nnot a pair\n"); }) ==
          "ConfigError");
    CHECK(code_of([] { parse_config_text("[a\nk = v\n"); }) == "ConfigError");
    CHECK(code_of([] { parse_config_text("[]\n"); }) == "ConfigError");
    CHECK(code_of([] { parse_config_text("[a]\n= v\n"); }) == "ConfigError");
    CHECK(code_of([] { parse_config_text("[a]\nk = 1\nk = 2\n"); }) ==
          "ConfigError");
    CHECK(code_of([] { parse_config_file("/no/such/file.cfg"); }) == "IoError");
}

TEST_CASE("section reader converts types and rejects leftovers") {
    auto sections = parse_config_text(
        "[s]\n"
        "i = -12\n"
        "u = 18446744073709551615\n"
        "m = 9223372036854775807\n"
        "f = 0.25\n"
        "yes = true\n"
        "no = 0\n"
        "list = a, b ,c\n"
        "txt = hello\n");
    SectionReader r(sections.front());
    CHECK(r.get_int("i") == -12);
    CHECK(r.get_uint("u") == 18446744073709551615ULL);
    CHECK(r.get_money("m") == 9223372036854775807LL);
    CHECK(r.get_double("f") == 0.25);
    CHECK(r.get_bool("yes", false));
    CHECK_FALSE(r.get_bool("no", true));
    CHECK(r.get_list("list") == std::vector<std::string>{"a", "b", "c"});
    CHECK(r.get_string("txt") == "hello");
    CHECK(r.get_string("absent", "fallback") == "fallback");
    CHECK(r.get_int("absent", 5) == 5);
    r.finish();

    SectionReader r2(sections.front());
    CHECK(code_of([&] { r2.get_int("txt"); }) == "ConfigError");
    CHECK(code_of([&] { r2.get_uint("i"); }) == "ConfigError");
    CHECK(code_of([&] { r2.get_double("txt"); }) == "ConfigError");
    CHECK(code_of([&] { r2.get_bool("txt", true); }) == "ConfigError");
    CHECK(code_of([&] { r2.get_string("missing"); }) == "ConfigError");

    SectionReader r3(sections.front());
    CHECK(code_of([&] { r3.finish(); }) == "ConfigError"); // nothing consumed
}

TEST_CASE("scenario loader builds the full configuration") {
    const ScenarioConfig cfg = load_scenario_text(kScenario);
    CHECK(cfg.seed == 7);
    CHECK(cfg.jobCount == 3);
    CHECK(cfg.solverMode == matching::SolverMode::Maximum);
    CHECK(cfg.solverAccount == "solver");
    CHECK(cfg.platform.theta == 10);
    CHECK(cfg.platform.n == 2);
    CHECK(cfg.platform.pi_a == 5);
    REQUIRE(cfg.jcs.size() == 1);
    REQUIRE(cfg.rps.size() == 1);
    REQUIRE(cfg.mediators.size() == 1);
    const JcAgentConfig& jc = cfg.jcs.front();
    CHECK(jc.id == "alice");
    CHECK(jc.trustedMediators == std::vector<std::string>{"m1", "m2"});
    CHECK(jc.p_a == 1.0);
    CHECK(jc.p_v == 0.5);
    // true usage defaults to the offer limits
    CHECK(jc.instructionsUsed == 100);
    CHECK(jc.bandwidthUsed == 10);
    CHECK(cfg.rps.front().p_e == 1.0);
    CHECK(cfg.mediators.front().id == "m1");
}

TEST_CASE("scenario loader rejects broken configurations") {
    auto mutate = [&](const std::string& from, const std::string& to) {
        std::string text = kScenario;
        auto pos = text.find(from);
        REQUIRE(pos != std::string::npos);
        text.replace(pos, from.size(), to);
        return text;
    };
    // unknown section
    CHECK(code_of([&] {
              load_scenario_text(mutate("[scenario]", "[scenari0]"));
          }) == "ConfigError");
    // unknown key
    CHECK(code_of([&] { load_scenario_text(mutate("seed =", "sheed =")); }) ==
          "ConfigError");
    // duplicate agent name
    CHECK(code_of([&] {
              load_scenario_text(mutate("[rp bob]", "[rp alice]"));
          }) == "ConfigError");
    // unnamed agent section
    CHECK(code_of([&] { load_scenario_text(mutate("[jc alice]", "[jc]")); }) ==
          "ConfigError");
    // out-of-range probability
    CHECK(code_of([&] {
              load_scenario_text(mutate("p_v = 0.5", "p_v = 1.5"));
          }) == "ConfigError");
    // usage above limits
    CHECK(code_of([&] {
              load_scenario_text(mutate("instructionLimit = 100",
                                        "instructionLimit = 100\ninstructionsUsed = 101"));
          }) == "ConfigError");
    // missing mediator section entirely
    {
        std::string text = kScenario;
        auto pos = text.find("[mediator m1]");
        text.resize(pos);
        CHECK(code_of([&] { load_scenario_text(text); }) == "ConfigError");
    }
    // solver account colliding with an agent
    CHECK(code_of([&] {
              load_scenario_text(mutate("solver = maximum",
                                        "solver = maximum\nsolverAccount = alice"));
          }) == "ConfigError");
}

TEST_CASE("game file applies the documented defaulting chain") {
    const GameFile f = load_game_text(
        "[game]\n"
        "pi_c = 10\n"
        "theta = 3\n"
        "n = 2\n");
    CHECK(f.params.pi_c == 10);
    CHECK(f.params.pi_c_hat == 10);
    CHECK(f.params.pi_r == 10);
    CHECK(f.params.pi_d == 10);
    CHECK(f.params.pi_m == 20);          // pi_c_hat * n
    CHECK(f.params.d == 50);             // pi_c_hat * (theta + n)
    CHECK_FALSE(f.dExplicit);
    CHECK(f.p_a == 1.0);
    CHECK(f.p_e == 1.0);
    CHECK(f.p_v == 1.0);

    const GameFile g = load_game_text(
        "[game]\n"
        "pi_c = 10\n"
        "pi_c_hat = 12\n"
        "theta = 3\n"
        "n = 2\n"
        "d = 7\n"
        "p_v = 0.25\n");
    CHECK(g.params.pi_m == 24);
    CHECK(g.params.d == 7);
    CHECK(g.dExplicit);
    CHECK(g.p_v == 0.25);

    CHECK(code_of([] { load_game_text("[game]\nn = 2\n"); }) == "ConfigError");
    CHECK(code_of([] { load_game_text("[game]\npi_c = 1\nn = 0\n"); }) ==
          "ConfigError");
    CHECK(code_of([] { load_game_text("[other]\npi_c = 1\n"); }) ==
          "ConfigError");
}

TEST_CASE("legacy file requires every parameter") {
    const char* text =
        "[legacy]\n"
        "p = 0.5\nC = 2\nC_d = 1\nC_j = 1\nQ = 0.9\nM = 0\n"
        "P_j = 0.8\nP_m = 0.7\nr = 10\nf = 1\nB = 20\n";
    const game::LegacyParams p = load_legacy_text(text);
    CHECK(p.p == 0.5);
    CHECK(p.B == 20);

    std::string missing = text;
    missing.replace(missing.find("B = 20"), 6, "");
    CHECK(code_of([&] { load_legacy_text(missing); }) == "ConfigError");
    CHECK(code_of([&] { load_legacy_text("[legacy]\np = 2\n"); }) ==
          "ConfigError");
}
