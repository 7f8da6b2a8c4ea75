#include "ocm/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ocm/error.hpp"
#include "ocm/format.hpp"
#include "ocm/game.hpp"
#include "ocm/legacy_game.hpp"
#include "ocm/scenario.hpp"
#include "ocm/sim.hpp"

namespace ocm {

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("IoError", "cannot open '" + path + "' for writing");
    out << content;
    if (!out)
        throw Error("IoError", "failed writing '" + path + "'");
}

std::vector<GridAxis> parse_grid_spec(const std::string& spec) {
    std::vector<GridAxis> grid;
    std::size_t start = 0;
    while (start <= spec.size()) {
        auto semi = spec.find(';', start);
        const std::string part = semi == std::string::npos
                                     ? spec.substr(start)
                                     : spec.substr(start, semi - start);
        if (!part.empty()) {
            auto eq = part.find('=');
            if (eq == std::string::npos)
                throw Error("ConfigError",
                            "grid axis '" + part + "' needs field=v1,v2,...");
            GridAxis axis;
            axis.field = part.substr(0, eq);
            std::string values = part.substr(eq + 1);
            std::size_t vstart = 0;
            while (vstart <= values.size()) {
                auto comma = values.find(',', vstart);
                std::string v = comma == std::string::npos
                                    ? values.substr(vstart)
                                    : values.substr(vstart, comma - vstart);
                if (!v.empty()) axis.values.push_back(std::move(v));
                if (comma == std::string::npos) break;
                vstart = comma + 1;
            }
            if (axis.field.empty() || axis.values.empty())
                throw Error("ConfigError",
                            "grid axis '" + part + "' needs field=v1,v2,...");
            grid.push_back(std::move(axis));
        }
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    if (grid.empty())
        throw Error("ConfigError", "empty grid specification");
    return grid;
}

void print_equilibria(const game::GameParams& params, double p_a,
                      std::ostream& out) {
    const game::EquilibriumValue pv = game::equilibrium_pv(params, p_a);
    const game::EquilibriumValue pe = game::equilibrium_pe(params, p_a);
    out << "p_v* = " << format_full(pv.value);
    if (pv.outOfRange) out << "  [out of range]";
    out << "\n";
    out << "p_e* = " << format_full(pe.value);
    if (pe.nonpositiveBracket) out << "  [bracket term not positive]";
    if (pe.outOfRange) out << "  [out of range]";
    out << "\n";
}

int run_simulate(const std::string& configPath, const std::string& outPath,
                 std::optional<std::uint64_t> seed,
                 const std::string& metricsPath, std::ostream& out) {
    ScenarioConfig cfg = load_scenario_file(configPath);
    if (seed) cfg.seed = *seed;
    SimResult result = run_scenario(cfg);
    write_file(outPath, result.traceCsv);
    const std::string text = result.metrics.to_text();
    if (!metricsPath.empty()) write_file(metricsPath, text);
    out << text;
    return 0;
}

int run_analyze(const std::string& configPath, std::ostream& out) {
    const GameFile f = load_game_file(configPath);
    const game::GameParams& p = f.params;

    const std::vector<std::string> violations = game::validate(p);
    out << "constraints: ";
    if (violations.empty()) {
        out << "satisfied\n";
    } else {
        bool first = true;
        for (const auto& v : violations) {
            if (!first) out << ", ";
            first = false;
            out << v;
        }
        out << "\n";
    }

    const game::ActionUtilities u = game::expected_utilities(p, f.p_a);
    out << "expected utilities at p_a=" << format_human(f.p_a) << ":\n";
    out << "  RP  execute+verify=" << format_human(u.rpExecuteVerify)
        << "  execute+pass=" << format_human(u.rpExecutePass)
        << "  deceive+verify=" << format_human(u.rpDeceiveVerify)
        << "  deceive+pass=" << format_human(u.rpDeceivePass) << "\n";
    out << "  JC  execute+verify=" << format_human(u.jcExecuteVerify)
        << "  execute+pass=" << format_human(u.jcExecutePass)
        << "  deceive+verify=" << format_human(u.jcDeceiveVerify)
        << "  deceive+pass=" << format_human(u.jcDeceivePass) << "\n";

    out << "execute beats deceive for the RP: "
        << (game::rp_execute_condition(p, f.p_a) ? "yes" : "no") << "\n";
    const game::JcClassification cls = game::classify_jc_type(p, f.p_a);
    out << "JC classification: " << game::to_string(cls.type)
        << (cls.nonParticipation ? " (non-participating)" : "") << "\n";
    print_equilibria(p, f.p_a, out);
    out << "mixed utilities at (p_e=" << format_human(f.p_e)
        << ", p_v=" << format_human(f.p_v)
        << "): jc=" << format_human(game::jc_total_utility(p, f.p_a, f.p_e, f.p_v))
        << " rp=" << format_human(game::rp_total_utility(p, f.p_a, f.p_e, f.p_v))
        << "\n";
    try {
        out << "stationary p_a at p_e=" << format_human(f.p_e) << ": "
            << format_full(game::optimal_pa(p, f.p_e)) << "\n";
    } catch (const Error& e) {
        if (e.code() != "NoRootInUnitInterval") throw;
        out << "stationary p_a at p_e=" << format_human(f.p_e)
            << ": none (derivative keeps one sign)\n";
    }
    return 0;
}

int run_equilibrium(const std::string& configPath, std::ostream& out) {
    const GameFile f = load_game_file(configPath);
    print_equilibria(f.params, f.p_a, out);
    return 0;
}

int run_sweep(const std::string& configPath, const std::string& gridSpec,
              const std::string& outPath, std::ostream& out) {
    const ScenarioConfig base = load_scenario_file(configPath);
    const std::vector<GridAxis> grid = parse_grid_spec(gridSpec);
    const std::string csv = sweep(base, grid);
    write_file(outPath, csv);
    std::size_t rows = 0;
    for (char c : csv)
        if (c == '\n') ++rows;
    out << "wrote " << (rows ? rows - 1 : 0) << " grid points to " << outPath
        << "\n";
    return 0;
}

int run_legacy_ne(const std::string& configPath, std::ostream& out) {
    const game::LegacyParams p = load_legacy_file(configPath);
    const game::LegacyUtilities u = game::legacy_utilities(p);
    out << "comply/comply:   jc=" << format_human(u.complyComply.jc)
        << " rp=" << format_human(u.complyComply.rp) << "\n";
    out << "comply/disobey:  jc=" << format_human(u.complyDisobey.jc)
        << " rp=" << format_human(u.complyDisobey.rp) << "\n";
    out << "disobey/comply:  jc=" << format_human(u.disobeyComply.jc)
        << " rp=" << format_human(u.disobeyComply.rp) << "\n";
    out << "disobey/disobey: jc=" << format_human(u.disobeyDisobey.jc)
        << " rp=" << format_human(u.disobeyDisobey.rp) << "\n";
    const game::LegacyEquilibrium eq = game::legacy_honest_equilibrium(p);
    out << "audit probability window: [" << format_full(eq.pLower) << ", "
        << format_full(eq.pUpper) << "]\n";
    out << "honest play is an equilibrium at p=" << format_human(p.p) << ": "
        << (eq.isEquilibrium ? "yes" : "no") << "\n";
    return 0;
}

int run_dump_curve(const std::string& configPath, const std::string& outPath,
                   int points, std::ostream& out) {
    if (points < 3)
        throw Error("InvalidParams", "need at least 3 curve points");
    const GameFile f = load_game_file(configPath);
    std::string csv = "p_a,jcUtility,derivative\n";
    for (int i = 1; i <= points; ++i) {
        const double p_a = static_cast<double>(i) / (points + 1);
        csv += format_full(p_a);
        csv += ',';
        csv += format_full(
            game::jc_total_utility(f.params, p_a, f.p_e, f.p_v));
        csv += ',';
        csv += format_full(
            game::jc_utility_derivative_pa(f.params, p_a, f.p_e, f.p_v));
        csv += '\n';
    }
    write_file(outPath, csv);
    out << "wrote " << points << " curve points to " << outPath << "\n";
    return 0;
}

} // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
    CLI::App app{"Deterministic market simulator and incentive analysis"};
    app.require_subcommand(1);

    std::string configPath, outPath, metricsPath, gridSpec;
    std::optional<std::uint64_t> seed;
    int curvePoints = 199;

    CLI::App* simulate =
        app.add_subcommand("simulate", "Run a scenario and write its trace");
    simulate->add_option("--config", configPath, "scenario file")->required();
    simulate->add_option("--out", outPath, "trace CSV path")->required();
    simulate->add_option("--seed", seed, "override the scenario seed");
    simulate->add_option("--metrics-out", metricsPath, "also write metrics here");

    CLI::App* analyze =
        app.add_subcommand("analyze", "Evaluate the single-job strategy model");
    analyze->add_option("--config", configPath, "game parameter file")->required();

    CLI::App* equilibrium = app.add_subcommand(
        "equilibrium", "Print the mixed-equilibrium probabilities");
    equilibrium->add_option("--config", configPath, "game parameter file")
        ->required();

    CLI::App* sweepCmd =
        app.add_subcommand("sweep", "Run a scenario over a parameter grid");
    sweepCmd->add_option("--config", configPath, "scenario file")->required();
    sweepCmd->add_option("--grid", gridSpec,
                         "axes, e.g. 'jc.alice.p_v=0,0.5;seed=1,2'")
        ->required();
    sweepCmd->add_option("--out", outPath, "sweep CSV path")->required();

    CLI::App* legacy = app.add_subcommand(
        "legacy-ne", "Evaluate the audit-game model and its honesty window");
    legacy->add_option("--config", configPath, "legacy parameter file")->required();

    CLI::App* curve = app.add_subcommand(
        "dump-derivative-curve",
        "Tabulate the JC utility and its derivative in p_a");
    curve->add_option("--config", configPath, "game parameter file")->required();
    curve->add_option("--out", outPath, "curve CSV path")->required();
    curve->add_option("--points", curvePoints, "number of samples");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        // collapse CLI11's distinct parse-error codes into the 0/1 contract
        return app.exit(e, out, err) == 0 ? 0 : 1;
    }

    try {
        if (simulate->parsed())
            return run_simulate(configPath, outPath, seed, metricsPath, out);
        if (analyze->parsed()) return run_analyze(configPath, out);
        if (equilibrium->parsed()) return run_equilibrium(configPath, out);
        if (sweepCmd->parsed())
            return run_sweep(configPath, gridSpec, outPath, out);
        if (legacy->parsed()) return run_legacy_ne(configPath, out);
        if (curve->parsed())
            return run_dump_curve(configPath, outPath, curvePoints, out);
    } catch (const Error& e) {
        std::string message = e.what();
        const std::string prefix = e.code() + ": ";
        if (message.rfind(prefix, 0) == 0) message = message.substr(prefix.size());
        for (char& c : message)
            if (c == '"') c = '\'';
        err << "error code=" << e.code() << " message=\"" << message << "\"\n";
        return 1;
    } catch (const std::exception& e) {
        std::string message = e.what();
        for (char& c : message)
            if (c == '"') c = '\'';
        err << "error code=InternalError message=\"" << message << "\"\n";
        return 1;
    }
    err << "error code=InternalError message=\"no subcommand dispatched\"\n";
    return 1;
}

} // namespace ocm
