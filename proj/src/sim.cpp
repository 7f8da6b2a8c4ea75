#include "ocm/sim.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <optional>
#include <sstream>

#include "ocm/error.hpp"
#include "ocm/format.hpp"

namespace ocm {

namespace {

struct JobRun {
    Id joId = 0;
    std::size_t jcIndex = 0;
    std::size_t rpIndex = 0;
    Id matchId = 0;
    JobSpec spec;
    bool matched = false;
    bool closed = false;
    std::optional<RpAction> rpAction;
    std::optional<JcReaction> jcReaction;
    bool mediationRequested = false;
    // Block when the run last advanced; each run takes one step per block.
    std::int64_t stepBlock = -1;
};

struct JcRuntime {
    std::uint64_t remaining = 0;
    std::optional<std::size_t> activeRun;
    std::int64_t readyBlock = -1;
    bool retired = false;
    double privateCost = 0;
    double benefit = 0;
    std::uint64_t jobs = 0;
};

struct RpRuntime {
    std::optional<Id> openRo;
    std::int64_t roBlock = -1;
    std::optional<std::size_t> activeRun;
    std::int64_t readyBlock = -1;
    bool retired = false;
    double privateCost = 0;
    std::uint64_t jobs = 0;
};

game::Outcome classify_outcome(const JobRun& run, bool mediated,
                               Party faultyParty) {
    const bool executed = run.rpAction->executed;
    if (!mediated)
        return executed
                   ? (run.jcReaction->verified ? game::Outcome::O5
                                               : game::Outcome::O4)
                   : game::Outcome::O3;
    if (faultyParty == Party::JobCreator)
        return executed ? game::Outcome::O6 : game::Outcome::O1;
    return executed ? game::Outcome::O7 : game::Outcome::O2;
}

std::uint64_t parse_grid_uint(const std::string& field, const std::string& text) {
    errno = 0;
    char* end = nullptr;
    unsigned long long v = std::strtoull(text.c_str(), &end, 10);
    if (errno == ERANGE || end == text.c_str() || *end != '\0' ||
        (!text.empty() && text.front() == '-'))
        throw Error("ConfigError",
                    "grid value '" + text + "' for '" + field +
                        "' is not an unsigned integer");
    return v;
}

double parse_grid_double(const std::string& field, const std::string& text) {
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw Error("ConfigError",
                    "grid value '" + text + "' for '" + field +
                        "' is not a number");
    return v;
}

void apply_grid_override(ScenarioConfig& cfg, const std::string& field,
                         const std::string& value) {
    if (field == "platform.n") {
        cfg.platform.n = static_cast<std::uint32_t>(parse_grid_uint(field, value));
        return;
    }
    if (field == "platform.theta") {
        cfg.platform.theta =
            static_cast<std::uint32_t>(parse_grid_uint(field, value));
        return;
    }
    if (field == "jobCount") {
        cfg.jobCount = parse_grid_uint(field, value);
        return;
    }
    if (field == "seed") {
        cfg.seed = parse_grid_uint(field, value);
        return;
    }
    auto split = [](const std::string& s) {
        std::vector<std::string> parts;
        std::size_t start = 0;
        while (true) {
            auto dot = s.find('.', start);
            if (dot == std::string::npos) {
                parts.push_back(s.substr(start));
                break;
            }
            parts.push_back(s.substr(start, dot - start));
            start = dot + 1;
        }
        return parts;
    };
    const std::vector<std::string> parts = split(field);
    if (parts.size() == 3 && parts[0] == "jc") {
        for (JcAgentConfig& jc : cfg.jcs) {
            if (jc.id != parts[1]) continue;
            if (parts[2] == "p_a") {
                jc.p_a = parse_grid_double(field, value);
                return;
            }
            if (parts[2] == "p_v") {
                jc.p_v = parse_grid_double(field, value);
                return;
            }
        }
    }
    if (parts.size() == 3 && parts[0] == "rp") {
        for (RpAgentConfig& rp : cfg.rps) {
            if (rp.id != parts[1]) continue;
            if (parts[2] == "p_e") {
                rp.p_e = parse_grid_double(field, value);
                return;
            }
        }
    }
    throw Error("UnknownGridField", "unsupported grid field '" + field + "'");
}

} // namespace

SimResult run_scenario(const ScenarioConfig& config) {
    // Genesis: every configured agent plus the solver account.
    std::vector<std::pair<AccountId, Money>> genesis;
    std::map<AccountId, Money> genesisByAccount;
    auto add_genesis = [&](const AccountId& id, Money balance) {
        genesis.emplace_back(id, balance);
        genesisByAccount.emplace(id, balance);
    };
    for (const auto& jc : config.jcs) add_genesis(jc.id, jc.balance);
    for (const auto& rp : config.rps) add_genesis(rp.id, rp.balance);
    for (const auto& med : config.mediators) add_genesis(med.id, med.balance);
    add_genesis(config.solverAccount, 0);

    Ledger ledger(config.platform, genesis);
    for (const auto& jc : config.jcs) {
        JcRegistration reg;
        reg.trustedMediators.insert(jc.trustedMediators.begin(),
                                    jc.trustedMediators.end());
        ledger.register_job_creator(jc.id, std::move(reg));
    }
    for (const auto& rp : config.rps) {
        RpRegistration reg;
        reg.arch = rp.arch;
        reg.timePerInstructionUs = rp.timePerInstructionUs;
        reg.trustedMediators.insert(rp.trustedMediators.begin(),
                                    rp.trustedMediators.end());
        reg.trustedDirectories.insert(rp.trustedDirectories.begin(),
                                      rp.trustedDirectories.end());
        ledger.register_resource_provider(rp.id, std::move(reg));
    }
    for (const auto& med : config.mediators) {
        MediatorRegistration reg;
        reg.arch = med.arch;
        reg.trustedDirectories.insert(med.trustedDirectories.begin(),
                                      med.trustedDirectories.end());
        ledger.register_mediator(med.id, std::move(reg));
    }

    // The feasibility context per resource provider is immutable; build once.
    std::vector<matching::FeasibilityContext> rpContexts(config.rps.size());
    {
        std::map<std::string, matching::MediatorView> mediatorViews;
        for (const auto& med : config.mediators) {
            matching::MediatorView v;
            v.arch = med.arch;
            v.trustedDirectories = med.trustedDirectories;
            mediatorViews.emplace(med.id, std::move(v));
        }
        for (std::size_t i = 0; i < config.rps.size(); ++i) {
            matching::FeasibilityContext& ctx = rpContexts[i];
            const RpAgentConfig& rp = config.rps[i];
            ctx.rpArch = rp.arch;
            ctx.rpTimePerInstructionUs = rp.timePerInstructionUs;
            ctx.rpTrustedMediators = rp.trustedMediators;
            ctx.rpTrustedDirectories = rp.trustedDirectories;
            ctx.mediators = mediatorViews;
        }
    }

    Metrics metrics;
    std::vector<JobRun> runs;
    std::vector<JcRuntime> jcState(config.jcs.size());
    std::vector<RpRuntime> rpState(config.rps.size());
    std::map<AccountId, std::uint64_t> mediatorJobs;
    for (std::size_t i = 0; i < config.jcs.size(); ++i)
        jcState[i].remaining = config.jobCount;

    Id nextId = 1;
    std::vector<Id> openJoIds; // posting order; mirrors the ledger's open set
    std::vector<Id> openRoIds;
    std::map<Id, std::size_t> joToRun;
    std::map<Id, std::size_t> roToRp;

    std::ostringstream trace;
    trace << "job,jc,rp,mediator,closedBlock,executed,verified,reaction,"
             "mediated,outcome,priceMicro,verdict\n";

    auto close_run = [&](JobRun& run, bool mediated, Party faultyParty,
                         const char* verdict) {
        const game::Outcome outcome = classify_outcome(run, mediated, faultyParty);
        metrics.outcomeCounts[static_cast<std::size_t>(outcome)]++;
        metrics.jobsClosed++;
        if (mediated) metrics.mediations++;
        const JcAgentConfig& jc = config.jcs[run.jcIndex];
        const RpAgentConfig& rp = config.rps[run.rpIndex];
        const Money price = Ledger::compute_job_price(
            run.spec.usage, ledger.resource_offer(
                                ledger.match(run.matchId).resourceOfferId));
        trace << run.joId << ',' << jc.id << ',' << rp.id << ','
              << ledger.match(run.matchId).mediatorId << ','
              << ledger.current_block() << ','
              << (run.rpAction->executed ? 1 : 0) << ','
              << (run.jcReaction->verified ? 1 : 0) << ','
              << to_string(run.jcReaction->reaction) << ','
              << (mediated ? 1 : 0) << ',' << game::to_string(outcome) << ','
              << price << ',' << verdict << '\n';
        run.closed = true;
        JcRuntime& jcs = jcState[run.jcIndex];
        RpRuntime& rps = rpState[run.rpIndex];
        jcs.activeRun.reset();
        jcs.readyBlock = ledger.current_block();
        rps.activeRun.reset();
        rps.readyBlock = ledger.current_block();
    };

    while (true) {
        const std::int64_t block = ledger.current_block();
        std::uint64_t actions = 0;

        // Phase 1: idle job creators post the round's job offer.
        for (std::size_t i = 0; i < config.jcs.size(); ++i) {
            JcRuntime& st = jcState[i];
            const JcAgentConfig& cfg = config.jcs[i];
            if (st.retired || st.activeRun || st.remaining == 0 ||
                st.readyBlock >= block)
                continue;
            JobOffer jo;
            jo.jcId = cfg.id;
            jo.offerId = nextId++;
            jo.instructionLimit = cfg.instructionLimit;
            jo.bandwidthLimit = cfg.bandwidthLimit;
            jo.ramLimit = cfg.ramLimit;
            jo.localStorageLimit = cfg.localStorageLimit;
            jo.instructionMaxPrice = cfg.instructionMaxPrice;
            jo.bandwidthMaxPrice = cfg.bandwidthMaxPrice;
            jo.completionDeadline = ledger.effect_time() + cfg.deadlineMarginMs;
            jo.directory = cfg.directory;
            jo.arch = cfg.arch;
            jo.matchIncentive = cfg.matchIncentive;
            jo.depositValue =
                cfg.deposit > 0
                    ? cfg.deposit
                    : money_add(ledger.compute_min_deposit(jo), cfg.matchIncentive);
            try {
                ledger.post_job_offer(jo);
            } catch (const Error& e) {
                if (e.code() == "InsufficientBalance") {
                    st.retired = true;
                    continue;
                }
                throw;
            }
            JobRun run;
            run.joId = jo.offerId;
            run.jcIndex = i;
            run.spec.jobId = jo.offerId;
            run.spec.p_a = cfg.p_a;
            run.spec.trueResultHash =
                make_result_hash(HashSpace::True, jo.offerId);
            run.spec.usage.instructionCount = cfg.instructionsUsed;
            run.spec.usage.bandwidth = cfg.bandwidthUsed;
            run.stepBlock = block;
            st.activeRun = runs.size();
            st.remaining--;
            st.jobs++;
            joToRun.emplace(jo.offerId, runs.size());
            runs.push_back(std::move(run));
            openJoIds.push_back(jo.offerId);
            metrics.jobsStarted++;
            actions++;
        }

        // Phase 2: idle resource providers post a resource offer.
        for (std::size_t i = 0; i < config.rps.size(); ++i) {
            RpRuntime& st = rpState[i];
            const RpAgentConfig& cfg = config.rps[i];
            if (st.retired || st.openRo || st.activeRun || st.readyBlock >= block)
                continue;
            ResourceOffer ro;
            ro.rpId = cfg.id;
            ro.offerId = nextId++;
            ro.instructionCapacity = cfg.instructionCapacity;
            ro.bandwidthCapacity = cfg.bandwidthCapacity;
            ro.ramCapacity = cfg.ramCapacity;
            ro.localStorageCapacity = cfg.localStorageCapacity;
            ro.instructionPrice = cfg.instructionPrice;
            ro.bandwidthPrice = cfg.bandwidthPrice;
            ro.matchIncentive = cfg.matchIncentive;
            ro.depositValue =
                cfg.deposit > 0
                    ? cfg.deposit
                    : money_add(ledger.compute_min_deposit(ro), cfg.matchIncentive);
            try {
                ledger.post_resource_offer(ro);
            } catch (const Error& e) {
                if (e.code() == "InsufficientBalance") {
                    st.retired = true;
                    continue;
                }
                throw;
            }
            st.openRo = ro.offerId;
            st.roBlock = block;
            roToRp.emplace(ro.offerId, i);
            openRoIds.push_back(ro.offerId);
            actions++;
        }

        // Phase 3: the solver matches offers posted in earlier blocks.
        {
            std::vector<Id> jos, ros;
            for (Id id : openJoIds)
                if (runs[joToRun.at(id)].stepBlock < block) jos.push_back(id);
            for (Id id : openRoIds)
                if (rpState[roToRp.at(id)].roBlock < block) ros.push_back(id);
            if (!jos.empty() && !ros.empty()) {
                matching::FeasibilityFn feasible =
                    [&](std::size_t jobIndex, std::size_t resourceIndex) {
                        const JobOffer& jo = ledger.job_offer(jos[jobIndex]);
                        const ResourceOffer& ro =
                            ledger.resource_offer(ros[resourceIndex]);
                        const std::size_t rpIndex = roToRp.at(ros[resourceIndex]);
                        const std::size_t jcIndex =
                            runs[joToRun.at(jos[jobIndex])].jcIndex;
                        matching::FeasibilityContext& ctx = rpContexts[rpIndex];
                        ctx.jcTrustedMediators =
                            config.jcs[jcIndex].trustedMediators;
                        return matching::check_feasible(jo, ro, ctx,
                                                        ledger.effect_time());
                    };
                std::vector<matching::MatchProposal> proposals =
                    matching::match_offers(jos.size(), ros.size(), feasible,
                                           config.solverMode);
                for (const matching::MatchProposal& prop : proposals) {
                    Match m;
                    m.matchId = nextId++;
                    m.jobOfferId = jos[prop.jobIndex];
                    m.resourceOfferId = ros[prop.resourceIndex];
                    m.mediatorId = prop.mediatorId;
                    ledger.post_match(config.solverAccount, m);
                    const std::size_t runIndex = joToRun.at(m.jobOfferId);
                    const std::size_t rpIndex = roToRp.at(m.resourceOfferId);
                    JobRun& run = runs[runIndex];
                    run.matched = true;
                    run.matchId = m.matchId;
                    run.rpIndex = rpIndex;
                    run.stepBlock = block;
                    rpState[rpIndex].openRo.reset();
                    rpState[rpIndex].activeRun = runIndex;
                    rpState[rpIndex].jobs++;
                    mediatorJobs[m.mediatorId]++;
                    metrics.matches++;
                    openJoIds.erase(std::find(openJoIds.begin(), openJoIds.end(),
                                              m.jobOfferId));
                    openRoIds.erase(std::find(openRoIds.begin(), openRoIds.end(),
                                              m.resourceOfferId));
                    actions++;
                }
            }
        }

        // Phase 4: matched providers run (or fabricate) and post the result.
        for (std::size_t i = 0; i < config.rps.size(); ++i) {
            RpRuntime& st = rpState[i];
            if (!st.activeRun) continue;
            JobRun& run = runs[*st.activeRun];
            if (run.rpAction || run.stepBlock >= block) continue;
            const RpAgentConfig& cfg = config.rps[i];
            RngStream rng = make_stream(config.seed, cfg.id, run.joId, "rp");
            RpStrategy strategy{cfg.p_e, cfg.c_e, cfg.c_d};
            RpAction action = rp_act(strategy, run.spec, rng);
            JobResult result;
            result.matchId = run.matchId;
            result.status = ResultStatus::Completed;
            result.resultHash = action.sample.resultHash;
            result.usage = run.spec.usage;
            ledger.post_result(cfg.id, result);
            st.privateCost += action.privateCost;
            run.rpAction = action;
            run.stepBlock = block;
            actions++;
        }

        // Phase 5: job creators react to posted results.
        for (std::size_t i = 0; i < config.jcs.size(); ++i) {
            JcRuntime& st = jcState[i];
            if (!st.activeRun) continue;
            JobRun& run = runs[*st.activeRun];
            if (!run.rpAction || run.jcReaction || run.stepBlock >= block)
                continue;
            const JcAgentConfig& cfg = config.jcs[i];
            RngStream rng = make_stream(config.seed, cfg.id, run.joId, "jc");
            JcStrategy strategy{cfg.p_a, cfg.p_v, cfg.rejectOnAnomaly, cfg.c_v,
                                cfg.b};
            JcReaction reaction =
                jc_react(strategy, run.spec, run.rpAction->sample.resultHash, rng);
            run.jcReaction = reaction;
            run.stepBlock = block;
            st.privateCost += reaction.privateCost;
            if (reaction.verified) metrics.verifications++;
            if (run.rpAction->executed) st.benefit += cfg.b;
            if (reaction.reaction == Reaction::Accept) {
                ledger.accept_result(cfg.id, run.matchId);
                close_run(run, false, Party::JobCreator, "-");
            } else {
                ledger.reject_result(cfg.id, run.matchId);
                run.mediationRequested = true;
            }
            actions++;
        }

        // Phase 6: assigned mediators replicate and rule. Runs awaiting
        // mediation keep their provider busy, so scanning the providers'
        // active runs finds them all without walking the full history.
        for (std::size_t i = 0; i < config.rps.size(); ++i) {
            RpRuntime& st = rpState[i];
            if (!st.activeRun) continue;
            JobRun& run = runs[*st.activeRun];
            if (!run.mediationRequested || run.closed || run.stepBlock >= block)
                continue;
            const AccountId mediatorId = ledger.match(run.matchId).mediatorId;
            RngStream rng = make_stream(config.seed, mediatorId, run.joId, "mediate");
            MediationOutcome mo =
                mediate(run.spec, run.rpAction->sample.resultHash,
                        static_cast<int>(config.platform.n), rng);
            MediationResult mr;
            mr.matchId = run.matchId;
            mr.verdict = mo.verdict;
            mr.faultyParty = mo.faultyParty;
            mr.mediatorResultHash = mo.replicatedHash;
            ledger.post_mediation_result(mediatorId, mr);
            close_run(run, true, mo.faultyParty, to_string(mo.verdict));
            actions++;
        }

        if (actions == 0) {
            // Nothing can move: clear any open offers and retire their
            // owners so the market drains.
            bool canceled = false;
            for (Id id : openJoIds) {
                const std::size_t runIndex = joToRun.at(id);
                JobRun& run = runs[runIndex];
                ledger.cancel_offer(config.jcs[run.jcIndex].id, id);
                metrics.offersCanceled++;
                JcRuntime& st = jcState[run.jcIndex];
                st.activeRun.reset();
                st.retired = true;
                run.closed = true;
                canceled = true;
            }
            openJoIds.clear();
            for (Id id : openRoIds) {
                const std::size_t rpIndex = roToRp.at(id);
                ledger.cancel_offer(config.rps[rpIndex].id, id);
                metrics.offersCanceled++;
                RpRuntime& st = rpState[rpIndex];
                st.openRo.reset();
                st.retired = true;
                canceled = true;
            }
            openRoIds.clear();
            if (!canceled) break;
        }
        ledger.advance_block();
    }

    metrics.mediationRate = metrics.jobsClosed
                                ? static_cast<double>(metrics.mediations) /
                                      static_cast<double>(metrics.jobsClosed)
                                : 0.0;
    metrics.verificationRate = metrics.jobsClosed
                                   ? static_cast<double>(metrics.verifications) /
                                         static_cast<double>(metrics.jobsClosed)
                                   : 0.0;
    metrics.sinkBalance = ledger.sink_balance();
    metrics.conservationResidual = ledger.conservation_residual();

    for (std::size_t i = 0; i < config.jcs.size(); ++i) {
        AgentMetrics am;
        am.ledgerDelta = money_sub(ledger.balance(config.jcs[i].id),
                                   genesisByAccount.at(config.jcs[i].id));
        am.privateCost = jcState[i].privateCost;
        am.benefit = jcState[i].benefit;
        am.realizedUtility =
            static_cast<double>(am.ledgerDelta) + am.benefit - am.privateCost;
        am.jobs = jcState[i].jobs;
        metrics.agents.emplace(config.jcs[i].id, am);
    }
    for (std::size_t i = 0; i < config.rps.size(); ++i) {
        AgentMetrics am;
        am.ledgerDelta = money_sub(ledger.balance(config.rps[i].id),
                                   genesisByAccount.at(config.rps[i].id));
        am.privateCost = rpState[i].privateCost;
        am.realizedUtility =
            static_cast<double>(am.ledgerDelta) + am.benefit - am.privateCost;
        am.jobs = rpState[i].jobs;
        metrics.agents.emplace(config.rps[i].id, am);
    }
    for (const auto& med : config.mediators) {
        AgentMetrics am;
        am.ledgerDelta =
            money_sub(ledger.balance(med.id), genesisByAccount.at(med.id));
        am.realizedUtility = static_cast<double>(am.ledgerDelta);
        auto it = mediatorJobs.find(med.id);
        am.jobs = it == mediatorJobs.end() ? 0 : it->second;
        metrics.agents.emplace(med.id, am);
    }
    {
        AgentMetrics am;
        am.ledgerDelta = money_sub(ledger.balance(config.solverAccount),
                                   genesisByAccount.at(config.solverAccount));
        am.realizedUtility = static_cast<double>(am.ledgerDelta);
        am.jobs = metrics.matches;
        metrics.agents.emplace(config.solverAccount, am);
    }

    SimResult result;
    result.metrics = std::move(metrics);
    result.traceCsv = trace.str();
    return result;
}

std::string Metrics::to_text() const {
    std::vector<std::pair<std::string, std::string>> lines;
    auto put_u = [&](const std::string& k, std::uint64_t v) {
        lines.emplace_back(k, std::to_string(v));
    };
    auto put_m = [&](const std::string& k, Money v) {
        lines.emplace_back(k, std::to_string(v));
    };
    auto put_d = [&](const std::string& k, double v) {
        lines.emplace_back(k, format_full(v));
    };
    put_u("jobsStarted", jobsStarted);
    put_u("jobsClosed", jobsClosed);
    put_u("jobsTimedOut", jobsTimedOut);
    put_u("offersCanceled", offersCanceled);
    put_u("matches", matches);
    put_u("verifications", verifications);
    put_u("mediations", mediations);
    for (std::size_t i = 0; i < outcomeCounts.size(); ++i)
        put_u("outcome.O" + std::to_string(i + 1), outcomeCounts[i]);
    put_d("mediationRate", mediationRate);
    put_d("verificationRate", verificationRate);
    put_m("sinkBalance", sinkBalance);
    put_m("conservationResidual", conservationResidual);
    for (const auto& [id, am] : agents) {
        put_m("agents." + id + ".ledgerDelta", am.ledgerDelta);
        put_d("agents." + id + ".privateCost", am.privateCost);
        put_d("agents." + id + ".benefit", am.benefit);
        put_d("agents." + id + ".realizedUtility", am.realizedUtility);
        put_u("agents." + id + ".jobs", am.jobs);
    }
    std::sort(lines.begin(), lines.end());
    std::ostringstream os;
    for (const auto& [k, v] : lines) os << k << '=' << v << '\n';
    return os.str();
}

ScenarioGameView scenario_game_view(const ScenarioConfig& config) {
    if (config.jcs.size() != 1 || config.rps.size() != 1)
        throw Error("InvalidParams",
                    "the analysis view needs exactly one job creator and one "
                    "resource provider");
    const JcAgentConfig& jc = config.jcs.front();
    const RpAgentConfig& rp = config.rps.front();
    const PlatformParams& pf = config.platform;

    ScenarioGameView view;
    game::GameParams& p = view.params;
    const double pi_c =
        static_cast<double>(jc.instructionsUsed) *
            static_cast<double>(rp.instructionPrice) +
        static_cast<double>(jc.bandwidthUsed) *
            static_cast<double>(rp.bandwidthPrice);
    const double pi_c_hat =
        static_cast<double>(jc.instructionLimit) *
            static_cast<double>(jc.instructionMaxPrice) +
        static_cast<double>(jc.bandwidthLimit) *
            static_cast<double>(jc.bandwidthMaxPrice);
    p.pi_c = pi_c;
    p.pi_c_hat = pi_c_hat;
    p.pi_r = pi_c;
    p.pi_d = pf.piDConvention == PiDConvention::ActualPrice ? pi_c : pi_c_hat;
    p.n = static_cast<int>(pf.n);
    p.theta = static_cast<double>(pf.theta);
    p.pi_m = pi_c_hat * p.n;
    p.pi_a = static_cast<double>(pf.pi_a);
    const double jcDeposit =
        jc.deposit > 0
            ? static_cast<double>(jc.deposit)
            : pi_c_hat * (p.theta + p.n) + static_cast<double>(pf.pi_a) +
                  static_cast<double>(jc.matchIncentive);
    p.d = jcDeposit - static_cast<double>(pf.pi_a) -
          static_cast<double>(jc.matchIncentive);
    p.g_j = static_cast<double>(pf.g_j);
    p.g_r = static_cast<double>(pf.g_r);
    p.g_m = static_cast<double>(pf.g_m);
    p.c_e = rp.c_e;
    p.c_d = rp.c_d;
    p.c_v = jc.c_v;
    p.b = jc.b;
    view.p_a = jc.p_a;
    view.p_e = rp.p_e;
    view.p_v = jc.p_v;
    return view;
}

std::string sweep(const ScenarioConfig& base, const std::vector<GridAxis>& grid) {
    for (const GridAxis& axis : grid) {
        if (axis.values.empty())
            throw Error("ConfigError",
                        "grid axis '" + axis.field + "' has no values");
        // Validate the field name up front on a scratch copy.
        ScenarioConfig scratch = base;
        apply_grid_override(scratch, axis.field, axis.values.front());
    }
    const bool predict = base.jcs.size() == 1 && base.rps.size() == 1;

    std::ostringstream os;
    for (const GridAxis& axis : grid) os << axis.field << ',';
    os << "jobsStarted,jobsClosed,matches,verifications,mediations,"
          "verificationRate,mediationRate,sinkBalance,conservationResidual,"
          "predictedVerificationRate,predictedMediationRate,"
          "predictedJcUtility,predictedRpUtility\n";

    std::vector<std::size_t> cursor(grid.size(), 0);
    while (true) {
        ScenarioConfig cfg = base;
        for (std::size_t i = 0; i < grid.size(); ++i)
            apply_grid_override(cfg, grid[i].field, grid[i].values[cursor[i]]);
        SimResult run = run_scenario(cfg);
        const Metrics& m = run.metrics;
        for (std::size_t i = 0; i < grid.size(); ++i)
            os << grid[i].values[cursor[i]] << ',';
        os << m.jobsStarted << ',' << m.jobsClosed << ',' << m.matches << ','
           << m.verifications << ',' << m.mediations << ','
           << format_full(m.verificationRate) << ','
           << format_full(m.mediationRate) << ',' << m.sinkBalance << ','
           << m.conservationResidual;
        if (predict) {
            const ScenarioGameView view = scenario_game_view(cfg);
            const bool rejectAnomalous = cfg.jcs.front().rejectOnAnomaly;
            const double predVer = view.p_v;
            const double predMed =
                view.p_v * (view.p_e * (1.0 - view.p_a) *
                                (rejectAnomalous ? 1.0 : 0.0) +
                            (1.0 - view.p_e));
            os << ',' << format_full(predVer) << ',' << format_full(predMed)
               << ','
               << format_full(game::jc_total_utility(view.params, view.p_a,
                                                     view.p_e, view.p_v))
               << ','
               << format_full(game::rp_total_utility(view.params, view.p_a,
                                                     view.p_e, view.p_v));
        } else {
            os << ",,,,";
        }
        os << '\n';

        std::size_t axis = grid.size();
        while (axis > 0) {
            --axis;
            if (++cursor[axis] < grid[axis].values.size()) break;
            cursor[axis] = 0;
            if (axis == 0) return os.str();
        }
        if (grid.empty()) break;
    }
    return os.str();
}

} // namespace ocm
