#include "ocm/ledger.hpp"

#include <algorithm>

#include "ocm/error.hpp"
#include "ocm/matching.hpp"

namespace ocm {

namespace {

std::string money_str(Money m) { return std::to_string(m); }

Money mul_count(Money price, std::uint64_t count) {
    if (count > static_cast<std::uint64_t>(INT64_MAX))
        throw Error("OverflowError", "unit count exceeds int64");
    return money_mul(price, static_cast<std::int64_t>(count));
}

} // namespace

Ledger::Ledger(PlatformParams params,
               std::vector<std::pair<AccountId, Money>> genesisBalances)
    : params_(std::move(params)) {
    if (params_.n < 1)
        throw Error("InvalidParams", "replication count n must be >= 1");
    if (params_.blockIntervalMs <= 0)
        throw Error("InvalidParams", "block interval must be positive");
    if (params_.g_j < 0 || params_.g_r < 0 || params_.g_m < 0 || params_.pi_a < 0)
        throw Error("InvalidParams", "fees must be non-negative");
    for (auto& [id, amount] : genesisBalances) {
        if (amount < 0)
            throw Error("InvalidParams", "genesis balance must be non-negative");
        if (!balances_.emplace(id, amount).second)
            throw Error("DuplicateId", "duplicate genesis account '" + id + "'");
        genesisTotal_ = money_add(genesisTotal_, amount);
    }
    balances_.emplace(kSinkAccount, 0);
}

void Ledger::advance_block(std::int64_t blocks) {
    if (blocks < 0) throw Error("InvalidParams", "cannot advance backwards");
    currentBlock_ += blocks;
}

void Ledger::emit(EventKind kind, Id jobId,
                  std::vector<std::pair<std::string, std::string>> fields) {
    LedgerEvent e;
    e.block = effect_block();
    if (e.block != lastEventBlock_) {
        lastEventBlock_ = e.block;
        nextEventIndex_ = 0;
    }
    e.index = nextEventIndex_++;
    e.kind = kind;
    e.jobId = jobId;
    e.fields = std::move(fields);
    events_.push_back(std::move(e));
}

void Ledger::credit(const AccountId& id, Money amount) {
    balances_.at(id) = money_add(balances_.at(id), amount);
}

void Ledger::debit(const AccountId& id, Money amount) {
    Money& b = balances_.at(id);
    if (b < amount)
        throw Error("InsufficientBalance",
                    "account '" + id + "' holds " + money_str(b) +
                        ", needs " + money_str(amount));
    b -= amount;
}

void Ledger::require_account(const AccountId& id) const {
    if (!balances_.count(id))
        throw Error("UnknownId", "no account '" + id + "'");
}

void Ledger::set_job_state(JobRecord& job, JobState to) {
    if (!is_legal_transition(job.state, to))
        throw Error("WrongState", std::string("illegal transition ") +
                                      to_string(job.state) + " -> " + to_string(to));
    job.state = to;
}

Money Ledger::compute_job_price(const UsageReport& usage, const ResourceOffer& ro) {
    return money_add(mul_count(ro.instructionPrice, usage.instructionCount),
                     mul_count(ro.bandwidthPrice, usage.bandwidth));
}

Money Ledger::job_estimate(const JobOffer& jo) const {
    return money_add(mul_count(jo.instructionMaxPrice, jo.instructionLimit),
                     mul_count(jo.bandwidthMaxPrice, jo.bandwidthLimit));
}

Money Ledger::compute_min_deposit(const JobOffer& jo) const {
    const Money estimate = job_estimate(jo);
    return money_add(
        money_mul(estimate, static_cast<std::int64_t>(params_.theta) + params_.n),
        params_.pi_a);
}

Money Ledger::compute_min_deposit(const ResourceOffer& ro) const {
    const Money estimate =
        money_add(mul_count(ro.instructionPrice, ro.instructionCapacity),
                  mul_count(ro.bandwidthPrice, ro.bandwidthCapacity));
    return money_add(
        money_mul(estimate, static_cast<std::int64_t>(params_.theta) + params_.n),
        params_.pi_a);
}

void Ledger::register_job_creator(const AccountId& id, JcRegistration reg) {
    require_account(id);
    if (jcs_.count(id))
        throw Error("DuplicateId", "job creator '" + id + "' already registered");
    jcs_.emplace(id, std::move(reg));
    emit(EventKind::JobCreatorRegistered, 0, {{"account", id}});
}

void Ledger::register_resource_provider(const AccountId& id, RpRegistration reg) {
    require_account(id);
    if (rps_.count(id))
        throw Error("DuplicateId",
                    "resource provider '" + id + "' already registered");
    rps_.emplace(id, std::move(reg));
    emit(EventKind::ResourceProviderRegistered, 0, {{"account", id}});
}

void Ledger::register_mediator(const AccountId& id, MediatorRegistration reg) {
    require_account(id);
    if (mediators_.count(id))
        throw Error("DuplicateId", "mediator '" + id + "' already registered");
    mediators_.emplace(id, std::move(reg));
    emit(EventKind::MediatorRegistered, 0, {{"account", id}});
}

const JcRegistration& Ledger::job_creator(const AccountId& id) const {
    auto it = jcs_.find(id);
    if (it == jcs_.end())
        throw Error("UnregisteredActor", "no job creator '" + id + "'");
    return it->second;
}

const RpRegistration& Ledger::resource_provider(const AccountId& id) const {
    auto it = rps_.find(id);
    if (it == rps_.end())
        throw Error("UnregisteredActor", "no resource provider '" + id + "'");
    return it->second;
}

const MediatorRegistration& Ledger::mediator(const AccountId& id) const {
    auto it = mediators_.find(id);
    if (it == mediators_.end())
        throw Error("UnregisteredActor", "no mediator '" + id + "'");
    return it->second;
}

void Ledger::post_job_offer(const JobOffer& offer) {
    if (!jcs_.count(offer.jcId))
        throw Error("UnregisteredActor",
                    "'" + offer.jcId + "' is not a registered job creator");
    if (jobs_.count(offer.offerId) || resources_.count(offer.offerId))
        throw Error("DuplicateId",
                    "offer id " + std::to_string(offer.offerId) + " already used");
    if (offer.matchIncentive < 0)
        throw Error("InvalidParams", "match incentive must be non-negative");
    const Money minDeposit =
        money_add(compute_min_deposit(offer), offer.matchIncentive);
    if (offer.depositValue < minDeposit)
        throw Error("InsufficientDeposit",
                    "deposit " + money_str(offer.depositValue) +
                        " below minimum " + money_str(minDeposit));
    const Money needed = money_add(offer.depositValue, params_.g_j);
    if (balance(offer.jcId) < needed)
        throw Error("InsufficientBalance",
                    "posting needs " + money_str(needed));

    debit(offer.jcId, needed);
    credit(kSinkAccount, params_.g_j);
    JobRecord rec;
    rec.offer = offer;
    rec.state = JobState::OfferPosted;
    rec.escrow = offer.depositValue;
    rec.arrival = nextArrival_++;
    jobs_.emplace(offer.offerId, std::move(rec));
    emit(EventKind::JobOfferPosted, offer.offerId,
         {{"owner", offer.jcId},
          {"deposit", money_str(offer.depositValue)},
          {"fee", money_str(params_.g_j)}});
}

void Ledger::post_resource_offer(const ResourceOffer& offer) {
    if (!rps_.count(offer.rpId))
        throw Error("UnregisteredActor",
                    "'" + offer.rpId + "' is not a registered resource provider");
    if (jobs_.count(offer.offerId) || resources_.count(offer.offerId))
        throw Error("DuplicateId",
                    "offer id " + std::to_string(offer.offerId) + " already used");
    if (offer.matchIncentive < 0)
        throw Error("InvalidParams", "match incentive must be non-negative");
    const Money minDeposit =
        money_add(compute_min_deposit(offer), offer.matchIncentive);
    if (offer.depositValue < minDeposit)
        throw Error("InsufficientDeposit",
                    "deposit " + money_str(offer.depositValue) +
                        " below minimum " + money_str(minDeposit));
    const Money needed = money_add(offer.depositValue, params_.g_r);
    if (balance(offer.rpId) < needed)
        throw Error("InsufficientBalance",
                    "posting needs " + money_str(needed));

    debit(offer.rpId, needed);
    credit(kSinkAccount, params_.g_r);
    ResourceRecord rec;
    rec.offer = offer;
    rec.state = JobState::OfferPosted;
    rec.escrow = offer.depositValue;
    rec.arrival = nextArrival_++;
    resources_.emplace(offer.offerId, std::move(rec));
    emit(EventKind::ResourceOfferPosted, offer.offerId,
         {{"owner", offer.rpId},
          {"deposit", money_str(offer.depositValue)},
          {"fee", money_str(params_.g_r)}});
}

void Ledger::cancel_offer(const AccountId& caller, Id offerId) {
    if (auto it = jobs_.find(offerId); it != jobs_.end()) {
        JobRecord& job = it->second;
        if (caller != job.offer.jcId)
            throw Error("NotOwner", "only the offer owner may cancel");
        if (job.state == JobState::Canceled)
            throw Error("WrongState", "offer already canceled");
        if (job.state != JobState::OfferPosted)
            throw Error("AlreadyMatched", "offer has been matched");
        const Money refund = job.escrow;
        job.escrow = 0;
        credit(caller, refund);
        set_job_state(job, JobState::Canceled);
        emit(EventKind::JobOfferCanceled, offerId,
             {{"owner", caller}, {"refund", money_str(refund)}});
        return;
    }
    if (auto it = resources_.find(offerId); it != resources_.end()) {
        ResourceRecord& res = it->second;
        if (caller != res.offer.rpId)
            throw Error("NotOwner", "only the offer owner may cancel");
        if (res.state == JobState::Canceled)
            throw Error("WrongState", "offer already canceled");
        if (res.state != JobState::OfferPosted)
            throw Error("AlreadyMatched", "offer has been matched");
        const Money refund = res.escrow;
        res.escrow = 0;
        credit(caller, refund);
        res.state = JobState::Canceled;
        emit(EventKind::ResourceOfferCanceled, offerId,
             {{"owner", caller}, {"refund", money_str(refund)}});
        return;
    }
    throw Error("UnknownId", "no offer " + std::to_string(offerId));
}

void Ledger::post_match(const AccountId& solverId, const Match& match) {
    require_account(solverId);
    if (matches_.count(match.matchId))
        throw Error("DuplicateId",
                    "match id " + std::to_string(match.matchId) + " already used");
    auto jit = jobs_.find(match.jobOfferId);
    if (jit == jobs_.end())
        throw Error("UnknownId", "no job offer " + std::to_string(match.jobOfferId));
    auto rit = resources_.find(match.resourceOfferId);
    if (rit == resources_.end())
        throw Error("UnknownId",
                    "no resource offer " + std::to_string(match.resourceOfferId));
    JobRecord& job = jit->second;
    ResourceRecord& res = rit->second;
    if (job.state != JobState::OfferPosted)
        throw Error("StaleOffer", "job offer is not open");
    if (res.state != JobState::OfferPosted)
        throw Error("StaleOffer", "resource offer is not open");

    const matching::FeasibilityContext ctx = [&] {
        matching::FeasibilityContext c;
        const RpRegistration& rp = resource_provider(res.offer.rpId);
        const JcRegistration& jc = job_creator(job.offer.jcId);
        c.rpArch = rp.arch;
        c.rpTimePerInstructionUs = rp.timePerInstructionUs;
        c.rpTrustedMediators.assign(rp.trustedMediators.begin(),
                                    rp.trustedMediators.end());
        c.rpTrustedDirectories.assign(rp.trustedDirectories.begin(),
                                      rp.trustedDirectories.end());
        c.jcTrustedMediators.assign(jc.trustedMediators.begin(),
                                    jc.trustedMediators.end());
        for (const auto& [id, med] : mediators_) {
            matching::MediatorView v;
            v.arch = med.arch;
            v.trustedDirectories.assign(med.trustedDirectories.begin(),
                                        med.trustedDirectories.end());
            c.mediators.emplace(id, std::move(v));
        }
        return c;
    }();
    matching::FeasibilityReport report =
        matching::check_feasible(job.offer, res.offer, ctx, effect_time());
    // The proposed mediator must itself qualify; it need not be the
    // report's (lexicographically smallest) choice.
    const bool mediatorOk = [&] {
        auto mit = ctx.mediators.find(match.mediatorId);
        if (mit == ctx.mediators.end()) return false;
        const auto& jcSet = job_creator(job.offer.jcId).trustedMediators;
        const auto& rpSet = resource_provider(res.offer.rpId).trustedMediators;
        if (!jcSet.count(match.mediatorId) || !rpSet.count(match.mediatorId))
            return false;
        if (mit->second.arch != job.offer.arch) return false;
        return std::find(mit->second.trustedDirectories.begin(),
                         mit->second.trustedDirectories.end(),
                         job.offer.directory) != mit->second.trustedDirectories.end();
    }();
    if (!mediatorOk) {
        if (std::find(report.violations.begin(), report.violations.end(),
                      "mediator") == report.violations.end())
            report.violations.push_back("mediator");
        report.feasible = false;
    }
    if (!report.feasible) {
        std::string detail = "violated:";
        for (const auto& v : report.violations) detail += " " + v;
        throw Error("Infeasible", detail);
    }
    const Money estimate = job_estimate(job.offer);

    MatchRecord rec;
    rec.match = match;
    rec.match.matchTime = effect_time();
    rec.estimate = estimate;
    rec.escrowJc = money_sub(job.escrow, job.offer.matchIncentive);
    rec.escrowRp = money_sub(res.escrow, res.offer.matchIncentive);
    credit(solverId, money_add(job.offer.matchIncentive, res.offer.matchIncentive));
    job.escrow = 0;
    res.escrow = 0;
    job.matchId = match.matchId;
    res.matchId = match.matchId;
    set_job_state(job, JobState::Matched);
    res.state = JobState::Matched;
    matches_.emplace(match.matchId, std::move(rec));
    emit(EventKind::Matched, match.jobOfferId,
         {{"match", std::to_string(match.matchId)},
          {"resourceOffer", std::to_string(match.resourceOfferId)},
          {"mediator", match.mediatorId},
          {"solver", solverId},
          {"estimate", money_str(estimate)}});
}

void Ledger::post_result(const AccountId& caller, const JobResult& result) {
    MatchRecord& m = match_record(result.matchId);
    JobRecord& job = job_record(m.match.jobOfferId);
    const ResourceRecord& res = resource_record(m.match.resourceOfferId);
    if (job.state != JobState::Matched)
        throw Error("WrongState", std::string("job is ") + to_string(job.state));
    if (caller != res.offer.rpId)
        throw Error("NotMatchedProvider",
                    "'" + caller + "' is not the matched provider");
    if (effect_time() > job.offer.completionDeadline)
        throw Error("PastDeadline", "completion deadline has passed");
    if (result.status == ResultStatus::Completed) {
        if (result.usage.instructionCount > job.offer.instructionLimit ||
            result.usage.bandwidth > job.offer.bandwidthLimit)
            throw Error("InvalidUsage",
                        "completed result exceeds the offer's limits");
    }
    const Money price = compute_job_price(result.usage, res.offer);

    m.result = result;
    m.result->timestamp = effect_time();
    m.reactionDeadlineAt = effect_time() + params_.reactionDeadlineMs;
    set_job_state(job, JobState::ResultPosted);
    emit(EventKind::ResultPosted, m.match.jobOfferId,
         {{"match", std::to_string(result.matchId)},
          {"status", to_string(result.status)},
          {"hash", std::to_string(result.resultHash)},
          {"price", money_str(price)}});
}

std::pair<Money, Money> Ledger::availability_charges() const {
    if (params_.piAConvention == PiAConvention::PerActor)
        return {params_.pi_a, params_.pi_a};
    const Money rpHalf = params_.pi_a / 2;
    return {rpHalf, params_.pi_a - rpHalf};
}

Money Ledger::pi_d_value(const MatchRecord& m) const {
    if (params_.piDConvention == PiDConvention::ActualPrice && m.result &&
        m.result->status == ResultStatus::Completed) {
        const ResourceRecord& res = resources_.at(m.match.resourceOfferId);
        return compute_job_price(m.result->usage, res.offer);
    }
    return m.estimate;
}

void Ledger::settle_accept(MatchRecord& m, const AccountId& closer) {
    JobRecord& job = jobs_.at(m.match.jobOfferId);
    ResourceRecord& res = resources_.at(m.match.resourceOfferId);
    const AccountId& jc = job.offer.jcId;
    const AccountId& rp = res.offer.rpId;
    auto [chargeRp, chargeJc] = availability_charges();
    Money price = compute_job_price(m.result->usage, res.offer);
    // The JC cannot be charged beyond its escrow; with enforced minimum
    // deposits this cap only binds for over-limit non-Completed usage.
    price = std::min(price, money_sub(m.escrowJc, chargeJc));
    const Money rpPayout = money_add(money_sub(m.escrowRp, chargeRp), price);
    const Money jcPayout = money_sub(money_sub(m.escrowJc, chargeJc), price);
    const Money sinkGain = money_sub(money_add(chargeRp, chargeJc), params_.pi_a);

    credit(rp, rpPayout);
    credit(jc, jcPayout);
    credit(m.match.mediatorId, params_.pi_a);
    credit(kSinkAccount, sinkGain);
    m.escrowJc = 0;
    m.escrowRp = 0;
    set_job_state(job, JobState::Closed);
    emit(EventKind::MatchClosed, m.match.jobOfferId,
         {{"match", std::to_string(m.match.matchId)},
          {"closer", closer},
          {"outcome", "accepted"},
          {"price", money_str(price)},
          {"rpPayout", money_str(rpPayout)},
          {"jcPayout", money_str(jcPayout)},
          {"mediatorPayout", money_str(params_.pi_a)},
          {"sinkGain", money_str(sinkGain)}});
}

void Ledger::accept_result(const AccountId& caller, Id matchId) {
    MatchRecord& m = match_record(matchId);
    JobRecord& job = job_record(m.match.jobOfferId);
    const ResourceRecord& res = resource_record(m.match.resourceOfferId);
    if (job.state != JobState::ResultPosted)
        throw Error("WrongState", std::string("job is ") + to_string(job.state));
    if (caller == res.offer.rpId) {
        // The provider may claim acceptance only strictly after the reaction
        // deadline; at the deadline itself the creator's call still wins.
        if (effect_time() <= m.reactionDeadlineAt)
            throw Error("ReactionWindowOpen",
                        "reaction deadline has not passed");
    } else if (caller != job.offer.jcId) {
        throw Error("NotParty", "'" + caller + "' is not a party to the match");
    }
    settle_accept(m, caller);
}

void Ledger::reject_result(const AccountId& caller, Id matchId) {
    MatchRecord& m = match_record(matchId);
    JobRecord& job = job_record(m.match.jobOfferId);
    if (job.state != JobState::ResultPosted)
        throw Error("WrongState", std::string("job is ") + to_string(job.state));
    if (caller != job.offer.jcId)
        throw Error("NotJobCreator", "only the job creator may reject");
    if (balance(caller) < params_.g_m)
        throw Error("InsufficientBalance",
                    "mediation fee " + money_str(params_.g_m) + " unavailable");

    debit(caller, params_.g_m);
    credit(kSinkAccount, params_.g_m);
    m.mediationDeadlineAt = effect_time() + params_.mediationDeadlineMs;
    set_job_state(job, JobState::MediationRequested);
    emit(EventKind::JobAssignedForMediation, m.match.jobOfferId,
         {{"match", std::to_string(matchId)},
          {"mediator", m.match.mediatorId},
          {"fee", money_str(params_.g_m)}});
}

void Ledger::post_mediation_result(const AccountId& caller,
                                   const MediationResult& result) {
    MatchRecord& m = match_record(result.matchId);
    JobRecord& job = job_record(m.match.jobOfferId);
    ResourceRecord& res = resources_.at(m.match.resourceOfferId);
    if (job.state != JobState::MediationRequested)
        throw Error("WrongState", std::string("job is ") + to_string(job.state));
    if (caller != m.match.mediatorId)
        throw Error("NotAssignedMediator",
                    "'" + caller + "' is not the match's mediator");
    if ((result.verdict == Verdict::CorrectResults ||
         result.verdict == Verdict::NonDeterministic) &&
        result.faultyParty != Party::JobCreator)
        throw Error("InvalidVerdict",
                    "this verdict can only fault the job creator");

    const AccountId& jc = job.offer.jcId;
    const AccountId& rp = res.offer.rpId;
    const bool rpFaulted = result.faultyParty == Party::ResourceProvider;
    const AccountId& wronged = rpFaulted ? jc : rp;
    auto [chargeRp, chargeJc] = availability_charges();
    const Money chargeW = rpFaulted ? chargeJc : chargeRp;
    const Money escrowW = rpFaulted ? m.escrowJc : m.escrowRp;
    const Money escrowF = rpFaulted ? m.escrowRp : m.escrowJc;
    const Money damages = pi_d_value(m);
    const Money mediationFee =
        money_mul(m.estimate, static_cast<std::int64_t>(params_.n));

    // The wronged party recovers its deposit (minus the availability charge)
    // plus damages; the faulted deposit plus that charge funds damages, the
    // mediation fee and the mediator's availability payment, in that
    // priority, with any residual going to the sink.
    const Money wrongedRefund = money_sub(escrowW, chargeW);
    Money pool = money_add(escrowF, chargeW);
    const Money payDamages = std::min(damages, pool);
    pool -= payDamages;
    const Money payMediation = std::min(mediationFee, pool);
    pool -= payMediation;
    const Money payAvailability = std::min(params_.pi_a, pool);
    pool -= payAvailability;

    m.mediation = result;
    credit(wronged, money_add(wrongedRefund, payDamages));
    credit(m.match.mediatorId, money_add(payMediation, payAvailability));
    credit(kSinkAccount, pool);
    m.escrowJc = 0;
    m.escrowRp = 0;
    set_job_state(job, JobState::Closed);
    emit(EventKind::MediationResultPosted, m.match.jobOfferId,
         {{"match", std::to_string(result.matchId)},
          {"verdict", to_string(result.verdict)},
          {"faultyParty", to_string(result.faultyParty)}});
    emit(EventKind::MatchClosed, m.match.jobOfferId,
         {{"match", std::to_string(result.matchId)},
          {"closer", caller},
          {"outcome", "mediated"},
          {"damages", money_str(payDamages)},
          {"mediationFee", money_str(payMediation)},
          {"mediatorPayout", money_str(money_add(payMediation, payAvailability))},
          {"sinkGain", money_str(pool)}});
}

void Ledger::timeout(const AccountId& caller, Id matchId) {
    MatchRecord& m = match_record(matchId);
    JobRecord& job = job_record(m.match.jobOfferId);
    ResourceRecord& res = resources_.at(m.match.resourceOfferId);
    const AccountId& jc = job.offer.jcId;
    const AccountId& rp = res.offer.rpId;
    if (caller != jc && caller != rp)
        throw Error("NotParty", "'" + caller + "' is not a party to the match");

    if (job.state == JobState::Matched) {
        if (effect_time() <= job.offer.completionDeadline)
            throw Error("DeadlineNotReached",
                        "completion deadline has not passed");
        // No result in time: the creator is compensated with the job
        // estimate out of the provider's deposit; everything else returns.
        const Money transfer = std::min(m.estimate, m.escrowRp);
        credit(rp, money_sub(m.escrowRp, transfer));
        credit(jc, money_add(m.escrowJc, transfer));
        m.escrowJc = 0;
        m.escrowRp = 0;
        set_job_state(job, JobState::TimedOut);
        emit(EventKind::JobTimedOut, m.match.jobOfferId,
             {{"match", std::to_string(matchId)},
              {"caller", caller},
              {"compensation", money_str(transfer)}});
        return;
    }
    if (job.state == JobState::MediationRequested) {
        if (effect_time() <= m.mediationDeadlineAt)
            throw Error("DeadlineNotReached",
                        "mediation deadline has not passed");
        // The mediator never ruled: the provider receives half the job
        // estimate, deposits return, the mediator gets nothing.
        const Money half = m.estimate / 2;
        const Money transfer = std::min(half, m.escrowJc);
        credit(rp, money_add(m.escrowRp, transfer));
        credit(jc, money_sub(m.escrowJc, transfer));
        m.escrowJc = 0;
        m.escrowRp = 0;
        set_job_state(job, JobState::TimedOut);
        emit(EventKind::MediationTimedOut, m.match.jobOfferId,
             {{"match", std::to_string(matchId)},
              {"caller", caller},
              {"compensation", money_str(transfer)}});
        return;
    }
    throw Error("WrongState", std::string("job is ") + to_string(job.state));
}

Money Ledger::balance(const AccountId& id) const {
    auto it = balances_.find(id);
    if (it == balances_.end())
        throw Error("UnknownId", "no account '" + id + "'");
    return it->second;
}

Money Ledger::escrow_total() const {
    Money total = 0;
    for (const auto& [id, job] : jobs_) total = money_add(total, job.escrow);
    for (const auto& [id, res] : resources_) total = money_add(total, res.escrow);
    for (const auto& [id, m] : matches_)
        total = money_add(total, money_add(m.escrowJc, m.escrowRp));
    return total;
}

Money Ledger::conservation_residual() const {
    Money total = escrow_total();
    for (const auto& [id, b] : balances_) total = money_add(total, b);
    return money_sub(total, genesisTotal_);
}

JobState Ledger::job_state(Id jobOfferId) const {
    auto it = jobs_.find(jobOfferId);
    if (it == jobs_.end())
        throw Error("UnknownId", "no job offer " + std::to_string(jobOfferId));
    return it->second.state;
}

const JobOffer& Ledger::job_offer(Id offerId) const {
    auto it = jobs_.find(offerId);
    if (it == jobs_.end())
        throw Error("UnknownId", "no job offer " + std::to_string(offerId));
    return it->second.offer;
}

const ResourceOffer& Ledger::resource_offer(Id offerId) const {
    auto it = resources_.find(offerId);
    if (it == resources_.end())
        throw Error("UnknownId", "no resource offer " + std::to_string(offerId));
    return it->second.offer;
}

const Match& Ledger::match(Id matchId) const { return match_record(matchId).match; }

Ledger::JobRecord& Ledger::job_record(Id offerId) {
    auto it = jobs_.find(offerId);
    if (it == jobs_.end())
        throw Error("UnknownId", "no job offer " + std::to_string(offerId));
    return it->second;
}

Ledger::ResourceRecord& Ledger::resource_record(Id offerId) {
    auto it = resources_.find(offerId);
    if (it == resources_.end())
        throw Error("UnknownId", "no resource offer " + std::to_string(offerId));
    return it->second;
}

Ledger::MatchRecord& Ledger::match_record(Id matchId) {
    auto it = matches_.find(matchId);
    if (it == matches_.end())
        throw Error("UnknownId", "no match " + std::to_string(matchId));
    return it->second;
}

const Ledger::MatchRecord& Ledger::match_record(Id matchId) const {
    auto it = matches_.find(matchId);
    if (it == matches_.end())
        throw Error("UnknownId", "no match " + std::to_string(matchId));
    return it->second;
}

std::vector<Id> Ledger::open_job_offers() const {
    std::vector<std::pair<std::uint64_t, Id>> open;
    for (const auto& [id, job] : jobs_)
        if (job.state == JobState::OfferPosted) open.emplace_back(job.arrival, id);
    std::sort(open.begin(), open.end());
    std::vector<Id> out;
    out.reserve(open.size());
    for (auto& [arrival, id] : open) out.push_back(id);
    return out;
}

std::vector<Id> Ledger::open_resource_offers() const {
    std::vector<std::pair<std::uint64_t, Id>> open;
    for (const auto& [id, res] : resources_)
        if (res.state == JobState::OfferPosted) open.emplace_back(res.arrival, id);
    std::sort(open.begin(), open.end());
    std::vector<Id> out;
    out.reserve(open.size());
    for (auto& [arrival, id] : open) out.push_back(id);
    return out;
}

} // namespace ocm
