#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ocm/types.hpp"

namespace ocm {

// How the mediator availability payment pi_a is charged when a match closes.
//   PerActor:  each side is charged the full pi_a; the mediator receives
//              pi_a and the surplus pi_a goes to the contract sink. Per-party
//              deltas then equal the outcome table exactly.
//   SplitHalf: the RP is charged floor(pi_a/2), the JC the remainder; the
//              mediator receives pi_a and the sink nothing.
enum class PiAConvention { PerActor, SplitHalf };

// Which value the wronged party receives from a forfeited deposit.
//   ActualPrice: the job price of the posted result (the job estimate when
//                the result is not priceable).
//   Estimate:    always the job estimate pihat_c.
enum class PiDConvention { ActualPrice, Estimate };

struct PlatformParams {
    std::uint32_t theta = 50;          // penalty factor (integer, exact money math)
    std::uint32_t n = 2;               // mediator replication count, >= 1
    Money g_j = 0;                     // flat job-offer fee, paid to the sink
    Money g_r = 0;                     // flat resource-offer fee
    Money g_m = 0;                     // flat mediation-request fee
    Money pi_a = 0;                    // mediator availability payment
    PiAConvention piAConvention = PiAConvention::PerActor;
    PiDConvention piDConvention = PiDConvention::ActualPrice;
    TimeMs blockIntervalMs = 10000;
    TimeMs reactionDeadlineMs = 30000;
    TimeMs mediationDeadlineMs = 300000;
};

struct JcRegistration {
    std::set<std::string> trustedMediators;
};

struct RpRegistration {
    std::string arch;
    std::uint64_t timePerInstructionUs = 1;
    std::set<std::string> trustedMediators;
    std::set<std::string> trustedDirectories;
};

struct MediatorRegistration {
    std::string arch;
    std::set<std::string> trustedDirectories;
};

// In-memory replica of the market's on-chain state: accounts, escrow, offers,
// matches, the per-job state machine and the event log. Calls submitted while
// the clock shows block k take effect in block k+1 (their events are stamped
// with block k+1 and deadline checks use that block's timestamp); within a
// block, calls apply in submission order. Every call either fully applies or
// throws Error and changes nothing.
class Ledger {
public:
    Ledger(PlatformParams params,
           std::vector<std::pair<AccountId, Money>> genesisBalances);

    // -- clock ---------------------------------------------------------------
    void advance_block(std::int64_t blocks = 1);
    std::int64_t current_block() const { return currentBlock_; }
    // Block and timestamp a call submitted now takes effect at.
    std::int64_t effect_block() const { return currentBlock_ + 1; }
    TimeMs effect_time() const { return effect_block() * params_.blockIntervalMs; }

    // -- pricing -------------------------------------------------------------
    // Job price: usage charged at the resource offer's unit prices.
    static Money compute_job_price(const UsageReport& usage, const ResourceOffer& ro);
    // Minimum deposit for an offer: estimate * (theta + n) + pi_a, where the
    // estimate prices the job offer's limits at its max prices, and the
    // resource offer's capacities at its own prices.
    Money compute_min_deposit(const JobOffer& jo) const;
    Money compute_min_deposit(const ResourceOffer& ro) const;
    Money job_estimate(const JobOffer& jo) const;

    // -- calls ---------------------------------------------------------------
    void register_job_creator(const AccountId& id, JcRegistration reg);
    void register_resource_provider(const AccountId& id, RpRegistration reg);
    void register_mediator(const AccountId& id, MediatorRegistration reg);

    void post_job_offer(const JobOffer& offer);
    void post_resource_offer(const ResourceOffer& offer);
    void cancel_offer(const AccountId& caller, Id offerId);
    void post_match(const AccountId& solverId, const Match& match);
    void post_result(const AccountId& caller, const JobResult& result);
    void accept_result(const AccountId& caller, Id matchId);
    void reject_result(const AccountId& caller, Id matchId);
    void post_mediation_result(const AccountId& caller, const MediationResult& result);
    void timeout(const AccountId& caller, Id matchId);

    // -- queries -------------------------------------------------------------
    Money balance(const AccountId& id) const;
    Money sink_balance() const { return balance(kSinkAccount); }
    Money escrow_total() const;
    // Sum of all balances plus escrow minus the genesis total; 0 when money
    // is conserved.
    Money conservation_residual() const;
    JobState job_state(Id jobOfferId) const;
    const std::vector<LedgerEvent>& events() const { return events_; }
    const JobOffer& job_offer(Id offerId) const;
    const ResourceOffer& resource_offer(Id offerId) const;
    const Match& match(Id matchId) const;
    const PlatformParams& platform() const { return params_; }

    bool has_job_creator(const AccountId& id) const { return jcs_.count(id) > 0; }
    bool has_resource_provider(const AccountId& id) const { return rps_.count(id) > 0; }
    bool has_mediator(const AccountId& id) const { return mediators_.count(id) > 0; }
    const JcRegistration& job_creator(const AccountId& id) const;
    const RpRegistration& resource_provider(const AccountId& id) const;
    const MediatorRegistration& mediator(const AccountId& id) const;
    const std::map<AccountId, MediatorRegistration>& mediators() const { return mediators_; }

    std::vector<Id> open_job_offers() const;      // arrival order
    std::vector<Id> open_resource_offers() const; // arrival order

    static constexpr const char* kSinkAccount = "@sink";

private:
    struct JobRecord {
        JobOffer offer;
        JobState state = JobState::OfferPosted;
        Money escrow = 0;
        Id matchId = 0;
        std::uint64_t arrival = 0;
    };
    struct ResourceRecord {
        ResourceOffer offer;
        // Resource offers only move Open -> Matched | Canceled; reuse the
        // shared enum's first states.
        JobState state = JobState::OfferPosted;
        Money escrow = 0;
        Id matchId = 0;
        std::uint64_t arrival = 0;
    };
    struct MatchRecord {
        Match match;
        Money escrowJc = 0;
        Money escrowRp = 0;
        Money estimate = 0;            // pihat_c frozen at match time
        std::optional<JobResult> result;
        std::optional<MediationResult> mediation;
        TimeMs reactionDeadlineAt = 0;
        TimeMs mediationDeadlineAt = 0;
    };

    void emit(EventKind kind, Id jobId,
              std::vector<std::pair<std::string, std::string>> fields);
    void credit(const AccountId& id, Money amount);
    void debit(const AccountId& id, Money amount);
    void require_account(const AccountId& id) const;
    void set_job_state(JobRecord& job, JobState to);
    JobRecord& job_record(Id offerId);
    ResourceRecord& resource_record(Id offerId);
    MatchRecord& match_record(Id matchId);
    const MatchRecord& match_record(Id matchId) const;
    // Availability charges (rp, jc) under the active pi_a convention.
    std::pair<Money, Money> availability_charges() const;
    Money pi_d_value(const MatchRecord& m) const;
    void settle_accept(MatchRecord& m, const AccountId& closer);

    PlatformParams params_;
    std::int64_t currentBlock_ = 0;
    std::uint32_t nextEventIndex_ = 0;
    std::int64_t lastEventBlock_ = -1;
    Money genesisTotal_ = 0;
    std::map<AccountId, Money> balances_;
    std::map<AccountId, JcRegistration> jcs_;
    std::map<AccountId, RpRegistration> rps_;
    std::map<AccountId, MediatorRegistration> mediators_;
    std::map<Id, JobRecord> jobs_;
    std::map<Id, ResourceRecord> resources_;
    std::map<Id, MatchRecord> matches_;
    std::vector<LedgerEvent> events_;
    std::uint64_t nextArrival_ = 0;
};

} // namespace ocm
