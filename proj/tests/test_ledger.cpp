#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "ocm/error.hpp"
#include "ocm/ledger.hpp"

using namespace ocm;

namespace {

template <typename Fn>
std::string thrown_code(Fn&& fn) {
    try {
        fn();
        return "<none>";
    } catch (const Error& e) {
        return e.code();
    }
}

PlatformParams base_params() {
    PlatformParams p;
    p.theta = 2;
    p.n = 2;
    p.g_j = 10;
    p.g_r = 20;
    p.g_m = 30;
    p.pi_a = 100;
    p.blockIntervalMs = 1000;
    p.reactionDeadlineMs = 3000;
    p.mediationDeadlineMs = 5000;
    return p;
}

std::vector<std::pair<AccountId, Money>> base_genesis() {
    return {{"jc", 1000000}, {"rp", 1000000}, {"m1", 500},
            {"m2", 500},     {"sol", 0},      {"outsider", 1000000}};
}

Ledger make_ledger(PlatformParams p = base_params(),
                   std::vector<std::pair<AccountId, Money>> genesis = base_genesis()) {
    Ledger led(p, std::move(genesis));
    led.register_job_creator("jc", JcRegistration{{"m1", "m2"}});
    RpRegistration rp;
    rp.arch = "x86";
    rp.timePerInstructionUs = 1;
    rp.trustedMediators = {"m1", "m2"};
    rp.trustedDirectories = {"dir"};
    led.register_resource_provider("rp", rp);
    led.register_mediator("m1", MediatorRegistration{"x86", {"dir"}});
    led.register_mediator("m2", MediatorRegistration{"x86", {"dir"}});
    return led;
}

// estimate = 100*5 + 10*2 = 520; min deposit = 520*(theta+n) + pi_a.
JobOffer base_job(Money minDeposit = 2180) {
    JobOffer jo;
    jo.jcId = "jc";
    jo.offerId = 1;
    jo.instructionLimit = 100;
    jo.bandwidthLimit = 10;
    jo.ramLimit = 512;
    jo.localStorageLimit = 1024;
    jo.instructionMaxPrice = 5;
    jo.bandwidthMaxPrice = 2;
    jo.completionDeadline = 100000;
    jo.directory = "dir";
    jo.arch = "x86";
    jo.matchIncentive = 7;
    jo.depositValue = minDeposit + jo.matchIncentive;
    return jo;
}

ResourceOffer base_res(Money minDeposit = 2180) {
    ResourceOffer ro;
    ro.rpId = "rp";
    ro.offerId = 2;
    ro.instructionCapacity = 100;
    ro.bandwidthCapacity = 10;
    ro.ramCapacity = 512;
    ro.localStorageCapacity = 1024;
    ro.instructionPrice = 5;
    ro.bandwidthPrice = 2;
    ro.matchIncentive = 3;
    ro.depositValue = minDeposit + ro.matchIncentive;
    return ro;
}

Match base_match() {
    Match m;
    m.matchId = 5;
    m.jobOfferId = 1;
    m.resourceOfferId = 2;
    m.mediatorId = "m1";
    return m;
}

void post_both(Ledger& led, TimeMs jobDeadline = 100000) {
    auto jo = base_job();
    jo.completionDeadline = jobDeadline;
    led.post_job_offer(jo);
    led.post_resource_offer(base_res());
}

// Post both offers at block 0 and match them at block 1.
void match_both(Ledger& led, TimeMs jobDeadline = 100000) {
    post_both(led, jobDeadline);
    led.advance_block();
    led.post_match("sol", base_match());
}

JobResult full_result() {
    JobResult r;
    r.matchId = 5;
    r.status = ResultStatus::Completed;
    r.resultHash = 42;
    r.usage = {100, 10}; // price 520 at the resource offer's rates
    return r;
}

const LedgerEvent& last_event(const Ledger& led) {
    REQUIRE_FALSE(led.events().empty());
    return led.events().back();
}

std::string field(const LedgerEvent& e, const std::string& key) {
    for (const auto& [k, v] : e.fields)
        if (k == key) return v;
    return "<missing:" + key + ">";
}

} // namespace

TEST_CASE("ledger constructor validates platform and genesis") {
    auto p = base_params();
    p.n = 0;
    CHECK(thrown_code([&] { Ledger l(p, {}); }) == "InvalidParams");
    p = base_params();
    p.blockIntervalMs = 0;
    CHECK(thrown_code([&] { Ledger l(p, {}); }) == "InvalidParams");
    p = base_params();
    p.g_m = -1;
    CHECK(thrown_code([&] { Ledger l(p, {}); }) == "InvalidParams");
    CHECK(thrown_code([&] { Ledger l(base_params(), {{"a", -5}}); }) ==
          "InvalidParams");
    CHECK(thrown_code([&] {
              Ledger l(base_params(), {{"a", 1}, {"a", 2}});
          }) == "DuplicateId");
}

TEST_CASE("clock: calls take effect one block after submission") {
    Ledger led = make_ledger();
    CHECK(led.current_block() == 0);
    CHECK(led.effect_block() == 1);
    CHECK(led.effect_time() == 1000);
    led.advance_block(3);
    CHECK(led.current_block() == 3);
    CHECK(led.effect_time() == 4000);
    CHECK(thrown_code([&] { led.advance_block(-1); }) == "InvalidParams");
}

TEST_CASE("registration requires a funded account and rejects duplicates") {
    Ledger led = make_ledger();
    CHECK(thrown_code([&] { led.balance("ghost"); }) == "UnknownId");
    CHECK(thrown_code([&] { led.register_job_creator("ghost", {}); }) ==
          "UnknownId");
    CHECK(thrown_code([&] { led.register_job_creator("jc", {}); }) ==
          "DuplicateId");
    CHECK(thrown_code([&] { led.register_resource_provider("rp", {}); }) ==
          "DuplicateId");
    CHECK(thrown_code([&] { led.register_mediator("m1", {}); }) ==
          "DuplicateId");
    CHECK(led.has_job_creator("jc"));
    CHECK_FALSE(led.has_job_creator("rp"));
    CHECK(led.mediators().size() == 2);
}

TEST_CASE("posting a job offer enforces registration, deposit and balance") {
    Ledger led = make_ledger();
    auto jo = base_job();

    jo.jcId = "outsider"; // funded but not registered
    CHECK(thrown_code([&] { led.post_job_offer(jo); }) == "UnregisteredActor");

    jo = base_job();
    jo.matchIncentive = -1;
    CHECK(thrown_code([&] { led.post_job_offer(jo); }) == "InvalidParams");

    jo = base_job();
    jo.depositValue -= 1; // 2186 < min 2180 + incentive 7
    CHECK(thrown_code([&] { led.post_job_offer(jo); }) ==
          "InsufficientDeposit");
    CHECK(led.compute_min_deposit(base_job()) == 2180);

    // a registered creator whose balance is one short of deposit + fee
    Ledger poorLed(base_params(), {{"poorjc", 2196}});
    poorLed.register_job_creator("poorjc", {});
    jo = base_job();
    jo.jcId = "poorjc";
    CHECK(thrown_code([&] { poorLed.post_job_offer(jo); }) ==
          "InsufficientBalance");
    CHECK(poorLed.balance("poorjc") == 2196); // nothing was taken

    led.post_job_offer(base_job());
    CHECK(led.balance("jc") == 1000000 - 2187 - 10);
    CHECK(led.sink_balance() == 10);
    CHECK(led.escrow_total() == 2187);
    CHECK(led.job_state(1) == JobState::OfferPosted);
    CHECK(led.conservation_residual() == 0);

    // ids are shared across both offer kinds
    auto ro = base_res();
    ro.offerId = 1;
    CHECK(thrown_code([&] { led.post_resource_offer(ro); }) == "DuplicateId");
    CHECK(thrown_code([&] { led.post_job_offer(base_job()); }) ==
          "DuplicateId");
}

TEST_CASE("posting a resource offer mirrors the job offer rules") {
    Ledger led = make_ledger();
    auto ro = base_res();
    ro.rpId = "jc";
    CHECK(thrown_code([&] { led.post_resource_offer(ro); }) ==
          "UnregisteredActor");

    ro = base_res();
    ro.depositValue = 2182;
    CHECK(thrown_code([&] { led.post_resource_offer(ro); }) ==
          "InsufficientDeposit");
    CHECK(led.compute_min_deposit(base_res()) == 2180);

    led.post_resource_offer(base_res());
    CHECK(led.balance("rp") == 1000000 - 2183 - 20);
    CHECK(led.sink_balance() == 20);
    CHECK(led.open_resource_offers() == std::vector<Id>{2});
    CHECK(led.conservation_residual() == 0);
}

TEST_CASE("open offers are listed in arrival order across cancellations") {
    Ledger led = make_ledger();
    auto jo = base_job();
    led.post_job_offer(jo);
    jo.offerId = 11;
    led.post_job_offer(jo);
    led.post_resource_offer(base_res());
    jo.offerId = 12;
    led.post_job_offer(jo);
    CHECK(led.open_job_offers() == std::vector<Id>{1, 11, 12});
    led.cancel_offer("jc", 11);
    CHECK(led.open_job_offers() == std::vector<Id>{1, 12});
    CHECK(led.open_resource_offers() == std::vector<Id>{2});
}

TEST_CASE("cancel refunds the whole deposit and guards ownership and state") {
    Ledger led = make_ledger();
    post_both(led);

    CHECK(thrown_code([&] { led.cancel_offer("rp", 1); }) == "NotOwner");
    CHECK(thrown_code([&] { led.cancel_offer("jc", 999); }) == "UnknownId");

    led.cancel_offer("jc", 1);
    CHECK(led.balance("jc") == 1000000 - 10); // only the posting fee is gone
    CHECK(led.job_state(1) == JobState::Canceled);
    CHECK(field(last_event(led), "refund") == "2187");
    CHECK(thrown_code([&] { led.cancel_offer("jc", 1); }) == "WrongState");

    led.cancel_offer("rp", 2);
    CHECK(led.balance("rp") == 1000000 - 20);
    CHECK(led.escrow_total() == 0);
    CHECK(led.conservation_residual() == 0);
}

TEST_CASE("matched offers cannot be canceled") {
    Ledger led = make_ledger();
    match_both(led);
    CHECK(thrown_code([&] { led.cancel_offer("jc", 1); }) == "AlreadyMatched");
    CHECK(thrown_code([&] { led.cancel_offer("rp", 2); }) == "AlreadyMatched");
}

TEST_CASE("post_match validates solver, ids, staleness and feasibility") {
    Ledger led = make_ledger();
    post_both(led);
    led.advance_block();

    auto m = base_match();
    CHECK(thrown_code([&] { led.post_match("ghost", m); }) == "UnknownId");
    m.jobOfferId = 999;
    CHECK(thrown_code([&] { led.post_match("sol", m); }) == "UnknownId");
    m = base_match();
    m.resourceOfferId = 999;
    CHECK(thrown_code([&] { led.post_match("sol", m); }) == "UnknownId");

    // an unknown or untrusted proposed mediator makes the match infeasible
    m = base_match();
    m.mediatorId = "m3";
    try {
        led.post_match("sol", m);
        FAIL("expected Infeasible");
    } catch (const Error& e) {
        CHECK(e.code() == "Infeasible");
        CHECK(std::string(e.what()).find("mediator") != std::string::npos);
    }

    led.post_match("sol", base_match());
    CHECK(led.job_state(1) == JobState::Matched);
    CHECK(led.match(5).matchTime == 2000);

    // id reuse is reported before offer staleness
    CHECK(thrown_code([&] { led.post_match("sol", base_match()); }) ==
          "DuplicateId");
    m = base_match();
    m.matchId = 6;
    CHECK(thrown_code([&] { led.post_match("sol", m); }) == "StaleOffer");
}

TEST_CASE("post_match rejects canceled offers and incompatible pairs") {
    Ledger led = make_ledger();
    post_both(led);
    led.cancel_offer("jc", 1);
    led.advance_block();
    CHECK(thrown_code([&] { led.post_match("sol", base_match()); }) ==
          "StaleOffer");

    // a provider on the wrong architecture never matches
    Ledger led2(base_params(), {{"jc", 1000000},
                                {"rp2", 1000000},
                                {"m1", 0},
                                {"sol", 0}});
    led2.register_job_creator("jc", JcRegistration{{"m1"}});
    RpRegistration rp;
    rp.arch = "arm";
    rp.trustedMediators = {"m1"};
    rp.trustedDirectories = {"dir"};
    led2.register_resource_provider("rp2", rp);
    led2.register_mediator("m1", MediatorRegistration{"x86", {"dir"}});
    led2.post_job_offer(base_job());
    auto ro = base_res();
    ro.rpId = "rp2";
    led2.post_resource_offer(ro);
    led2.advance_block();
    try {
        led2.post_match("sol", base_match());
        FAIL("expected Infeasible");
    } catch (const Error& e) {
        CHECK(e.code() == "Infeasible");
        CHECK(std::string(e.what()).find("architecture") != std::string::npos);
    }
}

TEST_CASE("the solver may propose any qualified mediator, not just the first") {
    Ledger led = make_ledger();
    post_both(led);
    led.advance_block();
    auto m = base_match();
    m.mediatorId = "m2";
    led.post_match("sol", m);
    CHECK(led.match(5).mediatorId == "m2");
}

TEST_CASE("matching moves escrow aside and pays the solver both incentives") {
    Ledger led = make_ledger();
    match_both(led);
    CHECK(led.balance("sol") == 10); // 7 + 3
    CHECK(led.escrow_total() == 4360); // 2180 on each side
    CHECK(led.balance("jc") == 1000000 - 2197);
    CHECK(led.balance("rp") == 1000000 - 2203);
    CHECK(led.conservation_residual() == 0);

    const auto& e = last_event(led);
    CHECK(e.kind == EventKind::Matched);
    CHECK(field(e, "match") == "5");
    CHECK(field(e, "resourceOffer") == "2");
    CHECK(field(e, "mediator") == "m1");
    CHECK(field(e, "solver") == "sol");
    CHECK(field(e, "estimate") == "520");
}

TEST_CASE("post_result guards provider, state, deadline and usage") {
    Ledger led = make_ledger();
    match_both(led, 5000);
    led.advance_block(); // current block 2, effect time 3000

    auto r = full_result();
    r.matchId = 999;
    CHECK(thrown_code([&] { led.post_result("rp", r); }) == "UnknownId");
    CHECK(thrown_code([&] { led.post_result("jc", full_result()); }) ==
          "NotMatchedProvider");
    CHECK(thrown_code([&] { led.post_result("outsider", full_result()); }) ==
          "NotMatchedProvider");

    r = full_result();
    r.usage.instructionCount = 101; // over the offer limit
    CHECK(thrown_code([&] { led.post_result("rp", r); }) == "InvalidUsage");
    r.usage = {100, 11};
    CHECK(thrown_code([&] { led.post_result("rp", r); }) == "InvalidUsage");

    led.advance_block(2); // effect time 5000 == deadline: still allowed
    led.post_result("rp", full_result());
    CHECK(led.job_state(1) == JobState::ResultPosted);
    const auto& e = last_event(led);
    CHECK(e.kind == EventKind::ResultPosted);
    CHECK(field(e, "status") == "Completed");
    CHECK(field(e, "price") == "520");

    CHECK(thrown_code([&] { led.post_result("rp", full_result()); }) ==
          "WrongState");
}

TEST_CASE("post_result strictly after the completion deadline is rejected") {
    Ledger led = make_ledger();
    match_both(led, 5000);
    led.advance_block(4); // effect time 6000 > 5000
    CHECK(thrown_code([&] { led.post_result("rp", full_result()); }) ==
          "PastDeadline");
    CHECK(led.job_state(1) == JobState::Matched);
}

TEST_CASE("over-limit usage is only rejected for completed results") {
    Ledger led = make_ledger();
    match_both(led);
    led.advance_block();
    auto r = full_result();
    r.status = ResultStatus::InstructionsExceeded;
    r.usage.instructionCount = 250;
    led.post_result("rp", r);
    CHECK(field(last_event(led), "status") == "InstructionsExceeded");
}

TEST_CASE("accepting a result settles price, charges and deposits exactly") {
    Ledger led = make_ledger();
    match_both(led);
    led.advance_block();
    led.post_result("rp", full_result());
    led.accept_result("jc", 5);

    // price 520, availability charge 100 per actor, surplus 100 to the sink
    CHECK(led.balance("rp") == 1000397);
    CHECK(led.balance("jc") == 999363);
    CHECK(led.balance("m1") == 600);
    CHECK(led.sink_balance() == 130);
    CHECK(led.balance("sol") == 10);
    CHECK(led.escrow_total() == 0);
    CHECK(led.conservation_residual() == 0);
    CHECK(led.job_state(1) == JobState::Closed);

    const auto& e = last_event(led);
    CHECK(e.kind == EventKind::MatchClosed);
    CHECK(field(e, "outcome") == "accepted");
    CHECK(field(e, "closer") == "jc");
    CHECK(field(e, "price") == "520");
    CHECK(field(e, "rpPayout") == "2600");
    CHECK(field(e, "jcPayout") == "1560");
    CHECK(field(e, "mediatorPayout") == "100");
    CHECK(field(e, "sinkGain") == "100");

    CHECK(thrown_code([&] { led.accept_result("jc", 5); }) == "WrongState");
    CHECK(thrown_code([&] { led.reject_result("jc", 5); }) == "WrongState");
}

TEST_CASE("the provider can only claim acceptance after the reaction window") {
    Ledger led = make_ledger();
    match_both(led);
    led.advance_block(); // current 2; result effective at 3000
    led.post_result("rp", full_result());

    // reaction deadline is 3000 + 3000 = 6000
    CHECK(thrown_code([&] { led.accept_result("rp", 5); }) ==
          "ReactionWindowOpen");
    led.advance_block(3); // current 5, effect 6000 == deadline: still open
    CHECK(thrown_code([&] { led.accept_result("rp", 5); }) ==
          "ReactionWindowOpen");
    CHECK(thrown_code([&] { led.accept_result("outsider", 5); }) == "NotParty");
    CHECK(thrown_code([&] { led.accept_result("m1", 5); }) == "NotParty");

    led.advance_block(); // effect 7000 > 6000
    led.accept_result("rp", 5);
    CHECK(field(last_event(led), "closer") == "rp");
    CHECK(led.conservation_residual() == 0);
}

TEST_CASE("the creator wins a tie at the reaction deadline") {
    Ledger led = make_ledger();
    match_both(led);
    led.advance_block();
    led.post_result("rp", full_result());
    led.advance_block(3); // effect time exactly at the deadline
    led.accept_result("jc", 5);
    CHECK(led.job_state(1) == JobState::Closed);
}

TEST_CASE("accept before any result is posted is a state error") {
    Ledger led = make_ledger();
    match_both(led);
    CHECK(thrown_code([&] { led.accept_result("jc", 5); }) == "WrongState");
    CHECK(thrown_code([&] { led.accept_result("jc", 999); }) == "UnknownId");
}

TEST_CASE("split-half availability splits the charge and leaves no surplus") {
    auto p = base_params();
    p.piAConvention = PiAConvention::SplitHalf;
    Ledger led = make_ledger(p);
    match_both(led);
    led.advance_block();
    led.post_result("rp", full_result());
    led.accept_result("jc", 5);

    CHECK(led.balance("rp") == 1000000 - 2203 + 2650); // charge 50
    CHECK(led.balance("jc") == 1000000 - 2197 + 1610); // charge 50
    CHECK(led.balance("m1") == 600);
    CHECK(led.sink_balance() == 30); // only the posting fees
    CHECK(led.conservation_residual() == 0);
}

TEST_CASE("split-half rounds the provider's share down on odd pi_a") {
    auto p = base_params();
    p.piAConvention = PiAConvention::SplitHalf;
    p.pi_a = 101;
    Ledger led = make_ledger(p);
    // min deposit grows with pi_a: 520*4 + 101 = 2181
    auto jo = base_job(2181);
    auto ro = base_res(2181);
    led.post_job_offer(jo);
    led.post_resource_offer(ro);
    led.advance_block();
    led.post_match("sol", base_match());
    led.advance_block();
    led.post_result("rp", full_result());
    led.accept_result("jc", 5);

    CHECK(led.balance("rp") == 1000000 - 2184 - 20 + (2181 - 50 + 520));
    CHECK(led.balance("jc") == 1000000 - 2188 - 10 + (2181 - 51 - 520));
    CHECK(led.balance("m1") == 500 + 101);
    CHECK(led.sink_balance() == 30);
    CHECK(led.conservation_residual() == 0);
}

TEST_CASE("reject routes the mediation fee to the sink and arms the deadline") {
    Ledger led = make_ledger();
    match_both(led);
    led.advance_block();
    led.post_result("rp", full_result());

    CHECK(thrown_code([&] { led.reject_result("rp", 5); }) == "NotJobCreator");
    CHECK(thrown_code([&] { led.reject_result("outsider", 5); }) ==
          "NotJobCreator");

    led.reject_result("jc", 5);
    CHECK(led.job_state(1) == JobState::MediationRequested);
    CHECK(led.balance("jc") == 1000000 - 2197 - 30);
    CHECK(led.sink_balance() == 60);
    const auto& e = last_event(led);
    CHECK(e.kind == EventKind::JobAssignedForMediation);
    CHECK(field(e, "mediator") == "m1");
    CHECK(field(e, "fee") == "30");
    CHECK(thrown_code([&] { led.reject_result("jc", 5); }) == "WrongState");
}

TEST_CASE("reject fails when the creator cannot pay the mediation fee") {
    auto p = base_params();
    p.g_m = 10000000; // larger than anything the creator has left
    Ledger led = make_ledger(p);
    match_both(led);
    led.advance_block();
    led.post_result("rp", full_result());
    CHECK(thrown_code([&] { led.reject_result("jc", 5); }) ==
          "InsufficientBalance");
    CHECK(led.job_state(1) == JobState::ResultPosted);
}

TEST_CASE("mediation faulting the provider compensates the creator") {
    Ledger led = make_ledger();
    match_both(led);
    led.advance_block();
    led.post_result("rp", full_result());
    led.reject_result("jc", 5);

    CHECK(thrown_code([&] {
              led.post_mediation_result("jc", {5, Verdict::WrongResults,
                                               Party::ResourceProvider, 0});
          }) == "NotAssignedMediator");
    CHECK(thrown_code([&] {
              led.post_mediation_result("m2", {5, Verdict::WrongResults,
                                               Party::ResourceProvider, 0});
          }) == "NotAssignedMediator");
    CHECK(thrown_code([&] {
              led.post_mediation_result("m1", {5, Verdict::CorrectResults,
                                               Party::ResourceProvider, 0});
          }) == "InvalidVerdict");
    CHECK(thrown_code([&] {
              led.post_mediation_result("m1", {5, Verdict::NonDeterministic,
                                               Party::ResourceProvider, 0});
          }) == "InvalidVerdict");

    led.post_mediation_result(
        "m1", {5, Verdict::WrongResults, Party::ResourceProvider, 0});

    // creator: deposit back minus charge, plus damages = the actual price
    CHECK(led.balance("jc") == 1000000 - 2197 - 30 + 2080 + 520);
    CHECK(led.balance("rp") == 1000000 - 2203); // whole deposit forfeited
    CHECK(led.balance("m1") == 500 + 1040 + 100); // fee 520*2 + availability
    CHECK(led.sink_balance() == 60 + 620);        // residual of the pool
    CHECK(led.escrow_total() == 0);
    CHECK(led.conservation_residual() == 0);
    CHECK(led.job_state(1) == JobState::Closed);

    const auto& e = last_event(led);
    CHECK(e.kind == EventKind::MatchClosed);
    CHECK(field(e, "outcome") == "mediated");
    CHECK(field(e, "damages") == "520");
    CHECK(field(e, "mediationFee") == "1040");
    CHECK(field(e, "mediatorPayout") == "1140");
    CHECK(field(e, "sinkGain") == "620");
    const auto& v = led.events()[led.events().size() - 2];
    CHECK(v.kind == EventKind::MediationResultPosted);
    CHECK(field(v, "verdict") == "WrongResults");
    CHECK(field(v, "faultyParty") == "ResourceProvider");
}

TEST_CASE("mediation faulting the creator compensates the provider") {
    Ledger led = make_ledger();
    match_both(led);
    led.advance_block();
    led.post_result("rp", full_result());
    led.reject_result("jc", 5);
    led.post_mediation_result(
        "m1", {5, Verdict::CorrectResults, Party::JobCreator, 42});

    CHECK(led.balance("rp") == 1000000 - 2203 + 2080 + 520);
    CHECK(led.balance("jc") == 1000000 - 2197 - 30);
    CHECK(led.balance("m1") == 500 + 1040 + 100);
    CHECK(led.sink_balance() == 60 + 620);
    CHECK(led.conservation_residual() == 0);
}

TEST_CASE("mediation before any rejection is a state error") {
    Ledger led = make_ledger();
    match_both(led);
    led.advance_block();
    led.post_result("rp", full_result());
    CHECK(thrown_code([&] {
              led.post_mediation_result("m1", {5, Verdict::CorrectResults,
                                               Party::JobCreator, 0});
          }) == "WrongState");
    CHECK(thrown_code([&] {
              led.post_mediation_result("m1", {999, Verdict::CorrectResults,
                                               Party::JobCreator, 0});
          }) == "UnknownId");
}

TEST_CASE("damages follow the convention: actual price vs frozen estimate") {
    JobResult partial;
    partial.matchId = 5;
    partial.status = ResultStatus::Completed;
    partial.usage = {50, 5}; // price 260

    {
        Ledger led = make_ledger(); // ActualPrice
        match_both(led);
        led.advance_block();
        led.post_result("rp", partial);
        led.reject_result("jc", 5);
        led.post_mediation_result(
            "m1", {5, Verdict::WrongResults, Party::ResourceProvider, 0});
        CHECK(field(last_event(led), "damages") == "260");
        CHECK(led.balance("jc") == 1000000 - 2197 - 30 + 2080 + 260);
        CHECK(led.conservation_residual() == 0);
    }
    {
        auto p = base_params();
        p.piDConvention = PiDConvention::Estimate;
        Ledger led = make_ledger(p);
        match_both(led);
        led.advance_block();
        led.post_result("rp", partial);
        led.reject_result("jc", 5);
        led.post_mediation_result(
            "m1", {5, Verdict::WrongResults, Party::ResourceProvider, 0});
        CHECK(field(last_event(led), "damages") == "520");
        CHECK(led.conservation_residual() == 0);
    }
    {
        // a non-completed result is not priceable: damages fall back to the
        // estimate even under the actual-price convention
        Ledger led = make_ledger();
        match_both(led);
        led.advance_block();
        JobResult declined;
        declined.matchId = 5;
        declined.status = ResultStatus::Declined;
        led.post_result("rp", declined);
        led.reject_result("jc", 5);
        led.post_mediation_result(
            "m1", {5, Verdict::WrongResults, Party::ResourceProvider, 0});
        CHECK(field(last_event(led), "damages") == "520");
        CHECK(led.conservation_residual() == 0);
    }
}

TEST_CASE("a thin faulted deposit pays damages first, then the mediator") {
    auto p = base_params();
    p.theta = 0;
    p.n = 1;
    Ledger led = make_ledger(p);
    // min deposit shrinks to 520*1 + 100 = 620; no incentives this time
    auto jo = base_job(620);
    jo.matchIncentive = 0;
    jo.depositValue = 620;
    auto ro = base_res(620);
    ro.matchIncentive = 0;
    ro.depositValue = 620;
    led.post_job_offer(jo);
    led.post_resource_offer(ro);
    led.advance_block();
    led.post_match("sol", base_match());
    led.advance_block();
    led.post_result("rp", full_result());
    led.reject_result("jc", 5);
    led.post_mediation_result(
        "m1", {5, Verdict::WrongResults, Party::ResourceProvider, 0});

    // pool = 620 + 100 = 720: damages 520 paid in full, the mediation fee
    // (520 * n = 520) only partially, the availability payment not at all
    const auto& e = last_event(led);
    CHECK(field(e, "damages") == "520");
    CHECK(field(e, "mediationFee") == "200");
    CHECK(field(e, "mediatorPayout") == "200");
    CHECK(field(e, "sinkGain") == "0");
    CHECK(led.balance("m1") == 700);
    CHECK(led.balance("jc") == 1000000 - 630 - 30 + 520 + 520);
    CHECK(led.balance("rp") == 1000000 - 640);
    CHECK(led.conservation_residual() == 0);
}

TEST_CASE("job timeout compensates the creator from the provider's deposit") {
    Ledger led = make_ledger();
    match_both(led, 5000);

    CHECK(thrown_code([&] { led.timeout("outsider", 5); }) == "NotParty");
    led.advance_block(3); // effect time 5000 == deadline: not yet
    CHECK(thrown_code([&] { led.timeout("jc", 5); }) == "DeadlineNotReached");
    led.advance_block(); // effect time 6000
    led.timeout("jc", 5);

    CHECK(led.job_state(1) == JobState::TimedOut);
    CHECK(led.balance("jc") == 1000000 - 2197 + 2180 + 520);
    CHECK(led.balance("rp") == 1000000 - 2203 + 2180 - 520);
    CHECK(led.balance("m1") == 500); // the mediator was never involved
    CHECK(led.escrow_total() == 0);
    CHECK(led.conservation_residual() == 0);
    const auto& e = last_event(led);
    CHECK(e.kind == EventKind::JobTimedOut);
    CHECK(field(e, "compensation") == "520");
    CHECK(field(e, "caller") == "jc");

    CHECK(thrown_code([&] { led.timeout("jc", 5); }) == "WrongState");
}

TEST_CASE("timeout is a party-only call and needs an armed state") {
    Ledger led = make_ledger();
    match_both(led);
    led.advance_block();
    led.post_result("rp", full_result());
    // ResultPosted has no timeout
    led.advance_block(50);
    CHECK(thrown_code([&] { led.timeout("jc", 5); }) == "WrongState");
    CHECK(thrown_code([&] { led.timeout("jc", 999); }) == "UnknownId");
}

TEST_CASE("mediation timeout pays the provider half and the mediator nothing") {
    Ledger led = make_ledger();
    match_both(led);
    led.advance_block(); // current 2: result effective at 3000
    led.post_result("rp", full_result());
    led.reject_result("jc", 5); // effective 4000, deadline 9000

    led.advance_block(5); // current 8, effect 9000 == deadline
    CHECK(thrown_code([&] { led.timeout("rp", 5); }) == "DeadlineNotReached");
    led.advance_block(); // effect 10000
    led.timeout("rp", 5);

    CHECK(led.job_state(1) == JobState::TimedOut);
    CHECK(led.balance("rp") == 1000000 - 2203 + 2180 + 260); // half of 520
    CHECK(led.balance("jc") == 1000000 - 2197 - 30 + 2180 - 260);
    CHECK(led.balance("m1") == 500);
    CHECK(led.sink_balance() == 60);
    CHECK(led.escrow_total() == 0);
    CHECK(led.conservation_residual() == 0);
    const auto& e = last_event(led);
    CHECK(e.kind == EventKind::MediationTimedOut);
    CHECK(field(e, "compensation") == "260");
}

TEST_CASE("failed calls change nothing at all") {
    Ledger led = make_ledger();
    match_both(led);
    led.advance_block();
    led.post_result("rp", full_result());

    const Money jc = led.balance("jc");
    const Money rp = led.balance("rp");
    const Money sink = led.sink_balance();
    const Money escrow = led.escrow_total();
    const std::size_t eventCount = led.events().size();

    CHECK(thrown_code([&] { led.accept_result("rp", 5); }) ==
          "ReactionWindowOpen");
    CHECK(thrown_code([&] { led.accept_result("outsider", 5); }) == "NotParty");
    CHECK(thrown_code([&] { led.reject_result("rp", 5); }) == "NotJobCreator");
    CHECK(thrown_code([&] { led.post_result("rp", full_result()); }) ==
          "WrongState");
    CHECK(thrown_code([&] { led.post_match("sol", base_match()); }) ==
          "DuplicateId");
    CHECK(thrown_code([&] { led.timeout("jc", 5); }) == "WrongState");

    CHECK(led.balance("jc") == jc);
    CHECK(led.balance("rp") == rp);
    CHECK(led.sink_balance() == sink);
    CHECK(led.escrow_total() == escrow);
    CHECK(led.events().size() == eventCount);
    CHECK(led.job_state(1) == JobState::ResultPosted);
    CHECK(led.conservation_residual() == 0);
}

TEST_CASE("the event log is totally ordered with per-block indices") {
    Ledger led = make_ledger();
    match_both(led);
    led.advance_block();
    led.post_result("rp", full_result());
    led.advance_block();
    led.accept_result("jc", 5);

    const auto& events = led.events();
    REQUIRE(events.size() >= 4);
    for (std::size_t i = 1; i < events.size(); ++i) {
        const auto& a = events[i - 1];
        const auto& b = events[i];
        const bool ordered =
            a.block < b.block || (a.block == b.block && a.index < b.index);
        CHECK(ordered);
        if (a.block != b.block) CHECK(b.index == 0);
    }
    // registrations and offer posts share effect block 1
    CHECK(events.front().block == 1);
    CHECK(events.front().kind == EventKind::JobCreatorRegistered);
    CHECK(events.back().block == 4);
    CHECK(events.back().kind == EventKind::MatchClosed);
}

TEST_CASE("queries expose offers, matches and reject unknown ids") {
    Ledger led = make_ledger();
    match_both(led);
    CHECK(led.job_offer(1).instructionLimit == 100);
    CHECK(led.resource_offer(2).instructionPrice == 5);
    CHECK(led.match(5).jobOfferId == 1);
    CHECK(thrown_code([&] { led.job_offer(999); }) == "UnknownId");
    CHECK(thrown_code([&] { led.resource_offer(999); }) == "UnknownId");
    CHECK(thrown_code([&] { led.match(999); }) == "UnknownId");
    CHECK(thrown_code([&] { led.job_state(999); }) == "UnknownId");
    CHECK(led.platform().theta == 2);
    CHECK(Ledger::compute_job_price({100, 10}, base_res()) == 520);
    CHECK(led.job_estimate(base_job()) == 520);
}
