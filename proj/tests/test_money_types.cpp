#include <catch2/catch_amalgamated.hpp>

#include <limits>

#include "ocm/error.hpp"
#include "ocm/money.hpp"
#include "ocm/types.hpp"

using namespace ocm;

namespace {

bool throws_code(const std::function<void()>& fn, const std::string& code) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code() == code;
    }
    return false;
}

} // namespace

TEST_CASE("money arithmetic is exact and overflow-checked") {
    constexpr Money maxv = std::numeric_limits<Money>::max();
    constexpr Money minv = std::numeric_limits<Money>::min();

    CHECK(money_add(2, 3) == 5);
    CHECK(money_sub(2, 3) == -1);
    CHECK(money_mul(7, -3) == -21);
    CHECK(money_add(maxv, 0) == maxv);
    CHECK(money_mul(maxv, 1) == maxv);

    CHECK(throws_code([&] { money_add(maxv, 1); }, "OverflowError"));
    CHECK(throws_code([&] { money_add(minv, -1); }, "OverflowError"));
    CHECK(throws_code([&] { money_sub(minv, 1); }, "OverflowError"));
    CHECK(throws_code([&] { money_mul(maxv, 2); }, "OverflowError"));
    CHECK(throws_code([&] { money_mul(minv, -1); }, "OverflowError"));
}

TEST_CASE("job state machine permits exactly the documented transitions") {
    using S = JobState;
    const S all[] = {S::OfferPosted, S::Canceled,  S::Matched,
                     S::ResultPosted, S::MediationRequested,
                     S::Closed,       S::TimedOut};
    auto legal = [](S from, S to) {
        if (from == S::OfferPosted)
            return to == S::Canceled || to == S::Matched;
        if (from == S::Matched)
            return to == S::ResultPosted || to == S::TimedOut;
        if (from == S::ResultPosted)
            return to == S::Closed || to == S::MediationRequested;
        if (from == S::MediationRequested)
            return to == S::Closed || to == S::TimedOut;
        return false;
    };
    for (S from : all)
        for (S to : all)
            CHECK(is_legal_transition(from, to) == legal(from, to));
}

TEST_CASE("result status to_string/parse round-trips all ten values") {
    const ResultStatus all[] = {
        ResultStatus::Completed,          ResultStatus::Declined,
        ResultStatus::JobDescriptionError, ResultStatus::JobNotFound,
        ResultStatus::MemoryExceeded,     ResultStatus::StorageExceeded,
        ResultStatus::InstructionsExceeded, ResultStatus::BandwidthExceeded,
        ResultStatus::ExceptionOccured,   ResultStatus::DirectoryUnavailable};
    REQUIRE(static_cast<int>(std::size(all)) == kResultStatusCount);
    for (ResultStatus s : all)
        CHECK(parse_result_status(to_string(s)) == s);
    CHECK(throws_code([] { parse_result_status("Bogus"); }, "ConfigError"));
}

TEST_CASE("verdict and party round-trips") {
    const Verdict verdicts[] = {Verdict::ResultNotFound,  Verdict::TooMuchCost,
                                Verdict::WrongResults,    Verdict::CorrectResults,
                                Verdict::InvalidResultStatus,
                                Verdict::NonDeterministic};
    for (Verdict v : verdicts)
        CHECK(parse_verdict(to_string(v)) == v);
    CHECK(parse_party("ResourceProvider") == Party::ResourceProvider);
    CHECK(parse_party("JobCreator") == Party::JobCreator);
    CHECK(throws_code([] { parse_verdict("?"); }, "ConfigError"));
    CHECK(throws_code([] { parse_party("Nobody"); }, "ConfigError"));
}

TEST_CASE("event log CSV packs fields deterministically") {
    std::vector<LedgerEvent> events;
    LedgerEvent e;
    e.block = 3;
    e.index = 1;
    e.kind = EventKind::Matched;
    e.jobId = 42;
    e.fields = {{"match", "7"}, {"solver", "sol"}};
    events.push_back(e);
    LedgerEvent e2;
    e2.block = 4;
    e2.index = 0;
    e2.kind = EventKind::JobTimedOut;
    e2.jobId = 42;
    events.push_back(e2);

    CHECK(events_to_csv(events) ==
          "block,index,event,jobId,fields\n"
          "3,1,Matched,42,match=7;solver=sol\n"
          "4,0,JobTimedOut,42,\n");
}
