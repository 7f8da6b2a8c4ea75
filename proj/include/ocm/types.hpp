#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ocm/money.hpp"

namespace ocm {

using Id = std::uint64_t;        // offer / match identifiers, chosen by callers
using AccountId = std::string;
using TimeMs = std::int64_t;     // simulated time, integer milliseconds
using ResultHash = std::uint64_t;

// Lifecycle of a job, keyed by its job offer. Legal transitions:
//   OfferPosted -> Canceled | Matched
//   Matched -> ResultPosted | TimedOut
//   ResultPosted -> Closed | MediationRequested
//   MediationRequested -> Closed | TimedOut
// Closed, Canceled and TimedOut are terminal.
enum class JobState {
    OfferPosted,
    Canceled,
    Matched,
    ResultPosted,
    MediationRequested,
    Closed,
    TimedOut,
};

bool is_legal_transition(JobState from, JobState to);

// Status a resource provider attaches to a posted result.
enum class ResultStatus {
    Completed,
    Declined,
    JobDescriptionError,
    JobNotFound,
    MemoryExceeded,
    StorageExceeded,
    InstructionsExceeded,
    BandwidthExceeded,
    ExceptionOccured,
    DirectoryUnavailable,
};
inline constexpr int kResultStatusCount = 10;

// Mediator's stated reason for its decision. CorrectResults and
// NonDeterministic always fault the job creator.
enum class Verdict {
    ResultNotFound,
    TooMuchCost,
    WrongResults,
    CorrectResults,
    InvalidResultStatus,
    NonDeterministic,
};

enum class Party {
    ResourceProvider,
    JobCreator,
};

enum class EventKind {
    JobCreatorRegistered,
    ResourceProviderRegistered,
    MediatorRegistered,
    JobOfferPosted,
    ResourceOfferPosted,
    JobOfferCanceled,
    ResourceOfferCanceled,
    Matched,
    ResultPosted,
    JobAssignedForMediation,
    MediationResultPosted,
    MatchClosed,
    JobTimedOut,
    MediationTimedOut,
};

const char* to_string(JobState s);
const char* to_string(ResultStatus s);
const char* to_string(Verdict v);
const char* to_string(Party p);
const char* to_string(EventKind k);

ResultStatus parse_result_status(const std::string& s);
Verdict parse_verdict(const std::string& s);
Party parse_party(const std::string& s);

struct UsageReport {
    std::uint64_t instructionCount = 0;
    std::uint64_t bandwidth = 0;
};

struct JobOffer {
    AccountId jcId;
    Id offerId = 0;
    std::uint64_t instructionLimit = 0;
    std::uint64_t bandwidthLimit = 0;
    std::uint64_t ramLimit = 0;
    std::uint64_t localStorageLimit = 0;
    Money instructionMaxPrice = 0;   // micro-units per instruction
    Money bandwidthMaxPrice = 0;     // micro-units per bandwidth unit
    TimeMs completionDeadline = 0;
    std::string directory;
    std::string arch;
    Money depositValue = 0;
    Money matchIncentive = 0;
};

struct ResourceOffer {
    AccountId rpId;
    Id offerId = 0;
    std::uint64_t instructionCapacity = 0;
    std::uint64_t bandwidthCapacity = 0;
    std::uint64_t ramCapacity = 0;
    std::uint64_t localStorageCapacity = 0;
    Money instructionPrice = 0;
    Money bandwidthPrice = 0;
    Money depositValue = 0;
    Money matchIncentive = 0;
};

struct Match {
    Id matchId = 0;
    Id jobOfferId = 0;
    Id resourceOfferId = 0;
    AccountId mediatorId;
    TimeMs matchTime = 0;
};

struct JobResult {
    Id matchId = 0;
    ResultStatus status = ResultStatus::Completed;
    ResultHash resultHash = 0;
    UsageReport usage;
    TimeMs timestamp = 0;
};

struct MediationResult {
    Id matchId = 0;
    Verdict verdict = Verdict::CorrectResults;
    Party faultyParty = Party::JobCreator;
    ResultHash mediatorResultHash = 0;
};

// One entry of the append-only ledger event log, totally ordered by
// (block, index). `fields` holds event-specific key=value details in a
// fixed, deterministic order.
struct LedgerEvent {
    std::int64_t block = 0;
    std::uint32_t index = 0;
    EventKind kind = EventKind::JobOfferPosted;
    Id jobId = 0;
    std::vector<std::pair<std::string, std::string>> fields;
};

// Renders events as CSV with header "block,index,event,jobId,fields";
// the fields column packs the detail pairs as k=v pairs joined by ';'.
std::string events_to_csv(const std::vector<LedgerEvent>& events);

} // namespace ocm
