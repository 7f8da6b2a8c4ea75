#include "ocm/types.hpp"

#include <sstream>

#include "ocm/error.hpp"

namespace ocm {

bool is_legal_transition(JobState from, JobState to) {
    switch (from) {
    case JobState::OfferPosted:
        return to == JobState::Canceled || to == JobState::Matched;
    case JobState::Matched:
        return to == JobState::ResultPosted || to == JobState::TimedOut;
    case JobState::ResultPosted:
        return to == JobState::Closed || to == JobState::MediationRequested;
    case JobState::MediationRequested:
        return to == JobState::Closed || to == JobState::TimedOut;
    case JobState::Closed:
    case JobState::Canceled:
    case JobState::TimedOut:
        return false;
    }
    return false;
}

const char* to_string(JobState s) {
    switch (s) {
    case JobState::OfferPosted: return "OfferPosted";
    case JobState::Canceled: return "Canceled";
    case JobState::Matched: return "Matched";
    case JobState::ResultPosted: return "ResultPosted";
    case JobState::MediationRequested: return "MediationRequested";
    case JobState::Closed: return "Closed";
    case JobState::TimedOut: return "TimedOut";
    }
    return "?";
}

const char* to_string(ResultStatus s) {
    switch (s) {
    case ResultStatus::Completed: return "Completed";
    case ResultStatus::Declined: return "Declined";
    case ResultStatus::JobDescriptionError: return "JobDescriptionError";
    case ResultStatus::JobNotFound: return "JobNotFound";
    case ResultStatus::MemoryExceeded: return "MemoryExceeded";
    case ResultStatus::StorageExceeded: return "StorageExceeded";
    case ResultStatus::InstructionsExceeded: return "InstructionsExceeded";
    case ResultStatus::BandwidthExceeded: return "BandwidthExceeded";
    case ResultStatus::ExceptionOccured: return "ExceptionOccured";
    case ResultStatus::DirectoryUnavailable: return "DirectoryUnavailable";
    }
    return "?";
}

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::ResultNotFound: return "ResultNotFound";
    case Verdict::TooMuchCost: return "TooMuchCost";
    case Verdict::WrongResults: return "WrongResults";
    case Verdict::CorrectResults: return "CorrectResults";
    case Verdict::InvalidResultStatus: return "InvalidResultStatus";
    case Verdict::NonDeterministic: return "NonDeterministic";
    }
    return "?";
}

const char* to_string(Party p) {
    switch (p) {
    case Party::ResourceProvider: return "ResourceProvider";
    case Party::JobCreator: return "JobCreator";
    }
    return "?";
}

const char* to_string(EventKind k) {
    switch (k) {
    case EventKind::JobCreatorRegistered: return "JobCreatorRegistered";
    case EventKind::ResourceProviderRegistered: return "ResourceProviderRegistered";
    case EventKind::MediatorRegistered: return "MediatorRegistered";
    case EventKind::JobOfferPosted: return "JobOfferPosted";
    case EventKind::ResourceOfferPosted: return "ResourceOfferPosted";
    case EventKind::JobOfferCanceled: return "JobOfferCanceled";
    case EventKind::ResourceOfferCanceled: return "ResourceOfferCanceled";
    case EventKind::Matched: return "Matched";
    case EventKind::ResultPosted: return "ResultPosted";
    case EventKind::JobAssignedForMediation: return "JobAssignedForMediation";
    case EventKind::MediationResultPosted: return "MediationResultPosted";
    case EventKind::MatchClosed: return "MatchClosed";
    case EventKind::JobTimedOut: return "JobTimedOut";
    case EventKind::MediationTimedOut: return "MediationTimedOut";
    }
    return "?";
}

ResultStatus parse_result_status(const std::string& s) {
    static const ResultStatus all[] = {
        ResultStatus::Completed, ResultStatus::Declined,
        ResultStatus::JobDescriptionError, ResultStatus::JobNotFound,
        ResultStatus::MemoryExceeded, ResultStatus::StorageExceeded,
        ResultStatus::InstructionsExceeded, ResultStatus::BandwidthExceeded,
        ResultStatus::ExceptionOccured, ResultStatus::DirectoryUnavailable};
    for (ResultStatus rs : all)
        if (s == to_string(rs)) return rs;
    throw Error("ConfigError", "unknown result status '" + s + "'");
}

Verdict parse_verdict(const std::string& s) {
    static const Verdict all[] = {
        Verdict::ResultNotFound, Verdict::TooMuchCost, Verdict::WrongResults,
        Verdict::CorrectResults, Verdict::InvalidResultStatus,
        Verdict::NonDeterministic};
    for (Verdict v : all)
        if (s == to_string(v)) return v;
    throw Error("ConfigError", "unknown verdict '" + s + "'");
}

Party parse_party(const std::string& s) {
    if (s == to_string(Party::ResourceProvider)) return Party::ResourceProvider;
    if (s == to_string(Party::JobCreator)) return Party::JobCreator;
    throw Error("ConfigError", "unknown party '" + s + "'");
}

std::string events_to_csv(const std::vector<LedgerEvent>& events) {
    std::ostringstream os;
    os << "block,index,event,jobId,fields\n";
    for (const LedgerEvent& e : events) {
        os << e.block << ',' << e.index << ',' << to_string(e.kind) << ','
           << e.jobId << ',';
        bool first = true;
        for (const auto& [k, v] : e.fields) {
            if (!first) os << ';';
            first = false;
            os << k << '=' << v;
        }
        os << '\n';
    }
    return os.str();
}

} // namespace ocm
