#include "ocm/agents.hpp"

namespace ocm {

ExecutionSample execute_job(const JobSpec& job, RngStream& rng) {
    ExecutionSample s;
    if (rng.bernoulli(job.p_a)) {
        s.resultHash = job.trueResultHash;
        s.normal = true;
    } else {
        s.resultHash = make_result_hash(HashSpace::Anomalous, job.jobId, rng.draws());
        s.normal = false;
    }
    return s;
}

RpAction rp_act(const RpStrategy& strategy, const JobSpec& job, RngStream& rng) {
    RpAction a;
    if (rng.bernoulli(strategy.p_e)) {
        a.executed = true;
        a.sample = execute_job(job, rng);
        a.privateCost = strategy.c_e;
    } else {
        a.executed = false;
        a.sample.resultHash = make_result_hash(HashSpace::Forged, job.jobId);
        a.sample.normal = false;
        a.privateCost = strategy.c_d;
    }
    return a;
}

const char* to_string(Reaction r) {
    switch (r) {
    case Reaction::Accept: return "Accept";
    case Reaction::Reject: return "Reject";
    case Reaction::Ignore: return "Ignore";
    }
    return "?";
}

JcReaction jc_react(const JcStrategy& strategy, const JobSpec& job,
                    ResultHash resultHash, RngStream& rng) {
    JcReaction r;
    if (!rng.bernoulli(strategy.p_v)) {
        r.reaction = Reaction::Accept;
        return r;
    }
    r.verified = true;
    r.privateCost = strategy.c_v;
    if (resultHash == job.trueResultHash) {
        r.reaction = Reaction::Accept;
    } else if (hash_space(resultHash) == HashSpace::Anomalous) {
        r.reaction = strategy.rejectOnAnomaly ? Reaction::Reject : Reaction::Accept;
    } else {
        r.reaction = Reaction::Reject;
    }
    return r;
}

MediationOutcome mediate(const JobSpec& job, ResultHash rpResultHash, int n,
                         RngStream& rng) {
    MediationOutcome out;
    out.samples = n;
    bool clean = true;
    for (int i = 0; i < n; ++i) {
        ExecutionSample s = execute_job(job, rng);
        if (!s.normal) clean = false;
    }
    if (clean) {
        out.replicatedHash = job.trueResultHash;
        if (rpResultHash == job.trueResultHash) {
            out.faultyParty = Party::JobCreator;
            out.verdict = Verdict::CorrectResults;
        } else {
            out.faultyParty = Party::ResourceProvider;
            out.verdict = Verdict::WrongResults;
        }
    } else {
        out.faultyParty = Party::JobCreator;
        out.verdict = rpResultHash == job.trueResultHash
                          ? Verdict::CorrectResults
                          : Verdict::NonDeterministic;
    }
    return out;
}

} // namespace ocm
