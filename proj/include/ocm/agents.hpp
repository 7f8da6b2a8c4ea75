#pragma once

#include <cstdint>

#include "ocm/rng.hpp"
#include "ocm/types.hpp"

namespace ocm {

// One job as its creator designed it: p_a is the probability a single
// execution returns the normal result (1 for a deterministic job), and
// usage is the true resource consumption of a run.
struct JobSpec {
    Id jobId = 0;
    double p_a = 1.0;
    ResultHash trueResultHash = 0;
    UsageReport usage;
};

struct ExecutionSample {
    ResultHash resultHash = 0;
    bool normal = true;
};

// Runs the job once: the normal result with probability p_a, otherwise an
// anomalous result determined by the stream's draw index.
ExecutionSample execute_job(const JobSpec& job, RngStream& rng);

struct RpStrategy {
    double p_e = 1.0;   // probability of actually executing
    double c_e = 0;     // private cost of executing
    double c_d = 0;     // private cost of fabricating
};

struct RpAction {
    bool executed = true;
    ExecutionSample sample;
    double privateCost = 0;
};

// Execute with probability p_e; otherwise fabricate a result outside both
// the normal and the anomalous hash spaces.
RpAction rp_act(const RpStrategy& strategy, const JobSpec& job, RngStream& rng);

struct JcStrategy {
    double p_a = 1.0;            // the job's per-run normal probability
    double p_v = 0;              // probability of verifying the result
    bool rejectOnAnomaly = true; // the cheating JC of the game model rejects
                                 // anomalous outputs of its own job
    double c_v = 0;              // private cost of verifying
    double b = 0;                // benefit from an executed job
};

enum class Reaction { Accept, Reject, Ignore };
const char* to_string(Reaction r);

struct JcReaction {
    Reaction reaction = Reaction::Accept;
    bool verified = false;
    double privateCost = 0;
};

// Without verification the JC accepts. Verification recognizes the result's
// space: fabricated results are always rejected; anomalous results are
// rejected when rejectOnAnomaly is set; the normal result is accepted.
JcReaction jc_react(const JcStrategy& strategy, const JobSpec& job,
                    ResultHash resultHash, RngStream& rng);

struct MediationOutcome {
    Verdict verdict = Verdict::CorrectResults;
    Party faultyParty = Party::JobCreator;
    ResultHash replicatedHash = 0; // the normal result when replication was clean
    int samples = 0;
};

// Replicates the job n times. Any anomalous sample (or disagreement between
// samples) proves the job non-deterministic and faults the JC: verdict
// CorrectResults when the RP's result is the normal one, NonDeterministic
// otherwise. A clean replication faults whoever deviated: the RP when its
// result differs from the replicated result (WrongResults), else the JC
// rejected a correct result (CorrectResults).
MediationOutcome mediate(const JobSpec& job, ResultHash rpResultHash, int n,
                         RngStream& rng);

} // namespace ocm
