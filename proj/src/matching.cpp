#include "ocm/matching.hpp"

#include <algorithm>

#include "ocm/error.hpp"

namespace ocm::matching {

namespace {

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

} // namespace

FeasibilityReport check_feasible(const JobOffer& jo, const ResourceOffer& ro,
                                 const FeasibilityContext& ctx, TimeMs now) {
    FeasibilityReport report;
    auto fail = [&](const char* id) { report.violations.push_back(id); };

    if (ro.instructionCapacity < jo.instructionLimit) fail("instruction_capacity");
    if (ro.ramCapacity < jo.ramLimit) fail("ram_capacity");
    if (ro.localStorageCapacity < jo.localStorageLimit) fail("local_storage_capacity");
    if (ro.bandwidthCapacity < jo.bandwidthLimit) fail("bandwidth_capacity");
    if (ro.instructionPrice > jo.instructionMaxPrice) fail("instruction_price");
    if (ro.bandwidthPrice > jo.bandwidthMaxPrice) fail("bandwidth_price");
    if (ctx.rpArch != jo.arch) fail("architecture");
    if (!contains(ctx.rpTrustedDirectories, jo.directory)) fail("directory");

    // Lexicographically smallest commonly trusted mediator that fits the job.
    for (const auto& [id, med] : ctx.mediators) {
        if (!contains(ctx.jcTrustedMediators, id)) continue;
        if (!contains(ctx.rpTrustedMediators, id)) continue;
        if (med.arch != jo.arch) continue;
        if (!contains(med.trustedDirectories, jo.directory)) continue;
        report.chosenMediator = id;
        break;
    }
    if (report.chosenMediator.empty()) fail("mediator");

    // The job must be executable before its completion deadline at the
    // provider's speed. Compared in microseconds to keep the math integral.
    const unsigned __int128 finishUs =
        static_cast<unsigned __int128>(now < 0 ? 0 : now) * 1000 +
        static_cast<unsigned __int128>(ctx.rpTimePerInstructionUs) * jo.instructionLimit;
    const unsigned __int128 deadlineUs =
        static_cast<unsigned __int128>(jo.completionDeadline < 0 ? 0 : jo.completionDeadline) * 1000;
    if (now < 0 || jo.completionDeadline < 0 || finishUs > deadlineUs) fail("deadline");

    report.feasible = report.violations.empty();
    return report;
}

SolverMode parse_solver_mode(const std::string& s) {
    if (s == "greedy") return SolverMode::Greedy;
    if (s == "maximum") return SolverMode::Maximum;
    throw Error("ConfigError", "unknown solver mode '" + s + "'");
}

const char* to_string(SolverMode mode) {
    return mode == SolverMode::Greedy ? "greedy" : "maximum";
}

namespace {

struct EdgeSet {
    // adjacency[j] lists feasible resource indices for job j, ascending
    std::vector<std::vector<std::size_t>> adjacency;
    std::vector<std::vector<std::string>> mediators; // parallel to adjacency
};

EdgeSet build_edges(std::size_t jobCount, std::size_t resourceCount,
                    const FeasibilityFn& feasible) {
    EdgeSet e;
    e.adjacency.resize(jobCount);
    e.mediators.resize(jobCount);
    for (std::size_t j = 0; j < jobCount; ++j) {
        for (std::size_t r = 0; r < resourceCount; ++r) {
            FeasibilityReport rep = feasible(j, r);
            if (rep.feasible) {
                e.adjacency[j].push_back(r);
                e.mediators[j].push_back(rep.chosenMediator);
            }
        }
    }
    return e;
}

// Kuhn-style augmenting path search from job j.
bool augment(const EdgeSet& e, std::size_t j, std::vector<bool>& visited,
             std::vector<std::ptrdiff_t>& resourceMatch) {
    for (std::size_t k = 0; k < e.adjacency[j].size(); ++k) {
        const std::size_t r = e.adjacency[j][k];
        if (visited[r]) continue;
        visited[r] = true;
        if (resourceMatch[r] < 0 ||
            augment(e, static_cast<std::size_t>(resourceMatch[r]), visited,
                    resourceMatch)) {
            resourceMatch[r] = static_cast<std::ptrdiff_t>(j);
            return true;
        }
    }
    return false;
}

} // namespace

std::vector<MatchProposal> match_offers(std::size_t jobCount,
                                        std::size_t resourceCount,
                                        const FeasibilityFn& feasible,
                                        SolverMode mode) {
    const EdgeSet e = build_edges(jobCount, resourceCount, feasible);
    std::vector<std::ptrdiff_t> resourceMatch(resourceCount, -1);

    if (mode == SolverMode::Greedy) {
        for (std::size_t j = 0; j < jobCount; ++j) {
            for (std::size_t r : e.adjacency[j]) {
                if (resourceMatch[r] < 0) {
                    resourceMatch[r] = static_cast<std::ptrdiff_t>(j);
                    break;
                }
            }
        }
    } else {
        for (std::size_t j = 0; j < jobCount; ++j) {
            std::vector<bool> visited(resourceCount, false);
            augment(e, j, visited, resourceMatch);
        }
    }

    // Emit proposals in job arrival order with the edge's chosen mediator.
    std::vector<std::ptrdiff_t> jobMatch(jobCount, -1);
    for (std::size_t r = 0; r < resourceCount; ++r)
        if (resourceMatch[r] >= 0) jobMatch[resourceMatch[r]] = static_cast<std::ptrdiff_t>(r);

    std::vector<MatchProposal> out;
    for (std::size_t j = 0; j < jobCount; ++j) {
        if (jobMatch[j] < 0) continue;
        const std::size_t r = static_cast<std::size_t>(jobMatch[j]);
        MatchProposal m;
        m.jobIndex = j;
        m.resourceIndex = r;
        for (std::size_t k = 0; k < e.adjacency[j].size(); ++k) {
            if (e.adjacency[j][k] == r) {
                m.mediatorId = e.mediators[j][k];
                break;
            }
        }
        out.push_back(std::move(m));
    }
    return out;
}

} // namespace ocm::matching
