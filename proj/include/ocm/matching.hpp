#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ocm/types.hpp"

namespace ocm::matching {

struct MediatorView {
    std::string arch;
    std::vector<std::string> trustedDirectories;
};

// Everything feasibility needs beyond the two offers: the registered
// attributes of the offers' owners and of the candidate mediators.
struct FeasibilityContext {
    std::string rpArch;
    std::uint64_t rpTimePerInstructionUs = 1;
    std::vector<std::string> rpTrustedMediators;
    std::vector<std::string> rpTrustedDirectories;
    std::vector<std::string> jcTrustedMediators;
    std::map<std::string, MediatorView> mediators;
};

// `violations` lists the identifiers of every failed condition:
//   instruction_capacity, ram_capacity, local_storage_capacity,
//   bandwidth_capacity, instruction_price, bandwidth_price, architecture,
//   directory, mediator, deadline.
// `chosenMediator` is the lexicographically smallest commonly trusted
// mediator whose architecture matches the job and which trusts the job's
// directory (empty when the mediator condition fails).
struct FeasibilityReport {
    bool feasible = false;
    std::vector<std::string> violations;
    std::string chosenMediator;
};

FeasibilityReport check_feasible(const JobOffer& jo, const ResourceOffer& ro,
                                 const FeasibilityContext& ctx, TimeMs now);

enum class SolverMode { Greedy, Maximum };

SolverMode parse_solver_mode(const std::string& s);
const char* to_string(SolverMode mode);

struct MatchProposal {
    std::size_t jobIndex = 0;
    std::size_t resourceIndex = 0;
    std::string mediatorId;
};

using FeasibilityFn =
    std::function<FeasibilityReport(std::size_t jobIndex, std::size_t resourceIndex)>;

// Matches job offers (indices 0..jobCount-1) to resource offers. Offers must
// be supplied in arrival order; both solvers scan ascending indices, so ties
// resolve toward earlier arrivals. Greedy takes, for each job in order, the
// first feasible free resource (maximal matching); Maximum runs augmenting
// paths over the feasibility graph (maximum-cardinality matching). Every
// proposal carries the report's chosen mediator.
std::vector<MatchProposal> match_offers(std::size_t jobCount, std::size_t resourceCount,
                                        const FeasibilityFn& feasible, SolverMode mode);

} // namespace ocm::matching
