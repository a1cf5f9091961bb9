#pragma once

#include "gdlog/dist.hpp"
#include "gdlog/translate.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gdlog {

/// A rule occurrence together with a grounding of its head space (for
/// sampler rules: every auxiliary attribute except the sampled one).
struct ApplicablePair {
    int rule_index = 0;
    std::vector<Value> grounding;

    bool operator==(const ApplicablePair& other) const {
        return rule_index == other.rule_index && grounding == other.grounding;
    }
    /// Canonical order: occurrence index, then lexicographic grounding.
    bool operator<(const ApplicablePair& other) const {
        if (rule_index != other.rule_index) return rule_index < other.rule_index;
        return grounding < other.grounding;
    }
};

/// Deterministic total selection among applicable pairs; a pure function
/// of the pair set.
enum class PolicyKind {
    RuleIndexThenGrounding,
    ReverseRuleIndex,
    GroundingFirst,
};

std::optional<PolicyKind> policy_from_name(const std::string& name);
std::string policy_name(PolicyKind kind);

/// Selects the pair the policy fires next; `pairs` must be nonempty and in
/// canonical order.
const ApplicablePair& select_pair(PolicyKind policy, const std::vector<ApplicablePair>& pairs);

/// All pairs (rule, head grounding) whose body is satisfied and whose head
/// is not, in canonical order.
std::vector<ApplicablePair> applicable_pairs(const ExistentialProgram& prog, const Instance& d);

using Valuation = std::map<std::string, Value>;

/// Calls `yield` once per valuation of `atoms` (a conjunctive query)
/// against `d`; naive join with binding propagation.
void for_each_valuation(const Instance& d, const std::vector<Atom>& atoms,
                        const std::function<void(const Valuation&)>& yield);

/// Per-occurrence applicable-grounding counts.
std::vector<std::size_t> firing_configuration(const ExistentialProgram& prog, const Instance& d);

/// The fact produced by firing `rule` on `grounding` with sample outcome
/// `sample` (ignored for deterministic rules).
Fact fired_fact(const ExistentialRule& rule, const std::vector<Value>& grounding,
                const std::optional<Value>& sample);

/// d ∪ {fired fact}; never removes facts.
Instance extend_seq(const Instance& d, const ExistentialRule& rule,
                    const std::vector<Value>& grounding, const std::optional<Value>& sample);

struct FiringTriple {
    const ExistentialRule* rule;
    std::vector<Value> grounding;
    std::optional<Value> sample;
};

/// d ∪ all fired facts; duplicates collapse.
Instance extend_par(const Instance& d, const std::vector<FiringTriple>& triples);

struct TraceRecord {
    std::size_t step = 0;
    int rule_index = 0;
    std::vector<Value> grounding;
    std::optional<Value> sample;

    std::string str() const;
};

/// Sampled parameters of a sampler rule, extracted from its grounding.
std::vector<Value> grounding_params(const ExistentialRule& rule,
                                    const std::vector<Value>& grounding);

struct NoApplicableRule : std::runtime_error {
    NoApplicableRule() : std::runtime_error("no applicable rule") {}
};

/// Fires the policy-selected pair once; appends to `trace` when non-null.
Instance sequential_step(const ExistentialProgram& prog, const Instance& d, PolicyKind policy,
                         Rng& rng, std::size_t step_no, std::vector<TraceRecord>* trace);

/// Fires every applicable pair with independent samples, in canonical pair
/// order so results are seed-deterministic.
Instance parallel_step(const ExistentialProgram& prog, const Instance& d, Rng& rng,
                       std::size_t step_no, std::vector<TraceRecord>* trace);

enum class ChaseMode { Sequential, Parallel };

struct ChaseOutcome {
    bool terminated = false;
    Instance instance;
    std::size_t steps = 0;
};

/// Iterates chase steps until no rule is applicable or the step budget is
/// exhausted (the operational image of non-termination).
ChaseOutcome run_chase(const ExistentialProgram& prog, const Instance& d0, ChaseMode mode,
                       PolicyKind policy, std::size_t budget, Rng& rng,
                       std::vector<TraceRecord>* trace = nullptr);

struct FdViolation {
    std::string relation;
    std::vector<Value> key;     // shared non-sampled prefix
    std::vector<Value> values;  // at least two distinct sampled values
};

/// Checks that every auxiliary relation satisfies its induced functional
/// dependency (all attributes but the sampled one determine it).
std::vector<FdViolation> check_induced_fds(const ExistentialProgram& prog, const Instance& d);

}  // namespace gdlog
