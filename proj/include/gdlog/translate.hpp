#pragma once

#include "gdlog/model.hpp"

#include <set>
#include <string>
#include <vector>

namespace gdlog {

/// Prefix of generated sampler relations; rejected in user programs.
inline constexpr const char* kAuxPrefix = "__aux_";

enum class ExistentialRuleKind { Deterministic, Sampler, CopyDown };

/// One rule of the existential version of a program. Sampler rules carry
/// the full parameter tuple in their auxiliary head so that the parameters
/// are only projected away in the matching copy-down rule.
struct ExistentialRule {
    int occurrence_index = 0;
    ExistentialRuleKind kind = ExistentialRuleKind::Deterministic;
    /// For sampler rules the head atom covers the non-existential prefix
    /// of the auxiliary relation (grounding part plus parameters); the
    /// sampled attribute is implicit and appended when the rule fires.
    Atom head;
    std::vector<Atom> body;

    // sampler-only fields
    std::string aux_relation;
    std::string dist_name;       // canonical family name
    std::size_t param_offset = 0;  // first parameter position in the head

    bool samples() const { return kind == ExistentialRuleKind::Sampler; }
};

struct ExistentialProgram {
    Schema schema;  // combined: original relations plus auxiliaries
    std::vector<ExistentialRule> rules;
    /// Relations of the source program (the default projection target).
    std::set<std::string> original_relations;

    const RelationSymbol& relation(const std::string& name) const;
};

/// Replaces every probabilistic rule with a sampler rule over a fresh
/// auxiliary relation plus a copy-down rule; deterministic rules pass
/// through unchanged. Requires a validated program.
ExistentialProgram to_existential(const Program& program);

/// Drops every fact whose relation is not in `keep`.
Instance project_instance(const Instance& instance, const std::set<std::string>& keep);

std::string aux_relation_name(const std::string& head_relation, int occurrence_index);

}  // namespace gdlog
