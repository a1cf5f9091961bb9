#include "gdlog/chase.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace gdlog {

std::optional<PolicyKind> policy_from_name(const std::string& name) {
    if (name == "rule-index") return PolicyKind::RuleIndexThenGrounding;
    if (name == "reverse-rule-index") return PolicyKind::ReverseRuleIndex;
    if (name == "grounding-first") return PolicyKind::GroundingFirst;
    return std::nullopt;
}

std::string policy_name(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::RuleIndexThenGrounding: return "rule-index";
        case PolicyKind::ReverseRuleIndex: return "reverse-rule-index";
        case PolicyKind::GroundingFirst: return "grounding-first";
    }
    return "?";
}

const ApplicablePair& select_pair(PolicyKind policy, const std::vector<ApplicablePair>& pairs) {
    switch (policy) {
        case PolicyKind::RuleIndexThenGrounding:
            return pairs.front();
        case PolicyKind::ReverseRuleIndex: {
            // first grounding of the highest rule occurrence
            const int top = pairs.back().rule_index;
            auto it = std::lower_bound(
                pairs.begin(), pairs.end(), top,
                [](const ApplicablePair& p, int idx) { return p.rule_index < idx; });
            return *it;
        }
        case PolicyKind::GroundingFirst:
            return *std::min_element(pairs.begin(), pairs.end(),
                                     [](const ApplicablePair& a, const ApplicablePair& b) {
                                         if (a.grounding != b.grounding)
                                             return a.grounding < b.grounding;
                                         return a.rule_index < b.rule_index;
                                     });
    }
    return pairs.front();
}

namespace {

using Binding = Valuation;

/// Enumerates all body valuations by naive join with binding propagation.
void match_body(const Instance& d, const std::vector<Atom>& body, std::size_t atom_idx,
                Binding& binding, const std::function<void(const Binding&)>& yield) {
    if (atom_idx == body.size()) {
        yield(binding);
        return;
    }
    const Atom& atom = body[atom_idx];
    for (const auto& tuple : d.tuples(atom.relation)) {
        std::vector<std::string> bound_here;
        bool ok = true;
        for (std::size_t i = 0; i < atom.args.size() && ok; ++i) {
            const Term& t = atom.args[i];
            if (t.is_const()) {
                ok = t.as_const() == tuple[i];
            } else {
                auto it = binding.find(t.as_var());
                if (it == binding.end()) {
                    binding.emplace(t.as_var(), tuple[i]);
                    bound_here.push_back(t.as_var());
                } else {
                    ok = it->second == tuple[i];
                }
            }
        }
        if (ok) match_body(d, body, atom_idx + 1, binding, yield);
        for (const auto& v : bound_here) binding.erase(v);
    }
}

std::vector<Value> ground_terms(const std::vector<Term>& terms, const Binding& binding) {
    std::vector<Value> out;
    out.reserve(terms.size());
    for (const Term& t : terms) {
        if (t.is_const())
            out.push_back(t.as_const());
        else
            out.push_back(binding.at(t.as_var()));
    }
    return out;
}

/// For sampler rules: is there already a sample for this grounding?
bool aux_head_satisfied(const Instance& d, const std::string& aux,
                        const std::vector<Value>& grounding) {
    const auto& tuples = d.tuples(aux);
    auto it = tuples.lower_bound(grounding);
    return it != tuples.end() && it->size() == grounding.size() + 1 &&
           std::equal(grounding.begin(), grounding.end(), it->begin());
}

bool head_satisfied(const Instance& d, const ExistentialRule& rule,
                    const std::vector<Value>& grounding) {
    if (rule.samples()) return aux_head_satisfied(d, rule.aux_relation, grounding);
    return d.contains(Fact{rule.head.relation, grounding});
}

}  // namespace

void for_each_valuation(const Instance& d, const std::vector<Atom>& atoms,
                        const std::function<void(const Valuation&)>& yield) {
    Binding binding;
    match_body(d, atoms, 0, binding, yield);
}

std::vector<ApplicablePair> applicable_pairs(const ExistentialProgram& prog, const Instance& d) {
    std::set<ApplicablePair> pairs;
    for (const ExistentialRule& rule : prog.rules) {
        Binding binding;
        match_body(d, rule.body, 0, binding, [&](const Binding& b) {
            std::vector<Value> grounding = ground_terms(rule.head.args, b);
            if (!head_satisfied(d, rule, grounding))
                pairs.insert(ApplicablePair{rule.occurrence_index, std::move(grounding)});
        });
    }
    return {pairs.begin(), pairs.end()};
}

std::vector<std::size_t> firing_configuration(const ExistentialProgram& prog,
                                              const Instance& d) {
    std::vector<std::size_t> counts(prog.rules.size(), 0);
    for (const ApplicablePair& p : applicable_pairs(prog, d))
        ++counts[static_cast<std::size_t>(p.rule_index)];
    return counts;
}

Fact fired_fact(const ExistentialRule& rule, const std::vector<Value>& grounding,
                const std::optional<Value>& sample) {
    if (rule.samples()) {
        std::vector<Value> args = grounding;
        args.push_back(sample.value());
        return Fact{rule.aux_relation, std::move(args)};
    }
    return Fact{rule.head.relation, grounding};
}

Instance extend_seq(const Instance& d, const ExistentialRule& rule,
                    const std::vector<Value>& grounding, const std::optional<Value>& sample) {
    Instance out = d;
    out.insert(fired_fact(rule, grounding, sample));
    return out;
}

Instance extend_par(const Instance& d, const std::vector<FiringTriple>& triples) {
    Instance out = d;
    for (const FiringTriple& t : triples)
        out.insert(fired_fact(*t.rule, t.grounding, t.sample));
    return out;
}

std::string TraceRecord::str() const {
    std::ostringstream os;
    os << "step=" << step << " rule=" << rule_index << " grounding=(";
    for (std::size_t i = 0; i < grounding.size(); ++i) {
        if (i) os << ", ";
        os << grounding[i].str();
    }
    os << ")";
    if (sample) os << " sample=" << sample->str();
    return os.str();
}

std::vector<Value> grounding_params(const ExistentialRule& rule,
                                    const std::vector<Value>& grounding) {
    return {grounding.begin() + static_cast<std::ptrdiff_t>(rule.param_offset), grounding.end()};
}

namespace {

std::optional<Value> draw_sample(const ExistentialProgram&, const ExistentialRule& rule,
                                 const std::vector<Value>& grounding, Rng& rng) {
    if (!rule.samples()) return std::nullopt;
    const Distribution* dist = find_distribution(rule.dist_name);
    std::vector<Value> params = grounding_params(rule, grounding);
    dist->validate_params(params);
    return dist->sample(params, rng);
}

}  // namespace

Instance sequential_step(const ExistentialProgram& prog, const Instance& d, PolicyKind policy,
                         Rng& rng, std::size_t step_no, std::vector<TraceRecord>* trace) {
    auto pairs = applicable_pairs(prog, d);
    if (pairs.empty()) throw NoApplicableRule();
    const ApplicablePair& pair = select_pair(policy, pairs);
    const ExistentialRule& rule = prog.rules[static_cast<std::size_t>(pair.rule_index)];
    std::optional<Value> sample = draw_sample(prog, rule, pair.grounding, rng);
    if (trace) trace->push_back(TraceRecord{step_no, pair.rule_index, pair.grounding, sample});
    return extend_seq(d, rule, pair.grounding, sample);
}

Instance parallel_step(const ExistentialProgram& prog, const Instance& d, Rng& rng,
                       std::size_t step_no, std::vector<TraceRecord>* trace) {
    auto pairs = applicable_pairs(prog, d);
    if (pairs.empty()) throw NoApplicableRule();
    std::vector<FiringTriple> triples;
    triples.reserve(pairs.size());
    for (const ApplicablePair& pair : pairs) {
        const ExistentialRule& rule = prog.rules[static_cast<std::size_t>(pair.rule_index)];
        std::optional<Value> sample = draw_sample(prog, rule, pair.grounding, rng);
        if (trace)
            trace->push_back(TraceRecord{step_no, pair.rule_index, pair.grounding, sample});
        triples.push_back(FiringTriple{&rule, pair.grounding, std::move(sample)});
    }
    return extend_par(d, triples);
}

ChaseOutcome run_chase(const ExistentialProgram& prog, const Instance& d0, ChaseMode mode,
                       PolicyKind policy, std::size_t budget, Rng& rng,
                       std::vector<TraceRecord>* trace) {
    Instance d = d0;
    for (std::size_t step = 0; step < budget; ++step) {
        if (applicable_pairs(prog, d).empty())
            return ChaseOutcome{true, std::move(d), step};
        d = mode == ChaseMode::Sequential
                ? sequential_step(prog, d, policy, rng, step, trace)
                : parallel_step(prog, d, rng, step, trace);
    }
    bool done = applicable_pairs(prog, d).empty();
    return ChaseOutcome{done, std::move(d), budget};
}

std::vector<FdViolation> check_induced_fds(const ExistentialProgram& prog, const Instance& d) {
    std::vector<FdViolation> out;
    for (const auto& [rel, tuples] : d.relations()) {
        auto it = prog.schema.find(rel);
        if (it == prog.schema.end() || it->second.kind != RelationKind::Auxiliary) continue;
        std::map<std::vector<Value>, std::vector<Value>> groups;
        for (const auto& t : tuples) {
            std::vector<Value> key(t.begin(), t.end() - 1);
            groups[std::move(key)].push_back(t.back());
        }
        for (auto& [key, values] : groups)
            if (values.size() > 1) out.push_back(FdViolation{rel, key, values});
    }
    return out;
}

}  // namespace gdlog
