#include "gdlog/translate.hpp"

#include "gdlog/dist.hpp"

#include <stdexcept>

namespace gdlog {

namespace {
constexpr const char* kExistentialVar = "__z";
}

const RelationSymbol& ExistentialProgram::relation(const std::string& name) const {
    auto it = schema.find(name);
    if (it == schema.end()) throw std::logic_error("unknown relation " + name);
    return it->second;
}

std::string aux_relation_name(const std::string& head_relation, int occurrence_index) {
    return std::string(kAuxPrefix) + head_relation + "_" + std::to_string(occurrence_index);
}

ExistentialProgram to_existential(const Program& program) {
    ExistentialProgram out;
    for (const auto& [name, rel] : program.extensional) {
        out.schema.emplace(name, rel);
        out.original_relations.insert(name);
    }
    for (const auto& [name, rel] : program.intensional) {
        out.schema.emplace(name, rel);
        out.original_relations.insert(name);
    }

    int next_index = 0;
    for (const Rule& rule : program.rules) {
        if (!rule.is_probabilistic()) {
            ExistentialRule det;
            det.occurrence_index = next_index++;
            det.kind = ExistentialRuleKind::Deterministic;
            det.head = rule.head;
            det.body = rule.body;
            out.rules.push_back(std::move(det));
            continue;
        }

        const RelationSymbol& head_rel = *program.find_relation(rule.head.relation);
        const DistCall& call = rule.head.args.back().as_dist();
        const std::string canonical = program.resolve_dist(call.name);
        const Distribution* dist = find_distribution(canonical);
        if (!dist) throw std::logic_error("unknown distribution " + call.name);

        const std::string aux = aux_relation_name(rule.head.relation, rule.occurrence_index);
        RelationSymbol aux_rel;
        aux_rel.name = aux;
        aux_rel.kind = RelationKind::Auxiliary;
        aux_rel.domains.assign(head_rel.domains.begin(), head_rel.domains.end() - 1);
        for (int j = 0; j < dist->pardim(); ++j)
            aux_rel.domains.push_back(dist->param_domain(j));
        aux_rel.domains.push_back(head_rel.domains.back());
        if (!out.schema.emplace(aux, aux_rel).second)
            throw std::logic_error("auxiliary relation clash: " + aux);

        // sampler: exists z: aux(u, p, z) :- body
        ExistentialRule sampler;
        sampler.occurrence_index = next_index++;
        sampler.kind = ExistentialRuleKind::Sampler;
        sampler.aux_relation = aux;
        sampler.dist_name = canonical;
        sampler.param_offset = head_rel.arity() - 1;
        sampler.head.relation = aux;
        sampler.head.span = rule.head.span;
        sampler.head.args.assign(rule.head.args.begin(), rule.head.args.end() - 1);
        for (const Term& p : call.params) sampler.head.args.push_back(p);
        sampler.body = rule.body;
        out.rules.push_back(std::move(sampler));

        // copy-down: R(u, z) :- aux(u, p, z)
        ExistentialRule copy;
        copy.occurrence_index = next_index++;
        copy.kind = ExistentialRuleKind::CopyDown;
        copy.head.relation = rule.head.relation;
        copy.head.span = rule.head.span;
        copy.head.args.assign(rule.head.args.begin(), rule.head.args.end() - 1);
        copy.head.args.push_back(Term::var(kExistentialVar));
        Atom aux_atom;
        aux_atom.relation = aux;
        aux_atom.args.assign(rule.head.args.begin(), rule.head.args.end() - 1);
        for (const Term& p : call.params) aux_atom.args.push_back(p);
        aux_atom.args.push_back(Term::var(kExistentialVar));
        copy.body.push_back(std::move(aux_atom));
        out.rules.push_back(std::move(copy));
    }
    return out;
}

Instance project_instance(const Instance& instance, const std::set<std::string>& keep) {
    Instance out;
    for (const auto& [rel, tuples] : instance.relations()) {
        if (!keep.count(rel)) continue;
        for (const auto& t : tuples) out.insert(Fact{rel, t});
    }
    return out;
}

}  // namespace gdlog
