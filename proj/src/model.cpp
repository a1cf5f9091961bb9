#include "gdlog/model.hpp"

#include "gdlog/dist.hpp"
#include "gdlog/translate.hpp"

#include <sstream>

namespace gdlog {

std::string SourceSpan::str() const {
    std::ostringstream os;
    if (!file.empty()) os << file << ":";
    os << line << ":" << column;
    return os.str();
}

Term Term::dist(DistCall call) {
    return Term{std::make_shared<DistCall>(std::move(call))};
}

std::optional<std::size_t> Rule::dist_position() const {
    for (std::size_t i = 0; i < head.args.size(); ++i)
        if (head.args[i].is_dist()) return i;
    return std::nullopt;
}

const RelationSymbol* Program::find_relation(const std::string& name) const {
    if (auto it = extensional.find(name); it != extensional.end()) return &it->second;
    if (auto it = intensional.find(name); it != intensional.end()) return &it->second;
    return nullptr;
}

std::string Program::resolve_dist(const std::string& name) const {
    auto it = dist_aliases.find(name);
    return it == dist_aliases.end() ? name : it->second;
}

bool Fact::operator==(const Fact& other) const {
    return relation == other.relation && args == other.args;
}

bool Fact::operator<(const Fact& other) const {
    if (relation != other.relation) return relation < other.relation;
    return args < other.args;
}

std::string Fact::str() const {
    std::string out = relation + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ", ";
        out += args[i].str();
    }
    out += ")";
    return out;
}

bool Instance::insert(Fact f) {
    auto [it, inserted] = rels_[f.relation].insert(std::move(f.args));
    if (inserted) ++size_;
    return inserted;
}

bool Instance::contains(const Fact& f) const {
    auto it = rels_.find(f.relation);
    return it != rels_.end() && it->second.count(f.args) > 0;
}

const Instance::Tuples& Instance::tuples(const std::string& relation) const {
    static const Tuples empty;
    auto it = rels_.find(relation);
    return it == rels_.end() ? empty : it->second;
}

bool Instance::subset_of(const Instance& other) const {
    for (const auto& [rel, tuples] : rels_) {
        const auto& theirs = other.tuples(rel);
        for (const auto& t : tuples)
            if (!theirs.count(t)) return false;
    }
    return true;
}

std::vector<Fact> Instance::facts() const {
    std::vector<Fact> out;
    out.reserve(size_);
    for (const auto& [rel, tuples] : rels_)
        for (const auto& t : tuples) out.push_back(Fact{rel, t});
    return out;
}

std::string Instance::str() const {
    std::string out = "{";
    bool first = true;
    for (const auto& f : facts()) {
        if (!first) out += ", ";
        out += f.str();
        first = false;
    }
    return out + "}";
}

std::string to_string(DiagnosticCode code) {
    switch (code) {
        case DiagnosticCode::UnsafeHeadVariable: return "UnsafeHeadVariable";
        case DiagnosticCode::DistTermInBody: return "DistTermInBody";
        case DiagnosticCode::DistTermInExtensionalHead: return "DistTermInExtensionalHead";
        case DiagnosticCode::ParameterDomainMismatch: return "ParameterDomainMismatch";
        case DiagnosticCode::UndeclaredRelation: return "UndeclaredRelation";
        case DiagnosticCode::ArityMismatch: return "ArityMismatch";
        case DiagnosticCode::ExtensionalHead: return "ExtensionalHead";
        case DiagnosticCode::MisplacedDistTerm: return "MisplacedDistTerm";
        case DiagnosticCode::UnknownDistribution: return "UnknownDistribution";
        case DiagnosticCode::MixedSortVariable: return "MixedSortVariable";
        case DiagnosticCode::ReservedRelationName: return "ReservedRelationName";
    }
    return "?";
}

namespace {

bool value_fits(const Value& v, DomainTag tag) { return v.matches(tag); }

/// Records the attribute sort of each variable occurrence; mixed-sort
/// variables are rejected (all positions of a variable must be typed
/// equally).
class SortMap {
public:
    // returns false on conflict
    bool note(const std::string& var, DomainTag tag) {
        auto [it, inserted] = sorts_.emplace(var, tag);
        if (inserted) return true;
        // int positions embed into real ones; unify to the wider sort
        DomainTag prev = it->second;
        if (prev == tag) return true;
        if ((prev == DomainTag::Int && tag == DomainTag::Real) ||
            (prev == DomainTag::Real && tag == DomainTag::Int)) {
            it->second = DomainTag::Real;
            return true;
        }
        return false;
    }

    std::optional<DomainTag> sort_of(const std::string& var) const {
        auto it = sorts_.find(var);
        if (it == sorts_.end()) return std::nullopt;
        return it->second;
    }

private:
    std::map<std::string, DomainTag> sorts_;
};

}  // namespace

std::vector<Diagnostic> validate_program(const Program& program) {
    std::vector<Diagnostic> diags;
    auto emit = [&](DiagnosticCode code, int rule, std::string msg) {
        diags.push_back(Diagnostic{code, rule, std::move(msg)});
    };

    for (const auto& [name, rel] : program.extensional) {
        if (program.intensional.count(name))
            emit(DiagnosticCode::UndeclaredRelation, -1,
                 "relation " + name + " declared both extensional and intensional");
        if (name.rfind(kAuxPrefix, 0) == 0)
            emit(DiagnosticCode::ReservedRelationName, -1,
                 name + " uses the reserved auxiliary prefix");
    }
    for (const auto& [name, rel] : program.intensional)
        if (name.rfind(kAuxPrefix, 0) == 0)
            emit(DiagnosticCode::ReservedRelationName, -1,
                 name + " uses the reserved auxiliary prefix");

    for (const Rule& rule : program.rules) {
        const int idx = rule.occurrence_index;
        const RelationSymbol* head_rel = program.find_relation(rule.head.relation);
        if (!head_rel) {
            emit(DiagnosticCode::UndeclaredRelation, idx,
                 "undeclared head relation " + rule.head.relation);
            continue;
        }
        if (head_rel->arity() != rule.head.args.size()) {
            emit(DiagnosticCode::ArityMismatch, idx,
                 rule.head.relation + " expects " + std::to_string(head_rel->arity()) +
                     " arguments, head has " + std::to_string(rule.head.args.size()));
            continue;
        }

        // collect body variable sorts, flag body dist terms
        SortMap sorts;
        std::set<std::string> body_vars;
        bool body_ok = true;
        for (const Atom& atom : rule.body) {
            const RelationSymbol* rel = program.find_relation(atom.relation);
            if (!rel) {
                emit(DiagnosticCode::UndeclaredRelation, idx,
                     "undeclared body relation " + atom.relation);
                body_ok = false;
                continue;
            }
            if (rel->arity() != atom.args.size()) {
                emit(DiagnosticCode::ArityMismatch, idx,
                     atom.relation + " expects " + std::to_string(rel->arity()) +
                         " arguments, got " + std::to_string(atom.args.size()));
                body_ok = false;
                continue;
            }
            for (std::size_t i = 0; i < atom.args.size(); ++i) {
                const Term& t = atom.args[i];
                if (t.is_dist()) {
                    emit(DiagnosticCode::DistTermInBody, idx,
                         "distribution term in body atom " + atom.relation);
                } else if (t.is_var()) {
                    body_vars.insert(t.as_var());
                    if (!sorts.note(t.as_var(), rel->domains[i]))
                        emit(DiagnosticCode::MixedSortVariable, idx,
                             "variable " + t.as_var() + " used at differently typed positions");
                } else if (!value_fits(t.as_const(), rel->domains[i])) {
                    emit(DiagnosticCode::ParameterDomainMismatch, idx,
                         "constant " + t.as_const().str() + " does not fit " +
                             to_string(rel->domains[i]) + " attribute of " + atom.relation);
                }
            }
        }
        if (!body_ok) continue;

        const bool head_extensional = head_rel->kind == RelationKind::Extensional;
        std::size_t dist_count = 0;
        for (std::size_t i = 0; i < rule.head.args.size(); ++i) {
            const Term& t = rule.head.args[i];
            if (t.is_dist()) {
                ++dist_count;
                if (head_extensional) {
                    emit(DiagnosticCode::DistTermInExtensionalHead, idx,
                         "distribution term in extensional head " + rule.head.relation);
                    continue;
                }
                if (i + 1 != rule.head.args.size() || dist_count > 1) {
                    emit(DiagnosticCode::MisplacedDistTerm, idx,
                         "at most one distribution term is allowed, in the last head position");
                    continue;
                }
                const DistCall& call = t.as_dist();
                const Distribution* dist =
                    find_distribution(program.resolve_dist(call.name));
                if (!dist) {
                    emit(DiagnosticCode::UnknownDistribution, idx,
                         "unknown distribution " + call.name);
                    continue;
                }
                if (static_cast<int>(call.params.size()) != dist->pardim()) {
                    emit(DiagnosticCode::ArityMismatch, idx,
                         call.name + " expects " + std::to_string(dist->pardim()) +
                             " parameters, got " + std::to_string(call.params.size()));
                    continue;
                }
                for (std::size_t j = 0; j < call.params.size(); ++j) {
                    const Term& p = call.params[j];
                    const DomainTag want = dist->param_domain(static_cast<int>(j));
                    if (p.is_var()) {
                        if (!body_vars.count(p.as_var())) {
                            emit(DiagnosticCode::UnsafeHeadVariable, idx,
                                 "parameter variable " + p.as_var() + " not bound in body");
                        } else if (auto s = sorts.sort_of(p.as_var());
                                   s && !(*s == want ||
                                          (want == DomainTag::Real && *s == DomainTag::Int))) {
                            emit(DiagnosticCode::ParameterDomainMismatch, idx,
                                 "parameter variable " + p.as_var() + " is typed " +
                                     to_string(*s) + ", " + call.name + " needs " +
                                     to_string(want));
                        }
                    } else if (!p.as_const().matches(want)) {
                        emit(DiagnosticCode::ParameterDomainMismatch, idx,
                             "parameter " + p.as_const().str() + " does not fit the " +
                                 to_string(want) + " component of " + call.name);
                    }
                }
            } else if (t.is_var()) {
                if (!body_vars.count(t.as_var()))
                    emit(DiagnosticCode::UnsafeHeadVariable, idx,
                         "head variable " + t.as_var() + " does not occur in the body");
                else if (!sorts.note(t.as_var(), head_rel->domains[i]))
                    emit(DiagnosticCode::MixedSortVariable, idx,
                         "variable " + t.as_var() + " used at differently typed positions");
            } else if (!value_fits(t.as_const(), head_rel->domains[i])) {
                emit(DiagnosticCode::ParameterDomainMismatch, idx,
                     "constant " + t.as_const().str() + " does not fit " +
                         to_string(head_rel->domains[i]) + " attribute of " +
                         rule.head.relation);
            }
        }
        if (head_extensional && dist_count == 0)
            emit(DiagnosticCode::ExtensionalHead, idx,
                 "rule head " + rule.head.relation + " is extensional");
    }
    return diags;
}

}  // namespace gdlog
