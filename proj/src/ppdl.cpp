#include "gdlog/ppdl.hpp"

#include <map>
#include <set>

namespace gdlog {

namespace {

std::set<std::string> defined_relations(const Constraint& c) {
    std::set<std::string> out;
    for (const auto& rule : c.rules) out.insert(rule.head.relation);
    return out;
}

/// Topological order of defined relations (dependencies first), or nullopt
/// if the constraint is recursive.
std::optional<std::vector<std::string>> topo_order(const Constraint& c,
                                                   const std::set<std::string>& defined) {
    std::map<std::string, std::set<std::string>> deps;
    for (const auto& name : defined) deps[name];
    for (const auto& rule : c.rules)
        for (const auto& lit : rule.body)
            if (defined.count(lit.atom.relation))
                deps[rule.head.relation].insert(lit.atom.relation);

    std::vector<std::string> order;
    std::map<std::string, int> state;  // 0 new, 1 on stack, 2 done
    bool cyclic = false;
    std::function<void(const std::string&)> visit = [&](const std::string& n) {
        int& s = state[n];
        if (s == 1) { cyclic = true; return; }
        if (s == 2) return;
        s = 1;
        for (const auto& d : deps[n]) visit(d);
        s = 2;
        order.push_back(n);
    };
    for (const auto& name : defined) visit(name);
    if (cyclic) return std::nullopt;
    return order;
}

void collect_vars(const std::vector<Term>& terms, std::set<std::string>& out) {
    for (const Term& t : terms)
        if (t.is_var()) out.insert(t.as_var());
}

}  // namespace

std::vector<std::string> check_constraint(const Constraint& constraint) {
    std::vector<std::string> problems;
    const auto defined = defined_relations(constraint);

    if (!defined.count(kGoalRelation))
        problems.push_back("no rule defines " + std::string(kGoalRelation));

    std::map<std::string, std::size_t> arity;
    auto note_arity = [&](const Atom& atom) {
        auto [it, inserted] = arity.emplace(atom.relation, atom.args.size());
        if (!inserted && it->second != atom.args.size())
            problems.push_back("relation " + atom.relation + " used with arities " +
                               std::to_string(it->second) + " and " +
                               std::to_string(atom.args.size()));
    };

    for (const auto& rule : constraint.rules) {
        note_arity(rule.head);
        if (rule.head.relation == kGoalRelation && !rule.head.args.empty())
            problems.push_back(std::string(kGoalRelation) + " must be nullary");

        std::set<std::string> positive_vars;
        for (const auto& lit : rule.body) {
            note_arity(lit.atom);
            for (const Term& t : lit.atom.args)
                if (t.is_dist())
                    problems.push_back("distribution term in constraint body atom " +
                                       lit.atom.relation);
            if (!lit.negated) collect_vars(lit.atom.args, positive_vars);
        }

        std::set<std::string> must_be_bound;
        collect_vars(rule.head.args, must_be_bound);
        for (const auto& lit : rule.body)
            if (lit.negated) collect_vars(lit.atom.args, must_be_bound);
        for (const auto& v : must_be_bound)
            if (!positive_vars.count(v))
                problems.push_back("variable " + v +
                                   " is not bound by a positive body atom");
        for (const Term& t : rule.head.args)
            if (t.is_dist())
                problems.push_back("distribution term in constraint head " +
                                   rule.head.relation);
    }

    if (!topo_order(constraint, defined))
        problems.push_back("constraint is recursive");
    return problems;
}

Instance eval_constraint(const Constraint& constraint, const Instance& world) {
    if (auto problems = check_constraint(constraint); !problems.empty())
        throw ConstraintError(problems.front());

    const auto defined = defined_relations(constraint);
    const auto order = *topo_order(constraint, defined);

    Instance db = world;
    for (const std::string& rel : order) {
        for (const auto& rule : constraint.rules) {
            if (rule.head.relation != rel) continue;
            std::vector<Atom> positives;
            std::vector<Atom> negatives;
            for (const auto& lit : rule.body)
                (lit.negated ? negatives : positives).push_back(lit.atom);
            for_each_valuation(db, positives, [&](const Valuation& val) {
                for (const Atom& neg : negatives) {
                    std::vector<Value> args;
                    for (const Term& t : neg.args)
                        args.push_back(t.is_const() ? t.as_const() : val.at(t.as_var()));
                    if (db.contains(Fact{neg.relation, std::move(args)})) return;
                }
                std::vector<Value> head;
                for (const Term& t : rule.head.args)
                    head.push_back(t.is_const() ? t.as_const() : val.at(t.as_var()));
                db.insert(Fact{rule.head.relation, std::move(head)});
            });
        }
    }
    return db;
}

bool world_satisfies(const Constraint& constraint, const Instance& world) {
    return eval_constraint(constraint, world).contains(Fact{kGoalRelation, {}});
}

WorldDistribution condition(const WorldDistribution& dist, const Constraint& constraint) {
    WorldDistribution kept;
    for (const auto& [w, p] : dist.worlds)
        if (p != 0 && world_satisfies(constraint, w)) kept.worlds.emplace(w, p);
    const Rat mass = kept.total();
    if (mass == 0) throw ZeroMassCondition();
    for (auto& [w, p] : kept.worlds) p /= mass;
    return kept;
}

EmpiricalDistribution condition(const EmpiricalDistribution& dist,
                                const Constraint& constraint) {
    EmpiricalDistribution kept;
    kept.seed = dist.seed;
    for (const auto& [w, c] : dist.counts)
        if (c > 0 && world_satisfies(constraint, w)) {
            kept.counts.emplace(w, c);
            kept.runs += c;
        }
    if (kept.runs == 0) throw ZeroMassCondition();
    return kept;
}

}  // namespace gdlog
