#include "gdlog/analysis.hpp"

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <tuple>

namespace gdlog {

DependencyGraph position_dependency_graph(const ExistentialProgram& prog) {
    DependencyGraph g;
    for (const auto& [name, rel] : prog.schema)
        for (std::size_t i = 0; i < rel.arity(); ++i) g.nodes.push_back(Position{name, i});

    std::set<std::tuple<Position, Position, bool>> seen;
    auto add_edge = [&](Position from, Position to, bool special, int rule) {
        if (seen.emplace(from, to, special).second)
            g.edges.push_back(PositionEdge{std::move(from), std::move(to), special, rule});
    };

    for (const ExistentialRule& rule : prog.rules) {
        // body positions per variable
        std::map<std::string, std::vector<Position>> body_pos;
        for (const Atom& atom : rule.body)
            for (std::size_t i = 0; i < atom.args.size(); ++i)
                if (atom.args[i].is_var())
                    body_pos[atom.args[i].as_var()].push_back(Position{atom.relation, i});

        for (std::size_t j = 0; j < rule.head.args.size(); ++j) {
            const Term& t = rule.head.args[j];
            if (!t.is_var()) continue;
            auto it = body_pos.find(t.as_var());
            if (it == body_pos.end()) continue;
            for (const Position& from : it->second) {
                add_edge(from, Position{rule.head.relation, j}, false,
                         rule.occurrence_index);
                if (rule.samples()) {
                    // the sampled attribute is the invented position
                    const std::size_t z =
                        prog.relation(rule.aux_relation).arity() - 1;
                    add_edge(from, Position{rule.aux_relation, z}, true,
                             rule.occurrence_index);
                }
            }
        }
    }
    return g;
}

AcyclicityReport analyze_weak_acyclicity(const ExistentialProgram& prog) {
    const DependencyGraph g = position_dependency_graph(prog);
    std::map<Position, std::vector<Position>> adj;
    for (const PositionEdge& e : g.edges) adj[e.from].push_back(e.to);

    // a special edge a -> b closes a special cycle iff a is reachable from b
    auto path_to = [&](const Position& from, const Position& to)
        -> std::optional<std::vector<Position>> {
        std::map<Position, Position> parent;
        std::deque<Position> queue{from};
        std::set<Position> visited{from};
        while (!queue.empty()) {
            Position cur = queue.front();
            queue.pop_front();
            if (cur == to) {
                std::vector<Position> path{to};
                while (!(path.back() == from)) path.push_back(parent.at(path.back()));
                return std::vector<Position>(path.rbegin(), path.rend());
            }
            for (const Position& next : adj[cur])
                if (visited.insert(next).second) {
                    parent.emplace(next, cur);
                    queue.push_back(next);
                }
        }
        return std::nullopt;
    };

    for (const PositionEdge& e : g.edges) {
        if (!e.special) continue;
        if (auto back = path_to(e.to, e.from)) {
            AcyclicityReport report;
            report.weakly_acyclic = false;
            // back = [e.to, ..., e.from]; close it through the special edge
            report.witness_cycle.push_back(e.from);
            for (const Position& p : *back)
                if (!(p == e.from)) report.witness_cycle.push_back(p);
            return report;
        }
    }
    return AcyclicityReport{};
}

}  // namespace gdlog
