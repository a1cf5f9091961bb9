#pragma once

#include "gdlog/translate.hpp"

#include <string>
#include <vector>

namespace gdlog {

/// An attribute position of a relation.
struct Position {
    std::string relation;
    std::size_t index = 0;

    bool operator==(const Position& other) const {
        return relation == other.relation && index == other.index;
    }
    bool operator<(const Position& other) const {
        if (relation != other.relation) return relation < other.relation;
        return index < other.index;
    }
    std::string str() const { return relation + "#" + std::to_string(index); }
};

/// Edge of the position dependency graph. Special edges point from a body
/// position of a head-propagated variable to the invented (sampled)
/// position of the same rule.
struct PositionEdge {
    Position from;
    Position to;
    bool special = false;
    int rule_index = 0;
};

struct DependencyGraph {
    std::vector<Position> nodes;
    std::vector<PositionEdge> edges;
};

DependencyGraph position_dependency_graph(const ExistentialProgram& prog);

struct AcyclicityReport {
    bool weakly_acyclic = true;
    /// When not weakly acyclic: a cycle through at least one special edge,
    /// as the position sequence p0 -> p1 -> ... -> p0.
    std::vector<Position> witness_cycle;
};

/// A weakly acyclic program terminates on every input under every policy;
/// the converse need not hold.
AcyclicityReport analyze_weak_acyclicity(const ExistentialProgram& prog);

}  // namespace gdlog
