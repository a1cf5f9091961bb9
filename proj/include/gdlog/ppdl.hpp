#pragma once

#include "gdlog/engine.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace gdlog {

/// The nullary relation a constraint must define; a world satisfies the
/// constraint iff Goal is derivable from it.
inline constexpr const char* kGoalRelation = "Goal";

struct Literal {
    Atom atom;
    bool negated = false;
};

struct ConstraintRule {
    Atom head;
    std::vector<Literal> body;
    SourceSpan span;
};

/// A non-recursive constraint program with negation. Relations defined by
/// rule heads are constraint-local; every other relation refers to the
/// world being tested.
struct Constraint {
    std::vector<ConstraintRule> rules;
};

/// Malformed constraint: recursion, unsafe variables, arity clashes, or a
/// missing Goal definition.
struct ConstraintError : std::runtime_error {
    explicit ConstraintError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised when the conditioning event has probability zero.
struct ZeroMassCondition : std::runtime_error {
    ZeroMassCondition() : std::runtime_error("condition has probability zero") {}
};

/// All well-formedness problems; empty means valid.
std::vector<std::string> check_constraint(const Constraint& constraint);

/// World plus every derived constraint-local fact. Throws ConstraintError
/// on an invalid constraint.
Instance eval_constraint(const Constraint& constraint, const Instance& world);

bool world_satisfies(const Constraint& constraint, const Instance& world);

/// Restricts to satisfying worlds and renormalizes. The unterminated tail
/// is not part of the event, so the result carries no bottom mass.
WorldDistribution condition(const WorldDistribution& dist, const Constraint& constraint);

/// Keeps satisfying runs only; `runs` becomes the satisfying-run count.
EmpiricalDistribution condition(const EmpiricalDistribution& dist,
                                const Constraint& constraint);

}  // namespace gdlog
