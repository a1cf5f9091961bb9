#pragma once

#include "gdlog/value.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace gdlog {

struct SourceSpan {
    std::string file;
    int line = 1;
    int column = 1;
    int length = 0;

    std::string str() const;
};

enum class RelationKind { Extensional, Intensional, Auxiliary };

struct RelationSymbol {
    std::string name;
    std::vector<DomainTag> domains;
    RelationKind kind = RelationKind::Extensional;

    std::size_t arity() const { return domains.size(); }
};

/// Schema: relation name -> symbol. Declaration order is not significant,
/// map order gives the canonical relation order everywhere.
using Schema = std::map<std::string, RelationSymbol>;

struct DistCall;

/// A term is a constant, a variable, or a distribution invocation
/// Name[p1, ..., pm] (only legal in the last head position of a rule).
struct Term {
    std::variant<Value, std::string, std::shared_ptr<DistCall>> t;

    static Term constant(Value v) { return Term{std::move(v)}; }
    static Term var(std::string name) { return Term{std::move(name)}; }
    static Term dist(DistCall call);

    bool is_const() const { return t.index() == 0; }
    bool is_var() const { return t.index() == 1; }
    bool is_dist() const { return t.index() == 2; }

    const Value& as_const() const { return std::get<0>(t); }
    const std::string& as_var() const { return std::get<1>(t); }
    const DistCall& as_dist() const { return *std::get<2>(t); }
};

struct DistCall {
    std::string name;
    std::vector<Term> params;  // Const or Var only
};

struct Atom {
    std::string relation;
    std::vector<Term> args;
    SourceSpan span;
};

struct Rule {
    int occurrence_index = 0;
    Atom head;
    std::vector<Atom> body;
    SourceSpan span;

    /// Index of the head's DistCall argument, or nullopt for deterministic
    /// rules. Validation pins it to the last position.
    std::optional<std::size_t> dist_position() const;
    bool is_probabilistic() const { return dist_position().has_value(); }
};

struct Program {
    Schema extensional;
    Schema intensional;
    std::vector<Rule> rules;  // a bag: duplicates are distinct occurrences
    /// Distribution aliases, alias name -> canonical family name.
    std::map<std::string, std::string> dist_aliases;

    const RelationSymbol* find_relation(const std::string& name) const;
    /// Canonical family name for a (possibly aliased) distribution name.
    std::string resolve_dist(const std::string& name) const;
};

struct Fact {
    std::string relation;
    std::vector<Value> args;

    bool operator==(const Fact& other) const;
    bool operator<(const Fact& other) const;
    std::string str() const;
};

/// A duplicate-free set of facts, grouped per relation. Iteration order is
/// canonical (relation name, then argument tuple), which makes instances
/// directly usable as ordered map keys.
class Instance {
public:
    using Tuples = std::set<std::vector<Value>>;

    bool insert(Fact f);  // returns false if already present
    bool contains(const Fact& f) const;
    bool empty() const { return size_ == 0; }
    std::size_t size() const { return size_; }

    const Tuples& tuples(const std::string& relation) const;
    const std::map<std::string, Tuples>& relations() const { return rels_; }

    bool operator==(const Instance& other) const { return rels_ == other.rels_; }
    bool operator<(const Instance& other) const { return rels_ < other.rels_; }

    /// True if every fact of this instance is in `other`.
    bool subset_of(const Instance& other) const;

    std::vector<Fact> facts() const;
    std::string str() const;

private:
    std::map<std::string, Tuples> rels_;
    std::size_t size_ = 0;
};

// --- validation ---------------------------------------------------------

enum class DiagnosticCode {
    UnsafeHeadVariable,
    DistTermInBody,
    DistTermInExtensionalHead,
    ParameterDomainMismatch,
    UndeclaredRelation,
    ArityMismatch,
    ExtensionalHead,
    MisplacedDistTerm,
    UnknownDistribution,
    MixedSortVariable,
    ReservedRelationName,
};

struct Diagnostic {
    DiagnosticCode code;
    int rule_index = -1;  // occurrence index, -1 for program-level issues
    std::string message;
};

std::string to_string(DiagnosticCode code);

/// Checks every rule and program invariant; empty result means the program
/// is valid.
std::vector<Diagnostic> validate_program(const Program& program);

}  // namespace gdlog
