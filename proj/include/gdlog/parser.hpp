#pragma once

#include "gdlog/engine.hpp"
#include "gdlog/ppdl.hpp"
#include "gdlog/translate.hpp"

#include <stdexcept>
#include <string>
#include <variant>

namespace gdlog {

struct ParseError : std::runtime_error {
    ParseError(SourceSpan span, const std::string& msg);
    SourceSpan span;
};

/// Parses a program source: relation declarations, distribution aliases
/// and rules. Syntax only; semantic checks live in validate_program.
Program parse_program(const std::string& source, const std::string& filename = "");

/// Parses a fact file: ground atoms, one statement per `R(...).`.
Instance parse_facts(const std::string& source, const std::string& filename = "");

/// Parses a constraint program: rules whose body literals may be negated
/// with `not`; no declarations.
Constraint parse_constraint(const std::string& source, const std::string& filename = "");

/// Parses an input probabilistic database: `world <weight> { facts }`
/// blocks; missing mass becomes the bottom tail.
InputPdb parse_pdb(const std::string& source, const std::string& filename = "");

using ParsedDistribution = std::variant<WorldDistribution, EmpiricalDistribution>;

/// Parses the text serialization produced by serialize().
ParsedDistribution parse_distribution(const std::string& source,
                                      const std::string& filename = "");

// --- printing -----------------------------------------------------------

std::string term_str(const Term& term);
std::string atom_str(const Atom& atom);
std::string rule_str(const Rule& rule);

/// Canonical source text; parsing it back yields an equivalent program.
std::string program_str(const Program& program);

/// Human-readable listing of the translated program.
std::string existential_str(const ExistentialProgram& prog);

}  // namespace gdlog
