#pragma once

#include "gdlog/chase.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace gdlog {

/// Exact distribution over possible worlds. `bottom` is the mass of runs
/// that exceeded the depth bound (sub-probabilistic tail); world masses
/// plus bottom always sum to 1.
struct WorldDistribution {
    std::map<Instance, Rat> worlds;
    Rat bottom = 0;

    Rat total() const;
    Rat mass_of(const Instance& world) const;
};

/// Empirical distribution from repeated seeded chases.
struct EmpiricalDistribution {
    std::map<Instance, std::size_t> counts;
    std::size_t bottom_count = 0;
    std::size_t runs = 0;
    std::uint64_t seed = 0;

    double freq_of(const Instance& world) const;
};

/// An input probabilistic database: finitely many weighted input instances.
/// Mass shortfall (weights summing below 1) goes to bottom.
struct InputPdb {
    std::vector<std::pair<Rat, Instance>> worlds;

    Rat bottom() const;
};

struct NotFinitelyEnumerable : std::runtime_error {
    explicit NotFinitelyEnumerable(const std::string& dist)
        : std::runtime_error("distribution " + dist +
                             " has unbounded support; exact enumeration is unavailable") {}
};

struct InexactParameter : std::runtime_error {
    explicit InexactParameter(const std::string& dist)
        : std::runtime_error("distribution " + dist +
                             " was invoked with an inexact (real) parameter; exact "
                             "enumeration needs integer or rational parameters") {}
};

struct ExactOptions {
    ChaseMode mode = ChaseMode::Parallel;
    PolicyKind policy = PolicyKind::RuleIndexThenGrounding;
    std::size_t max_depth = 10000;
};

/// Enumerates every chase outcome with exact rational weights. Paths
/// still active at `max_depth` contribute to bottom.
WorldDistribution exact_enumerate(const ExistentialProgram& prog, const Instance& d0,
                                  const ExactOptions& opts);
WorldDistribution exact_enumerate(const ExistentialProgram& prog, const InputPdb& input,
                                  const ExactOptions& opts);

struct McOptions {
    ChaseMode mode = ChaseMode::Parallel;
    PolicyKind policy = PolicyKind::RuleIndexThenGrounding;
    std::size_t budget = 10000;
    std::uint64_t seed = 0;
    std::size_t runs = 10000;
    unsigned jobs = 1;
};

/// Monte Carlo over `runs` independent chases; run r draws from the stream
/// keyed (seed, r), so results do not depend on `jobs`.
EmpiricalDistribution monte_carlo(const ExistentialProgram& prog, const Instance& d0,
                                  const McOptions& opts);
EmpiricalDistribution monte_carlo(const ExistentialProgram& prog, const InputPdb& input,
                                  const McOptions& opts);

/// Projects every world onto `keep`, merging worlds that coincide.
WorldDistribution project_worlds(const WorldDistribution& dist,
                                 const std::set<std::string>& keep);
EmpiricalDistribution project_empirical(const EmpiricalDistribution& dist,
                                        const std::set<std::string>& keep);

/// Total variation distance (exact; bottom treated as one extra outcome).
Rat total_variation(const WorldDistribution& a, const WorldDistribution& b);
/// Total variation between an exact and an empirical distribution.
double total_variation(const WorldDistribution& a, const EmpiricalDistribution& b);

// --- serialization ------------------------------------------------------

std::string serialize(const WorldDistribution& dist, bool json = false);
std::string serialize(const EmpiricalDistribution& dist, bool json = false);

}  // namespace gdlog
