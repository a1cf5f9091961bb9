#pragma once

#include "gdlog/value.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gdlog {

/// Deterministic pseudo-random stream keyed by (master seed, stream id).
/// Equal keys give equal sequences on every platform; streams with distinct
/// ids are independent for practical purposes (splitmix64 with per-stream
/// derived state).
class Rng {
public:
    Rng(std::uint64_t master_seed, std::uint64_t stream_id);

    std::uint64_t next_u64();
    /// Uniform draw from [0, 1) with 53 bits of precision.
    double next_unit();

private:
    std::uint64_t state_;
};

struct ParameterOutOfRange : std::runtime_error {
    ParameterOutOfRange(std::string dist, int component);
    int component;
};

struct InfiniteSupport : std::runtime_error {
    explicit InfiniteSupport(const std::string& dist);
};

enum class SupportKind { FiniteDiscrete, CountableDiscrete, Continuous };

/// One parameterized family: parameter validation, pmf/pdf evaluation,
/// seeded sampling and (when finite) exact support enumeration.
class Distribution {
public:
    virtual ~Distribution() = default;

    const std::string& name() const { return name_; }
    int pardim() const { return static_cast<int>(param_domains_.size()); }
    SupportKind support_kind() const { return support_kind_; }
    DomainTag outcome_domain() const { return outcome_domain_; }
    /// Attribute-domain tag a body position must carry to feed parameter i.
    DomainTag param_domain(int i) const { return param_domains_[i]; }

    /// Index of the first out-of-range component, or nullopt if all valid.
    virtual std::optional<int> check_params(std::span<const Value> params) const = 0;

    /// Throws ParameterOutOfRange on invalid params.
    void validate_params(std::span<const Value> params) const;

    /// pmf (discrete, exact Rat whenever the parameters are exact) or pdf
    /// (continuous, Real) at the given outcome.
    virtual Value eval_mass(std::span<const Value> params, const Value& outcome) const = 0;

    virtual Value sample(std::span<const Value> params, Rng& rng) const = 0;

    /// Outcome/probability pairs with zero-probability outcomes omitted;
    /// probabilities sum to exactly 1. Throws InfiniteSupport unless the
    /// family is finite-discrete. Requires exact (Int/Rat) parameters.
    virtual std::vector<std::pair<Value, Rat>> support(std::span<const Value> params) const;

protected:
    Distribution(std::string name, std::vector<DomainTag> param_domains,
                 SupportKind kind, DomainTag outcome)
        : name_(std::move(name)),
          param_domains_(std::move(param_domains)),
          support_kind_(kind),
          outcome_domain_(outcome) {}

private:
    std::string name_;
    std::vector<DomainTag> param_domains_;
    SupportKind support_kind_;
    DomainTag outcome_domain_;
};

/// Built-in registry lookup by canonical family name (aliases are resolved
/// by the program, not here). Returns nullptr for unknown names.
const Distribution* find_distribution(const std::string& name);

/// Quantile of the standard normal distribution.
double inverse_normal_cdf(double p);

}  // namespace gdlog
