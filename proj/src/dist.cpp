#include "gdlog/dist.hpp"

#include <cmath>
#include <map>
#include <memory>

namespace gdlog {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t master_seed, std::uint64_t stream_id) {
    // derive the stream state by running both keys through the mixer, so
    // (0,1) and (1,0) land far apart
    std::uint64_t s = master_seed;
    std::uint64_t a = splitmix64(s);
    s = stream_id ^ 0x6a09e667f3bcc909ull;
    std::uint64_t b = splitmix64(s);
    state_ = a ^ (b * 0x2545f4914f6cdd1dull);
}

std::uint64_t Rng::next_u64() { return splitmix64(state_); }

double Rng::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

ParameterOutOfRange::ParameterOutOfRange(std::string dist, int component)
    : std::runtime_error("parameter " + std::to_string(component) +
                         " of " + dist + " out of range"),
      component(component) {}

InfiniteSupport::InfiniteSupport(const std::string& dist)
    : std::runtime_error(dist + " does not have finite support") {}

void Distribution::validate_params(std::span<const Value> params) const {
    if (static_cast<int>(params.size()) != pardim())
        throw ParameterOutOfRange(name(), static_cast<int>(params.size()));
    if (auto bad = check_params(params))
        throw ParameterOutOfRange(name(), *bad);
}

std::vector<std::pair<Value, Rat>> Distribution::support(std::span<const Value>) const {
    throw InfiniteSupport(name());
}

double inverse_normal_cdf(double p) {
    // Acklam's rational approximation, then one Halley refinement step
    // against std::erfc to push the error to ~1e-15.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1 - plow;
    double x;
    if (p < plow) {
        double q = std::sqrt(-2 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    } else if (p <= phigh) {
        double q = p - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
    } else {
        double q = std::sqrt(-2 * std::log(1 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    double u = e * std::sqrt(2 * M_PI) * std::exp(x * x / 2);
    return x - u / (1 + x * u / 2);
}

namespace {

bool in_unit_interval(const Value& v) {
    if (v.is_real()) return v.as_real() >= 0.0 && v.as_real() <= 1.0;
    Rat r = v.to_rat();
    return r >= 0 && r <= 1;
}

/// Exact Rat view of a numeric parameter; binary64 converts exactly.
Rat exact(const Value& v) {
    if (v.is_real()) return Rat(v.as_real());
    return v.to_rat();
}

class Flip final : public Distribution {
public:
    Flip() : Distribution("Flip", {DomainTag::Real}, SupportKind::FiniteDiscrete, DomainTag::Int) {}

    std::optional<int> check_params(std::span<const Value> p) const override {
        if (!p[0].is_numeric() || !in_unit_interval(p[0])) return 0;
        return std::nullopt;
    }

    Value eval_mass(std::span<const Value> p, const Value& w) const override {
        Rat pr = exact(p[0]);
        if (w.is_int() && w.as_int() == 1) return Value::rational(pr);
        if (w.is_int() && w.as_int() == 0) return Value::rational(1 - pr);
        return Value::rational(Rat(0));
    }

    Value sample(std::span<const Value> p, Rng& rng) const override {
        return Value::integer(rng.next_unit() < p[0].to_double() ? 1 : 0);
    }

    std::vector<std::pair<Value, Rat>> support(std::span<const Value> p) const override {
        Rat pr = exact(p[0]);
        std::vector<std::pair<Value, Rat>> out;
        if (pr != 1) out.emplace_back(Value::integer(0), 1 - pr);
        if (pr != 0) out.emplace_back(Value::integer(1), pr);
        return out;
    }
};

class Binomial final : public Distribution {
public:
    Binomial()
        : Distribution("Binomial", {DomainTag::Int, DomainTag::Real},
                       SupportKind::FiniteDiscrete, DomainTag::Int) {}

    std::optional<int> check_params(std::span<const Value> p) const override {
        if (!p[0].is_int() || p[0].as_int() < 1) return 0;
        if (!p[1].is_numeric() || !in_unit_interval(p[1])) return 1;
        return std::nullopt;
    }

    static Rat pmf(std::int64_t n, const Rat& pr, std::int64_t k) {
        if (k < 0 || k > n) return Rat(0);
        boost::multiprecision::cpp_int binom = 1;
        for (std::int64_t i = 0; i < k; ++i) {
            binom *= n - i;
            binom /= i + 1;
        }
        Rat r(binom);
        for (std::int64_t i = 0; i < k; ++i) r *= pr;
        for (std::int64_t i = 0; i < n - k; ++i) r *= 1 - pr;
        return r;
    }

    Value eval_mass(std::span<const Value> p, const Value& w) const override {
        if (!w.is_int()) return Value::rational(Rat(0));
        return Value::rational(pmf(p[0].as_int(), exact(p[1]), w.as_int()));
    }

    Value sample(std::span<const Value> p, Rng& rng) const override {
        std::int64_t n = p[0].as_int(), k = 0;
        double pr = p[1].to_double();
        for (std::int64_t i = 0; i < n; ++i)
            if (rng.next_unit() < pr) ++k;
        return Value::integer(k);
    }

    std::vector<std::pair<Value, Rat>> support(std::span<const Value> p) const override {
        std::int64_t n = p[0].as_int();
        Rat pr = exact(p[1]);
        std::vector<std::pair<Value, Rat>> out;
        for (std::int64_t k = 0; k <= n; ++k) {
            Rat m = pmf(n, pr, k);
            if (m != 0) out.emplace_back(Value::integer(k), m);
        }
        return out;
    }
};

class Poisson final : public Distribution {
public:
    Poisson()
        : Distribution("Poisson", {DomainTag::Real},
                       SupportKind::CountableDiscrete, DomainTag::Int) {}

    std::optional<int> check_params(std::span<const Value> p) const override {
        if (!p[0].is_numeric() || !(p[0].to_double() > 0.0)) return 0;
        return std::nullopt;
    }

    Value eval_mass(std::span<const Value> p, const Value& w) const override {
        if (!w.is_int() || w.as_int() < 0) return Value::real(0.0);
        double lambda = p[0].to_double();
        double k = static_cast<double>(w.as_int());
        return Value::real(std::exp(k * std::log(lambda) - lambda - std::lgamma(k + 1)));
    }

    Value sample(std::span<const Value> p, Rng& rng) const override {
        // inverse-cdf search: exactly one uniform draw per sample
        double lambda = p[0].to_double();
        double u = rng.next_unit();
        double pk = std::exp(-lambda), cdf = pk;
        std::int64_t k = 0;
        while (u >= cdf && k < (1 << 24)) {
            ++k;
            pk *= lambda / static_cast<double>(k);
            cdf += pk;
        }
        return Value::integer(k);
    }
};

class Gaussian final : public Distribution {
public:
    Gaussian()
        : Distribution("Gaussian", {DomainTag::Real, DomainTag::Real},
                       SupportKind::Continuous, DomainTag::Real) {}

    std::optional<int> check_params(std::span<const Value> p) const override {
        if (!p[0].is_numeric()) return 0;
        if (!p[1].is_numeric() || p[1].to_double() < 0.0) return 1;
        return std::nullopt;
    }

    Value eval_mass(std::span<const Value> p, const Value& w) const override {
        double mean = p[0].to_double(), var = p[1].to_double();
        double x = w.to_double();
        double diff = x - mean;
        return Value::real(std::exp(-diff * diff / (2 * var)) / std::sqrt(2 * M_PI * var));
    }

    Value sample(std::span<const Value> p, Rng& rng) const override {
        // one uniform draw per sample, mapped through the normal quantile
        double mean = p[0].to_double(), sd = std::sqrt(p[1].to_double());
        double u = rng.next_unit();
        if (u <= 0.0) u = 0x1.0p-53;
        return Value::real(mean + sd * inverse_normal_cdf(u));
    }
};

class ShiftedDirac final : public Distribution {
public:
    ShiftedDirac()
        : Distribution("ShiftedDirac", {DomainTag::Int},
                       SupportKind::FiniteDiscrete, DomainTag::Int) {}

    std::optional<int> check_params(std::span<const Value> p) const override {
        if (!p[0].is_int()) return 0;
        return std::nullopt;
    }

    Value eval_mass(std::span<const Value> p, const Value& w) const override {
        bool hit = w.is_int() && w.as_int() == p[0].as_int() + 1;
        return Value::rational(Rat(hit ? 1 : 0));
    }

    Value sample(std::span<const Value> p, Rng&) const override {
        return Value::integer(p[0].as_int() + 1);
    }

    std::vector<std::pair<Value, Rat>> support(std::span<const Value> p) const override {
        return {{Value::integer(p[0].as_int() + 1), Rat(1)}};
    }
};

}  // namespace

const Distribution* find_distribution(const std::string& name) {
    static const std::map<std::string, std::unique_ptr<Distribution>> registry = [] {
        std::map<std::string, std::unique_ptr<Distribution>> r;
        r.emplace("Flip", std::make_unique<Flip>());
        r.emplace("Binomial", std::make_unique<Binomial>());
        r.emplace("Poisson", std::make_unique<Poisson>());
        r.emplace("Gaussian", std::make_unique<Gaussian>());
        r.emplace("ShiftedDirac", std::make_unique<ShiftedDirac>());
        return r;
    }();
    auto it = registry.find(name);
    return it == registry.end() ? nullptr : it->second.get();
}

}  // namespace gdlog
