#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <variant>

namespace gdlog {

/// Exact rational number, always kept in lowest terms with positive
/// denominator (maintained by the backend).
using Rat = boost::multiprecision::cpp_rational;

enum class DomainTag { Sym, Int, Real };

std::string to_string(DomainTag tag);

/// A constant of the universe. Equality is exact (bit-exact for Real) and
/// decidable; the ordering below is total and canonical:
/// Symbol < Int < Rat < Real, each kind ordered internally.
class Value {
public:
    enum class Kind { Symbol, Int, Rat, Real };

    static Value symbol(std::string s) { return Value(std::move(s)); }
    static Value integer(std::int64_t i) { return Value(i); }
    static Value rational(Rat r) { return Value(std::move(r)); }
    static Value real(double d) { return Value(d); }

    Kind kind() const { return static_cast<Kind>(v_.index()); }

    bool is_symbol() const { return kind() == Kind::Symbol; }
    bool is_int() const { return kind() == Kind::Int; }
    bool is_rat() const { return kind() == Kind::Rat; }
    bool is_real() const { return kind() == Kind::Real; }
    bool is_numeric() const { return !is_symbol(); }

    const std::string& as_symbol() const { return std::get<0>(v_); }
    std::int64_t as_int() const { return std::get<1>(v_); }
    const Rat& as_rat() const { return std::get<2>(v_); }
    double as_real() const { return std::get<3>(v_); }

    /// Numeric value as a Rat; only valid for Int and Rat kinds.
    Rat to_rat() const;
    /// Numeric value as binary64; only valid for numeric kinds.
    double to_double() const;

    /// True if this value may populate an attribute with the given tag.
    /// Real attributes accept any numeric value (Z and Q embed into R).
    bool matches(DomainTag tag) const;

    bool operator==(const Value& other) const;
    bool operator!=(const Value& other) const { return !(*this == other); }
    bool operator<(const Value& other) const;

    std::size_t hash() const;

    /// Renders symbols quoted, rationals as "p/q", reals with shortest
    /// round-trip decimal notation.
    std::string str() const;

private:
    explicit Value(std::string s) : v_(std::move(s)) {}
    explicit Value(std::int64_t i) : v_(i) {}
    explicit Value(Rat r);
    explicit Value(double d) : v_(d) {}

    std::variant<std::string, std::int64_t, Rat, double> v_;
};

std::string render_real(double d);

}  // namespace gdlog

template <>
struct std::hash<gdlog::Value> {
    std::size_t operator()(const gdlog::Value& v) const { return v.hash(); }
};
