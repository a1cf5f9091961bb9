#include "gdlog/value.hpp"

#include <bit>
#include <charconv>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace gdlog {

std::string to_string(DomainTag tag) {
    switch (tag) {
        case DomainTag::Sym: return "sym";
        case DomainTag::Int: return "int";
        case DomainTag::Real: return "real";
    }
    return "?";
}

Value::Value(Rat r) : v_(std::move(r)) {}

Rat Value::to_rat() const {
    switch (kind()) {
        case Kind::Int: return Rat(as_int());
        case Kind::Rat: return as_rat();
        default: throw std::logic_error("to_rat on non-exact value");
    }
}

double Value::to_double() const {
    switch (kind()) {
        case Kind::Int: return static_cast<double>(as_int());
        case Kind::Rat: return static_cast<double>(as_rat());
        case Kind::Real: return as_real();
        default: throw std::logic_error("to_double on symbol");
    }
}

bool Value::matches(DomainTag tag) const {
    switch (tag) {
        case DomainTag::Sym: return is_symbol();
        case DomainTag::Int: return is_int();
        case DomainTag::Real: return is_numeric();
    }
    return false;
}

bool Value::operator==(const Value& other) const {
    if (v_.index() != other.v_.index()) return false;
    switch (kind()) {
        case Kind::Symbol: return as_symbol() == other.as_symbol();
        case Kind::Int: return as_int() == other.as_int();
        case Kind::Rat: return as_rat() == other.as_rat();
        case Kind::Real:
            // bit-exact, so 0.0 != -0.0 and hashing stays consistent
            return std::bit_cast<std::uint64_t>(as_real()) ==
                   std::bit_cast<std::uint64_t>(other.as_real());
    }
    return false;
}

bool Value::operator<(const Value& other) const {
    if (v_.index() != other.v_.index()) return v_.index() < other.v_.index();
    switch (kind()) {
        case Kind::Symbol: return as_symbol() < other.as_symbol();
        case Kind::Int: return as_int() < other.as_int();
        case Kind::Rat: return as_rat() < other.as_rat();
        case Kind::Real: {
            double a = as_real(), b = other.as_real();
            if (a < b) return true;
            if (b < a) return false;
            return std::bit_cast<std::uint64_t>(a) <
                   std::bit_cast<std::uint64_t>(b);
        }
    }
    return false;
}

namespace {

std::size_t combine(std::size_t seed, std::size_t h) {
    return seed ^ (h + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2));
}

}  // namespace

std::size_t Value::hash() const {
    std::size_t h = static_cast<std::size_t>(v_.index());
    switch (kind()) {
        case Kind::Symbol:
            return combine(h, std::hash<std::string>{}(as_symbol()));
        case Kind::Int:
            return combine(h, std::hash<std::int64_t>{}(as_int()));
        case Kind::Rat: {
            std::ostringstream os;
            os << as_rat();
            return combine(h, std::hash<std::string>{}(os.str()));
        }
        case Kind::Real:
            return combine(h, std::hash<std::uint64_t>{}(
                                  std::bit_cast<std::uint64_t>(as_real())));
    }
    return h;
}

std::string render_real(double d) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), d);
    std::string s(buf, res.ptr);
    // force a decimal point or exponent so the literal re-parses as Real
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find("inf") == std::string::npos && s.find("nan") == std::string::npos) {
        s += ".0";
    }
    return s;
}

std::string Value::str() const {
    switch (kind()) {
        case Kind::Symbol: {
            std::string out = "\"";
            for (char c : as_symbol()) {
                if (c == '"' || c == '\\') out += '\\';
                out += c;
            }
            out += '"';
            return out;
        }
        case Kind::Int: return std::to_string(as_int());
        case Kind::Rat: {
            std::ostringstream os;
            os << boost::multiprecision::numerator(as_rat()) << "/"
               << boost::multiprecision::denominator(as_rat());
            return os.str();
        }
        case Kind::Real: return render_real(as_real());
    }
    return "?";
}

}  // namespace gdlog
