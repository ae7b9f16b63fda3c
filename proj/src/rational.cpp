#include "localforge/rational.hpp"

#include <numeric>
#include <ostream>
#include <stdexcept>

namespace localforge {

namespace {

std::int64_t safeMul(std::int64_t a, std::int64_t b) {
    __int128 p = static_cast<__int128>(a) * b;
    if (p > INT64_MAX || p < INT64_MIN) {
        throw std::overflow_error("rational component overflow");
    }
    return static_cast<std::int64_t>(p);
}

std::int64_t safeAdd(std::int64_t a, std::int64_t b) {
    __int128 s = static_cast<__int128>(a) + b;
    if (s > INT64_MAX || s < INT64_MIN) {
        throw std::overflow_error("rational component overflow");
    }
    return static_cast<std::int64_t>(s);
}

} // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) {
        throw std::invalid_argument("zero denominator");
    }
    if (d < 0) {
        n = -n;
        d = -d;
    }
    std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0) {
        g = 1;
    }
    num_ = n / g;
    den_ = d / g;
}

Rational Rational::operator+(const Rational& o) const {
    std::int64_t g = std::gcd(den_, o.den_);
    std::int64_t lhs = safeMul(num_, o.den_ / g);
    std::int64_t rhs = safeMul(o.num_, den_ / g);
    return Rational(safeAdd(lhs, rhs), safeMul(den_ / g, o.den_));
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
    // Cross-reduce before multiplying to keep components small.
    std::int64_t g1 = std::gcd(num_ < 0 ? -num_ : num_, o.den_);
    std::int64_t g2 = std::gcd(o.num_ < 0 ? -o.num_ : o.num_, den_);
    return Rational(safeMul(num_ / g1, o.num_ / g2), safeMul(den_ / g2, o.den_ / g1));
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) {
        throw std::invalid_argument("division by zero rational");
    }
    return *this * Rational(o.den_, o.num_);
}

bool Rational::operator<(const Rational& o) const {
    __int128 lhs = static_cast<__int128>(num_) * o.den_;
    __int128 rhs = static_cast<__int128>(o.num_) * den_;
    return lhs < rhs;
}

std::string Rational::str() const {
    if (den_ == 1) {
        return std::to_string(num_);
    }
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& text) {
    if (text.empty()) {
        throw std::invalid_argument("empty rational literal");
    }
    std::size_t slash = text.find('/');
    std::size_t pos = 0;
    std::int64_t n = 0;
    std::int64_t d = 1;
    try {
        if (slash == std::string::npos) {
            n = std::stoll(text, &pos);
            if (pos != text.size()) {
                throw std::invalid_argument("trailing characters");
            }
        } else {
            n = std::stoll(text.substr(0, slash), &pos);
            if (pos != slash) {
                throw std::invalid_argument("trailing characters");
            }
            const std::string denPart = text.substr(slash + 1);
            d = std::stoll(denPart, &pos);
            if (pos != denPart.size()) {
                throw std::invalid_argument("trailing characters");
            }
        }
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal: " + text);
    }
    return Rational(n, d);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

} // namespace localforge
