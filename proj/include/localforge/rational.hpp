#pragma once

#include <cstdint>
#include <string>
#include <iosfwd>

namespace localforge {

// Exact rational arithmetic on 64-bit numerator/denominator.
// Always stored normalized: gcd(num, den) == 1, den > 0.
// Comparisons go through 128-bit cross products, so values whose
// components fit in int64 compare exactly.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational operator-() const { return Rational(-num_, den_); }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;
    bool operator<=(const Rational& o) const { return *this < o || *this == o; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    double toDouble() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    // Serialized form: "p/q", or just "p" when q == 1.
    std::string str() const;
    static Rational parse(const std::string& text);

private:
    std::int64_t num_;
    std::int64_t den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

} // namespace localforge
