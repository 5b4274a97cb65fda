#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

namespace riskched {

/// Exact rational number, always in lowest terms with a positive denominator.
///
/// Values whose numerator and denominator fit in 64 bits are stored inline;
/// anything larger is promoted to an arbitrary-precision representation and
/// demoted again once it fits. Arithmetic never rounds.
class Rational {
public:
    Rational() = default;
    Rational(int value) : num_(value) {}
    Rational(long value) : num_(value) { check_small_int(); }
    Rational(long long value) : num_(value) { check_small_int(); }
    Rational(unsigned value) : num_(static_cast<std::int64_t>(value)) {}
    Rational(unsigned long value);
    Rational(unsigned long long value);
    Rational(std::int64_t numerator, std::int64_t denominator);

    /// Accepts "a", "-a", "a/b"; throws std::invalid_argument otherwise.
    static Rational parse(std::string_view text);

    std::string str() const;
    double to_double() const;
    bool is_integer() const;
    bool is_zero() const { return !big_ && num_ == 0; }
    int sign() const;

    /// Largest integer not above the value.
    Rational floor() const;
    /// Smallest integer not below the value.
    Rational ceil() const;

    /// Integer value; throws std::overflow_error if not an integer in range.
    std::int64_t to_int64() const;

    Rational operator-() const;
    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

    friend bool operator==(const Rational& a, const Rational& b);
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

    struct Big;

private:
    void check_small_int();
    static Rational from_big(Big value);
    Big to_big() const;

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::shared_ptr<const Big> big_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }

/// max(0, r)
inline Rational positive_part(const Rational& r) { return r.sign() > 0 ? r : Rational{}; }

}  // namespace riskched
