#include "riskched/rational.hpp"

#include <gmpxx.h>

#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace riskched {

struct Rational::Big {
    mpq_class value;
};

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

bool fits(i128 v) { return v >= -static_cast<i128>(kMax) && v <= static_cast<i128>(kMax); }

u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

u128 uabs(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

mpz_class to_mpz(i128 v) {
    bool neg = v < 0;
    u128 u = uabs(v);
    mpz_class hi(static_cast<unsigned long>(u >> 64));
    mpz_class lo(static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFull));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

}  // namespace

Rational::Rational(unsigned long value) : Rational(static_cast<unsigned long long>(value)) {}

Rational::Rational(unsigned long long value) {
    if (value <= static_cast<unsigned long long>(kMax)) {
        num_ = static_cast<std::int64_t>(value);
    } else {
        Big b;
        b.value = mpq_class(mpz_class(static_cast<unsigned long>(value)));
        *this = from_big(std::move(b));
    }
}

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
    if (denominator == 0) throw std::domain_error("rational with zero denominator");
    i128 n = numerator, d = denominator;
    if (d < 0) {
        n = -n;
        d = -d;
    }
    u128 g = gcd128(uabs(n), static_cast<u128>(d));
    if (g > 1) {
        n /= static_cast<i128>(g);
        d /= static_cast<i128>(g);
    }
    if (fits(n) && fits(d)) {
        num_ = static_cast<std::int64_t>(n);
        den_ = static_cast<std::int64_t>(d);
    } else {
        Big b;
        b.value = mpq_class(to_mpz(n), to_mpz(d));
        b.value.canonicalize();
        *this = from_big(std::move(b));
    }
}

void Rational::check_small_int() {
    if (num_ == std::numeric_limits<std::int64_t>::min()) {
        Big b;
        b.value = mpq_class(mpz_class(static_cast<long>(num_)));
        *this = from_big(std::move(b));
    }
}

Rational Rational::from_big(Big value) {
    Rational r;
    const mpz_class& n = value.value.get_num();
    const mpz_class& d = value.value.get_den();
    if (n.fits_slong_p() && d.fits_slong_p() && n.get_si() != std::numeric_limits<long>::min()) {
        r.num_ = n.get_si();
        r.den_ = d.get_si();
        return r;
    }
    r.num_ = 0;
    r.den_ = 1;
    r.big_ = std::make_shared<const Big>(std::move(value));
    return r;
}

Rational::Big Rational::to_big() const {
    if (big_) return *big_;
    Big b;
    b.value = mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
    return b;
}

Rational Rational::parse(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
        return s;
    };
    auto is_int = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    text = trim(text);
    auto slash = text.find('/');
    std::string_view num = trim(text.substr(0, slash));
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : trim(text.substr(slash + 1));
    if (!is_int(num) || !is_int(den) || den.front() == '-' || den.front() == '+')
        throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    Big b;
    std::string n(num.front() == '+' ? num.substr(1) : num);
    mpz_class zn(n, 10), zd(std::string(den), 10);
    if (zd == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    b.value = mpq_class(zn, zd);
    b.value.canonicalize();
    return from_big(std::move(b));
}

std::string Rational::str() const {
    if (big_) return big_->value.get_str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

double Rational::to_double() const {
    if (big_) return big_->value.get_d();
    return static_cast<double>(num_) / static_cast<double>(den_);
}

bool Rational::is_integer() const {
    if (big_) return big_->value.get_den() == 1;
    return den_ == 1;
}

int Rational::sign() const {
    if (big_) return sgn(big_->value);
    return (num_ > 0) - (num_ < 0);
}

Rational Rational::floor() const {
    if (big_) {
        Big b;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), big_->value.get_num_mpz_t(), big_->value.get_den_mpz_t());
        b.value = mpq_class(q);
        return from_big(std::move(b));
    }
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return Rational(q);
}

Rational Rational::ceil() const { return -(-*this).floor(); }

std::int64_t Rational::to_int64() const {
    if (big_ || den_ != 1) throw std::overflow_error("rational " + str() + " is not a 64-bit integer");
    return num_;
}

Rational Rational::operator-() const {
    if (big_) {
        Big b;
        b.value = -big_->value;
        return from_big(std::move(b));
    }
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
    if (!big_ && !rhs.big_) {
        if (den_ == rhs.den_) {
            i128 n = static_cast<i128>(num_) + rhs.num_;
            u128 g = den_ == 1 ? 1 : gcd128(uabs(n), static_cast<u128>(den_));
            i128 d = den_;
            if (g > 1) {
                n /= static_cast<i128>(g);
                d /= static_cast<i128>(g);
            }
            if (fits(n)) {
                num_ = static_cast<std::int64_t>(n);
                den_ = static_cast<std::int64_t>(d);
                return *this;
            }
        } else {
            std::int64_t g = std::gcd(den_, rhs.den_);
            i128 t = static_cast<i128>(num_) * (rhs.den_ / g) + static_cast<i128>(rhs.num_) * (den_ / g);
            u128 g2 = g == 1 ? 1 : gcd128(uabs(t), static_cast<u128>(g));
            i128 n = t / static_cast<i128>(g2);
            i128 d = static_cast<i128>(den_ / g) * (rhs.den_ / static_cast<std::int64_t>(g2));
            if (fits(n) && fits(d)) {
                num_ = static_cast<std::int64_t>(n);
                den_ = static_cast<std::int64_t>(d);
                return *this;
            }
        }
    }
    Big b = to_big();
    b.value += rhs.to_big().value;
    return *this = from_big(std::move(b));
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
    if (!big_ && !rhs.big_) {
        std::int64_t g1 = std::gcd(num_, rhs.den_);
        std::int64_t g2 = std::gcd(rhs.num_, den_);
        if (g1 == 0) g1 = 1;
        if (g2 == 0) g2 = 1;
        i128 n = static_cast<i128>(num_ / g1) * (rhs.num_ / g2);
        i128 d = static_cast<i128>(den_ / g2) * (rhs.den_ / g1);
        if (fits(n) && fits(d)) {
            num_ = static_cast<std::int64_t>(n);
            den_ = static_cast<std::int64_t>(d);
            if (num_ == 0) den_ = 1;
            return *this;
        }
    }
    Big b = to_big();
    b.value *= rhs.to_big().value;
    return *this = from_big(std::move(b));
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) throw std::domain_error("rational division by zero");
    if (!rhs.big_) {
        Rational inv;
        inv.num_ = rhs.num_ < 0 ? -rhs.den_ : rhs.den_;
        inv.den_ = rhs.num_ < 0 ? -rhs.num_ : rhs.num_;
        return *this *= inv;
    }
    Big b = to_big();
    b.value /= rhs.big_->value;
    return *this = from_big(std::move(b));
}

bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return a.big_->value == b.big_->value;
    // A canonical big value never fits the small form, so mixed forms differ.
    return false;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        if (a.den_ == b.den_) return a.num_ <=> b.num_;
        i128 l = static_cast<i128>(a.num_) * b.den_;
        i128 r = static_cast<i128>(b.num_) * a.den_;
        return l < r ? std::strong_ordering::less : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    int c = cmp(a.to_big().value, b.to_big().value);
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace riskched
