#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "htk/errors.hpp"

namespace htk {

// All lattice arithmetic runs on 64-bit integers with explicit overflow
// checks. The inputs this toolkit targets are small configurations, so the
// checks never fire in practice; they turn silent wraparound into a loud
// failure instead of a wrong answer.
using Int = std::int64_t;

inline Int checked_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw overflow_error("integer overflow in add");
    return r;
}

inline Int checked_sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) throw overflow_error("integer overflow in sub");
    return r;
}

inline Int checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw overflow_error("integer overflow in mul");
    return r;
}

inline Int checked_neg(Int a) { return checked_sub(0, a); }

inline Int abs_int(Int a) { return a < 0 ? checked_neg(a) : a; }

inline Int gcd_int(Int a, Int b) {
    a = abs_int(a);
    b = abs_int(b);
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// g = gcd(a,b) together with x,y such that a*x + b*y = g.
struct ExtGcd {
    Int g, x, y;
};

inline ExtGcd ext_gcd(Int a, Int b) {
    Int old_r = a, r = b;
    Int old_s = 1, s = 0;
    Int old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = checked_sub(old_r, checked_mul(q, r));
        old_r = r;
        r = tmp;
        tmp = checked_sub(old_s, checked_mul(q, s));
        old_s = s;
        s = tmp;
        tmp = checked_sub(old_t, checked_mul(q, t));
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = checked_neg(old_r);
        old_s = checked_neg(old_s);
        old_t = checked_neg(old_t);
    }
    return {old_r, old_s, old_t};
}

// Exact rational number over checked 64-bit integers, always normalized to
// lowest terms with positive denominator.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(Int n) : num_(n), den_(1) {}
    Rational(Int n, Int d) : num_(n), den_(d) { normalize(); }

    Int num() const { return num_; }
    Int den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    Rational operator-() const {
        Rational r;
        r.num_ = checked_neg(num_);
        r.den_ = den_;
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        Int g = gcd_int(a.den_, b.den_);
        Int bd = b.den_ / g;
        Int n = checked_add(checked_mul(a.num_, bd), checked_mul(b.num_, a.den_ / g));
        return Rational(n, checked_mul(a.den_, bd));
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        Int g1 = gcd_int(a.num_, b.den_);
        Int g2 = gcd_int(b.num_, a.den_);
        return Rational(checked_mul(a.num_ / g1, b.num_ / g2),
                        checked_mul(a.den_ / g2, b.den_ / g1));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return a * Rational(b.den_, b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return checked_mul(a.num_, b.den_) < checked_mul(b.num_, a.den_);
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return a < b || a == b; }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

    // Fractional part in [0,1).
    Rational mod1() const {
        Int r = num_ % den_;
        if (r < 0) r = checked_add(r, den_);
        return Rational(r, den_);
    }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    void normalize() {
        if (den_ == 0) throw std::domain_error("rational with zero denominator");
        if (den_ < 0) {
            num_ = checked_neg(num_);
            den_ = checked_neg(den_);
        }
        Int g = gcd_int(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    Int num_;
    Int den_;
};

// Parses "p", "p/q", or a decimal like "-0.25" or "2.5e-3" into an exact
// rational.
inline Rational parse_rational(const std::string& input) {
    auto bad = [&] { throw parse_error("cannot parse rational: '" + input + "'"); };
    if (input.empty()) bad();
    std::string s = input;
    int exp10 = 0;
    auto epos = s.find_first_of("eE");
    if (epos != std::string::npos && s.find('/') == std::string::npos) {
        try {
            exp10 = std::stoi(s.substr(epos + 1));
        } catch (...) {
            bad();
        }
        s = s.substr(0, epos);
        if (s.empty()) bad();
    }
    Rational base;
    auto slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            base = Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
        } else {
            auto dot = s.find('.');
            if (dot == std::string::npos) {
                base = Rational(std::stoll(s));
            } else {
                std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
                if (fp.empty()) {
                    base = Rational(std::stoll(ip));
                } else {
                    Int den = 1;
                    for (std::size_t i = 0; i < fp.size(); ++i) den = checked_mul(den, 10);
                    bool neg = !ip.empty() && ip[0] == '-';
                    Int whole = (ip == "-" || ip.empty()) ? 0 : std::stoll(ip);
                    Int frac = std::stoll(fp);
                    if (frac < 0) bad();
                    Int num = checked_add(checked_mul(abs_int(whole), den), frac);
                    base = Rational(neg || whole < 0 ? checked_neg(num) : num, den);
                }
            }
        }
    } catch (const std::invalid_argument&) {
        bad();
    } catch (const std::out_of_range&) {
        bad();
    }
    while (exp10 > 0) {
        base *= Rational(10);
        --exp10;
    }
    while (exp10 < 0) {
        base /= Rational(10);
        ++exp10;
    }
    return base;
}

} // namespace htk
