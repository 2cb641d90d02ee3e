#pragma once

/**
 * @file rational.hpp
 * @brief Exact rational arithmetic over arbitrary-precision integers.
 *
 * All item values, shares and approximation ratios in this library are
 * Rational. There is no floating-point fast path anywhere. The value is
 * kept canonical at all times: denominator > 0 and gcd(|num|, den) == 1
 * (the boost backend normalizes after every operation).
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

#include "mms3/errors.hpp"

namespace mms3 {

using BigInt = boost::multiprecision::cpp_int;

class Rational {
public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}
    Rational(long long n) : v_(n) {}
    Rational(const BigInt& n) : v_(n) {}
    Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}
    Rational(const BigInt& num, const BigInt& den) {
        if (den == 0)
            throw ArgumentError("Rational: zero denominator");
        v_ = Q(num, den);
    }

    BigInt numerator() const { return boost::multiprecision::numerator(v_); }
    BigInt denominator() const { return boost::multiprecision::denominator(v_); }

    bool is_zero() const { return v_ == 0; }
    bool is_integer() const { return denominator() == 1; }
    int sign() const { return v_ < 0 ? -1 : (v_ > 0 ? 1 : 0); }

    Rational operator-() const { return Rational(Q(-v_)); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero())
            throw ArgumentError("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    /// Canonical text: "n" for integers, "n/d" otherwise.
    std::string str() const {
        std::string s = numerator().str();
        if (!is_integer()) {
            s += '/';
            s += denominator().str();
        }
        return s;
    }

    /// Accepts "n", "a/b" and the mixed form "w+a/b" (e.g. "7+1/3").
    /// A leading '-' negates the whole value.
    static Rational parse(std::string_view text);

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.str();
    }

private:
    using Q = boost::multiprecision::cpp_rational;
    explicit Rational(Q v) : v_(std::move(v)) {}
    Q v_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

namespace detail {

inline bool parse_uint(std::string_view& s, BigInt& out) {
    size_t i = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9')
        ++i;
    if (i == 0)
        return false;
    out = BigInt(std::string(s.substr(0, i)));
    s.remove_prefix(i);
    return true;
}

} // namespace detail

inline Rational Rational::parse(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        negative = s[0] == '-';
        s.remove_prefix(1);
    }
    BigInt first;
    if (!detail::parse_uint(s, first))
        throw ParseError("Rational: cannot parse \"" + std::string(text) + "\"");
    Rational value(first);
    if (!s.empty() && s[0] == '/') {
        s.remove_prefix(1);
        BigInt den;
        if (!detail::parse_uint(s, den) || den == 0)
            throw ParseError("Rational: bad denominator in \"" + std::string(text) + "\"");
        value = Rational(first, den);
    } else if (!s.empty() && s[0] == '+') {
        s.remove_prefix(1);
        BigInt num, den;
        if (!detail::parse_uint(s, num))
            throw ParseError("Rational: bad mixed form in \"" + std::string(text) + "\"");
        if (s.empty() || s[0] != '/')
            throw ParseError("Rational: mixed form needs a fraction in \"" + std::string(text) + "\"");
        s.remove_prefix(1);
        if (!detail::parse_uint(s, den) || den == 0)
            throw ParseError("Rational: bad denominator in \"" + std::string(text) + "\"");
        value = Rational(first) + Rational(num, den);
    }
    if (!s.empty())
        throw ParseError("Rational: trailing characters in \"" + std::string(text) + "\"");
    return negative ? -value : value;
}

} // namespace mms3
