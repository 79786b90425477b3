#pragma once

// Exact arithmetic helpers: reduced fractions, checked binomials and
// quadratic surds a + b*sqrt(D). Everything here is value-semantic and
// overflow-checked; desk-scale inputs never get near the int64 limits,
// so an overflow is reported instead of silently wrapping.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "apmub/errors.hpp"

namespace apmub {

using Int = long long;
using Wide = __int128;

inline Int checked_narrow(Wide v, const char* ctx) {
    if (v > Wide(INT64_MAX) || v < Wide(INT64_MIN))
        throw InternalError(std::string("integer overflow in ") + ctx);
    return static_cast<Int>(v);
}

class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(Int n) : num_(n), den_(1) {}
    Rational(Int n, Int d) { assign(n, d); }

    Int num() const { return num_; }
    Int den() const { return den_; }

    Rational operator-() const { return Rational(-num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return make(Wide(a.num_) * b.den_ + Wide(b.num_) * a.den_, Wide(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make(Wide(a.num_) * b.num_, Wide(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw DomainError("rational division by zero");
        return make(Wide(a.num_) * b.den_, Wide(a.den_) * b.num_);
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
        return Wide(a.num_) * b.den_ < Wide(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }
    Rational abs() const { return num_ < 0 ? -*this : *this; }
    bool is_integer() const { return den_ == 1; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

  private:
    static Rational make(Wide n, Wide d) {
        Rational r;
        if (d == 0) throw DomainError("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        Wide g = gcd_wide(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        r.num_ = checked_narrow(n, "Rational");
        r.den_ = checked_narrow(d, "Rational");
        return r;
    }
    static Wide gcd_wide(Wide a, Wide b) {
        while (b != 0) { Wide t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }
    void assign(Int n, Int d) { *this = make(n, d); }

    Int num_;
    Int den_;
};

// C(n, r) as an exact integer; throws on domain violations or overflow.
inline Int binomial(Int n, Int r) {
    if (r < 0 || n < 0 || r > n) return 0;
    if (r > n - r) r = n - r;
    Wide acc = 1;
    for (Int i = 1; i <= r; ++i) {
        acc = acc * (n - r + i);
        acc /= i;  // exact: product of i consecutive integers is divisible by i!
        if (acc > Wide(INT64_MAX)) throw InternalError("binomial overflow");
    }
    return static_cast<Int>(acc);
}

// Value a + b*sqrt(root) with rational a, b and a fixed nonnegative integer
// radicand. Enough structure to compare the beta series partial sums
// against the exact beta = (q+f)*sqrt(d)/d without any floating point.
class QuadSurd {
  public:
    QuadSurd(Rational a, Rational b, Int root) : a_(a), b_(b), root_(root) {
        if (root < 0) throw DomainError("QuadSurd: negative radicand");
    }
    static QuadSurd rational(Rational a) { return QuadSurd(a, Rational(0), 0); }

    const Rational& rat_part() const { return a_; }
    const Rational& surd_part() const { return b_; }
    Int root() const { return root_; }

    QuadSurd operator-(const QuadSurd& o) const {
        Int r = merge_root(o);
        return QuadSurd(a_ - o.a_, b_ - o.b_, r);
    }
    QuadSurd operator+(const QuadSurd& o) const {
        Int r = merge_root(o);
        return QuadSurd(a_ + o.a_, b_ + o.b_, r);
    }
    QuadSurd operator*(const Rational& c) const { return QuadSurd(a_ * c, b_ * c, root_); }

    // Sign of a + b*sqrt(root), computed exactly.
    int sign() const {
        int sa = a_.sign(), sb = b_.sign();
        if (root_ == 0 || sb == 0) return sa;
        Rational surd_sq = b_ * b_ * Rational(root_);
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // Opposite signs: compare |a|^2 against b^2 * root.
        Rational a_sq = a_ * a_;
        if (a_sq == surd_sq) return 0;
        return (a_sq > surd_sq) ? sa : sb;
    }

    QuadSurd abs() const { return sign() >= 0 ? *this : QuadSurd(-a_, -b_, root_); }

    bool operator<=(const QuadSurd& o) const { return (*this - o).sign() <= 0; }

    double to_double() const {
        return a_.to_double() + b_.to_double() * std::sqrt(static_cast<double>(root_));
    }

  private:
    Int merge_root(const QuadSurd& o) const {
        if (root_ != 0 && o.root_ != 0 && root_ != o.root_)
            throw InternalError("QuadSurd: mixed radicands");
        return root_ != 0 ? root_ : o.root_;
    }

    Rational a_, b_;
    Int root_;
};

}  // namespace apmub
