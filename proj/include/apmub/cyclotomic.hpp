#pragma once

// Exact arithmetic with sums of roots of unity.
//
// A RootSum over order L holds integer multiplicities c_j of the L-th roots
// zeta_L^j, i.e. the value sum_j c_j * exp(2*pi*i*j/L). The key primitive is
// the exact zero test: the value vanishes iff the coefficient polynomial
// sum_j c_j x^j is divisible by the L-th cyclotomic polynomial Phi_L. All
// row-orthogonality and weighing-matrix checks in this project reduce to
// this test, so no tolerance enters the verification path.

#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "apmub/errors.hpp"
#include "apmub/rational.hpp"

namespace apmub {

namespace detail {

// Quotient of exact polynomial division (low-degree-first coefficients).
inline std::vector<Int> poly_div_exact(std::vector<Int> num, const std::vector<Int>& den) {
    if (den.empty() || den.back() == 0) throw InternalError("poly_div_exact: bad divisor");
    if (num.size() < den.size()) throw InternalError("poly_div_exact: degree underflow");
    std::vector<Int> quot(num.size() - den.size() + 1, 0);
    for (size_t i = quot.size(); i-- > 0;) {
        Int lead = num[i + den.size() - 1];
        if (lead % den.back() != 0) throw InternalError("poly_div_exact: inexact division");
        Int q = lead / den.back();
        quot[i] = q;
        if (q != 0)
            for (size_t j = 0; j < den.size(); ++j) num[i + j] -= q * den[j];
    }
    for (Int c : num)
        if (c != 0) throw InternalError("poly_div_exact: nonzero remainder");
    return quot;
}

}  // namespace detail

// Phi_n, computed by dividing x^n - 1 by the cyclotomic polynomials of all
// proper divisors of n. Coefficients are exact integers; results are cached.
inline const std::vector<Int>& cyclotomic_polynomial(int n) {
    static std::map<int, std::vector<Int>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (n < 1) throw DomainError("cyclotomic_polynomial: order must be positive");
    std::vector<Int> poly(n + 1, 0);
    poly[0] = -1;
    poly[n] = 1;  // x^n - 1
    for (int d = 1; d < n; ++d)
        if (n % d == 0) poly = detail::poly_div_exact(poly, cyclotomic_polynomial(d));
    return cache.emplace(n, std::move(poly)).first->second;
}

class RootSum {
  public:
    explicit RootSum(int order) : order_(order), coeff_(order, 0) {
        if (order < 1) throw DomainError("RootSum: order must be positive");
    }

    int order() const { return order_; }

    // Adds count * exp(2*pi*i*num/den); den must divide the ambient order.
    void add_phase(Int num, Int den, Int count = 1) {
        if (den <= 0 || order_ % den != 0)
            throw InternalError("RootSum: phase denominator does not divide order");
        Int stride = order_ / den;
        Int e = ((num * stride) % order_ + order_) % order_;
        coeff_[static_cast<size_t>(e)] += count;
    }

    void add_integer(Int v) { coeff_[0] += v; }

    bool is_zero() const {
        std::vector<Int> rem = coeff_;
        reduce(rem);
        for (Int c : rem)
            if (c != 0) return false;
        return true;
    }

    // True iff the sum equals the plain integer v.
    bool equals_integer(Int v) const {
        RootSum probe = *this;
        probe.coeff_[0] -= v;
        return probe.is_zero();
    }

    // If the reduced sum is an integer multiple of a single root of unity,
    // its absolute value is that integer. Returns true and sets |value|.
    bool integer_magnitude(Int& abs_out) const {
        for (int t = 0; t < order_; ++t) {
            // candidate: value = c * zeta^t with c = coeff sum projected; try
            // matching against each residue class cheaply via is_zero probes.
            Int c = coeff_[static_cast<size_t>(t)];
            if (c == 0) continue;
            RootSum probe = *this;
            probe.add_phase(t, order_, -c);
            if (probe.is_zero()) {
                abs_out = c < 0 ? -c : c;
                return true;
            }
        }
        if (is_zero()) {
            abs_out = 0;
            return true;
        }
        return false;
    }

    std::complex<double> eval() const {
        std::complex<double> acc{0.0, 0.0};
        const double twopi = 6.283185307179586476925286766559;
        for (int j = 0; j < order_; ++j) {
            if (coeff_[static_cast<size_t>(j)] == 0) continue;
            double ang = twopi * j / order_;
            acc += static_cast<double>(coeff_[static_cast<size_t>(j)]) *
                   std::complex<double>{std::cos(ang), std::sin(ang)};
        }
        return acc;
    }

  private:
    void reduce(std::vector<Int>& c) const {
        const std::vector<Int>& phi = cyclotomic_polynomial(order_);
        size_t deg = phi.size() - 1;
        for (size_t i = c.size(); i-- > deg;) {
            Int q = c[i];
            if (q == 0) continue;
            for (size_t j = 0; j < phi.size(); ++j) c[i - deg + j] -= q * phi[j];
        }
        c.resize(deg);
    }

    int order_;
    std::vector<Int> coeff_;
};

inline Int lcm_int(Int a, Int b) { return a / std::gcd(a, b) * b; }

}  // namespace apmub
