#pragma once

// Exact arithmetic in GF(p^n).
//
// Elements are labelled by their canonical index: the base-p value of the
// coefficient vector (low degree first) modulo the canonical modulus. The
// canonical modulus of GF(p^n) is the lexicographically smallest monic
// irreducible polynomial of degree n, coefficient lists compared low degree
// first, so every (p, n) names exactly one field and element order is stable.

#include <optional>
#include <vector>

#include "apmub/errors.hpp"
#include "apmub/rational.hpp"

namespace apmub {

constexpr Int kMaxFieldOrder = 1 << 20;

struct FieldElement {
    Int index = 0;  // canonical label in 0..q-1
    Int order = 0;  // order q of the owning field; guards against mixing fields
};

class FieldSpec {
  public:
    Int p() const { return p_; }
    Int n() const { return n_; }
    Int order() const { return order_; }
    const std::vector<Int>& modulus() const { return modulus_; }  // low degree first, monic

    FieldElement zero() const { return {0, order_}; }
    FieldElement one() const { return from_index(1 % order_); }
    FieldElement from_index(Int index) const;
    std::vector<Int> coeffs(FieldElement a) const;  // length n, entries in 0..p-1

    FieldElement add(FieldElement a, FieldElement b) const;
    FieldElement sub(FieldElement a, FieldElement b) const;
    FieldElement mul(FieldElement a, FieldElement b) const;
    FieldElement neg(FieldElement a) const;
    FieldElement inv(FieldElement a) const;  // DivisionByZero on 0
    FieldElement pow(FieldElement a, Int exponent) const;

    std::vector<FieldElement> elements() const;  // canonical order 0..q-1

    // 0 on a = 0, +1 on nonzero squares, -1 otherwise; odd characteristic only.
    int quadratic_character(FieldElement a) const;

    friend FieldSpec field_new(Int p, Int n);

  private:
    FieldSpec() = default;
    void check(FieldElement a, const char* op) const;

    Int p_ = 0;
    Int n_ = 0;
    Int order_ = 0;
    std::vector<Int> modulus_;
};

// Builds GF(p^n) with the canonical modulus. Throws DomainError for a
// non-prime p, n < 1, or p^n beyond the desk-scale cap.
FieldSpec field_new(Int p, Int n);

bool is_prime(Int m);

// Returns (p, n) when m = p^n for a prime p, n >= 1.
std::optional<std::pair<Int, Int>> prime_power_decomposition(Int m);

}  // namespace apmub
