#pragma once

// Mutually Orthogonal Latin Squares: complete sets over prime-power orders
// and MacNeish direct products for composite orders. Symbols run 1..s.

#include <vector>

#include "apmub/finite_field.hpp"

namespace apmub {

struct LatinSquare {
    Int order = 0;
    std::vector<std::vector<Int>> cells;  // row-major, symbols in 1..order
};

struct MolsSet {
    Int order = 0;
    std::vector<LatinSquare> squares;
    size_t count() const { return squares.size(); }
};

bool is_latin(const LatinSquare& square);

// True iff superimposing a and b yields each ordered symbol pair exactly once.
bool are_orthogonal(const LatinSquare& a, const LatinSquare& b);

// Complete set of q-1 squares over GF(q): the square for the nonzero field
// element a has cell(i,j) = index(a*e_i + e_j) + 1 in canonical element order.
MolsSet mols_prime_power(const FieldSpec& spec);

// Direct-product construction; yields min(a.count, b.count) squares of order
// a.order * b.order.
MolsSet macneish_product(const MolsSet& a, const MolsSet& b);

// Complete set for prime-power s, MacNeish product over the prime-power
// factorization otherwise (a constructive lower bound, possibly below the
// best published N(s)).
MolsSet mols_for_order(Int s);

// Internal consistency check used by the factories: all squares Latin, all
// pairs orthogonal. Throws VerificationError with a diagnostic on failure.
void assert_valid_mols(const MolsSet& set);

}  // namespace apmub
