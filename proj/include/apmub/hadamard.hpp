#pragma once

// Unitary scaffolds: k x k matrices of exact phases (or zeros, for weighing
// matrices downstream) representing sqrt(k) * H for a real or complex
// Hadamard matrix H. Phases are reduced fractions of a turn, so H H^dagger
// = k I can be checked symbolically through cyclotomic reduction.

#include <optional>
#include <vector>

#include "apmub/cyclotomic.hpp"
#include "apmub/finite_field.hpp"

namespace apmub {

struct PhaseEntry {
    bool zero = false;
    Int num = 0;  // phase = exp(2*pi*i*num/den), reduced, 0 <= num < den
    Int den = 1;
};

PhaseEntry phase_of(Int num, Int den);
inline PhaseEntry phase_zero() { return {true, 0, 1}; }
inline PhaseEntry phase_one() { return {false, 0, 1}; }
inline PhaseEntry phase_minus_one() { return {false, 1, 2}; }
PhaseEntry phase_conj(const PhaseEntry& p);
PhaseEntry phase_mul(const PhaseEntry& a, const PhaseEntry& b);
bool phase_equal(const PhaseEntry& a, const PhaseEntry& b);
bool phase_is_real(const PhaseEntry& p);

enum class ScaffoldKind { real, complex_kind };

struct UnitaryScaffold {
    Int k = 0;
    ScaffoldKind kind = ScaffoldKind::complex_kind;
    std::vector<std::vector<PhaseEntry>> entries;
};

// entry(u,v) = exp(2*pi*i*u*v/k); a complex Hadamard for every k >= 1.
UnitaryScaffold dft(Int k);

// Real Hadamard of order 2^m by iterated doubling.
UnitaryScaffold sylvester(Int m);

// Paley constructions from the quadratic character of GF(q):
// type I gives order q+1 for q = 3 mod 4, type II order 2(q+1) for q = 1 mod 4.
UnitaryScaffold paley_i(const FieldSpec& spec);
UnitaryScaffold paley_ii(const FieldSpec& spec);

UnitaryScaffold tensor(const UnitaryScaffold& a, const UnitaryScaffold& b);

// Best-effort search over {1, 2, sylvester, paley_i, paley_ii, tensor}.
// Empty result means the search failed, not that no real Hadamard exists.
std::optional<UnitaryScaffold> real_hadamard(Int k);

// Exact check of H H^dagger = k I (cyclotomic zero tests on all row pairs)
// plus a floating cross-check below 1e-12. Rejects zero entries.
bool verify_scaffold(const UnitaryScaffold& h);

}  // namespace apmub
