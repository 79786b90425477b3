#pragma once

// Resolvable block designs: validation, cross-class intersection analysis,
// the T(d,k,mu) bound with its exact backtracking oracle, the MOLS <-> RBD
// conversions and the affine resolvable (q^2, q, 1) design.
//
// A design stores its parallel classes in construction order; inside a class
// the blocks are kept sorted by their element lists (each block ascending),
// which fixes the symbol assignment of rbd_to_mols and makes every pipeline
// in this project reproducible byte for byte.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "apmub/latin_squares.hpp"

namespace apmub {

struct Block {
    std::vector<Int> elements;  // strictly increasing, values in 1..d
};

struct ParallelClass {
    std::vector<Block> blocks;
};

struct ResolvableDesign {
    Int d = 0;
    std::vector<ParallelClass> classes;
};

struct ValidationReport {
    bool valid = false;
    bool simple = false;               // no repeated block anywhere
    bool constant_block_size = false;
    Int block_size = 0;                // meaningful when constant_block_size
    std::map<Int, Int> block_size_profile;
    std::vector<std::string> issues;   // per-class partition diagnostics
};

struct IntersectionProfile {
    Int mu = 0;
    std::map<Int, Int> histogram;  // intersection size -> cross-class pair count
};

// Sorts blocks ascending and the blocks of each class by element list.
void canonicalize(ResolvableDesign& design);

ValidationReport validate(const ResolvableDesign& design);

// Exact maximum cross-class pairwise block intersection; requires r >= 2.
IntersectionProfile mu_profile(const ResolvableDesign& design);

// floor(C(d, mu+1) / C(k, mu+1)), the packing bound on T(d,k,mu).
Int t_bound(Int d, Int k, Int mu);

struct OracleResult {
    Int size = 0;
    bool exact = false;  // false when the node budget ran out first
    long long nodes = 0;
};

// Exact maximum family of k-subsets of {1..d} with pairwise intersections
// <= mu, by lexicographic branch-and-bound. Stops early once the t_bound
// ceiling is attained (which already proves optimality).
OracleResult t_oracle(Int d, Int k, Int mu, long long node_budget = 20'000'000);

struct ClassCountBound {
    Int mu_min = 0;
    Int r_max = 0;
};

// Lemma-level bounds for an RBD with d = k*s and given mu (defaults to the
// minimum feasible mu = ceil(k/s)).
ClassCountBound class_count_bound(Int d, Int k, Int s, std::optional<Int> mu = std::nullopt);

// Construction: w squares of order s to an RBD on s^2 elements with classes
// [rows, columns, one class per square]; every cross-class block pair meets
// in exactly one element.
ResolvableDesign mols_to_rbd(const MolsSet& mols);

// Converse construction. The first two classes frame M_ref (callers may
// permute classes first); symbol t of a square is the t-th stored block of
// its class. Throws DomainError with a diagnostic if the design does not
// have the required (s^2, s, intersect-exactly-1) shape.
MolsSet rbd_to_mols(const ResolvableDesign& design);

// The affine resolvable (q^2, q, 1) design, realized as
// mols_to_rbd(mols_prime_power(spec)): q+1 classes of q blocks of size q.
ResolvableDesign arbibd(const FieldSpec& spec);

}  // namespace apmub
