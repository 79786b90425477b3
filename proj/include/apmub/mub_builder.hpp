#pragma once

// Assembles orthonormal bases from (design, scaffold) pairs and verifies the
// quantitative claims about them: the Delta spectrum, beta, sparsity, the
// per-vector orthogonality counts, the APMUB classification and the weighing
// matrix equivalence. Everything on the mu = 1 path is exact; magnitudes
// that are genuinely irrational (mu >= 2 diagnostics) fall back to floats
// with a 1e-9 binning tolerance.

#include <optional>
#include <string>
#include <vector>

#include "apmub/apmub_constructions.hpp"
#include "apmub/block_designs.hpp"
#include "apmub/hadamard.hpp"
#include "apmub/rational.hpp"

namespace apmub {

struct BasisVector {
    Int d = 0;
    std::vector<Int> support;        // strictly increasing coordinates in 1..d
    std::vector<PhaseEntry> phases;  // one per support position, none zero
    // implied scale: every nonzero component has magnitude 1/sqrt(k), k = |support|
};

using Basis = std::vector<BasisVector>;

struct MubCollection {
    Int d = 0;
    Int k = 0;
    std::vector<Basis> bases;
    std::string provenance;
};

// One basis per parallel class: block i with sorted elements x_1 < ... < x_k
// and scaffold row u yield vector i*k+u with component scaffold(u,j)/sqrt(k)
// at coordinate x_j. Pass one scaffold to share it or one per class.
MubCollection build_bases(const ResolvableDesign& design,
                          const std::vector<UnitaryScaffold>& scaffolds);

enum class Classification { MUB, APMUB, AMUB, fail };

std::string classification_name(Classification c);

struct SpectrumReport {
    Int d = 0;
    Int k = 0;
    Int r = 0;
    bool structural_ok = false;   // supports sorted, sizes uniform, phases nonzero
    bool orthonormal = false;     // every basis passes the exact Gram identity
    bool exact = false;           // every cross magnitude resolved exactly
    std::vector<Rational> delta_sq;        // attained |ip|^2 values, exact, ascending
    std::vector<double> delta_float;       // irrational magnitudes (diagnostic), ascending
    std::optional<Rational> beta2;         // d * max delta_sq, when exact
    double beta_double = 0.0;
    Rational epsilon;                      // 1 - k/d
    bool uniform_counts = false;
    Int t1 = 0, t2 = 0;                    // per-vector counts when uniform
    long long n1 = 0, n2 = 0;              // per base pair totals when uniform
    Classification classification = Classification::fail;
    std::optional<double> lambda_estimate;  // -log_d(beta - 1) when beta > 1
    std::vector<std::string> issues;
};

SpectrumReport analyze(const MubCollection& m);

// |<a|b>| with exact dispatch: support intersection size 0 gives 0, size 1
// gives 1/k; larger intersections are cyclotomically tested for zero or an
// integer magnitude and otherwise reported as a float.
struct InnerProductValue {
    bool exact = false;
    Rational mag_sq;      // valid when exact
    double mag = 0.0;     // always set
};
InnerProductValue inner_product(const BasisVector& a, const BasisVector& b);

struct WeighingMatrix {
    Int order = 0;
    Int weight = 0;
    std::vector<std::vector<PhaseEntry>> entries;  // scaled by 1/sqrt(weight)
};

// W_i = M_1^dagger M_i for i = 2..r; requires the collection to verify as
// MUB or APMUB. Every output and every pairwise product W_i^dagger W_j is
// re-verified as a weighing matrix of weight d/beta^2 = k^2.
std::vector<WeighingMatrix> weighing_from_bases(const MubCollection& m);

bool verify_weighing(const WeighingMatrix& w);

struct PredictedParams {
    Rational beta2;               // mu^2 (q+f)/(q-e)
    QuadSurd beta;                // mu (q+f) sqrt(d) / d
    Rational delta_hi_sq;         // (mu/(q-e))^2
    Rational epsilon;             // 1 - 1/(q+f)
    bool admissible_c2 = false;   // (e+f) <= ((4-mu^2)/(2 mu)) sqrt(d)
    // Partial sums of the beta series in 1/q (through q^-3) and in 1/sqrt(d)
    // (through d^-4), with their first omitted terms and a geometric tail
    // bound for the all-positive 1/q series.
    std::vector<QuadSurd> series_q;
    std::vector<QuadSurd> series_q_next_term;
    std::vector<QuadSurd> series_q_tail_bound;
    std::vector<QuadSurd> series_d;
    std::vector<QuadSurd> series_d_next_term;
    std::vector<QuadSurd> series_d_tail_bound;
};

PredictedParams predicted_params(const QefParams& params, Int mu);

}  // namespace apmub
