#pragma once

// The two APMUB-grade design pipelines:
//   - block deletion for d = (s-e)s, seeded by w-MOLS(s);
//   - trim + reshape for d = (q-e)(q+f), seeded by the (q^2, q, 1) design;
// plus a planner that enumerates admissible factorizations of a target
// dimension with their predicted parameters.

#include <optional>
#include <string>
#include <vector>

#include "apmub/block_designs.hpp"
#include "apmub/rational.hpp"

namespace apmub {

struct QefParams {
    Int q = 0;
    Int e = 0;
    Int f = 0;

    Int h() const { return e - f; }
    Int d() const { return (q - e) * (q + f); }
    Int k() const { return q - e; }
    Int s() const { return q + f; }

    // beta <= 2 gate of the theorem, in exact integer form.
    bool admissible() const { return 4 * e + f <= 3 * q; }

    void require_valid() const;  // 0 < f <= e < q and q a prime power
};

enum class BlockTag { original, trimmed, appended };

struct MixedDesign {
    ResolvableDesign design;
    std::vector<std::vector<BlockTag>> tags;  // aligned with design.classes/blocks
    QefParams params;
};

// Construction: start from mols_to_rbd(mols), delete e blocks of the row
// class everywhere, drop the row class, relabel 1..(s-e)s. The paper's
// worked examples delete the blocks holding the highest labels, which keeps
// the surviving labels contiguous; we follow that choice. e = 0 returns the
// untouched s^2 design.
ResolvableDesign construct_se_s(Int s, Int e, const MolsSet& mols);

// Stage 1: from the (q^2, q, 1) design, delete h = e-f whole blocks of class
// one plus e elements from each of the next f blocks, then relabel. Output
// keeps q+1 classes with block sizes in {q-e, ..., q-e+f, q} and mu = 1.
MixedDesign trim_arbibd(const QefParams& params);

// Stage 2: rebuild floor((q-e)/f)+1 classes of q+f blocks, all of size q-e,
// by marking, rebalancing and extracting elements lying on class-one blocks.
ResolvableDesign reshape(const MixedDesign& stage1, const QefParams& params);

struct QefProvenance {
    std::vector<Int> removed_elements;   // original labels deleted by the trim
    std::vector<Int> relabel;            // relabel[old-1] = new label, 0 if deleted
    Int stage1_classes = 0;
    Int final_classes = 0;
};

struct QefResult {
    ResolvableDesign design;
    MixedDesign stage1;
    QefProvenance provenance;
};

QefResult construct_qef(const QefParams& params);

struct ConstructionPlan {
    enum class Method { mols_lower_bound, qef_reshape };
    Method method = Method::mols_lower_bound;
    Int d = 0;
    Int k = 0;  // block size = vector weight
    Int s = 0;  // blocks per class
    Int e = 0;
    Int f = 0;       // 0 for the MOLS route
    Int q = 0;       // prime power seed (equals s for the MOLS route on prime powers)
    Int r = 0;       // constructive class count
    Rational beta2;  // s/k
    Rational delta_hi_sq;  // squared nonzero Delta value, 1/k^2
    Rational epsilon;      // 1 - 1/s
    bool via_macneish = false;  // MOLS count is only a MacNeish lower bound
    std::string note;
};

// Enumerates admissible plans for a composite d, sorted by descending r then
// ascending beta. Throws DomainError("NoAdmissiblePlan...") when none exists.
std::vector<ConstructionPlan> plan(Int d);

}  // namespace apmub
