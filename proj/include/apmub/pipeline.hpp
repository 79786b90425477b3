#pragma once

// High-level construction pipelines: design + scaffold + bases + predicted
// parameters in one call. The CLI subcommands and the acceptance suite both
// run through these, so what the tests exercise is what the tool ships.

#include <optional>
#include <string>

#include "apmub/mub_builder.hpp"

namespace apmub {

enum class HadamardChoice { automatic, real_only, dft_only, from_file };

struct ConstructOutput {
    std::string method;  // "ses" or "qef"
    ResolvableDesign design;
    UnitaryScaffold scaffold;
    MubCollection collection;
    Int predicted_r = 0;
    Rational predicted_beta2;
    Rational predicted_delta_hi_sq;  // squared nonzero Delta value
    Rational predicted_epsilon;
};

// Picks the scaffold for block size k: the real search, the DFT, whichever
// of the two is available (real preferred), or a caller-supplied matrix.
UnitaryScaffold resolve_scaffold(Int k, HadamardChoice choice,
                                 const UnitaryScaffold* file_scaffold);

// d = (s-e)s by block deletion from w-MOLS(s); mols_cap limits how many
// squares of the constructive set are used.
ConstructOutput construct_ses_pipeline(Int s, Int e, std::optional<Int> mols_cap,
                                       HadamardChoice choice,
                                       const UnitaryScaffold* file_scaffold = nullptr);

// d = (q-e)(q+f) by trim + reshape of the (q^2, q, 1) design.
ConstructOutput construct_qef_pipeline(const QefParams& params, HadamardChoice choice,
                                       const UnitaryScaffold* file_scaffold = nullptr);

}  // namespace apmub
