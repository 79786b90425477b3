#include "apmub/pipeline.hpp"

namespace apmub {

UnitaryScaffold resolve_scaffold(Int k, HadamardChoice choice,
                                 const UnitaryScaffold* file_scaffold) {
    switch (choice) {
        case HadamardChoice::real_only: {
            auto h = real_hadamard(k);
            if (!h)
                throw UnavailableError("no real Hadamard matrix of order " + std::to_string(k) +
                                       " was found");
            return *h;
        }
        case HadamardChoice::dft_only:
            return dft(k);
        case HadamardChoice::from_file: {
            if (!file_scaffold) throw DomainError("hadamard file: no scaffold supplied");
            if (file_scaffold->k != k)
                throw DomainError("hadamard file: order " + std::to_string(file_scaffold->k) +
                                  " does not match block size " + std::to_string(k));
            if (!verify_scaffold(*file_scaffold))
                throw VerificationError("hadamard file: scaffold failed the exact unitarity audit");
            return *file_scaffold;
        }
        case HadamardChoice::automatic:
        default: {
            auto h = real_hadamard(k);
            return h ? *h : dft(k);
        }
    }
}

ConstructOutput construct_ses_pipeline(Int s, Int e, std::optional<Int> mols_cap,
                                       HadamardChoice choice,
                                       const UnitaryScaffold* file_scaffold) {
    MolsSet mols = mols_for_order(s);
    if (mols_cap) {
        if (*mols_cap < 0 || *mols_cap > static_cast<Int>(mols.count()))
            throw DomainError("mols cap must be between 0 and the constructive count " +
                              std::to_string(mols.count()));
        mols.squares.resize(static_cast<size_t>(*mols_cap));
    }

    ConstructOutput out;
    out.method = "ses";
    out.design = construct_se_s(s, e, mols);
    Int k = s - e;
    out.scaffold = resolve_scaffold(k, choice, file_scaffold);
    out.collection = build_bases(out.design, {out.scaffold});
    out.collection.provenance = "ses s=" + std::to_string(s) + " e=" + std::to_string(e) +
                                " mols=" + std::to_string(mols.count());
    out.predicted_r = static_cast<Int>(out.design.classes.size());
    out.predicted_beta2 = Rational(s, k);
    out.predicted_delta_hi_sq = Rational(1, k * k);
    out.predicted_epsilon = Rational(s - 1, s);
    return out;
}

ConstructOutput construct_qef_pipeline(const QefParams& params, HadamardChoice choice,
                                       const UnitaryScaffold* file_scaffold) {
    ConstructOutput out;
    out.method = "qef";
    QefResult result = construct_qef(params);
    out.design = std::move(result.design);
    Int k = params.k();
    out.scaffold = resolve_scaffold(k, choice, file_scaffold);
    out.collection = build_bases(out.design, {out.scaffold});
    out.collection.provenance = "qef q=" + std::to_string(params.q) +
                                " e=" + std::to_string(params.e) +
                                " f=" + std::to_string(params.f);
    out.predicted_r = static_cast<Int>(out.design.classes.size());
    out.predicted_beta2 = Rational(params.s(), k);
    out.predicted_delta_hi_sq = Rational(1, k * k);
    out.predicted_epsilon = Rational(params.s() - 1, params.s());
    return out;
}

}  // namespace apmub
