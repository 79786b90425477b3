#include "apmub/block_designs.hpp"

#include <algorithm>
#include <set>

namespace apmub {

namespace {

Int intersection_size(const Block& a, const Block& b) {
    Int count = 0;
    size_t i = 0, j = 0;
    while (i < a.elements.size() && j < b.elements.size()) {
        if (a.elements[i] < b.elements[j]) ++i;
        else if (a.elements[i] > b.elements[j]) ++j;
        else { ++count; ++i; ++j; }
    }
    return count;
}

}  // namespace

void canonicalize(ResolvableDesign& design) {
    for (auto& cls : design.classes) {
        for (auto& block : cls.blocks) std::sort(block.elements.begin(), block.elements.end());
        std::sort(cls.blocks.begin(), cls.blocks.end(),
                  [](const Block& a, const Block& b) { return a.elements < b.elements; });
    }
}

ValidationReport validate(const ResolvableDesign& design) {
    ValidationReport report;
    report.valid = true;
    if (design.d < 1) {
        report.valid = false;
        report.issues.push_back("d must be >= 1");
        return report;
    }
    std::vector<char> seen(static_cast<size_t>(design.d) + 1);
    std::set<std::vector<Int>> all_blocks;
    report.simple = true;
    for (size_t c = 0; c < design.classes.size(); ++c) {
        std::fill(seen.begin(), seen.end(), 0);
        Int covered = 0;
        for (const auto& block : design.classes[c].blocks) {
            if (block.elements.empty()) {
                report.valid = false;
                report.issues.push_back("class " + std::to_string(c + 1) + " has an empty block");
                continue;
            }
            if (!std::is_sorted(block.elements.begin(), block.elements.end()) ||
                std::adjacent_find(block.elements.begin(), block.elements.end()) !=
                    block.elements.end()) {
                report.valid = false;
                report.issues.push_back("class " + std::to_string(c + 1) +
                                        " has an unsorted or duplicated block");
            }
            for (Int x : block.elements) {
                if (x < 1 || x > design.d) {
                    report.valid = false;
                    report.issues.push_back("class " + std::to_string(c + 1) +
                                            " references element " + std::to_string(x) +
                                            " outside 1.." + std::to_string(design.d));
                } else if (seen[static_cast<size_t>(x)]) {
                    report.valid = false;
                    report.issues.push_back("class " + std::to_string(c + 1) +
                                            " covers element " + std::to_string(x) + " twice");
                } else {
                    seen[static_cast<size_t>(x)] = 1;
                    ++covered;
                }
            }
            report.block_size_profile[static_cast<Int>(block.elements.size())]++;
            if (!all_blocks.insert(block.elements).second) report.simple = false;
        }
        if (covered != design.d) {
            report.valid = false;
            for (Int x = 1; x <= design.d; ++x)
                if (!seen[static_cast<size_t>(x)]) {
                    report.issues.push_back("class " + std::to_string(c + 1) +
                                            " misses element " + std::to_string(x));
                    break;
                }
        }
    }
    report.constant_block_size = report.block_size_profile.size() == 1;
    if (report.constant_block_size) report.block_size = report.block_size_profile.begin()->first;
    return report;
}

IntersectionProfile mu_profile(const ResolvableDesign& design) {
    if (design.classes.size() < 2) throw DomainError("mu: SingleClass, need r >= 2");
    IntersectionProfile profile;
    for (size_t c1 = 0; c1 < design.classes.size(); ++c1)
        for (size_t c2 = c1 + 1; c2 < design.classes.size(); ++c2)
            for (const auto& a : design.classes[c1].blocks)
                for (const auto& b : design.classes[c2].blocks) {
                    Int m = intersection_size(a, b);
                    profile.histogram[m]++;
                    profile.mu = std::max(profile.mu, m);
                }
    return profile;
}

Int t_bound(Int d, Int k, Int mu) {
    if (!(0 <= mu && mu < k && k < d)) throw DomainError("t_bound: need 0 <= mu < k < d");
    return binomial(d, mu + 1) / binomial(k, mu + 1);
}

OracleResult t_oracle(Int d, Int k, Int mu, long long node_budget) {
    Int ub = t_bound(d, k, mu);
    Int n_subsets = binomial(d, k);
    if (n_subsets > 2'000'000)
        throw DomainError("t_oracle: C(d,k) too large to enumerate");

    // All k-subsets in lexicographic order.
    std::vector<std::vector<Int>> subsets;
    subsets.reserve(static_cast<size_t>(n_subsets));
    std::vector<Int> cur(static_cast<size_t>(k));
    for (Int i = 0; i < k; ++i) cur[static_cast<size_t>(i)] = i + 1;
    while (true) {
        subsets.push_back(cur);
        Int i = k - 1;
        while (i >= 0 && cur[static_cast<size_t>(i)] == d - (k - 1 - i)) --i;
        if (i < 0) break;
        ++cur[static_cast<size_t>(i)];
        for (Int j = i + 1; j < k; ++j) cur[static_cast<size_t>(j)] = cur[static_cast<size_t>(j - 1)] + 1;
    }

    size_t n = subsets.size();
    size_t words = (n + 63) / 64;
    // compat[i] = bitset of j > i with |S_i cap S_j| <= mu
    std::vector<std::vector<uint64_t>> compat(n, std::vector<uint64_t>(words, 0));
    for (size_t i = 0; i < n; ++i) {
        Block bi{subsets[i]};
        for (size_t j = i + 1; j < n; ++j) {
            Block bj{subsets[j]};
            if (intersection_size(bi, bj) <= mu) compat[i][j / 64] |= uint64_t(1) << (j % 64);
        }
    }

    OracleResult result;
    std::vector<uint64_t> full(words, 0);
    for (size_t j = 0; j < n; ++j) full[j / 64] |= uint64_t(1) << (j % 64);

    auto popcount_all = [&](const std::vector<uint64_t>& bits) {
        Int c = 0;
        for (uint64_t w : bits) c += static_cast<Int>(__builtin_popcountll(w));
        return c;
    };

    bool budget_hit = false;
    // Depth-first over lexicographically increasing candidate sets.
    auto dfs = [&](auto&& self, Int depth, const std::vector<uint64_t>& cand) -> void {
        if (depth > result.size) result.size = depth;
        if (result.size >= ub || budget_hit) return;
        if (depth + popcount_all(cand) <= result.size) return;
        for (size_t j = 0; j < n; ++j) {
            if (!(cand[j / 64] >> (j % 64) & 1)) continue;
            if (++result.nodes > node_budget) { budget_hit = true; return; }
            std::vector<uint64_t> next(words);
            for (size_t w = 0; w < words; ++w) next[w] = cand[w] & compat[j][w];
            self(self, depth + 1, next);
            if (result.size >= ub || budget_hit) return;
        }
    };
    dfs(dfs, 0, full);
    result.exact = !budget_hit || result.size >= ub;
    return result;
}

ClassCountBound class_count_bound(Int d, Int k, Int s, std::optional<Int> mu_opt) {
    if (d != k * s || k < 1 || s < 1) throw DomainError("class_count_bound: need d = k*s");
    ClassCountBound out;
    out.mu_min = (k + s - 1) / s;
    Int mu = mu_opt.value_or(out.mu_min);
    if (mu < out.mu_min)
        throw DomainError("class_count_bound: mu below the ceil(k/s) minimum");
    if (k < 2) throw DomainError("class_count_bound: need block size k >= 2");
    out.r_max = t_bound(d - 1, k - 1, mu - 1);
    if (mu == 1) {
        Int closed_form = s + (s - 1) / (k - 1);
        if (closed_form != out.r_max)
            throw InternalError("class_count_bound: closed form disagrees with t_bound");
    }
    return out;
}

ResolvableDesign mols_to_rbd(const MolsSet& mols) {
    Int s = mols.order;
    if (s < 1) throw DomainError("mols_to_rbd: order must be positive");
    ResolvableDesign design;
    design.d = s * s;

    // M_ref is the row-major filling 1..s^2; rows then columns.
    ParallelClass rows, cols;
    for (Int i = 0; i < s; ++i) {
        Block b;
        for (Int j = 0; j < s; ++j) b.elements.push_back(i * s + j + 1);
        rows.blocks.push_back(std::move(b));
    }
    for (Int j = 0; j < s; ++j) {
        Block b;
        for (Int i = 0; i < s; ++i) b.elements.push_back(i * s + j + 1);
        cols.blocks.push_back(std::move(b));
    }
    design.classes.push_back(std::move(rows));
    design.classes.push_back(std::move(cols));

    for (const auto& square : mols.squares) {
        if (square.order != s) throw DomainError("mols_to_rbd: square order mismatch");
        ParallelClass cls;
        cls.blocks.assign(static_cast<size_t>(s), Block{});
        for (Int i = 0; i < s; ++i)
            for (Int j = 0; j < s; ++j) {
                Int t = square.cells[static_cast<size_t>(i)][static_cast<size_t>(j)];
                cls.blocks[static_cast<size_t>(t - 1)].elements.push_back(i * s + j + 1);
            }
        design.classes.push_back(std::move(cls));
    }
    canonicalize(design);
    return design;
}

MolsSet rbd_to_mols(const ResolvableDesign& design) {
    ValidationReport vr = validate(design);
    if (!vr.valid)
        throw DomainError("rbd_to_mols: PreconditionViolated, invalid design: " +
                          (vr.issues.empty() ? std::string("unknown") : vr.issues.front()));
    if (!vr.constant_block_size)
        throw DomainError("rbd_to_mols: PreconditionViolated, block size is not constant");
    Int s = vr.block_size;
    if (design.d != s * s)
        throw DomainError("rbd_to_mols: PreconditionViolated, d = " + std::to_string(design.d) +
                          " is not s^2 for block size s = " + std::to_string(s));
    if (design.classes.size() < 2)
        throw DomainError("rbd_to_mols: PreconditionViolated, need at least the two frame classes");
    if (design.classes.size() >= 2) {
        IntersectionProfile profile = mu_profile(design);
        for (const auto& [size, count] : profile.histogram)
            if (size != 1)
                throw DomainError(
                    "rbd_to_mols: PreconditionViolated, found a cross-class pair meeting in " +
                    std::to_string(size) + " elements");
    }

    const ParallelClass& frame_rows = design.classes[0];
    const ParallelClass& frame_cols = design.classes[1];

    // M_ref(i,j) = the unique element of rows.block[i] cap cols.block[j];
    // record each element's (i, j) cell.
    std::vector<std::pair<Int, Int>> cell_of(static_cast<size_t>(design.d) + 1, {-1, -1});
    for (Int i = 0; i < s; ++i) {
        for (Int x : frame_rows.blocks[static_cast<size_t>(i)].elements)
            cell_of[static_cast<size_t>(x)].first = i;
    }
    for (Int j = 0; j < s; ++j) {
        for (Int x : frame_cols.blocks[static_cast<size_t>(j)].elements)
            cell_of[static_cast<size_t>(x)].second = j;
    }

    MolsSet out;
    out.order = s;
    for (size_t c = 2; c < design.classes.size(); ++c) {
        LatinSquare sq;
        sq.order = s;
        sq.cells.assign(static_cast<size_t>(s), std::vector<Int>(static_cast<size_t>(s), 0));
        for (size_t t = 0; t < design.classes[c].blocks.size(); ++t)
            for (Int x : design.classes[c].blocks[t].elements) {
                auto [i, j] = cell_of[static_cast<size_t>(x)];
                sq.cells[static_cast<size_t>(i)][static_cast<size_t>(j)] = static_cast<Int>(t) + 1;
            }
        out.squares.push_back(std::move(sq));
    }
    assert_valid_mols(out);  // guaranteed by the intersection property
    return out;
}

ResolvableDesign arbibd(const FieldSpec& spec) {
    return mols_to_rbd(mols_prime_power(spec));
}

}  // namespace apmub
