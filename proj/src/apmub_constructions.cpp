#include "apmub/apmub_constructions.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

namespace apmub {

namespace {

// Removes the masked elements everywhere, drops emptied blocks, relabels the
// survivors 1..d' in ascending order. Returns relabel[old-1] (0 when deleted).
std::vector<Int> delete_and_relabel(ResolvableDesign& design, const std::vector<char>& removed,
                                    std::vector<std::vector<BlockTag>>* tags) {
    std::vector<Int> relabel(static_cast<size_t>(design.d), 0);
    Int next = 0;
    for (Int x = 1; x <= design.d; ++x)
        if (!removed[static_cast<size_t>(x)]) relabel[static_cast<size_t>(x - 1)] = ++next;

    for (size_t c = 0; c < design.classes.size(); ++c) {
        std::vector<Block> kept;
        std::vector<BlockTag> kept_tags;
        for (size_t b = 0; b < design.classes[c].blocks.size(); ++b) {
            Block nb;
            const Block& ob = design.classes[c].blocks[b];
            for (Int x : ob.elements)
                if (!removed[static_cast<size_t>(x)])
                    nb.elements.push_back(relabel[static_cast<size_t>(x - 1)]);
            if (nb.elements.empty()) continue;
            bool touched = nb.elements.size() != ob.elements.size();
            kept.push_back(std::move(nb));
            if (tags) kept_tags.push_back(touched ? BlockTag::trimmed : BlockTag::original);
        }
        design.classes[c].blocks = std::move(kept);
        if (tags) (*tags)[c] = std::move(kept_tags);
    }
    design.d = next;
    return relabel;
}

void canonicalize_with_tags(ResolvableDesign& design, std::vector<std::vector<BlockTag>>& tags) {
    for (size_t c = 0; c < design.classes.size(); ++c) {
        auto& blocks = design.classes[c].blocks;
        std::vector<size_t> order(blocks.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        for (auto& block : blocks) std::sort(block.elements.begin(), block.elements.end());
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            return blocks[a].elements < blocks[b].elements;
        });
        std::vector<Block> nb(blocks.size());
        std::vector<BlockTag> nt(blocks.size());
        for (size_t i = 0; i < order.size(); ++i) {
            nb[i] = std::move(blocks[order[i]]);
            nt[i] = tags[c][order[i]];
        }
        blocks = std::move(nb);
        tags[c] = std::move(nt);
    }
}

}  // namespace

void QefParams::require_valid() const {
    if (!prime_power_decomposition(q))
        throw DomainError("qef: q = " + std::to_string(q) + " is not a prime power");
    if (!(0 < f && f <= e))
        throw DomainError("qef: need 0 < f <= e, got e = " + std::to_string(e) +
                          ", f = " + std::to_string(f));
    if (e >= q) throw DomainError("qef: need e < q for a nonempty block size");
}

ResolvableDesign construct_se_s(Int s, Int e, const MolsSet& mols) {
    if (mols.order != s) throw DomainError("construct_se_s: MOLS order does not match s");
    if (e < 0 || e >= s)
        throw DomainError("construct_se_s: need 0 <= e < s, got e = " + std::to_string(e));
    ResolvableDesign base = mols_to_rbd(mols);
    if (e == 0) return base;

    // The row class is class 0; deleting its last e blocks removes the
    // highest-labelled rows, exactly as in the paper's worked example.
    const ParallelClass& rows = base.classes[0];
    std::vector<char> removed(static_cast<size_t>(base.d) + 1, 0);
    for (size_t b = rows.blocks.size() - static_cast<size_t>(e); b < rows.blocks.size(); ++b)
        for (Int x : rows.blocks[b].elements) removed[static_cast<size_t>(x)] = 1;

    ResolvableDesign out;
    out.d = base.d;
    for (size_t c = 1; c < base.classes.size(); ++c) out.classes.push_back(base.classes[c]);
    delete_and_relabel(out, removed, nullptr);
    canonicalize(out);
    return out;
}

MixedDesign trim_arbibd(const QefParams& params) {
    params.require_valid();
    auto pp = prime_power_decomposition(params.q);
    ResolvableDesign base = arbibd(field_new(pp->first, pp->second));
    Int q = params.q, e = params.e, f = params.f, h = params.h();

    const ParallelClass& rows = base.classes[0];
    std::vector<char> removed(static_cast<size_t>(base.d) + 1, 0);
    // Last h row blocks go entirely; the f rows before them lose their last
    // e elements each.
    for (Int b = q - h; b < q; ++b)
        for (Int x : rows.blocks[static_cast<size_t>(b)].elements)
            removed[static_cast<size_t>(x)] = 1;
    for (Int b = q - h - f; b < q - h; ++b) {
        const auto& elems = rows.blocks[static_cast<size_t>(b)].elements;
        for (size_t i = elems.size() - static_cast<size_t>(e); i < elems.size(); ++i)
            removed[static_cast<size_t>(elems[i])] = 1;
    }

    MixedDesign mixed;
    mixed.params = params;
    mixed.design = std::move(base);
    mixed.tags.resize(mixed.design.classes.size());
    delete_and_relabel(mixed.design, removed, &mixed.tags);
    canonicalize_with_tags(mixed.design, mixed.tags);

    if (mixed.design.d != params.d())
        throw InternalError("trim_arbibd: element count mismatch after deletion");
    return mixed;
}

namespace {

std::string dump_design(const ResolvableDesign& design) {
    std::string out = "d=" + std::to_string(design.d);
    for (const auto& cls : design.classes) {
        out += " |";
        for (const auto& b : cls.blocks) {
            out += " {";
            for (size_t i = 0; i < b.elements.size(); ++i)
                out += (i ? "," : "") + std::to_string(b.elements[i]);
            out += "}";
        }
    }
    return out;
}

}  // namespace

ResolvableDesign reshape(const MixedDesign& stage1, const QefParams& params) {
    params.require_valid();
    if (stage1.params.q != params.q || stage1.params.e != params.e || stage1.params.f != params.f)
        throw DomainError("reshape: stage-1 design was trimmed with different parameters");
    Int q = params.q, e = params.e, f = params.f, k = params.k();
    Int r = (q - e) / f + 1;

    const ParallelClass& class_one = stage1.design.classes[0];
    std::vector<Block> seeds;       // the f trimmed blocks, size q-e each
    std::vector<Block> full_rows;   // untouched class-one blocks, size q each
    for (size_t b = 0; b < class_one.blocks.size(); ++b) {
        if (stage1.tags[0][b] == BlockTag::trimmed) seeds.push_back(class_one.blocks[b]);
        else full_rows.push_back(class_one.blocks[b]);
    }
    if (static_cast<Int>(seeds.size()) != f || static_cast<Int>(full_rows.size()) != q - e)
        throw InternalError("reshape: unexpected class-one shape: " + dump_design(stage1.design));

    ResolvableDesign out;
    out.d = stage1.design.d;

    for (Int t = 0; t < r; ++t) {
        const ParallelClass& target = stage1.design.classes[static_cast<size_t>(t) + 1];

        // Class-one blocks feeding this target: the seeds for the first one,
        // afterwards groups of f full rows consumed from the highest labels
        // down (the paper's leading blocks in its bottom-up indexing).
        std::vector<Block> sel;
        if (t == 0) {
            sel = seeds;
        } else {
            size_t top = full_rows.size() - static_cast<size_t>((t - 1) * f);
            for (Int j = 0; j < f; ++j) sel.push_back(full_rows[top - 1 - static_cast<size_t>(j)]);
        }

        std::unordered_map<Int, int> sel_of_elem;
        for (size_t i = 0; i < sel.size(); ++i)
            for (Int x : sel[i].elements) sel_of_elem[x] = static_cast<int>(i);

        // intersections[j] = (sel index, element) pairs for target block j,
        // in sel consumption order.
        std::vector<std::vector<std::pair<int, Int>>> intersections(target.blocks.size());
        for (size_t j = 0; j < target.blocks.size(); ++j)
            for (size_t i = 0; i < sel.size(); ++i)
                for (Int x : target.blocks[j].elements)
                    if (sel_of_elem.count(x) && sel_of_elem[x] == static_cast<int>(i))
                        intersections[j].push_back({static_cast<int>(i), x});

        std::set<Int> marked;
        std::vector<Int> load(sel.size(), 0);

        if (t == 0) {
            // Every surviving seed element sits in some target block; deleting
            // them all is exactly the m_j quota per block.
            for (auto& [x, i] : sel_of_elem) {
                marked.insert(x);
                ++load[static_cast<size_t>(i)];
            }
        } else {
            // Greedy marking: per target block, place its excess count on
            // spare-capacity selected blocks first.
            for (size_t j = 0; j < target.blocks.size(); ++j) {
                Int quota = static_cast<Int>(target.blocks[j].elements.size()) - k;
                if (quota < 0)
                    throw InternalError("reshape: target block below size q-e: " +
                                        dump_design(stage1.design));
                for (Int placed = 0; placed < quota; ++placed) {
                    const std::pair<int, Int>* pick = nullptr;
                    for (const auto& cand : intersections[j])
                        if (!marked.count(cand.second) && load[static_cast<size_t>(cand.first)] < k) {
                            pick = &cand;
                            break;
                        }
                    if (!pick)
                        for (const auto& cand : intersections[j])
                            if (!marked.count(cand.second)) { pick = &cand; break; }
                    if (!pick)
                        throw InternalError("reshape: marking quota unsatisfiable: " +
                                            dump_design(stage1.design));
                    marked.insert(pick->second);
                    ++load[static_cast<size_t>(pick->first)];
                }
            }

            // Rebalance: move one mark at a time from an overloaded selected
            // block to an underloaded one, through a target block that meets
            // both. Each swap reduces total deviation by 2.
            Int max_swaps = k * f + 1;
            while (true) {
                int over = -1, under = -1;
                for (size_t i = 0; i < sel.size(); ++i) {
                    if (load[i] > k) over = static_cast<int>(i);
                    if (load[i] < k) under = static_cast<int>(i);
                }
                if (over < 0 && under < 0) break;
                if (over < 0 || under < 0)
                    throw InternalError("reshape: inconsistent marking totals: " +
                                        dump_design(stage1.design));
                bool swapped = false;
                for (size_t j = 0; j < target.blocks.size() && !swapped; ++j) {
                    const std::pair<int, Int>* on_over = nullptr;
                    const std::pair<int, Int>* on_under = nullptr;
                    for (const auto& cand : intersections[j]) {
                        if (cand.first == over && marked.count(cand.second)) on_over = &cand;
                        if (cand.first == under && !marked.count(cand.second)) on_under = &cand;
                    }
                    if (on_over && on_under) {
                        marked.erase(on_over->second);
                        marked.insert(on_under->second);
                        --load[static_cast<size_t>(over)];
                        ++load[static_cast<size_t>(under)];
                        swapped = true;
                    }
                }
                if (!swapped)
                    throw InternalError("reshape: no rebalancing swap exists: " +
                                        dump_design(stage1.design));
                if (--max_swaps < 0)
                    throw InternalError("reshape: rebalancing exceeded its swap bound: " +
                                        dump_design(stage1.design));
            }
        }

        // Extract: drop marked elements from the target blocks, then append
        // one block per selected class-one block.
        ParallelClass result;
        for (const auto& block : target.blocks) {
            Block nb;
            for (Int x : block.elements)
                if (!marked.count(x)) nb.elements.push_back(x);
            result.blocks.push_back(std::move(nb));
        }
        for (size_t i = 0; i < sel.size(); ++i) {
            Block nb;
            for (Int x : sel[i].elements)
                if (marked.count(x) && sel_of_elem[x] == static_cast<int>(i))
                    nb.elements.push_back(x);
            result.blocks.push_back(std::move(nb));
        }
        for (const auto& block : result.blocks)
            if (static_cast<Int>(block.elements.size()) != k)
                throw InternalError("reshape: produced a block of size " +
                                    std::to_string(block.elements.size()) + ", expected " +
                                    std::to_string(k) + ": " + dump_design(stage1.design));
        if (static_cast<Int>(result.blocks.size()) != q + f)
            throw InternalError("reshape: class has " + std::to_string(result.blocks.size()) +
                                " blocks, expected q+f");
        out.classes.push_back(std::move(result));
    }

    canonicalize(out);
    if (mu_profile(out).mu != 1)
        throw InternalError("reshape: output design is not mu = 1: " + dump_design(out));
    return out;
}

QefResult construct_qef(const QefParams& params) {
    QefResult result;
    result.stage1 = trim_arbibd(params);
    result.design = reshape(result.stage1, params);

    // Reconstruct which original q^2 labels the trim deleted.
    Int q = params.q, e = params.e, f = params.f, h = params.h();
    result.provenance.relabel.assign(static_cast<size_t>(q * q), 0);
    std::vector<char> removed(static_cast<size_t>(q * q) + 1, 0);
    for (Int b = q - h; b < q; ++b)
        for (Int j = 0; j < q; ++j) removed[static_cast<size_t>(b * q + j + 1)] = 1;
    for (Int b = q - h - f; b < q - h; ++b)
        for (Int j = q - e; j < q; ++j) removed[static_cast<size_t>(b * q + j + 1)] = 1;
    Int next = 0;
    for (Int x = 1; x <= q * q; ++x) {
        if (removed[static_cast<size_t>(x)]) result.provenance.removed_elements.push_back(x);
        else result.provenance.relabel[static_cast<size_t>(x - 1)] = ++next;
    }
    result.provenance.stage1_classes = static_cast<Int>(result.stage1.design.classes.size());
    result.provenance.final_classes = static_cast<Int>(result.design.classes.size());
    return result;
}

std::vector<ConstructionPlan> plan(Int d) {
    if (d < 4) throw DomainError("plan: NoAdmissiblePlan, need composite d >= 4");
    std::vector<ConstructionPlan> plans;
    for (Int k = 2; k * k <= d; ++k) {
        if (d % k != 0) continue;
        Int s = d / k;
        if (s > 4 * k) continue;  // beta <= 2 gate

        ConstructionPlan mols_plan;
        mols_plan.method = ConstructionPlan::Method::mols_lower_bound;
        mols_plan.d = d;
        mols_plan.k = k;
        mols_plan.s = s;
        mols_plan.e = s - k;
        mols_plan.f = 0;
        mols_plan.beta2 = Rational(s, k);
        mols_plan.delta_hi_sq = Rational(1, k * k);
        mols_plan.epsilon = Rational(s - 1, s);
        if (auto pp = prime_power_decomposition(s)) {
            mols_plan.q = s;
            mols_plan.r = (mols_plan.e == 0) ? s + 1 : s;
            mols_plan.note = (mols_plan.e == 0) ? "complete MOLS, exact MUBs" : "complete MOLS(s)";
            (void)pp;
        } else {
            Int min_pp = d;
            Int rest = s;
            for (Int p = 2; p * p <= rest; ++p) {
                if (rest % p != 0) continue;
                Int pw = 1;
                while (rest % p == 0) { pw *= p; rest /= p; }
                min_pp = std::min(min_pp, pw);
            }
            if (rest > 1) min_pp = std::min(min_pp, rest);
            mols_plan.via_macneish = true;
            mols_plan.r = (min_pp - 1) + ((mols_plan.e == 0) ? 2 : 1);
            mols_plan.note = "MacNeish lower bound; published N(" + std::to_string(s) +
                             ") may allow more classes";
        }
        plans.push_back(std::move(mols_plan));

        // QEF representations d = (q-e)(q+f) with k = q-e, s = q+f.
        for (Int q = (s + k + 1) / 2; q < s; ++q) {
            if (!prime_power_decomposition(q)) continue;
            QefParams params{q, q - k, s - q};
            if (!(0 < params.f && params.f <= params.e)) continue;
            if (!params.admissible())
                throw InternalError("plan: admissibility should follow from s <= 4k");
            ConstructionPlan qef_plan;
            qef_plan.method = ConstructionPlan::Method::qef_reshape;
            qef_plan.d = d;
            qef_plan.k = k;
            qef_plan.s = s;
            qef_plan.q = q;
            qef_plan.e = params.e;
            qef_plan.f = params.f;
            qef_plan.r = k / params.f + 1;
            qef_plan.beta2 = Rational(s, k);
            qef_plan.delta_hi_sq = Rational(1, k * k);
            qef_plan.epsilon = Rational(s - 1, s);
            qef_plan.note = "trim/reshape of the (q^2,q,1) design";
            plans.push_back(std::move(qef_plan));
        }
    }
    if (plans.empty())
        throw DomainError("plan: NoAdmissiblePlan for d = " + std::to_string(d));
    std::sort(plans.begin(), plans.end(), [](const ConstructionPlan& a, const ConstructionPlan& b) {
        if (a.r != b.r) return a.r > b.r;
        if (a.beta2 != b.beta2) return a.beta2 < b.beta2;
        if (a.method != b.method)
            return a.method == ConstructionPlan::Method::mols_lower_bound;
        return a.q > b.q;
    });
    return plans;
}

}  // namespace apmub
