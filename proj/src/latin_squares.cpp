#include "apmub/latin_squares.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace apmub {

bool is_latin(const LatinSquare& square) {
    Int s = square.order;
    if (s < 1 || static_cast<Int>(square.cells.size()) != s) return false;
    std::vector<char> seen(static_cast<size_t>(s) + 1);
    for (Int i = 0; i < s; ++i) {
        if (static_cast<Int>(square.cells[static_cast<size_t>(i)].size()) != s) return false;
        std::fill(seen.begin(), seen.end(), 0);
        for (Int j = 0; j < s; ++j) {
            Int v = square.cells[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (v < 1 || v > s || seen[static_cast<size_t>(v)]) return false;
            seen[static_cast<size_t>(v)] = 1;
        }
    }
    for (Int j = 0; j < s; ++j) {
        std::fill(seen.begin(), seen.end(), 0);
        for (Int i = 0; i < s; ++i) {
            Int v = square.cells[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (seen[static_cast<size_t>(v)]) return false;
            seen[static_cast<size_t>(v)] = 1;
        }
    }
    return true;
}

bool are_orthogonal(const LatinSquare& a, const LatinSquare& b) {
    if (a.order != b.order) throw DomainError("are_orthogonal: OrderMismatch");
    Int s = a.order;
    std::vector<char> seen(static_cast<size_t>(s * s), 0);
    for (Int i = 0; i < s; ++i)
        for (Int j = 0; j < s; ++j) {
            Int pair = (a.cells[static_cast<size_t>(i)][static_cast<size_t>(j)] - 1) * s +
                       (b.cells[static_cast<size_t>(i)][static_cast<size_t>(j)] - 1);
            if (seen[static_cast<size_t>(pair)]) return false;
            seen[static_cast<size_t>(pair)] = 1;
        }
    return true;
}

void assert_valid_mols(const MolsSet& set) {
    for (size_t i = 0; i < set.squares.size(); ++i) {
        if (set.squares[i].order != set.order)
            throw VerificationError("MolsSet: square " + std::to_string(i + 1) + " has wrong order");
        if (!is_latin(set.squares[i]))
            throw VerificationError("MolsSet: square " + std::to_string(i + 1) + " is not Latin");
    }
    for (size_t i = 0; i < set.squares.size(); ++i)
        for (size_t j = i + 1; j < set.squares.size(); ++j)
            if (!are_orthogonal(set.squares[i], set.squares[j]))
                throw VerificationError("MolsSet: squares " + std::to_string(i + 1) + " and " +
                                        std::to_string(j + 1) + " are not orthogonal");
}

MolsSet mols_prime_power(const FieldSpec& spec) {
    Int q = spec.order();
    if (q < 2) throw DomainError("mols_prime_power: order must be >= 2");
    MolsSet set;
    set.order = q;
    auto elems = spec.elements();
    for (Int ai = 1; ai < q; ++ai) {
        LatinSquare sq;
        sq.order = q;
        sq.cells.assign(static_cast<size_t>(q), std::vector<Int>(static_cast<size_t>(q), 0));
        FieldElement a = elems[static_cast<size_t>(ai)];
        for (Int i = 0; i < q; ++i) {
            FieldElement ax = spec.mul(a, elems[static_cast<size_t>(i)]);
            for (Int j = 0; j < q; ++j)
                sq.cells[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    spec.add(ax, elems[static_cast<size_t>(j)]).index + 1;
        }
        set.squares.push_back(std::move(sq));
    }
    assert_valid_mols(set);
    return set;
}

MolsSet macneish_product(const MolsSet& a, const MolsSet& b) {
    if (a.squares.empty() || b.squares.empty())
        throw DomainError("macneish_product: EmptyInput");
    size_t w = std::min(a.count(), b.count());
    Int sa = a.order, sb = b.order;
    MolsSet out;
    out.order = sa * sb;
    for (size_t t = 0; t < w; ++t) {
        const LatinSquare& la = a.squares[t];
        const LatinSquare& lb = b.squares[t];
        LatinSquare sq;
        sq.order = out.order;
        sq.cells.assign(static_cast<size_t>(out.order),
                        std::vector<Int>(static_cast<size_t>(out.order), 0));
        for (Int i1 = 0; i1 < sa; ++i1)
            for (Int i2 = 0; i2 < sb; ++i2)
                for (Int j1 = 0; j1 < sa; ++j1)
                    for (Int j2 = 0; j2 < sb; ++j2) {
                        Int sym = (la.cells[static_cast<size_t>(i1)][static_cast<size_t>(j1)] - 1) * sb +
                                  lb.cells[static_cast<size_t>(i2)][static_cast<size_t>(j2)];
                        sq.cells[static_cast<size_t>(i1 * sb + i2)]
                                [static_cast<size_t>(j1 * sb + j2)] = sym;
                    }
        out.squares.push_back(std::move(sq));
    }
    assert_valid_mols(out);
    return out;
}

MolsSet mols_for_order(Int s) {
    if (s < 2) throw DomainError("mols_for_order: OrderTooSmall, need s >= 2");
    if (auto pp = prime_power_decomposition(s)) {
        return mols_prime_power(field_new(pp->first, pp->second));
    }
    // MacNeish product over the prime-power factorization, smallest prime first.
    std::map<Int, Int> factors;
    Int rest = s;
    for (Int p = 2; p * p <= rest; ++p)
        while (rest % p == 0) { factors[p]++; rest /= p; }
    if (rest > 1) factors[rest]++;
    MolsSet acc;
    bool first = true;
    for (const auto& [p, n] : factors) {
        MolsSet part = mols_prime_power(field_new(p, n));
        acc = first ? std::move(part) : macneish_product(acc, part);
        first = false;
    }
    return acc;
}

}  // namespace apmub
