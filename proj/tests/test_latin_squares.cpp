#include <doctest.h>

#include <set>

#include "apmub/latin_squares.hpp"

using namespace apmub;

namespace {

LatinSquare square_from(std::vector<std::vector<Int>> cells) {
    LatinSquare sq;
    sq.order = static_cast<Int>(cells.size());
    sq.cells = std::move(cells);
    return sq;
}

// Example 1 of the source material: the 2-MOLS(5) pair.
LatinSquare example1_L1() {
    return square_from({{5, 1, 2, 3, 4},
                        {1, 2, 3, 4, 5},
                        {2, 3, 4, 5, 1},
                        {3, 4, 5, 1, 2},
                        {4, 5, 1, 2, 3}});
}

LatinSquare example1_L2() {
    return square_from({{5, 1, 2, 3, 4},
                        {2, 3, 4, 5, 1},
                        {4, 5, 1, 2, 3},
                        {1, 2, 3, 4, 5},
                        {3, 4, 5, 1, 2}});
}

// Independent orthogonality oracle: count distinct superposition pairs.
bool orthogonal_by_pair_count(const LatinSquare& a, const LatinSquare& b) {
    std::set<std::pair<Int, Int>> pairs;
    for (Int i = 0; i < a.order; ++i)
        for (Int j = 0; j < a.order; ++j)
            pairs.insert({a.cells[static_cast<size_t>(i)][static_cast<size_t>(j)],
                          b.cells[static_cast<size_t>(i)][static_cast<size_t>(j)]});
    return static_cast<Int>(pairs.size()) == a.order * a.order;
}

}  // namespace

TEST_CASE("are_orthogonal") {
    LatinSquare l1 = example1_L1(), l2 = example1_L2();
    REQUIRE(is_latin(l1));
    REQUIRE(is_latin(l2));
    CHECK(are_orthogonal(l1, l2));
    CHECK(orthogonal_by_pair_count(l1, l2));

    CHECK(!are_orthogonal(l1, l1));  // (t,t) repeats for s >= 2

    // both order-2 squares
    LatinSquare a = square_from({{1, 2}, {2, 1}});
    LatinSquare b = square_from({{2, 1}, {1, 2}});
    CHECK(!are_orthogonal(a, b));

    CHECK_THROWS_AS(are_orthogonal(a, l1), DomainError);
}

TEST_CASE("mols_prime_power complete sets") {
    CHECK(mols_prime_power(field_new(2, 1)).count() == 1);

    MolsSet m5 = mols_prime_power(field_new(5, 1));
    REQUIRE(m5.count() == 4);
    for (size_t i = 0; i < 4; ++i) {
        CHECK(is_latin(m5.squares[i]));
        for (size_t j = i + 1; j < 4; ++j) {
            CHECK(are_orthogonal(m5.squares[i], m5.squares[j]));
            CHECK(orthogonal_by_pair_count(m5.squares[i], m5.squares[j]));
        }
    }

    CHECK(mols_prime_power(field_new(3, 2)).count() == 8);  // N(q) = q-1

    for (Int q : {2, 3, 4, 5, 7, 8, 9, 11, 13}) {
        auto pp = prime_power_decomposition(q);
        REQUIRE(pp);
        CHECK(mols_prime_power(field_new(pp->first, pp->second)).count() ==
              static_cast<size_t>(q - 1));
    }
}

TEST_CASE("macneish_product") {
    MolsSet m3 = mols_prime_power(field_new(3, 1));
    MolsSet m4 = mols_prime_power(field_new(2, 2));
    MolsSet prod = macneish_product(m3, m4);
    CHECK(prod.order == 12);
    REQUIRE(prod.count() == 2);  // min(2, 3)
    CHECK(are_orthogonal(prod.squares[0], prod.squares[1]));
    CHECK(orthogonal_by_pair_count(prod.squares[0], prod.squares[1]));

    MolsSet m2 = mols_prime_power(field_new(2, 1));
    MolsSet p4 = macneish_product(m2, m2);
    CHECK(p4.order == 4);
    CHECK(p4.count() == 1);
    CHECK(is_latin(p4.squares[0]));

    MolsSet m5 = mols_prime_power(field_new(5, 1));
    MolsSet m7 = mols_prime_power(field_new(7, 1));
    MolsSet p35 = macneish_product(m5, m7);
    CHECK(p35.order == 35);
    REQUIRE(p35.count() == 4);
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = i + 1; j < 4; ++j) CHECK(are_orthogonal(p35.squares[i], p35.squares[j]));

    MolsSet empty;
    empty.order = 3;
    CHECK_THROWS_AS(macneish_product(empty, m3), DomainError);
}

TEST_CASE("mols_for_order dispatch") {
    CHECK(mols_for_order(8).count() == 7);
    MolsSet m6 = mols_for_order(6);
    CHECK(m6.count() == 1);  // MacNeish: min(2,3) - 1
    CHECK(is_latin(m6.squares[0]));
    CHECK(mols_for_order(12).count() == 2);  // min(4,3) - 1
    CHECK_THROWS_AS(mols_for_order(1), DomainError);
}
