#include <doctest.h>

#include <set>

#include "apmub/finite_field.hpp"

using namespace apmub;

namespace {

// Independent oracle: smallest irreducible monic quadratic over GF(p) by
// root exhaustion (degree 2 is reducible iff it has a root).
std::vector<Int> smallest_irreducible_quadratic(Int p) {
    for (Int c0 = 0; c0 < p; ++c0)
        for (Int c1 = 0; c1 < p; ++c1) {
            bool has_root = false;
            for (Int x = 0; x < p && !has_root; ++x)
                if ((x * x + c1 * x + c0) % p == 0) has_root = true;
            if (!has_root) return {c0, c1, 1};
        }
    return {};
}

}  // namespace

TEST_CASE("field_new picks the canonical modulus") {
    FieldSpec f5 = field_new(5, 1);
    CHECK(f5.order() == 5);
    CHECK(f5.modulus() == std::vector<Int>{0, 1});  // modulus x for prime fields

    FieldSpec f9 = field_new(3, 2);
    CHECK(f9.order() == 9);
    CHECK(f9.modulus() == smallest_irreducible_quadratic(3));

    FieldSpec f25 = field_new(5, 2);
    CHECK(f25.modulus() == smallest_irreducible_quadratic(5));

    CHECK_THROWS_AS(field_new(4, 1), DomainError);   // 4 is not prime
    CHECK_THROWS_AS(field_new(2, 25), DomainError);  // beyond the 2^20 cap
}

TEST_CASE("arithmetic basics") {
    FieldSpec f5 = field_new(5, 1);
    CHECK(f5.mul(f5.from_index(2), f5.from_index(3)).index == 1);  // 6 mod 5

    FieldSpec f7 = field_new(7, 1);
    CHECK(f7.inv(f7.from_index(3)).index == 5);  // 15 = 1 mod 7
    CHECK_THROWS_AS(f7.inv(f7.zero()), DomainError);

    FieldSpec f9 = field_new(3, 2);
    for (Int i = 1; i < 9; ++i)
        CHECK(f9.pow(f9.from_index(i), 8).index == 1);  // multiplicative group order 8

    // FieldMismatch across fields
    CHECK_THROWS_AS(f5.add(f5.one(), f7.one()), DomainError);
}

TEST_CASE("elements enumerate in canonical order") {
    FieldSpec f2 = field_new(2, 1);
    auto e2 = f2.elements();
    REQUIRE(e2.size() == 2);
    CHECK(e2[0].index == 0);
    CHECK(e2[1].index == 1);

    CHECK(field_new(3, 2).elements().size() == 9);

    auto e5 = field_new(5, 1).elements();
    for (Int i = 0; i < 5; ++i) CHECK(e5[static_cast<size_t>(i)].index == i);
}

TEST_CASE("field axioms hold exhaustively for q <= 81") {
    for (auto [p, n] : std::vector<std::pair<Int, Int>>{
             {2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {5, 2}, {3, 3}, {7, 2}, {3, 4}}) {
        FieldSpec f = field_new(p, n);
        auto elems = f.elements();
        Int q = f.order();
        // identities and inverses
        for (const auto& a : elems) {
            CHECK(f.add(a, f.zero()).index == a.index);
            CHECK(f.mul(a, f.one()).index == a.index);
            CHECK(f.add(a, f.neg(a)).index == 0);
            if (a.index != 0) CHECK(f.mul(a, f.inv(a)).index == 1);
        }
        // associativity, commutativity, distributivity
        for (const auto& a : elems)
            for (const auto& b : elems) {
                CHECK(f.add(a, b).index == f.add(b, a).index);
                CHECK(f.mul(a, b).index == f.mul(b, a).index);
                for (const auto& c : elems) {
                    CHECK(f.add(f.add(a, b), c).index == f.add(a, f.add(b, c)).index);
                    CHECK(f.mul(f.mul(a, b), c).index == f.mul(a, f.mul(b, c)).index);
                    CHECK(f.mul(a, f.add(b, c)).index ==
                          f.add(f.mul(a, b), f.mul(a, c)).index);
                }
            }
        // nonzero elements form a cyclic group of order q-1
        bool found_generator = false;
        for (const auto& a : elems) {
            if (a.index == 0) continue;
            CHECK(f.pow(a, q - 1).index == 1);
            Int ord = 1;
            FieldElement acc = a;
            while (acc.index != 1) {
                acc = f.mul(acc, a);
                ++ord;
            }
            if (ord == q - 1) found_generator = true;
        }
        CHECK(found_generator);
    }
}

TEST_CASE("quadratic character") {
    FieldSpec f5 = field_new(5, 1);
    CHECK(f5.quadratic_character(f5.from_index(4)) == 1);  // 2^2 = 4

    // oracle: exhaust the squares of GF(5) = {1, 4}
    std::set<Int> squares;
    for (Int x = 1; x < 5; ++x) squares.insert((x * x) % 5);
    CHECK(squares == std::set<Int>{1, 4});
    CHECK(f5.quadratic_character(f5.from_index(2)) == -1);

    FieldSpec f7 = field_new(7, 1);
    CHECK(f7.quadratic_character(f7.zero()) == 0);

    FieldSpec f4 = field_new(2, 2);
    CHECK_THROWS_AS(f4.quadratic_character(f4.one()), DomainError);

    // multiplicativity, exhaustively for odd q <= 49
    for (auto [p, n] : std::vector<std::pair<Int, Int>>{{3, 1}, {5, 1}, {7, 1}, {3, 2}, {5, 2}, {3, 3}, {7, 2}}) {
        FieldSpec f = field_new(p, n);
        auto elems = f.elements();
        for (const auto& a : elems)
            for (const auto& b : elems) {
                if (a.index == 0 || b.index == 0) continue;
                CHECK(f.quadratic_character(f.mul(a, b)) ==
                      f.quadratic_character(a) * f.quadratic_character(b));
            }
        // chi agrees with square exhaustion
        std::set<Int> sq;
        for (const auto& a : elems)
            if (a.index != 0) sq.insert(f.mul(a, a).index);
        for (const auto& a : elems) {
            if (a.index == 0) continue;
            CHECK(f.quadratic_character(a) == (sq.count(a.index) ? 1 : -1));
        }
    }
}

TEST_CASE("prime power decomposition") {
    CHECK(prime_power_decomposition(8) == std::make_pair<Int, Int>(2, 3));
    CHECK(prime_power_decomposition(9) == std::make_pair<Int, Int>(3, 2));
    CHECK(prime_power_decomposition(13) == std::make_pair<Int, Int>(13, 1));
    CHECK(!prime_power_decomposition(6));
    CHECK(!prime_power_decomposition(12));
    CHECK(!prime_power_decomposition(1));
}
