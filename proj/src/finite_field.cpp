#include "apmub/finite_field.hpp"

#include <algorithm>
#include <string>

namespace apmub {

namespace {

using Poly = std::vector<Int>;  // coefficients low degree first, entries in 0..p-1

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, Int p) {
    // m is monic; reduce a modulo m over GF(p).
    while (a.size() >= m.size()) {
        Int lead = a.back();
        if (lead != 0) {
            size_t shift = a.size() - m.size();
            for (size_t j = 0; j < m.size(); ++j) {
                a[shift + j] = ((a[shift + j] - lead * m[j]) % p + p * p) % p;
            }
        }
        a.pop_back();
    }
    trim(a);
    return a;
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& m, Int p) {
    if (a.empty() || b.empty()) return {};
    Poly prod(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    }
    return poly_mod(std::move(prod), m, p);
}

// Remainder of a modulo b over GF(p); both arbitrary, b nonzero.
Poly poly_rem(Poly a, Poly b, Int p) {
    trim(a);
    trim(b);
    if (b.empty()) throw InternalError("poly_rem: zero divisor");
    // Make b monic.
    Int lead = b.back();
    if (lead != 1) {
        Int inv = 1;
        for (Int t = 1; t < p; ++t)
            if ((lead * t) % p == 1) { inv = t; break; }
        for (Int& c : b) c = (c * inv) % p;
    }
    return poly_mod(std::move(a), b, p);
}

// Irreducibility over GF(p) by trial division against every monic
// polynomial of degree <= n/2.
bool is_irreducible(const Poly& f, Int p) {
    Int n = static_cast<Int>(f.size()) - 1;
    if (n <= 0) return false;
    if (n == 1) return true;
    for (Int deg = 1; deg <= n / 2; ++deg) {
        Int combos = 1;
        for (Int i = 0; i < deg; ++i) combos *= p;
        for (Int m = 0; m < combos; ++m) {
            Poly div(static_cast<size_t>(deg) + 1, 0);
            Int rest = m;
            for (Int i = 0; i < deg; ++i) {
                div[static_cast<size_t>(i)] = rest % p;
                rest /= p;
            }
            div[static_cast<size_t>(deg)] = 1;
            if (poly_rem(f, div, p).empty()) return false;
        }
    }
    return true;
}

Poly index_to_poly(Int index, Int p, Int n) {
    Poly c(static_cast<size_t>(n), 0);
    for (Int i = 0; i < n; ++i) {
        c[static_cast<size_t>(i)] = index % p;
        index /= p;
    }
    trim(c);
    return c;
}

Int poly_to_index(const Poly& c, Int p) {
    Int idx = 0;
    for (size_t i = c.size(); i-- > 0;) idx = idx * p + c[i];
    return idx;
}

}  // namespace

bool is_prime(Int m) {
    if (m < 2) return false;
    for (Int f = 2; f * f <= m; ++f)
        if (m % f == 0) return false;
    return true;
}

std::optional<std::pair<Int, Int>> prime_power_decomposition(Int m) {
    if (m < 2) return std::nullopt;
    for (Int p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        Int n = 0;
        Int rest = m;
        while (rest % p == 0) { rest /= p; ++n; }
        if (rest == 1) return std::make_pair(p, n);
        return std::nullopt;
    }
    return std::make_pair(m, Int(1));  // m itself prime
}

FieldSpec field_new(Int p, Int n) {
    if (!is_prime(p)) throw DomainError("field_new: p = " + std::to_string(p) + " is not prime");
    if (n < 1) throw DomainError("field_new: extension degree must be >= 1");
    Int order = 1;
    for (Int i = 0; i < n; ++i) {
        order *= p;
        if (order > kMaxFieldOrder) throw DomainError("field_new: p^n exceeds the desk-scale cap 2^20");
    }

    // Lexicographically smallest monic irreducible of degree n, coefficient
    // lists compared low degree first.
    Poly modulus;
    std::vector<Int> lower(static_cast<size_t>(n), 0);
    bool found = false;
    while (!found) {
        Poly cand(lower.begin(), lower.end());
        cand.push_back(1);
        if (is_irreducible(cand, p)) {
            modulus = std::move(cand);
            found = true;
            break;
        }
        // odometer with the highest-degree coefficient fastest, so the low
        // coefficients change last and the order is lexicographic low-first
        Int i = n - 1;
        while (i >= 0) {
            if (++lower[static_cast<size_t>(i)] < p) break;
            lower[static_cast<size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
    }
    if (!found) throw InternalError("field_new: no irreducible polynomial found");

    FieldSpec spec;
    spec.p_ = p;
    spec.n_ = n;
    spec.order_ = order;
    spec.modulus_ = std::move(modulus);
    return spec;
}

void FieldSpec::check(FieldElement a, const char* op) const {
    if (a.order != order_)
        throw DomainError(std::string(op) + ": FieldMismatch, element of GF(" +
                          std::to_string(a.order) + ") used in GF(" + std::to_string(order_) + ")");
    if (a.index < 0 || a.index >= order_)
        throw DomainError(std::string(op) + ": element index out of range");
}

FieldElement FieldSpec::from_index(Int index) const {
    if (index < 0 || index >= order_) throw DomainError("from_index: out of range");
    return {index, order_};
}

std::vector<Int> FieldSpec::coeffs(FieldElement a) const {
    check(a, "coeffs");
    Poly c = index_to_poly(a.index, p_, n_);
    c.resize(static_cast<size_t>(n_), 0);
    return c;
}

FieldElement FieldSpec::add(FieldElement a, FieldElement b) const {
    check(a, "add");
    check(b, "add");
    Poly ca = index_to_poly(a.index, p_, n_), cb = index_to_poly(b.index, p_, n_);
    ca.resize(std::max(ca.size(), cb.size()), 0);
    for (size_t i = 0; i < cb.size(); ++i) ca[i] = (ca[i] + cb[i]) % p_;
    return {poly_to_index(ca, p_), order_};
}

FieldElement FieldSpec::neg(FieldElement a) const {
    check(a, "neg");
    Poly c = index_to_poly(a.index, p_, n_);
    for (Int& v : c) v = (p_ - v) % p_;
    return {poly_to_index(c, p_), order_};
}

FieldElement FieldSpec::sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

FieldElement FieldSpec::mul(FieldElement a, FieldElement b) const {
    check(a, "mul");
    check(b, "mul");
    Poly prod = poly_mul_mod(index_to_poly(a.index, p_, n_), index_to_poly(b.index, p_, n_),
                             modulus_, p_);
    return {poly_to_index(prod, p_), order_};
}

FieldElement FieldSpec::pow(FieldElement a, Int exponent) const {
    check(a, "pow");
    if (exponent < 0) return pow(inv(a), -exponent);
    FieldElement acc = one();
    FieldElement base = a;
    while (exponent > 0) {
        if (exponent & 1) acc = mul(acc, base);
        base = mul(base, base);
        exponent >>= 1;
    }
    return acc;
}

FieldElement FieldSpec::inv(FieldElement a) const {
    check(a, "inv");
    if (a.index == 0) throw DomainError("inv: DivisionByZero in GF(" + std::to_string(order_) + ")");
    FieldElement r = pow(a, order_ - 2);
    if (mul(r, a).index != 1) throw InternalError("inv: a * a^-1 != 1");
    return r;
}

std::vector<FieldElement> FieldSpec::elements() const {
    std::vector<FieldElement> out;
    out.reserve(static_cast<size_t>(order_));
    for (Int i = 0; i < order_; ++i) out.push_back({i, order_});
    return out;
}

int FieldSpec::quadratic_character(FieldElement a) const {
    check(a, "quadratic_character");
    if (p_ == 2)
        throw DomainError("quadratic_character: UnsupportedCharacteristic, requires odd q");
    if (a.index == 0) return 0;
    FieldElement r = pow(a, (order_ - 1) / 2);
    if (r.index == 1) return 1;
    if (r.index == neg(one()).index) return -1;
    throw InternalError("quadratic_character: a^((q-1)/2) not in {1,-1}");
}

}  // namespace apmub
