#include "apmub/hadamard.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace apmub {

PhaseEntry phase_of(Int num, Int den) {
    if (den <= 0) throw DomainError("phase_of: denominator must be positive");
    num = ((num % den) + den) % den;
    Int g = std::gcd(num, den);
    if (g == 0) g = 1;
    return {false, num / g, den / g};
}

PhaseEntry phase_conj(const PhaseEntry& p) {
    if (p.zero) return p;
    return phase_of(p.den - p.num, p.den);
}

PhaseEntry phase_mul(const PhaseEntry& a, const PhaseEntry& b) {
    if (a.zero || b.zero) return phase_zero();
    Int den = lcm_int(a.den, b.den);
    return phase_of(a.num * (den / a.den) + b.num * (den / b.den), den);
}

bool phase_equal(const PhaseEntry& a, const PhaseEntry& b) {
    if (a.zero || b.zero) return a.zero == b.zero;
    return a.num == b.num && a.den == b.den;
}

bool phase_is_real(const PhaseEntry& p) { return p.zero || p.den == 1 || p.den == 2; }

namespace {

ScaffoldKind kind_of(const std::vector<std::vector<PhaseEntry>>& entries) {
    for (const auto& row : entries)
        for (const auto& e : row)
            if (!phase_is_real(e)) return ScaffoldKind::complex_kind;
    return ScaffoldKind::real;
}

UnitaryScaffold make_scaffold(Int k, std::vector<std::vector<PhaseEntry>> entries) {
    UnitaryScaffold h;
    h.k = k;
    h.kind = kind_of(entries);
    h.entries = std::move(entries);
    return h;
}

PhaseEntry sign_phase(int s) { return s >= 0 ? phase_one() : phase_minus_one(); }

}  // namespace

UnitaryScaffold dft(Int k) {
    if (k < 1) throw DomainError("dft: order must be >= 1");
    std::vector<std::vector<PhaseEntry>> entries(static_cast<size_t>(k),
                                                 std::vector<PhaseEntry>(static_cast<size_t>(k)));
    for (Int u = 0; u < k; ++u)
        for (Int v = 0; v < k; ++v)
            entries[static_cast<size_t>(u)][static_cast<size_t>(v)] = phase_of(u * v, k);
    return make_scaffold(k, std::move(entries));
}

UnitaryScaffold sylvester(Int m) {
    if (m < 0) throw DomainError("sylvester: m must be >= 0");
    if (m > 20) throw DomainError("sylvester: order 2^m beyond desk scale");
    std::vector<std::vector<PhaseEntry>> entries{{phase_one()}};
    for (Int step = 0; step < m; ++step) {
        size_t n = entries.size();
        std::vector<std::vector<PhaseEntry>> next(2 * n, std::vector<PhaseEntry>(2 * n));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                next[i][j] = entries[i][j];
                next[i][j + n] = entries[i][j];
                next[i + n][j] = entries[i][j];
                next[i + n][j + n] = phase_mul(entries[i][j], phase_minus_one());
            }
        entries = std::move(next);
    }
    Int k = static_cast<Int>(entries.size());
    return make_scaffold(k, std::move(entries));
}

namespace {

// Jacobsthal matrix: Q[a][b] = chi(e_a - e_b) in canonical element order.
std::vector<std::vector<int>> jacobsthal(const FieldSpec& spec) {
    auto elems = spec.elements();
    size_t q = elems.size();
    std::vector<std::vector<int>> jac(q, std::vector<int>(q, 0));
    for (size_t a = 0; a < q; ++a)
        for (size_t b = 0; b < q; ++b)
            jac[a][b] = spec.quadratic_character(spec.sub(elems[a], elems[b]));
    return jac;
}

}  // namespace

UnitaryScaffold paley_i(const FieldSpec& spec) {
    Int q = spec.order();
    if (q % 4 != 3)
        throw DomainError("paley_i: CongruenceViolation, requires q = 3 mod 4, got q = " +
                          std::to_string(q));
    auto jac = jacobsthal(spec);
    size_t n = static_cast<size_t>(q) + 1;
    // H = I + S with S = [[0, 1..1], [-1..-1, Q]]; rows orthogonal since Q is skew.
    std::vector<std::vector<PhaseEntry>> entries(n, std::vector<PhaseEntry>(n));
    entries[0][0] = phase_one();
    for (size_t b = 1; b < n; ++b) entries[0][b] = phase_one();
    for (size_t a = 1; a < n; ++a) entries[a][0] = phase_minus_one();
    for (size_t a = 1; a < n; ++a)
        for (size_t b = 1; b < n; ++b)
            entries[a][b] = (a == b) ? phase_one() : sign_phase(jac[a - 1][b - 1]);
    return make_scaffold(static_cast<Int>(n), std::move(entries));
}

UnitaryScaffold paley_ii(const FieldSpec& spec) {
    Int q = spec.order();
    if (q % 4 != 1)
        throw DomainError("paley_ii: CongruenceViolation, requires q = 1 mod 4, got q = " +
                          std::to_string(q));
    auto jac = jacobsthal(spec);
    size_t n = static_cast<size_t>(q) + 1;
    // Symmetric conference matrix C = [[0, 1..1], [1..1, Q]].
    std::vector<std::vector<int>> conf(n, std::vector<int>(n, 0));
    for (size_t b = 1; b < n; ++b) conf[0][b] = conf[b][0] = 1;
    for (size_t a = 1; a < n; ++a)
        for (size_t b = 1; b < n; ++b)
            if (a != b) conf[a][b] = jac[a - 1][b - 1];
    // H = [[C+I, C-I], [C-I, -C-I]], order 2(q+1).
    size_t m = 2 * n;
    std::vector<std::vector<PhaseEntry>> entries(m, std::vector<PhaseEntry>(m));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            int c = conf[a][b];
            int diag = (a == b) ? 1 : 0;
            entries[a][b] = sign_phase(c + diag);
            entries[a][b + n] = sign_phase(c - diag);
            entries[a + n][b] = sign_phase(c - diag);
            entries[a + n][b + n] = sign_phase(-c - diag);
        }
    return make_scaffold(static_cast<Int>(m), std::move(entries));
}

UnitaryScaffold tensor(const UnitaryScaffold& a, const UnitaryScaffold& b) {
    size_t ka = static_cast<size_t>(a.k), kb = static_cast<size_t>(b.k);
    std::vector<std::vector<PhaseEntry>> entries(ka * kb, std::vector<PhaseEntry>(ka * kb));
    for (size_t i1 = 0; i1 < ka; ++i1)
        for (size_t i2 = 0; i2 < kb; ++i2)
            for (size_t j1 = 0; j1 < ka; ++j1)
                for (size_t j2 = 0; j2 < kb; ++j2)
                    entries[i1 * kb + i2][j1 * kb + j2] =
                        phase_mul(a.entries[i1][j1], b.entries[i2][j2]);
    return make_scaffold(a.k * b.k, std::move(entries));
}

std::optional<UnitaryScaffold> real_hadamard(Int k) {
    if (k < 1) throw DomainError("real_hadamard: order must be >= 1");
    if (k == 1) return sylvester(0);
    if (k == 2) return sylvester(1);
    if (k % 4 != 0) return std::nullopt;
    // Powers of two first, then Paley, then tensor factorizations.
    if ((k & (k - 1)) == 0) {
        Int m = 0;
        for (Int v = k; v > 1; v >>= 1) ++m;
        return sylvester(m);
    }
    if (auto pp = prime_power_decomposition(k - 1); pp && (k - 1) % 4 == 3)
        return paley_i(field_new(pp->first, pp->second));
    if (k % 2 == 0)
        if (auto pp = prime_power_decomposition(k / 2 - 1); pp && (k / 2 - 1) % 4 == 1)
            return paley_ii(field_new(pp->first, pp->second));
    for (Int a = 4; a * a <= k; ++a) {
        if (k % a != 0) continue;
        auto left = real_hadamard(a);
        if (!left) continue;
        auto right = real_hadamard(k / a);
        if (!right) continue;
        return tensor(*left, *right);
    }
    return std::nullopt;
}

bool verify_scaffold(const UnitaryScaffold& h) {
    size_t k = static_cast<size_t>(h.k);
    if (h.entries.size() != k) return false;
    Int order = 1;
    for (const auto& row : h.entries) {
        if (row.size() != k) return false;
        for (const auto& e : row) {
            if (e.zero) return false;  // Hadamard-grade scaffolds are zero-free
            if (e.den < 1 || e.num < 0 || e.num >= e.den) return false;
            order = lcm_int(order, e.den);
        }
    }
    if (h.kind == ScaffoldKind::real)
        for (const auto& row : h.entries)
            for (const auto& e : row)
                if (!phase_is_real(e)) return false;

    for (size_t u = 0; u < k; ++u)
        for (size_t v = u; v < k; ++v) {
            RootSum sum(static_cast<int>(order));
            for (size_t j = 0; j < k; ++j) {
                PhaseEntry t = phase_mul(phase_conj(h.entries[u][j]), h.entries[v][j]);
                sum.add_phase(t.num, t.den);
            }
            bool ok = (u == v) ? sum.equals_integer(h.k) : sum.is_zero();
            if (!ok) return false;
            std::complex<double> val = sum.eval();
            double expect = (u == v) ? static_cast<double>(h.k) : 0.0;
            if (std::abs(val - std::complex<double>{expect, 0.0}) > 1e-12 * std::max<double>(1, h.k))
                return false;
        }
    return true;
}

}  // namespace apmub
