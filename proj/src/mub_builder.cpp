#include "apmub/mub_builder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <set>
#include <thread>

namespace apmub {

std::string classification_name(Classification c) {
    switch (c) {
        case Classification::MUB: return "MUB";
        case Classification::APMUB: return "APMUB";
        case Classification::AMUB: return "AMUB";
        case Classification::fail: return "fail";
    }
    return "fail";
}

MubCollection build_bases(const ResolvableDesign& design,
                          const std::vector<UnitaryScaffold>& scaffolds) {
    ValidationReport vr = validate(design);
    if (!vr.valid)
        throw DomainError("build_bases: invalid design: " +
                          (vr.issues.empty() ? std::string("unknown") : vr.issues.front()));
    if (!vr.constant_block_size)
        throw DomainError("build_bases: NonConstantBlockSize");
    Int k = vr.block_size;
    size_t r = design.classes.size();
    if (scaffolds.empty() || (scaffolds.size() != 1 && scaffolds.size() != r))
        throw DomainError("build_bases: pass one scaffold or one per class");
    for (const auto& h : scaffolds) {
        if (h.k != k)
            throw DomainError("build_bases: OrderMismatch, scaffold order " + std::to_string(h.k) +
                              " vs block size " + std::to_string(k));
        for (const auto& row : h.entries)
            for (const auto& e : row)
                if (e.zero) throw DomainError("build_bases: scaffold has zero entries");
    }

    MubCollection m;
    m.d = design.d;
    m.k = k;
    for (size_t c = 0; c < r; ++c) {
        const UnitaryScaffold& h = scaffolds[scaffolds.size() == 1 ? 0 : c];
        Basis basis;
        basis.reserve(static_cast<size_t>(design.d));
        for (const auto& block : design.classes[c].blocks)
            for (Int u = 0; u < k; ++u) {
                BasisVector v;
                v.d = design.d;
                v.support = block.elements;
                v.phases = h.entries[static_cast<size_t>(u)];
                basis.push_back(std::move(v));
            }
        m.bases.push_back(std::move(basis));
    }
    return m;
}

InnerProductValue inner_product(const BasisVector& a, const BasisVector& b) {
    if (a.d != b.d) throw DomainError("inner_product: dimension mismatch");
    Int ka = static_cast<Int>(a.support.size()), kb = static_cast<Int>(b.support.size());
    if (ka == 0 || kb == 0) throw DomainError("inner_product: empty support");
    Int norm = ka * kb;  // |<a|b>|^2 = |sum|^2 / (ka*kb)

    std::vector<std::pair<size_t, size_t>> shared;
    size_t i = 0, j = 0;
    while (i < a.support.size() && j < b.support.size()) {
        if (a.support[i] < b.support[j]) ++i;
        else if (a.support[i] > b.support[j]) ++j;
        else shared.push_back({i++, j++});
    }

    InnerProductValue out;
    if (shared.empty()) {
        out.exact = true;
        out.mag_sq = Rational(0);
        out.mag = 0.0;
        return out;
    }
    if (shared.size() == 1) {
        out.exact = true;
        out.mag_sq = Rational(1, norm);
        out.mag = std::sqrt(out.mag_sq.to_double());
        return out;
    }

    Int order = 1;
    for (auto [ia, ib] : shared)
        order = lcm_int(order, lcm_int(a.phases[ia].den, b.phases[ib].den));
    RootSum sum(static_cast<int>(order));
    for (auto [ia, ib] : shared) {
        PhaseEntry t = phase_mul(phase_conj(a.phases[ia]), b.phases[ib]);
        sum.add_phase(t.num, t.den);
    }
    Int abs_int = 0;
    if (sum.integer_magnitude(abs_int)) {
        out.exact = true;
        out.mag_sq = Rational(abs_int * abs_int, norm);
        out.mag = std::sqrt(out.mag_sq.to_double());
        return out;
    }
    out.exact = false;
    out.mag = std::abs(sum.eval()) / std::sqrt(static_cast<double>(norm));
    return out;
}

namespace {

int thread_count(size_t tasks) {
    const char* env = std::getenv("APMUB_THREADS");
    int n = 0;
    if (env) n = std::atoi(env);
    if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    return std::max(1, std::min<int>(n, static_cast<int>(tasks)));
}

struct PairScan {
    std::set<Rational> delta_sq;
    std::vector<double> delta_float;
    bool exact = true;
    bool parseval_ok = true;
    std::vector<Int> t2_rows;  // nonzero partners per vector of the first basis
    std::vector<Int> t2_cols;  // and of the second
};

PairScan scan_pair(const Basis& x, const Basis& y) {
    PairScan scan;
    size_t d = x.size();
    scan.t2_rows.assign(d, 0);
    scan.t2_cols.assign(d, 0);
    for (size_t u = 0; u < d; ++u) {
        Rational parseval_exact(0);
        double parseval_float = 0.0;
        bool row_exact = true;
        for (size_t v = 0; v < d; ++v) {
            InnerProductValue ip = inner_product(x[u], y[v]);
            if (ip.exact) {
                if (ip.mag_sq.sign() != 0) {
                    scan.delta_sq.insert(ip.mag_sq);
                    ++scan.t2_rows[u];
                    ++scan.t2_cols[v];
                }
                parseval_exact += ip.mag_sq;
            } else {
                scan.exact = false;
                row_exact = false;
                scan.delta_float.push_back(ip.mag);
                ++scan.t2_rows[u];
                ++scan.t2_cols[v];
                parseval_float += ip.mag * ip.mag;
            }
        }
        if (row_exact) {
            if (parseval_exact != Rational(1)) scan.parseval_ok = false;
        } else if (std::abs(parseval_exact.to_double() + parseval_float - 1.0) > 1e-9) {
            scan.parseval_ok = false;
        }
    }
    std::sort(scan.delta_float.begin(), scan.delta_float.end());
    return scan;
}

}  // namespace

SpectrumReport analyze(const MubCollection& m) {
    SpectrumReport report;
    report.d = m.d;
    report.r = static_cast<Int>(m.bases.size());

    // Structural audit: vector count, support shape, phase shape. Support
    // sizes are usually uniform (the constructions emit one k), but a mixed
    // collection such as {I} union weighing matrices is still analyzable.
    report.structural_ok = true;
    std::set<Int> support_sizes;
    for (const auto& basis : m.bases) {
        if (static_cast<Int>(basis.size()) != m.d) {
            report.structural_ok = false;
            report.issues.push_back("a basis does not have d vectors");
            break;
        }
        for (const auto& v : basis) {
            support_sizes.insert(static_cast<Int>(v.support.size()));
            bool ok = v.d == m.d && !v.support.empty() &&
                      v.phases.size() == v.support.size() &&
                      std::is_sorted(v.support.begin(), v.support.end()) &&
                      std::adjacent_find(v.support.begin(), v.support.end()) == v.support.end() &&
                      v.support.front() >= 1 && v.support.back() <= m.d;
            for (const auto& p : v.phases)
                if (p.zero || p.den < 1 || p.num < 0 || p.num >= p.den) ok = false;
            if (!ok) {
                report.structural_ok = false;
                report.issues.push_back("malformed vector (support or phases)");
                break;
            }
        }
        if (!report.structural_ok) break;
    }
    Int k = support_sizes.size() == 1 ? *support_sizes.begin() : 0;
    report.k = k;
    if (!report.structural_ok) {
        report.classification = Classification::fail;
        return report;
    }
    if (k > 0) report.epsilon = Rational(m.d - k, m.d);
    else report.issues.push_back("support sizes vary across bases; epsilon omitted");

    // Exact orthonormality of every basis.
    report.orthonormal = true;
    for (size_t b = 0; b < m.bases.size() && report.orthonormal; ++b) {
        const Basis& basis = m.bases[b];
        for (size_t u = 0; u < basis.size() && report.orthonormal; ++u) {
            InnerProductValue norm = inner_product(basis[u], basis[u]);
            if (!norm.exact || norm.mag_sq != Rational(1)) {
                report.orthonormal = false;
                report.issues.push_back("basis " + std::to_string(b + 1) + " vector " +
                                        std::to_string(u + 1) + " is not a unit vector");
            }
            for (size_t v = u + 1; v < basis.size(); ++v) {
                InnerProductValue ip = inner_product(basis[u], basis[v]);
                if (!ip.exact || ip.mag_sq.sign() != 0) {
                    report.orthonormal = false;
                    report.issues.push_back("basis " + std::to_string(b + 1) + " vectors " +
                                            std::to_string(u + 1) + "," + std::to_string(v + 1) +
                                            " are not orthogonal");
                    break;
                }
            }
        }
    }
    if (!report.orthonormal) {
        report.classification = Classification::fail;
        return report;
    }

    // Cross-base spectrum, parallel over base pairs with deterministic merge.
    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t a = 0; a < m.bases.size(); ++a)
        for (size_t b = a + 1; b < m.bases.size(); ++b) pairs.push_back({a, b});

    std::vector<PairScan> scans(pairs.size());
    int workers = pairs.empty() ? 1 : thread_count(pairs.size());
    if (workers <= 1 || pairs.size() <= 1) {
        for (size_t i = 0; i < pairs.size(); ++i)
            scans[i] = scan_pair(m.bases[pairs[i].first], m.bases[pairs[i].second]);
    } else {
        std::vector<std::future<void>> futures;
        for (int w = 0; w < workers; ++w)
            futures.push_back(std::async(std::launch::async, [&, w]() {
                for (size_t i = static_cast<size_t>(w); i < pairs.size();
                     i += static_cast<size_t>(workers))
                    scans[i] = scan_pair(m.bases[pairs[i].first], m.bases[pairs[i].second]);
            }));
        for (auto& f : futures) f.get();
    }

    report.exact = true;
    std::set<Rational> delta_sq;
    std::vector<double> delta_float;
    report.uniform_counts = true;
    bool have_counts = false;
    bool zero_attained = false;
    bool parseval_failed = false;
    for (size_t i = 0; i < pairs.size(); ++i) {
        const PairScan& scan = scans[i];
        if (!scan.exact) report.exact = false;
        if (!scan.parseval_ok) parseval_failed = true;
        for (const auto& v : scan.delta_sq) delta_sq.insert(v);
        delta_float.insert(delta_float.end(), scan.delta_float.begin(), scan.delta_float.end());
        for (const auto& counts : {scan.t2_rows, scan.t2_cols})
            for (Int t2 : counts) {
                if (!have_counts) {
                    report.t2 = t2;
                    have_counts = true;
                } else if (t2 != report.t2) {
                    report.uniform_counts = false;
                }
                if (t2 < m.d) zero_attained = true;
            }
    }
    if (parseval_failed) {
        report.issues.push_back("Parseval identity failed on a base pair");
        report.classification = Classification::fail;
        return report;
    }

    if (zero_attained && !delta_sq.empty()) delta_sq.insert(Rational(0));
    else if (zero_attained && delta_sq.empty() && !delta_float.empty()) delta_float.push_back(0.0);

    report.delta_sq.assign(delta_sq.begin(), delta_sq.end());
    std::sort(delta_float.begin(), delta_float.end());
    for (double v : delta_float)
        if (report.delta_float.empty() || v - report.delta_float.back() > 1e-9)
            report.delta_float.push_back(v);

    if (report.uniform_counts && have_counts) {
        report.t1 = m.d - report.t2;
        report.n2 = static_cast<long long>(m.d) * report.t2;
        report.n1 = static_cast<long long>(m.d) * m.d - report.n2;
    }

    // beta = sqrt(d) * max |ip|.
    Rational max_exact_sq(0);
    if (!report.delta_sq.empty()) max_exact_sq = report.delta_sq.back();
    double max_float = report.delta_float.empty() ? 0.0 : report.delta_float.back();
    double max_exact = std::sqrt(max_exact_sq.to_double());
    report.beta_double = std::sqrt(static_cast<double>(m.d)) * std::max(max_exact, max_float);
    if (max_float <= max_exact + 1e-12) report.beta2 = max_exact_sq * Rational(m.d);

    if (pairs.empty()) {
        // Single orthonormal basis: vacuously unbiased.
        report.classification = Classification::MUB;
        report.exact = true;
        report.uniform_counts = false;
        report.issues.push_back("single basis, unbiasedness is vacuous");
        return report;
    }

    auto nonzero_values = report.delta_sq;
    if (!nonzero_values.empty() && nonzero_values.front().sign() == 0)
        nonzero_values.erase(nonzero_values.begin());

    if (report.exact) {
        bool has_zero = !report.delta_sq.empty() && report.delta_sq.front().sign() == 0;
        if (!has_zero && nonzero_values.size() == 1 && nonzero_values[0] == Rational(1, m.d)) {
            report.classification = Classification::MUB;
        } else if (has_zero && nonzero_values.size() == 1) {
            Rational beta2 = nonzero_values[0] * Rational(m.d);
            report.classification = (Rational(1) < beta2 && beta2 <= Rational(4))
                                        ? Classification::APMUB
                                        : Classification::AMUB;
        } else {
            report.classification = Classification::AMUB;
        }
    } else {
        report.classification = Classification::AMUB;
    }

    if (report.beta_double > 1.0 + 1e-15)
        report.lambda_estimate = -std::log(report.beta_double - 1.0) / std::log(m.d);
    return report;
}

std::vector<WeighingMatrix> weighing_from_bases(const MubCollection& m) {
    SpectrumReport report = analyze(m);
    if (report.classification != Classification::MUB &&
        report.classification != Classification::APMUB)
        throw VerificationError("weighing_from_bases: NotBiangular, classified " +
                                classification_name(report.classification));
    std::vector<WeighingMatrix> out;
    if (m.bases.size() <= 1) return out;

    Rational w_rat = report.beta2 ? Rational(m.d) / *report.beta2 : Rational(0);
    if (!w_rat.is_integer() || w_rat.num() <= 0)
        throw VerificationError("weighing_from_bases: weight d/beta^2 is not a positive integer");
    Int weight = w_rat.num();

    auto product_entry = [&](const BasisVector& a, const BasisVector& b) -> PhaseEntry {
        // <a|b> over the support intersection; for biangular collections the
        // intersection has at most one element, giving 0 or a phase / k.
        size_t i = 0, j = 0;
        PhaseEntry found = phase_zero();
        int count = 0;
        while (i < a.support.size() && j < b.support.size()) {
            if (a.support[i] < b.support[j]) ++i;
            else if (a.support[i] > b.support[j]) ++j;
            else {
                found = phase_mul(phase_conj(a.phases[i]), b.phases[j]);
                ++count;
                ++i;
                ++j;
            }
        }
        if (count > 1)
            throw VerificationError(
                "weighing_from_bases: support intersections above 1 are not representable");
        return count == 0 ? phase_zero() : found;
    };

    auto product_matrix = [&](const Basis& x, const Basis& y) {
        WeighingMatrix w;
        w.order = m.d;
        w.weight = weight;
        w.entries.assign(static_cast<size_t>(m.d),
                         std::vector<PhaseEntry>(static_cast<size_t>(m.d)));
        for (size_t u = 0; u < x.size(); ++u)
            for (size_t v = 0; v < y.size(); ++v)
                w.entries[u][v] = product_entry(x[u], y[v]);
        return w;
    };

    for (size_t i = 1; i < m.bases.size(); ++i) {
        WeighingMatrix w = product_matrix(m.bases[0], m.bases[i]);
        if (!verify_weighing(w))
            throw VerificationError("weighing_from_bases: W_" + std::to_string(i + 1) +
                                    " failed the weighing audit");
        out.push_back(std::move(w));
    }
    // Pairwise products W_i^dagger W_j = M_i^dagger M_j must again be
    // weighing matrices of the same weight.
    for (size_t i = 1; i < m.bases.size(); ++i)
        for (size_t j = i + 1; j < m.bases.size(); ++j) {
            WeighingMatrix w = product_matrix(m.bases[i], m.bases[j]);
            if (!verify_weighing(w))
                throw VerificationError("weighing_from_bases: W_i^dagger W_j failed for i = " +
                                        std::to_string(i + 1) + ", j = " + std::to_string(j + 1));
        }
    return out;
}

bool verify_weighing(const WeighingMatrix& w) {
    size_t n = static_cast<size_t>(w.order);
    if (w.entries.size() != n || w.weight < 1 || w.weight > w.order) return false;
    Int order = 1;
    for (const auto& row : w.entries) {
        if (row.size() != n) return false;
        for (const auto& e : row) {
            if (e.zero) continue;
            if (e.den < 1 || e.num < 0 || e.num >= e.den) return false;
            order = lcm_int(order, e.den);
        }
    }
    for (size_t u = 0; u < n; ++u) {
        Int nz = 0;
        for (size_t j = 0; j < n; ++j)
            if (!w.entries[u][j].zero) ++nz;
        if (nz != w.weight) return false;
    }
    for (size_t v = 0; v < n; ++v) {
        Int nz = 0;
        for (size_t u = 0; u < n; ++u)
            if (!w.entries[u][v].zero) ++nz;
        if (nz != w.weight) return false;
    }
    // W^dagger W = I: column pairs must cancel exactly.
    for (size_t c1 = 0; c1 < n; ++c1)
        for (size_t c2 = c1 + 1; c2 < n; ++c2) {
            RootSum sum(static_cast<int>(order));
            bool any = false;
            for (size_t u = 0; u < n; ++u) {
                if (w.entries[u][c1].zero || w.entries[u][c2].zero) continue;
                PhaseEntry t = phase_mul(phase_conj(w.entries[u][c1]), w.entries[u][c2]);
                sum.add_phase(t.num, t.den);
                any = true;
            }
            if (any && !sum.is_zero()) return false;
            if (any && std::abs(sum.eval()) > 1e-12 * static_cast<double>(w.order)) return false;
        }
    return true;
}

PredictedParams predicted_params(const QefParams& params, Int mu) {
    Int q = params.q, e = params.e, f = params.f;
    if (q < 2 || e < 0 || f < 0 || e >= q || mu < 1)
        throw DomainError("predicted_params: need q >= 2, 0 <= e < q, f >= 0, mu >= 1");
    Int d = params.d();
    Rational mu_r(mu);

    PredictedParams out{
        /*beta2*/ Rational(mu * mu) * Rational(q + f, q - e),
        /*beta*/ QuadSurd(Rational(0), Rational(mu * (q + f), d), d),
        /*delta_hi_sq*/ Rational(mu * mu, (q - e) * (q - e)),
        /*epsilon*/ Rational(q + f - 1, q + f),
        /*admissible_c2*/ false,
        {}, {}, {}, {}, {}, {},
    };

    // (e+f) <= ((4 - mu^2) / (2 mu)) sqrt(d), exactly.
    QuadSurd gap(Rational(e + f), Rational(-(4 - mu * mu), 2 * mu), d);
    out.admissible_c2 = gap.sign() <= 0;

    // Series in 1/q: mu (1 + (e+f)/2q + (e+f)(3e-f)/8q^2 + (e+f)(5e^2-2ef+f^2)/16q^3 + ...)
    std::vector<Rational> terms_q = {
        mu_r,
        mu_r * Rational(e + f, 2 * q),
        mu_r * Rational((e + f) * (3 * e - f)) / Rational(8 * q * q),
        mu_r * Rational((e + f) * (5 * e * e - 2 * e * f + f * f)) / Rational(16 * q * q * q),
    };
    Rational t4 = mu_r *
                  Rational(35 * e * e * e * e + 20 * e * e * e * f - 6 * e * e * f * f +
                           4 * e * f * f * f - 5 * f * f * f * f)
                      .abs() /
                  Rational(128 * q * q * q * q);
    Rational geo_q = Rational(q, q - e);  // 1 / (1 - e/q)
    Rational acc(0);
    for (size_t i = 0; i < terms_q.size(); ++i) {
        acc += terms_q[i];
        out.series_q.push_back(QuadSurd::rational(acc));
        Rational next = (i + 1 < terms_q.size()) ? terms_q[i + 1].abs() : t4;
        out.series_q_next_term.push_back(QuadSurd::rational(next));
        out.series_q_tail_bound.push_back(QuadSurd::rational(next * geo_q));
    }

    // Series in 1/sqrt(d): mu (1 + x + x^2/2 - x^4/8 + x^6/16 - 5 x^8/128 + ...),
    // x = (e+f)/(2 sqrt(d)). Only the x term is irrational.
    Rational x_sq = Rational((e + f) * (e + f), 4 * d);
    QuadSurd x(Rational(0), Rational(e + f, 2 * d), d);
    Rational x2 = x_sq, x4 = x_sq * x_sq, x6 = x4 * x_sq, x8 = x4 * x4, x10 = x8 * x_sq;
    std::vector<QuadSurd> terms_d = {
        QuadSurd::rational(mu_r),
        x * mu_r,
        QuadSurd::rational(mu_r * x2 * Rational(1, 2)),
        QuadSurd::rational(-(mu_r * x4 * Rational(1, 8))),
        QuadSurd::rational(mu_r * x6 * Rational(1, 16)),
        QuadSurd::rational(-(mu_r * x8 * Rational(5, 128))),
    };
    QuadSurd next_after_last = QuadSurd::rational(mu_r * x10 * Rational(7, 256));
    QuadSurd sum_d = QuadSurd::rational(Rational(0));
    for (size_t i = 0; i < terms_d.size(); ++i) {
        sum_d = sum_d + terms_d[i];
        out.series_d.push_back(sum_d);
        QuadSurd next = (i + 1 < terms_d.size()) ? terms_d[i + 1].abs() : next_after_last;
        out.series_d_next_term.push_back(next);
        if (i == 0) {
            // All omitted terms are positive only up to x; geometric gauge
            // |beta - mu| <= mu x + (mu x^2/2) / (1 - x^2).
            Rational even_tail = mu_r * x2 * Rational(1, 2) / (Rational(1) - x_sq);
            out.series_d_tail_bound.push_back((x * mu_r) + QuadSurd::rational(even_tail));
        } else {
            // Alternating with decreasing magnitude from here on.
            out.series_d_tail_bound.push_back(next);
        }
    }
    return out;
}

}  // namespace apmub
