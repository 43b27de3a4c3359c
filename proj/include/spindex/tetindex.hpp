/**
 * @file tetindex.hpp
 * @brief The tetrahedron index I_Delta(m,e), its three-variable symmetrization
 *        J(a,b,c), the Pochhammer-product form, and the machine check that the
 *        two agree.
 */

#pragma once

#include <array>
#include <thread>

#include "blocks.hpp"
#include "qseries.hpp"

namespace spindex {
namespace tetindex {

/**
 * I_Delta(m,e) = sum_(n >= max(0,-e)) (-1)^n q^(n(n+1)/2 - (n+e/2)m) / ((q)_n (q)_(n+e)).
 *
 * The doubled exponent of the n-th summand is E(n) = n(n+1) - (2n+e)m, with
 * E(n+1) - E(n) = 2(n+1-m) > 0 once n >= m; the sum therefore stops at the
 * first n >= max(n0, m) with E(n) >= prec2, and every discarded summand has
 * valuation >= prec2.
 */
inline QSeries i_delta(long long m, long long e, long long prec2) {
    long long n0 = std::max<long long>(0, -e);
    QSeries acc = QSeries::zero(prec2);
    for (long long n = n0;; ++n) {
        long long e2 = n * (n + 1) - (2 * n + e) * m;
        if (n >= std::max(n0, m) && e2 >= prec2) break;
        if (e2 < prec2) {
            long long rel = prec2 - e2;
            QSeries term = inv_pochhammer(n, rel) * inv_pochhammer(n + e, rel);
            acc += QSeries::monomial((n % 2 == 0) ? 1 : -1, e2) * term;
        }
    }
    return acc;
}

/// nu(a,b,c) = a*b* + a*c* + b*c* - min, with x* = x - min{a,b,c}.
inline long long nu(long long a, long long b, long long c) {
    long long m = std::min({a, b, c});
    long long as = a - m, bs = b - m, cs = c - m;
    return as * bs + as * cs + bs * cs - m;
}

/// J(a,b,c) via one of its three defining reductions to I_Delta.
inline QSeries j_delta_route(long long a, long long b, long long c, long long prec2, int route) {
    long long s, m, e;
    switch (route) {
        case 0: s = b; m = b - c; e = a - b; break;
        case 1: s = c; m = c - a; e = b - c; break;
        case 2: s = a; m = a - b; e = c - a; break;
        default: throw std::invalid_argument("j_delta_route: route must be 0, 1 or 2");
    }
    // (-q^(1/2))^(-s) * I_Delta(m,e)
    return QSeries::monomial((s % 2 == 0) ? 1 : -1, -s) * i_delta(m, e, prec2 + s);
}

inline QSeries j_delta(long long a, long long b, long long c, long long prec2) {
    return j_delta_route(a, b, c, prec2, 0);
}

/**
 * The Pochhammer-product form
 *
 *   (q)_inf sum_n (-1)^n q^(n(3n+1)/2 + n(a+b+c) + (ab+bc+ca)/2)
 *                 / ((q)_(n+a) (q)_(n+b) (q)_(n+c)),     n >= -min{a,b,c}.
 *
 * Summand valuations E(n) = n(3n+1) + 2n(a+b+c) + (ab+bc+ca) satisfy
 * E(n+1) - E(n) = 6n + 4 + 2(a+b+c), increasing once 3n + 2 + a+b+c > 0.
 */
inline QSeries j_fkb(long long a, long long b, long long c, long long prec2) {
    long long n0 = -std::min({a, b, c});
    long long sum = a + b + c, sigma2 = a * b + b * c + c * a;
    QSeries acc = QSeries::zero(prec2);
    for (long long n = n0;; ++n) {
        long long e2 = n * (3 * n + 1) + 2 * n * sum + sigma2;
        bool increasing = 3 * n + 2 + sum > 0;
        if (n > n0 && increasing && e2 >= prec2) break;
        if (e2 < prec2) {
            long long rel = prec2 - e2;
            QSeries term = inv_pochhammer(n + a, rel) * inv_pochhammer(n + b, rel) * inv_pochhammer(n + c, rel);
            acc += QSeries::monomial((n % 2 == 0) ? 1 : -1, e2) * term;
        }
    }
    long long lo = std::min<long long>(0, acc.valuation_bound());
    return truncate(acc * pochhammer_inf(prec2 - lo), prec2);
}

/**
 * Stabilized tetrahedral weight of six colors, depending only on the sums of
 * opposite colors.  Computed two ways and cross-asserted: the direct sum in
 * alpha = (C1-C3)/2, beta = (C1-C2)/2 for sorted opposite sums C1>=C2>=C3,
 * and (1-q) times the Pochhammer-product form at the reduced square sums.
 */
inline QSeries s_infty(const blocks::SixColors& s, long long prec2) {
    std::array<long long, 3> c = {s.a + s.d, s.b + s.c, s.e + s.f};
    std::sort(c.begin(), c.end(), std::greater<>());
    if ((c[0] - c[2]) % 2 || (c[0] - c[1]) % 2)
        throw std::domain_error("s_infty: opposite sums differ in parity");
    long long alpha = (c[0] - c[2]) / 2, beta = (c[0] - c[1]) / 2;

    QSeries acc = QSeries::zero(prec2);
    for (long long n = 0;; ++n) {
        long long e2 = 3 * n * n + (2 * alpha + 2 * beta + 1) * n + alpha * beta;
        if (e2 >= prec2) break;
        long long rel = prec2 - e2;
        QSeries term = inv_pochhammer(n, rel) * inv_pochhammer(n + alpha, rel) * inv_pochhammer(n + beta, rel);
        acc += QSeries::monomial((n % 2 == 0) ? 1 : -1, e2) * term;
    }
    QSeries one_minus_q = QSeries::one() - QSeries::monomial(1, 2);
    QSeries direct = truncate(acc * one_minus_q * pochhammer_inf(prec2), prec2);

    QSeries via_index = truncate(one_minus_q * j_fkb(alpha, beta, 0, prec2), prec2);
    if (!(direct == via_index))
        throw std::logic_error("s_infty: the two defining expressions disagree");
    return direct;
}

/// Weight of a closed surface class: (-q^(1/2))^(-chi) prod_j J(a_j,b_j,c_j).
inline QSeries e_infty(const std::vector<std::array<long long, 3>>& quads, long long chi, long long prec2) {
    long long total_min = -chi;
    for (const auto& t : quads) total_min += nu(t[0], t[1], t[2]);
    QSeries w = QSeries::monomial((chi % 2 == 0) ? 1 : -1, -chi);
    for (const auto& t : quads)
        w *= j_fkb(t[0], t[1], t[2], prec2 - total_min + nu(t[0], t[1], t[2]));
    return truncate(w, prec2);
}

struct Prop1Report {
    long long range = 0;
    long long prec2 = 0;
    long long checked = 0;
    std::vector<std::array<long long, 3>> mismatches;

    bool ok() const { return mismatches.empty(); }
};

/// Coefficientwise comparison of the two index forms over a cube of triples.
inline Prop1Report verify_prop1(long long range, long long prec2, unsigned threads = 1) {
    Prop1Report rep;
    rep.range = range;
    rep.prec2 = prec2;
    long long side = 2 * range + 1;
    long long total = side * side * side;
    rep.checked = total;

    auto check_slice = [&](long long begin, long long end, std::vector<std::array<long long, 3>>& out) {
        for (long long i = begin; i < end; ++i) {
            long long a = i / (side * side) - range;
            long long b = (i / side) % side - range;
            long long c = i % side - range;
            QSeries lhs = j_delta(a, b, c, prec2);
            QSeries rhs = j_fkb(a, b, c, prec2);
            if (!(truncate(lhs, prec2) == truncate(rhs, prec2))) out.push_back({a, b, c});
        }
    };

    if (threads <= 1) {
        check_slice(0, total, rep.mismatches);
    } else {
        std::vector<std::vector<std::array<long long, 3>>> parts(threads);
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            long long begin = total * t / threads, end = total * (t + 1) / threads;
            pool.emplace_back(check_slice, begin, end, std::ref(parts[t]));
        }
        for (auto& th : pool) th.join();
        for (auto& p : parts)
            rep.mismatches.insert(rep.mismatches.end(), p.begin(), p.end());
    }
    return rep;
}

}  // namespace tetindex
}  // namespace spindex
