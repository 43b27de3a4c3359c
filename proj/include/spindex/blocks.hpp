/**
 * @file blocks.hpp
 * @brief Spin-network building blocks: unknot, theta and tetrahedron evaluations.
 *
 * All values are exact Laurent polynomials in q^(1/2) via the balanced quantum
 * integers.  Truncated evaluations (the *_series and hat_* functions) compute
 * the same values through their Pochhammer factorizations, which costs
 * O(precision) regardless of the size of the colors.
 */

#pragma once

#include <array>
#include <vector>

#include "qseries.hpp"

namespace spindex {
namespace blocks {

inline bool is_admissible(long long a, long long b, long long c) {
    return a >= 0 && b >= 0 && c >= 0 && (a + b + c) % 2 == 0 &&
           a <= b + c && b <= a + c && c <= a + b;
}

struct AdmissibleTriple {
    long long a = 0, b = 0, c = 0;

    AdmissibleTriple(long long a_, long long b_, long long c_) : a(a_), b(b_), c(c_) {
        if (!is_admissible(a, b, c)) throw std::domain_error("inadmissible triple");
    }
};

/// Six colors of a tetrahedral network, opposite pairs (a,d), (b,c), (e,f).
/// The four vertices carry the triples (a,b,e), (a,c,f), (c,d,e), (b,d,f).
struct SixColors {
    long long a = 0, b = 0, e = 0, d = 0, c = 0, f = 0;

    std::array<std::array<long long, 3>, 4> vertex_triples() const {
        return {{{a, b, e}, {a, c, f}, {c, d, e}, {b, d, f}}};
    }
    bool admissible() const {
        for (auto& t : vertex_triples())
            if (!is_admissible(t[0], t[1], t[2])) return false;
        return true;
    }
};

struct STData {
    long long S1 = 0, S2 = 0, S3 = 0;
    long long T1 = 0, T2 = 0, T3 = 0, T4 = 0;
    long long S_star = 0, T_plus = 0;

    std::array<long long, 3> S() const { return {S1, S2, S3}; }
    std::array<long long, 4> T() const { return {T1, T2, T3, T4}; }
    std::array<long long, 3> S_stars() const { return {S1 - S_star, S2 - S_star, S3 - S_star}; }
    std::array<long long, 4> T_stars() const { return {S_star - T1, S_star - T2, S_star - T3, S_star - T4}; }
    bool empty_sum() const { return T_plus > S_star; }
};

inline STData st_data(const SixColors& s) {
    long long s1 = s.a + s.d + s.b + s.c, s2 = s.a + s.d + s.e + s.f, s3 = s.b + s.c + s.e + s.f;
    long long t1 = s.a + s.b + s.e, t2 = s.a + s.c + s.f, t3 = s.c + s.d + s.e, t4 = s.b + s.d + s.f;
    if (s1 % 2 || s2 % 2 || s3 % 2 || t1 % 2 || t2 % 2 || t3 % 2 || t4 % 2)
        throw std::domain_error("st_data: non-integral vertex or square sum");
    STData d{s1 / 2, s2 / 2, s3 / 2, t1 / 2, t2 / 2, t3 / 2, t4 / 2, 0, 0};
    d.S_star = std::min({d.S1, d.S2, d.S3});
    d.T_plus = std::max({d.T1, d.T2, d.T3, d.T4});
    return d;
}

/// U(a) = (-1)^a [a+1].
inline QSeries unknot(long long a) {
    if (a < 0) throw std::domain_error("unknot: negative color");
    QSeries v = quantum_integer(a + 1);
    return (a % 2 == 0) ? v : -v;
}

inline QSeries theta(const AdmissibleTriple& t) {
    long long s = (t.a + t.b + t.c) / 2;
    QSeries v = quantum_integer(s + 1) * quantum_multinomial(s, {s - t.a, s - t.b, s - t.c});
    return (s % 2 == 0) ? v : -v;
}

inline QSeries theta(long long a, long long b, long long c) { return theta(AdmissibleTriple(a, b, c)); }

/// The tetrahedral evaluation as the alternating sum over k of quantum
/// multinomials.  An empty summation range yields the zero polynomial.
inline QSeries tet(const SixColors& s) {
    if (!s.admissible()) throw std::domain_error("tet: inadmissible vertex triple");
    STData d = st_data(s);
    if (d.empty_sum()) return QSeries::zero();
    QSeries acc = QSeries::zero();
    for (long long k = d.T_plus; k <= d.S_star; ++k) {
        QSeries term = quantum_integer(k + 1) *
                       quantum_multinomial(k, {d.S1 - k, d.S2 - k, d.S3 - k,
                                               k - d.T1, k - d.T2, k - d.T3, k - d.T4});
        acc += (k % 2 == 0) ? term : -term;
    }
    return acc;
}

// Doubled minimal exponent of the k-th summand of tet().
inline long long tet_term_min_exp2(const STData& d, long long k) {
    long long sq = k * k;
    for (long long si : d.S()) sq -= (si - k) * (si - k);
    for (long long tj : d.T()) sq -= (k - tj) * (k - tj);
    return -k - sq / 2;
}

/// The same polynomial as tet(), assembled from Pochhammer ratios: each
/// summand is q^E(k) (1-q^(k+1))/(1-q) (q;q)_k / (prod_i (q;q)_(Si-k)
/// prod_j (q;q)_(k-Tj)) with E(k) the summand valuation.
inline QSeries tet_pochhammer(const SixColors& s) {
    if (!s.admissible()) throw std::domain_error("tet_pochhammer: inadmissible vertex triple");
    STData d = st_data(s);
    if (d.empty_sum()) return QSeries::zero();
    QSeries acc = QSeries::zero();
    for (long long k = d.T_plus; k <= d.S_star; ++k) {
        QSeries den = QSeries::one();
        for (long long si : d.S()) den *= pochhammer(si - k);
        for (long long tj : d.T()) den *= pochhammer(k - tj);
        QSeries term = QSeries::monomial((k % 2 == 0) ? 1 : -1, tet_term_min_exp2(d, k)) *
                       geometric_sum(k) * divide_exact(pochhammer(k), den);
        acc += term;
    }
    return acc;
}

/// Predicted lowest monomial of tet(): the k = S* summand dominates, with
/// sign (-1)^(S*).  Verified against direct evaluation in the test suite.
inline Monomial tet_lowest(const STData& d) {
    return Monomial{(d.S_star % 2 == 0) ? 1 : -1, tet_term_min_exp2(d, d.S_star)};
}

/// Doubled top exponent of theta; the polynomial is palindromic so the lowest
/// exponent is the negative of this.
inline long long theta_delta2(long long a, long long b, long long c) {
    long long n = -(a * a + b * b + c * c) + 2 * (a * b + a * c + b * c) + 2 * (a + b + c);
    if (n % 4 != 0) throw std::domain_error("theta_delta2: non-admissible parity");
    return n / 4;
}

inline Monomial theta_lowest(long long a, long long b, long long c) {
    return Monomial{((a + b + c) / 2 % 2 == 0) ? 1 : -1, -theta_delta2(a, b, c)};
}

enum class BlockKind { U, Theta, Tet };

/**
 * Closed extremal-monomial formulas for the three blocks (doubled exponents).
 * For U and Theta the returned monomial is the top end of the palindromic
 * polynomial; the bottom end has the same coefficient and negated exponent.
 * For Tet the formula evaluates the k = T+ summand's minimal monomial, which
 * matches an end of the polynomial only when T+ = S*; tet_lowest() gives the
 * law that holds for every admissible coloring.
 */
inline Monomial lemma_extremal(BlockKind kind, const std::vector<long long>& colors) {
    switch (kind) {
        case BlockKind::U: {
            long long a = colors.at(0);
            return Monomial{(a % 2 == 0) ? 1 : -1, a};
        }
        case BlockKind::Theta: {
            long long a = colors.at(0), b = colors.at(1), c = colors.at(2);
            return Monomial{((a + b + c) / 2 % 2 == 0) ? 1 : -1, theta_delta2(a, b, c)};
        }
        case BlockKind::Tet: {
            SixColors s{colors.at(0), colors.at(1), colors.at(2), colors.at(3), colors.at(4), colors.at(5)};
            STData d = st_data(s);
            return Monomial{(d.T_plus % 2 == 0) ? 1 : -1, tet_term_min_exp2(d, d.T_plus)};
        }
    }
    throw std::logic_error("lemma_extremal: unreachable");
}

/// theta normalized by its lowest monomial, computed at O(prec2) cost:
/// (1 - q^(s+1))/(1-q) * (q;q)_s / prod (q;q)_(s-x).
inline QSeries hat_theta(const AdmissibleTriple& t, long long prec2) {
    long long s = (t.a + t.b + t.c) / 2;
    QSeries v = geometric_sum(s, prec2) * pochhammer(s, prec2);
    for (long long x : {t.a, t.b, t.c}) v *= inv_pochhammer(s - x, prec2);
    return truncate(v, prec2);
}

inline QSeries hat_theta(long long a, long long b, long long c, long long prec2) {
    return hat_theta(AdmissibleTriple(a, b, c), prec2);
}

/**
 * tet normalized by its lowest monomial, as the shifted sum over l = S* - k:
 *
 *   sum_l (-1)^l q^(l(3l+1)/2 + l(S1*+S2*+S3*)) (1-q^(S*-l+1))/(1-q)
 *         (q;q)_(S*-l) / (prod_i (q;q)_(Si*+l) prod_j (q;q)_(Tj*-l))
 *
 * The l-th term's valuation l(3l+1)/2 + l sum(Si*) is strictly increasing in
 * l, so the sum truncates once it reaches prec2.
 */
inline QSeries hat_tet_st(const STData& d, long long prec2) {
    if (d.empty_sum()) throw std::domain_error("hat_tet: zero tetrahedral evaluation");
    auto ss = d.S_stars();
    auto ts = d.T_stars();
    long long sum_s = ss[0] + ss[1] + ss[2];
    QSeries acc = QSeries::zero(prec2);
    for (long long l = 0; l <= d.S_star - d.T_plus; ++l) {
        long long shift2 = l * (3 * l + 1) + 2 * l * sum_s;
        if (shift2 >= prec2) break;
        long long rel = prec2 - shift2;
        QSeries term = geometric_sum(d.S_star - l, rel) * pochhammer(d.S_star - l, rel);
        for (long long si : ss) term *= inv_pochhammer(si + l, rel);
        for (long long tj : ts) term *= inv_pochhammer(tj - l, rel);
        acc += QSeries::monomial((l % 2 == 0) ? 1 : -1, shift2) * term;
    }
    return truncate(acc, prec2);
}

inline QSeries hat_tet(const SixColors& s, long long prec2) {
    if (!s.admissible()) throw std::domain_error("hat_tet: inadmissible vertex triple");
    return hat_tet_st(st_data(s), prec2);
}

/// Truncated theta value (lowest monomial times hat_theta).
inline QSeries theta_series(const AdmissibleTriple& t, long long prec2) {
    Monomial lt = theta_lowest(t.a, t.b, t.c);
    return QSeries::monomial(lt.coeff, lt.exp2) * hat_theta(t, prec2 - lt.exp2);
}

/// Truncated tet value; the empty summation range yields zero.
inline QSeries tet_series(const SixColors& s, long long prec2) {
    if (!s.admissible()) throw std::domain_error("tet_series: inadmissible vertex triple");
    STData d = st_data(s);
    if (d.empty_sum()) return QSeries::zero(prec2);
    Monomial lt = tet_lowest(d);
    return QSeries::monomial(lt.coeff, lt.exp2) * hat_tet(s, prec2 - lt.exp2);
}

/// Stabilized limit of hat_theta under color shifts by 2N: 1/((1-q)(q;q)_inf^2).
inline QSeries theta_limit(long long prec2) {
    QSeries inv1q = invert_unit(QSeries::one() - QSeries::monomial(1, 2), prec2);
    QSeries ip = inv_pochhammer_inf(prec2);
    return truncate(inv1q * ip * ip, prec2);
}

/**
 * Stabilized limit of hat_tet under color shifts by 2N, as a function of the
 * reduced square sums (s1,s2,s3), min = 0:
 *
 *   1/((1-q)(q;q)_inf^3) sum_(l>=0) (-1)^l q^(l(3l+1)/2 + l(s1+s2+s3))
 *                                   / prod_i (q;q)_(si+l)
 */
inline QSeries tet_limit(long long s1, long long s2, long long s3, long long prec2) {
    if (std::min({s1, s2, s3}) != 0 || s1 < 0 || s2 < 0 || s3 < 0)
        throw std::invalid_argument("tet_limit: arguments must be nonnegative with minimum 0");
    long long sum_s = s1 + s2 + s3;
    QSeries acc = QSeries::zero(prec2);
    for (long long l = 0;; ++l) {
        long long shift2 = l * (3 * l + 1) + 2 * l * sum_s;
        if (shift2 >= prec2) break;
        long long rel = prec2 - shift2;
        QSeries term = inv_pochhammer(s1 + l, rel) * inv_pochhammer(s2 + l, rel) * inv_pochhammer(s3 + l, rel);
        acc += QSeries::monomial((l % 2 == 0) ? 1 : -1, shift2) * term;
    }
    QSeries inv1q = invert_unit(QSeries::one() - QSeries::monomial(1, 2), prec2);
    QSeries ip = inv_pochhammer_inf(prec2);
    return truncate(acc * inv1q * ip * ip * ip, prec2);
}

/// All 24 relabelings of the six edge colors induced by vertex permutations.
/// Colors indexed by edges 01,02,03,12,13,23; SixColors slots read the edges
/// (d,c,f,e,b,a) in that order.
inline SixColors six_from_edges(const std::array<long long, 6>& w) {
    return SixColors{w[5], w[4], w[3], w[0], w[1], w[2]};
}

inline std::array<long long, 6> edges_from_six(const SixColors& s) {
    return {s.d, s.c, s.f, s.e, s.b, s.a};
}

}  // namespace blocks
}  // namespace spindex
