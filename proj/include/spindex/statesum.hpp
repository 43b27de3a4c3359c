/**
 * @file statesum.hpp
 * @brief Bounded state sums TV^(N) over admissible colorings of an ideal
 *        triangulation, and extraction of their stabilized quasi-linear data.
 *
 * The weight of a coloring factors as
 *
 *   prod_tets Tet(six colors) * prod_face-classes Theta(triple)^-1
 *   * prod_edge-classes U(color)
 *
 * and is assembled here from the hat-normalized truncated blocks: each factor
 * contributes an explicit extremal monomial plus a series with constant term
 * one, so a coloring whose total valuation already exceeds the target
 * precision is skipped without any series arithmetic.
 */

#pragma once

#include <functional>
#include <map>
#include <thread>

#include "blocks.hpp"
#include "triangulation.hpp"

namespace spindex {
namespace statesum {

/// Per-worker cache of hat-normalized block series at a fixed relative precision.
class BlockCache {
public:
    explicit BlockCache(long long rel_prec2) : rel_(rel_prec2) {}

    long long rel_prec2() const { return rel_; }

    const QSeries& theta_hat(std::array<long long, 3> t) {
        std::sort(t.begin(), t.end());
        auto it = theta_.find(t);
        if (it == theta_.end())
            it = theta_.emplace(t, blocks::hat_theta(t[0], t[1], t[2], rel_)).first;
        return it->second;
    }

    const QSeries& tet_hat(const blocks::STData& d) {
        std::array<long long, 7> key = {d.S1, d.S2, d.S3, d.T1, d.T2, d.T3, d.T4};
        std::sort(key.begin(), key.begin() + 3);
        std::sort(key.begin() + 3, key.end());
        auto it = tet_.find(key);
        if (it == tet_.end()) it = tet_.emplace(key, blocks::hat_tet_st(d, rel_)).first;
        return it->second;
    }

    const QSeries& geom(long long n) {
        auto it = geom_.find(n);
        if (it == geom_.end()) it = geom_.emplace(n, geometric_sum(n, rel_)).first;
        return it->second;
    }

private:
    long long rel_;
    std::map<std::array<long long, 3>, QSeries> theta_;
    std::map<std::array<long long, 7>, QSeries> tet_;
    std::map<long long, QSeries> geom_;
};

namespace detail {

struct WeightShape {
    bool zero = false;       // an empty tetrahedral sum kills the coloring
    long long min_exp2 = 0;  // total valuation of the weight
    int sign = 1;
    std::vector<blocks::STData> tets;
};

inline WeightShape weight_shape(const tri::Triangulation& T, const std::vector<long long>& c) {
    WeightShape w;
    for (int t = 0; t < T.tets(); ++t) {
        blocks::STData d = blocks::st_data(T.six_colors(t, c));
        if (d.empty_sum()) {
            w.zero = true;
            return w;
        }
        Monomial lo = blocks::tet_lowest(d);
        w.min_exp2 += lo.exp2;
        if (lo.coeff < 0) w.sign = -w.sign;
        w.tets.push_back(d);
    }
    for (const auto& tr : T.face_triples()) {
        // an inverted theta contributes +delta2 and the same unit sign
        long long d2 = blocks::theta_delta2(c[static_cast<size_t>(tr[0])], c[static_cast<size_t>(tr[1])],
                                            c[static_cast<size_t>(tr[2])]);
        w.min_exp2 += d2;
        long long s = (c[static_cast<size_t>(tr[0])] + c[static_cast<size_t>(tr[1])] + c[static_cast<size_t>(tr[2])]) / 2;
        if (s % 2 != 0) w.sign = -w.sign;
    }
    for (long long u : c) {
        w.min_exp2 -= u;
        if (u % 2 != 0) w.sign = -w.sign;
    }
    return w;
}

inline QSeries coloring_weight(const tri::Triangulation& T, const std::vector<long long>& c,
                               long long prec2, BlockCache& cache) {
    WeightShape w = weight_shape(T, c);
    if (w.zero) return QSeries::zero(prec2);
    long long rel = prec2 - w.min_exp2;
    if (rel <= 0) return QSeries::zero(prec2);
    if (rel > cache.rel_prec2())
        throw std::logic_error("coloring_weight: cache precision too low");

    QSeries num = truncate(QSeries::one(), rel);
    for (const auto& d : w.tets) num *= cache.tet_hat(d);
    for (long long u : c) num *= cache.geom(u);
    QSeries den = truncate(QSeries::one(), rel);
    for (const auto& tr : T.face_triples())
        den *= cache.theta_hat({c[static_cast<size_t>(tr[0])], c[static_cast<size_t>(tr[1])],
                                c[static_cast<size_t>(tr[2])]});
    return QSeries::monomial(w.sign, w.min_exp2) * num * invert_unit(den, rel);
}

/// Visit every admissible coloring with colors <= N whose maximum is exactly
/// max_required (pass -1 to visit all colorings <= N).  Pruning: a face triple
/// is tested as soon as its last edge class is assigned.
inline void for_each_coloring(const tri::Triangulation& T, long long N, long long max_required,
                              long long first_lo, long long first_hi,
                              const std::function<void(const std::vector<long long>&)>& visit) {
    size_t nclasses = T.edge_classes().size();
    std::vector<std::vector<std::array<int, 3>>> checks(nclasses);
    for (const auto& tr : T.face_triples()) {
        int last = std::max({tr[0], tr[1], tr[2]});
        checks[static_cast<size_t>(last)].push_back(tr);
    }
    std::vector<long long> c(nclasses, 0);
    std::function<void(size_t, bool)> rec = [&](size_t i, bool has_max) {
        if (i == nclasses) {
            if (max_required < 0 || has_max) visit(c);
            return;
        }
        long long lo = (i == 0) ? first_lo : 0;
        long long hi = (i == 0) ? first_hi : N;
        for (long long v = lo; v <= hi; ++v) {
            if (max_required >= 0 && !has_max && v != max_required && i + 1 == nclasses) continue;
            c[i] = v;
            bool ok = true;
            for (const auto& tr : checks[i]) {
                if (!blocks::is_admissible(c[static_cast<size_t>(tr[0])], c[static_cast<size_t>(tr[1])],
                                           c[static_cast<size_t>(tr[2])])) {
                    ok = false;
                    break;
                }
            }
            if (ok) rec(i + 1, has_max || v == max_required);
        }
        c[i] = 0;
    };
    rec(0, max_required < 0);
}

/// Largest relative precision any coloring in the slice will need.
inline long long scan_rel_prec(const tri::Triangulation& T, long long N, long long max_required,
                               long long first_lo, long long first_hi, long long prec2) {
    long long rel = 0;
    for_each_coloring(T, N, max_required, first_lo, first_hi, [&](const std::vector<long long>& c) {
        WeightShape w = weight_shape(T, c);
        if (!w.zero) rel = std::max(rel, prec2 - w.min_exp2);
    });
    return rel;
}

}  // namespace detail

/// Sum of weights over admissible colorings with maximum color exactly N.
inline QSeries tv_shell(const tri::Triangulation& T, long long N, long long prec2, unsigned threads = 1) {
    auto run_slice = [&](long long lo, long long hi) {
        long long rel = detail::scan_rel_prec(T, N, N, lo, hi, prec2);
        BlockCache cache(std::max(rel, 1LL));
        QSeries acc = QSeries::zero(prec2);
        detail::for_each_coloring(T, N, N, lo, hi, [&](const std::vector<long long>& c) {
            acc += detail::coloring_weight(T, c, prec2, cache);
        });
        return acc;
    };
    if (threads <= 1 || N == 0) return run_slice(0, N);
    unsigned nslices = std::min<unsigned>(threads, static_cast<unsigned>(N + 1));
    std::vector<QSeries> parts(nslices, QSeries::zero(prec2));
    std::vector<std::thread> pool;
    for (unsigned s = 0; s < nslices; ++s) {
        long long lo = (N + 1) * s / nslices, hi = (N + 1) * (s + 1) / nslices - 1;
        pool.emplace_back([&, s, lo, hi] { parts[s] = run_slice(lo, hi); });
    }
    for (auto& th : pool) th.join();
    QSeries acc = QSeries::zero(prec2);
    for (const auto& p : parts) acc += p;
    return acc;
}

/// TV^(N): sum over all admissible colorings with colors <= N.
inline QSeries tv_n(const tri::Triangulation& T, long long N, long long prec2, unsigned threads = 1) {
    QSeries acc = QSeries::zero(prec2);
    for (long long M = 0; M <= N; ++M) acc += tv_shell(T, M, prec2, threads);
    return acc;
}

struct StabilizationReport {
    QSeries I_fkb;
    QSeries I0;
    QSeries twoI1;
    long long N_used = 0;
    long long stabilized_order2 = 0;
    bool reconstruction_ok = false;
};

/**
 * Runs TV^(N) for N = 0,1,2,... until the differences TV^(N+2) - TV^(N)
 * settle on one constant series for three consecutive starting points; that
 * constant is the stabilized series I, and the even/odd intercepts give I0
 * and I1 from TV^(N) = (N/2) I + I0 + (N odd) I1.
 */
inline StabilizationReport fkb_limit(const tri::Triangulation& T, long long prec2, long long n_max = 64,
                                     unsigned threads = 1) {
    std::vector<QSeries> tv;
    tv.push_back(tv_shell(T, 0, prec2, threads));
    auto ensure = [&](long long N) {
        while (static_cast<long long>(tv.size()) <= N)
            tv.push_back(tv.back() + tv_shell(T, static_cast<long long>(tv.size()), prec2, threads));
    };
    auto diff = [&](long long N) { return tv[static_cast<size_t>(N + 2)] - tv[static_cast<size_t>(N)]; };

    for (long long N = 0;; ++N) {
        if (N + 4 > n_max)
            throw std::runtime_error(
                "no stabilization: triangulation may not be 1-efficient or N_max too small");
        ensure(N + 4);
        QSeries d0 = diff(N);
        if (!(d0 == diff(N + 1)) || !(d0 == diff(N + 2))) continue;

        StabilizationReport rep;
        rep.I_fkb = d0;
        rep.N_used = N + 4;
        rep.stabilized_order2 = prec2;
        long long even = (N % 2 == 0) ? N : N + 1;
        long long odd = (N % 2 == 0) ? N + 1 : N;
        QSeries half_I = QSeries::monomial(even / 2, 0) * rep.I_fkb;
        rep.I0 = tv[static_cast<size_t>(even)] - half_I;
        rep.twoI1 = QSeries::monomial(2, 0) * tv[static_cast<size_t>(odd)] -
                    QSeries::monomial(odd, 0) * rep.I_fkb - QSeries::monomial(2, 0) * rep.I0;
        rep.reconstruction_ok = true;
        for (long long M = N; M <= N + 4; ++M) {
            QSeries lhs = QSeries::monomial(2, 0) * tv[static_cast<size_t>(M)];
            QSeries rhs = QSeries::monomial(M, 0) * rep.I_fkb + QSeries::monomial(2, 0) * rep.I0;
            if (M % 2 != 0) rhs += rep.twoI1;
            if (!(lhs == rhs)) rep.reconstruction_ok = false;
        }
        return rep;
    }
}

}  // namespace statesum
}  // namespace spindex
