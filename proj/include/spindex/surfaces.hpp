/**
 * @file surfaces.hpp
 * @brief The normal-surface route to the index: classes of closed generalized
 *        normal surfaces in quadrilateral coordinates, their Euler
 *        characteristics, and the generating series of their index weights.
 *
 * Class lattice: colorings of the edge classes whose face triples all have
 * even sums map to quad vectors through the per-tetrahedron square sums; the
 * lattice they generate, together with the per-tetrahedron (1,1,1) vectors,
 * is the membership lattice.  Unpeelable representatives (minimum 0 in every
 * tetrahedron) are unique per class.
 *
 * Euler characteristic: a (possibly rational) triangle completion of the quad
 * vector is solved from arc compatibility across each face pair; the count
 * chi = sum of edge weights - (3 #triangles + 4 #quads)/2 + (#triangles +
 * #quads) is then linear in the completion, and the per-cusp vertex-linking
 * ambiguity of the completion shifts it by torus characteristics only.
 */

#pragma once

#include <map>
#include <thread>

#include "linalg.hpp"
#include "statesum.hpp"
#include "tetindex.hpp"
#include "triangulation.hpp"

namespace spindex {
namespace surfaces {

/// Quad type whose arcs cut off corner v inside face f.
inline int quad_type(int v, int f) { return tri::kPairOfEdge[static_cast<size_t>(tri::edge_index(v, f))]; }

struct NormalClass {
    std::vector<std::array<long long, 3>> quads;
    long long chi = 0;
    long long degree2 = 0;  // valuation of the weight: -chi + sum_j nu(quads_j)
};

struct MatchingData {
    int tets = 0;
    linalg::IntMatrix lattice;        // HNF rows spanning the class lattice in Z^(3t)
    std::vector<size_t> pivots;
    std::vector<std::vector<long long>> coloring_generators;  // parity-lattice basis used
};

/// Quad-coordinate image of an (integer) coloring of the edge classes.
inline std::vector<long long> quads_of_coloring(const tri::Triangulation& T,
                                                const std::vector<long long>& c) {
    std::vector<long long> x(static_cast<size_t>(3 * T.tets()));
    for (int t = 0; t < T.tets(); ++t) {
        long long pair_sum[3] = {0, 0, 0};
        for (int e = 0; e < 6; ++e)
            pair_sum[tri::kPairOfEdge[static_cast<size_t>(e)]] += c.at(static_cast<size_t>(T.edge_class(t, e)));
        long long s1 = pair_sum[0] + pair_sum[1], s2 = pair_sum[0] + pair_sum[2], s3 = pair_sum[1] + pair_sum[2];
        if (s1 % 2 || s2 % 2 || s3 % 2)
            throw std::domain_error("quads_of_coloring: coloring violates face parity");
        // square sum missing pair m tracks quad type m modulo the tetrahedral vector
        x[static_cast<size_t>(3 * t + 0)] = s3 / 2;
        x[static_cast<size_t>(3 * t + 1)] = s2 / 2;
        x[static_cast<size_t>(3 * t + 2)] = s1 / 2;
    }
    return x;
}

inline MatchingData matching_data(const tri::Triangulation& T) {
    size_t ne = T.edge_classes().size();

    // parity conditions: every face triple must have even color sum
    std::vector<std::vector<int>> par_rows;
    for (const auto& tr : T.face_triples()) {
        std::vector<int> row(ne, 0);
        for (int id : tr) row[static_cast<size_t>(id)] ^= 1;
        par_rows.push_back(std::move(row));
    }
    // F2 kernel basis by Gaussian elimination
    std::vector<std::vector<int>> mat = par_rows;
    std::vector<long long> pivot_col;
    size_t r = 0;
    for (size_t col = 0; col < ne && r < mat.size(); ++col) {
        size_t sel = r;
        while (sel < mat.size() && mat[sel][col] == 0) ++sel;
        if (sel == mat.size()) continue;
        std::swap(mat[sel], mat[r]);
        for (size_t j = 0; j < mat.size(); ++j)
            if (j != r && mat[j][col])
                for (size_t c = 0; c < ne; ++c) mat[j][c] ^= mat[r][c];
        pivot_col.push_back(static_cast<long long>(col));
        ++r;
    }
    std::vector<std::vector<long long>> gens;
    for (size_t free_col = 0; free_col < ne; ++free_col) {
        if (std::find(pivot_col.begin(), pivot_col.end(), static_cast<long long>(free_col)) != pivot_col.end())
            continue;
        std::vector<long long> g(ne, 0);
        g[free_col] = 1;
        for (size_t i = 0; i < r; ++i)
            if (mat[i][free_col]) g[static_cast<size_t>(pivot_col[i])] = 1;
        gens.push_back(std::move(g));
    }
    for (size_t i = 0; i < ne; ++i) {
        std::vector<long long> g(ne, 0);
        g[i] = 2;
        gens.push_back(std::move(g));
    }

    MatchingData md;
    md.tets = T.tets();
    md.coloring_generators = gens;
    linalg::IntMatrix rows;
    for (const auto& g : gens) {
        auto x = quads_of_coloring(T, g);
        rows.emplace_back(x.begin(), x.end());
    }
    for (int t = 0; t < T.tets(); ++t) {
        std::vector<linalg::Int> v(static_cast<size_t>(3 * T.tets()), 0);
        for (int k = 0; k < 3; ++k) v[static_cast<size_t>(3 * t + k)] = 1;
        rows.push_back(std::move(v));
    }
    md.lattice = linalg::hermite_normal_form(std::move(rows));
    md.pivots = linalg::pivot_columns(md.lattice);
    return md;
}

inline bool is_member(const MatchingData& md, const std::vector<long long>& quads) {
    std::vector<linalg::Int> v(quads.begin(), quads.end());
    return linalg::in_lattice(md.lattice, md.pivots, std::move(v));
}

/**
 * Euler characteristic of the closed surface class with the given quad
 * vector, via a rational triangle completion.  Throws if the arc system has
 * no rational solution for these quads.
 */
inline long long euler_char(const tri::Triangulation& T, const std::vector<std::array<long long, 3>>& quads) {
    using linalg::Rat;
    size_t nt = static_cast<size_t>(T.tets());
    if (quads.size() != nt) throw std::invalid_argument("euler_char: one quad triple per tetrahedron");

    // arc compatibility rows: t_(t,v) - t_(t',sigma v) = q' - q for each face pair corner
    std::vector<std::vector<Rat>> a;
    std::vector<Rat> b;
    std::vector<int> seen(static_cast<size_t>(4 * T.tets()), 0);
    for (int t = 0; t < T.tets(); ++t)
        for (int f = 0; f < 4; ++f) {
            if (seen[static_cast<size_t>(4 * t + f)]) continue;
            const auto& g = T.gluing(t, f);
            seen[static_cast<size_t>(4 * t + f)] = seen[static_cast<size_t>(4 * g.tet + g.face)] = 1;
            for (int v = 0; v < 4; ++v) {
                if (v == f) continue;
                int w = g.perm[static_cast<size_t>(v)];
                std::vector<Rat> row(4 * nt, Rat(0));
                row[static_cast<size_t>(4 * t + v)] += 1;
                row[static_cast<size_t>(4 * g.tet + w)] -= 1;
                Rat rhs = Rat(quads[static_cast<size_t>(g.tet)][static_cast<size_t>(quad_type(w, g.face))]) -
                          Rat(quads[static_cast<size_t>(t)][static_cast<size_t>(quad_type(v, f))]);
                a.push_back(std::move(row));
                b.push_back(rhs);
            }
        }
    auto sol = linalg::solve_rational(std::move(a), std::move(b));
    if (!sol) throw std::domain_error("euler_char: no rational triangle completion exists");
    const auto& tv = *sol;

    Rat triangle_total = 0;
    for (const auto& x : tv) triangle_total += x;
    long long quad_total = 0;
    for (const auto& q : quads) quad_total += q[0] + q[1] + q[2];

    Rat edge_weights = 0;
    for (const auto& e : T.edge_classes()) {
        Rat w;
        bool first = true;
        for (auto [t, ei] : e.incidences) {
            int x = tri::kEdgeVerts[static_cast<size_t>(ei)][0], y = tri::kEdgeVerts[static_cast<size_t>(ei)][1];
            Rat wi = tv[static_cast<size_t>(4 * t + x)] + tv[static_cast<size_t>(4 * t + y)];
            for (int k = 0; k < 3; ++k)
                if (k != tri::kPairOfEdge[static_cast<size_t>(ei)])
                    wi += quads[static_cast<size_t>(t)][static_cast<size_t>(k)];
            if (first) {
                w = wi;
                first = false;
            } else if (w != wi) {
                throw std::logic_error("euler_char: inconsistent edge weights from a solved completion");
            }
        }
        edge_weights += w;
    }

    Rat chi = edge_weights - (Rat(3) * triangle_total + Rat(4) * quad_total) / 2 +
              (triangle_total + Rat(quad_total));
    if (denominator(chi) != 1) throw std::domain_error("euler_char: non-integral characteristic");
    return numerator(chi).convert_to<long long>();
}

namespace detail {

/// All lattice points of the HNF row span inside the box [0, M]^dim.
inline void lattice_points_in_box(const linalg::IntMatrix& hnf, const std::vector<size_t>& pivots,
                                  long long M, std::vector<std::vector<long long>>& out) {
    size_t dim = hnf.empty() ? 0 : hnf[0].size();
    std::vector<linalg::Int> x(dim, 0);
    std::function<void(size_t, size_t)> rec = [&](size_t row, size_t checked_to) {
        if (row == hnf.size()) {
            for (size_t c = checked_to; c < dim; ++c)
                if (x[c] < 0 || x[c] > M) return;
            std::vector<long long> v(dim);
            for (size_t c = 0; c < dim; ++c) v[c] = x[c].convert_to<long long>();
            out.push_back(std::move(v));
            return;
        }
        size_t p = pivots[row];
        for (size_t c = checked_to; c < p; ++c)
            if (x[c] < 0 || x[c] > M) return;
        const linalg::Int& h = hnf[row][p];
        auto floor_div = [](linalg::Int a, const linalg::Int& b) {
            linalg::Int q = a / b;
            if (a % b != 0 && a < 0) --q;
            return q;
        };
        // 0 <= x[p] + y h <= M with h > 0
        linalg::Int lo = -floor_div(x[p], h);
        linalg::Int hi = floor_div(linalg::Int(M) - x[p], h);
        for (linalg::Int y = lo; y <= hi; ++y) {
            if (y == 0) {
                rec(row + 1, p);
                continue;
            }
            std::vector<linalg::Int> saved(x.begin() + static_cast<long>(p), x.end());
            for (size_t c = p; c < dim; ++c) x[c] += y * hnf[row][c];
            rec(row + 1, p);
            std::copy(saved.begin(), saved.end(), x.begin() + static_cast<long>(p));
        }
    };
    rec(0, 0);
}

}  // namespace detail

/**
 * All unpeelable classes whose weight valuation is at most prec2.  The
 * coordinate cutoff is certified empirically: the scan stops once two
 * consecutive coordinate shells contain no class within the precision, and
 * aborts if that never happens below max_coord.
 */
inline std::vector<NormalClass> enumerate_classes(const tri::Triangulation& T, const MatchingData& md,
                                                  long long prec2, long long max_coord = 64) {
    std::vector<NormalClass> found;
    std::set<std::vector<long long>> seen;
    int quiet_shells = 0;
    for (long long M = 0;; ++M) {
        if (M > max_coord) throw std::runtime_error("degree cutoff not certifiable below the coordinate bound");
        std::vector<std::vector<long long>> pts;
        detail::lattice_points_in_box(md.lattice, md.pivots, M, pts);
        bool contributed = false;
        for (auto& v : pts) {
            long long maxc = *std::max_element(v.begin(), v.end());
            if (maxc != M) continue;  // inner points were handled at smaller shells
            bool unpeelable = true;
            std::vector<std::array<long long, 3>> quads(static_cast<size_t>(T.tets()));
            for (int t = 0; t < T.tets(); ++t) {
                auto& q = quads[static_cast<size_t>(t)];
                q = {v[static_cast<size_t>(3 * t)], v[static_cast<size_t>(3 * t + 1)],
                     v[static_cast<size_t>(3 * t + 2)]};
                if (std::min({q[0], q[1], q[2]}) != 0) unpeelable = false;
            }
            if (!unpeelable) continue;
            NormalClass nc;
            nc.quads = quads;
            nc.chi = euler_char(T, quads);
            nc.degree2 = -nc.chi;
            for (auto& q : quads) nc.degree2 += tetindex::nu(q[0], q[1], q[2]);
            if (nc.degree2 > prec2) continue;
            if (!seen.insert(v).second)
                throw std::logic_error("enumerate_classes: duplicate normalized representative");
            found.push_back(std::move(nc));
            contributed = true;
        }
        quiet_shells = contributed ? 0 : quiet_shells + 1;
        if (M > 0 && quiet_shells >= 2) break;
    }
    std::sort(found.begin(), found.end(),
              [](const NormalClass& a, const NormalClass& b) { return a.quads < b.quads; });
    return found;
}

/// Index weight of one class, evaluated through the symmetrized tetrahedron index.
inline QSeries class_weight(const NormalClass& nc, long long prec2) {
    QSeries w = QSeries::monomial((nc.chi % 2 == 0) ? 1 : -1, -nc.chi);
    for (const auto& q : nc.quads) {
        long long nu_q = tetindex::nu(q[0], q[1], q[2]);
        w *= tetindex::j_delta(q[0], q[1], q[2], prec2 - nc.degree2 + nu_q);
    }
    return truncate(w, prec2);
}

/// Generating series of the unpeelable classes: the index at trivial boundary
/// labels, computed without any state sum.
inline QSeries index_series(const tri::Triangulation& T, long long prec2, long long max_coord = 64,
                            unsigned threads = 1) {
    MatchingData md = matching_data(T);
    std::vector<NormalClass> classes = enumerate_classes(T, md, prec2, max_coord);
    QSeries acc = QSeries::zero(prec2);
    if (threads <= 1) {
        for (const auto& nc : classes) acc += class_weight(nc, prec2);
        return acc;
    }
    std::vector<QSeries> parts(threads, QSeries::zero(prec2));
    std::vector<std::thread> pool;
    for (unsigned s = 0; s < threads; ++s)
        pool.emplace_back([&, s] {
            for (size_t i = s; i < classes.size(); i += threads) parts[s] += class_weight(classes[i], prec2);
        });
    for (auto& th : pool) th.join();
    for (const auto& p : parts) acc += p;
    return acc;
}

struct Thm1Report {
    QSeries from_surfaces;
    QSeries from_state_sum;
    long long compared_prec2 = 0;
    bool equal = false;
};

/// Runs both routes and diffs them on their common precision.
inline Thm1Report verify_thm1(const tri::Triangulation& T, long long prec2, long long n_max = 64,
                              long long max_coord = 64, unsigned threads = 1) {
    Thm1Report rep;
    rep.from_surfaces = index_series(T, prec2, max_coord, threads);
    rep.from_state_sum = statesum::fkb_limit(T, prec2, n_max, threads).I_fkb;
    rep.compared_prec2 = std::min(rep.from_surfaces.prec2(), rep.from_state_sum.prec2());
    rep.equal = agree_to(rep.from_surfaces, rep.from_state_sum, rep.compared_prec2);
    return rep;
}

}  // namespace surfaces
}  // namespace spindex
