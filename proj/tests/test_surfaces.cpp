#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "spindex/fixtures.hpp"
#include "spindex/surfaces.hpp"

using namespace spindex;
using namespace spindex::surfaces;

namespace {

QSeries series_q(std::initializer_list<long long> cs, long long prec2) {
    QSeries f = QSeries::zero(prec2);
    long long e = 0;
    for (long long c : cs) {
        f += QSeries::monomial(c, e, prec2);
        e += 2;
    }
    return f;
}

}  // namespace

TEST_CASE("matching data membership") {
    auto T = tri::load_fixture("fig8-2tet");
    MatchingData md = matching_data(T);

    CHECK(is_member(md, {0, 0, 0, 0, 0, 0}));
    // tetrahedral vectors act trivially
    CHECK(is_member(md, {1, 1, 1, 0, 0, 0}));
    CHECK(is_member(md, {1, 1, 1, 1, 1, 1}));
    // images of parity-admissible colorings are members
    for (const auto& g : md.coloring_generators) CHECK(is_member(md, quads_of_coloring(T, g)));
}

TEST_CASE("membership against a bounded solver") {
    auto T = tri::load_fixture("fig8-2tet");
    MatchingData md = matching_data(T);

    // independent route: exhaust small integer combinations of the generators
    auto brute_member = [&](const std::vector<long long>& v) {
        std::vector<std::vector<long long>> gens;
        for (const auto& g : md.coloring_generators) gens.push_back(quads_of_coloring(T, g));
        for (int t = 0; t < T.tets(); ++t) {
            std::vector<long long> u(static_cast<size_t>(3 * T.tets()), 0);
            for (int k = 0; k < 3; ++k) u[static_cast<size_t>(3 * t + k)] = 1;
            gens.push_back(u);
        }
        const int B = 6;
        std::vector<int> y(gens.size(), -B);
        while (true) {
            std::vector<long long> acc(v.size(), 0);
            for (size_t i = 0; i < gens.size(); ++i)
                for (size_t c = 0; c < v.size(); ++c) acc[c] += y[i] * gens[i][c];
            if (acc == v) return true;
            size_t i = 0;
            while (i < y.size() && y[i] == B) y[i++] = -B;
            if (i == y.size()) return false;
            ++y[i];
        }
    };

    long long agree = 0, members = 0;
    for (long long a = 0; a <= 2; ++a)
        for (long long b = 0; b <= 2; ++b)
            for (long long c = 0; c <= 2; ++c)
                for (long long d = 0; d <= 2; ++d)
                    for (long long e = 0; e <= 2; ++e)
                        for (long long f = 0; f <= 2; ++f) {
                            std::vector<long long> v = {a, b, c, d, e, f};
                            bool lhs = is_member(md, v);
                            bool rhs = brute_member(v);
                            if (lhs == rhs) ++agree;
                            if (lhs) ++members;
                        }
    CHECK(agree == 729);
    CHECK(members > 0);
    CHECK(members < 729);  // random vectors are rejected
}

TEST_CASE("euler characteristic") {
    auto T = tri::load_fixture("fig8-2tet");
    // empty surface
    CHECK(euler_char(T, {{0, 0, 0}, {0, 0, 0}}) == 0);
    // adding one tetrahedral vector drops chi by one
    MatchingData md = matching_data(T);
    std::vector<std::vector<long long>> pts;
    for (long long M = 0; M <= 3; ++M) {
        pts.clear();
        surfaces::detail::lattice_points_in_box(md.lattice, md.pivots, M, pts);
        for (const auto& v : pts) {
            std::vector<std::array<long long, 3>> q = {{v[0], v[1], v[2]}, {v[3], v[4], v[5]}};
            long long chi = euler_char(T, q);
            std::vector<std::array<long long, 3>> q_shift = q;
            for (int k = 0; k < 3; ++k) q_shift[0][static_cast<size_t>(k)] += 1;
            CHECK(euler_char(T, q_shift) == chi - 1);
        }
    }
}

TEST_CASE("class enumeration on the two-tetrahedron fixture") {
    auto T = tri::load_fixture("fig8-2tet");
    MatchingData md = matching_data(T);

    auto zero_only = enumerate_classes(T, md, 0);
    REQUIRE(zero_only.size() == 1);
    CHECK(zero_only[0].quads == std::vector<std::array<long long, 3>>{{0, 0, 0}, {0, 0, 0}});
    CHECK(zero_only[0].chi == 0);

    // count per degree is stable under a larger coordinate bound
    auto classes = enumerate_classes(T, md, 11);
    auto classes_wide = enumerate_classes(T, md, 11, 128);
    CHECK(classes.size() == classes_wide.size());

    // unpeelable representatives are unique and all pass membership
    std::set<std::vector<long long>> reps;
    for (const auto& nc : classes) {
        std::vector<long long> v;
        for (auto& q : nc.quads) v.insert(v.end(), q.begin(), q.end());
        CHECK(is_member(md, v));
        CHECK(reps.insert(v).second);
        long long m = 1;
        for (auto& q : nc.quads) m = std::min(m, std::min({q[0], q[1], q[2]}));
        CHECK(m == 0);
    }
}

TEST_CASE("index weights match through both tetrahedron index forms") {
    auto T = tri::load_fixture("fig8-2tet");
    MatchingData md = matching_data(T);
    const long long prec2 = 13;
    for (const auto& nc : enumerate_classes(T, md, prec2)) {
        QSeries via_delta = class_weight(nc, prec2);
        std::vector<std::array<long long, 3>> quads(nc.quads.begin(), nc.quads.end());
        QSeries via_fkb = tetindex::e_infty(quads, nc.chi, prec2);
        CHECK(truncate(via_delta, prec2) == truncate(via_fkb, prec2));
    }
}

TEST_CASE("figure-eight index series from normal surfaces") {
    const long long prec2 = 13;
    auto T2 = tri::load_fixture("fig8-2tet");
    QSeries idx2 = index_series(T2, prec2);
    CHECK(idx2 == series_q({1, -2, -3, 2, 8, 18, 18}, prec2));

    auto T3 = tri::load_fixture("fig8-3tet");
    QSeries idx3 = index_series(T3, prec2);
    CHECK(idx3 == idx2);
}

TEST_CASE("both routes agree") {
    for (const char* name : {"fig8-2tet", "fig8-3tet"}) {
        auto T = tri::load_fixture(name);
        Thm1Report rep = verify_thm1(T, 11);
        CHECK(rep.equal);
        CHECK(rep.compared_prec2 >= 11);
    }
}

TEST_CASE("threaded summation is identical") {
    auto T = tri::load_fixture("fig8-2tet");
    CHECK(index_series(T, 11, 64, 1) == index_series(T, 11, 64, 4));
}
