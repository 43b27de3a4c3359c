#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "spindex/fixtures.hpp"
#include "spindex/triangulation.hpp"

using namespace spindex;
using namespace spindex::tri;

namespace {

// Random face pairings with random odd permutations; most are rejected by the
// parser, the survivors are valid oriented triangulations with torus links.
std::vector<Triangulation> random_valid(int tets, int want, std::mt19937& rng) {
    std::vector<std::array<int, 4>> odd;
    std::array<int, 4> p = {0, 1, 2, 3};
    do {
        if (perm_is_odd(p)) odd.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));

    std::vector<Triangulation> out;
    int faces = 4 * tets;
    std::vector<int> slots(static_cast<size_t>(faces));
    std::iota(slots.begin(), slots.end(), 0);
    while (static_cast<int>(out.size()) < want) {
        std::shuffle(slots.begin(), slots.end(), rng);
        nlohmann::json doc;
        doc["tets"] = tets;
        auto arr = nlohmann::json::array();
        bool ok = true;
        for (int i = 0; i < faces; i += 2) {
            int s0 = slots[static_cast<size_t>(i)], s1 = slots[static_cast<size_t>(i + 1)];
            int f0 = s0 % 4, f1 = s1 % 4;
            std::vector<std::array<int, 4>> cand;
            for (auto& q : odd)
                if (q[static_cast<size_t>(f0)] == f1) cand.push_back(q);
            if (s0 / 4 == s1 / 4 && f0 == f1) {
                ok = false;
                break;
            }
            auto& q = cand[std::uniform_int_distribution<size_t>(0, cand.size() - 1)(rng)];
            arr.push_back({s0 / 4, f0, s1 / 4, f1, q});
        }
        if (!ok) continue;
        doc["gluings"] = arr;
        try {
            out.push_back(Triangulation::parse(doc));
        } catch (const std::exception&) {
        }
    }
    return out;
}

}  // namespace

TEST_CASE("figure-eight fixtures") {
    Triangulation two = load_fixture("fig8-2tet");
    CHECK(two.tets() == 2);
    CHECK(two.edge_classes().size() == 2);
    CHECK(two.face_class_count() == 4);
    CHECK(two.cusps() == 1);
    for (const auto& e : two.edge_classes()) CHECK(e.incidences.size() == 6);

    Triangulation three = load_fixture("fig8-3tet");
    CHECK(three.tets() == 3);
    CHECK(three.edge_classes().size() == 3);
    CHECK(three.face_class_count() == 6);
    CHECK(three.cusps() == 1);

    CHECK_THROWS_AS(load_fixture("no-such-fixture"), std::invalid_argument);
}

TEST_CASE("parse errors are structured") {
    auto parse = [](const std::string& s) { return Triangulation::parse(s); };
    // dangling face
    CHECK_THROWS_WITH(parse(R"({"tets":2,"gluings":[[0,0,1,0,[0,1,3,2]]]})"),
                      Catch::Matchers::ContainsSubstring("unglued face"));
    // face glued to itself
    CHECK_THROWS_WITH(parse(R"({"tets":1,"gluings":[[0,0,0,0,[0,1,3,2]],[0,1,0,1,[1,0,2,3]]]})"),
                      Catch::Matchers::ContainsSubstring("glued to itself"));
    // inconsistent permutation (does not map face to target face)
    CHECK_THROWS_WITH(parse(R"({"tets":2,"gluings":[[0,0,1,1,[0,1,3,2]]]})"),
                      Catch::Matchers::ContainsSubstring("target face"));
    // orientation-violating (even) permutation
    CHECK_THROWS_WITH(parse(R"({"tets":2,"gluings":[[0,0,1,0,[0,1,2,3]]]})"),
                      Catch::Matchers::ContainsSubstring("orientation"));
    // conflicting double listing
    CHECK_THROWS_WITH(
        parse(R"({"tets":2,"gluings":[[0,0,1,0,[0,1,3,2]],[0,0,1,0,[0,2,1,3]]]})"),
        Catch::Matchers::ContainsSubstring("conflicting"));
}

TEST_CASE("round trip through the document format") {
    for (const char* name : {"fig8-2tet", "fig8-3tet"}) {
        Triangulation a = load_fixture(name);
        Triangulation b = Triangulation::parse(a.to_json());
        CHECK(a.to_json() == b.to_json());
        CHECK(a.edge_classes().size() == b.edge_classes().size());
    }
}

TEST_CASE("incidence counting on random valid triangulations") {
    std::mt19937 rng(2024);
    for (int tets : {2, 3}) {
        for (auto& T : random_valid(tets, 8, rng)) {
            size_t total = 0;
            for (const auto& e : T.edge_classes()) total += e.incidences.size();
            CHECK(total == static_cast<size_t>(6 * T.tets()));
            CHECK(T.face_class_count() == 2 * T.tets());
            // torus boundary forces as many edge classes as tetrahedra
            CHECK(T.edge_classes().size() == static_cast<size_t>(T.tets()));
            Triangulation again = Triangulation::parse(T.to_json());
            CHECK(again.to_json() == T.to_json());
        }
    }
}

TEST_CASE("coloring admissibility") {
    Triangulation two = load_fixture("fig8-2tet");
    CHECK(two.coloring_admissible({0, 0}));
    // each face triple of the 2-tet fixture mixes the two classes; a parity
    // violating assignment must be rejected
    bool some_rejected = false;
    for (long long x = 0; x <= 2; ++x)
        for (long long y = 0; y <= 2; ++y)
            if (!two.coloring_admissible({x, y})) some_rejected = true;
    CHECK(some_rejected);

    // spot check one face triple directly
    auto triple = two.face_triples().front();
    std::vector<long long> c(2, 0);
    c[static_cast<size_t>(triple[0])] = 1;
    CHECK_FALSE(two.coloring_admissible(c));
}

TEST_CASE("six colors pick up opposite pairs") {
    Triangulation two = load_fixture("fig8-2tet");
    std::vector<long long> c = {1, 2};
    for (int t = 0; t < two.tets(); ++t) {
        blocks::SixColors s = two.six_colors(t, c);
        auto w = blocks::edges_from_six(s);
        // slot layout: (a,d), (b,c), (e,f) sit on opposite edge pairs
        CHECK(w[0] == c[static_cast<size_t>(two.edge_class(t, 0))]);
        CHECK(w[5] == c[static_cast<size_t>(two.edge_class(t, 5))]);
        CHECK(s.a == c[static_cast<size_t>(two.edge_class(t, 5))]);
        CHECK(s.d == c[static_cast<size_t>(two.edge_class(t, 0))]);
    }
}
