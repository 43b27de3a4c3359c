/**
 * @file triangulation.hpp
 * @brief Ideal triangulations: tetrahedra with face gluings, the derived edge,
 *        face and vertex classes, and the coloring interface used by the state
 *        sums.
 *
 * Document format (JSON): {"tets": t, "gluings": [[tet, face, tet', face',
 * [p0,p1,p2,p3]], ...]}.  A gluing maps face `face` of `tet` (the triangle
 * missing vertex `face`) to face `face'` of `tet'` through the vertex
 * permutation p, with p[face] == face'.  Each gluing may be listed once or
 * with its inverse; every face must end up glued exactly once.
 */

#pragma once

#include <json.hpp>

#include <array>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "blocks.hpp"

namespace spindex {
namespace tri {

/// Tetrahedron edges indexed 0..5 in lexicographic vertex order.
inline constexpr std::array<std::array<int, 2>, 6> kEdgeVerts = {{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

inline int edge_index(int i, int j) {
    if (i > j) std::swap(i, j);
    static constexpr int tbl[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    int e = tbl[i][j];
    if (e < 0) throw std::invalid_argument("edge_index: degenerate vertex pair");
    return e;
}

/// Opposite edge (01<->23, 02<->13, 03<->12).
inline int opposite_edge(int e) { return 5 - e; }

/// Quadrilateral type separating the vertex pair of edge e from its opposite:
/// type 0 = 01|23, type 1 = 02|13, type 2 = 03|12.
inline constexpr std::array<int, 6> kPairOfEdge = {0, 1, 2, 2, 1, 0};

struct FaceGluing {
    int tet = -1;
    int face = -1;
    std::array<int, 4> perm{};  // vertex map into the target tetrahedron
};

struct EdgeClass {
    int id = 0;
    std::vector<std::pair<int, int>> incidences;  // (tet, edge 0..5)
};

class Triangulation;

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

}  // namespace detail

class Triangulation {
public:
    static Triangulation parse(const nlohmann::json& doc);
    static Triangulation parse(const nlohmann::ordered_json& doc) { return parse(nlohmann::json(doc)); }
    static Triangulation parse(const std::string& text) { return parse(nlohmann::json::parse(text)); }

    int tets() const { return t_; }
    const FaceGluing& gluing(int tet, int face) const { return gluing_.at(static_cast<size_t>(4 * tet + face)); }

    int edge_class(int tet, int edge) const { return edge_class_.at(static_cast<size_t>(6 * tet + edge)); }
    const std::vector<EdgeClass>& edge_classes() const { return edge_classes_; }
    int face_class(int tet, int face) const { return face_class_.at(static_cast<size_t>(4 * tet + face)); }
    int face_class_count() const { return face_class_count_; }
    int cusps() const { return cusp_count_; }

    /// Edge-class ids of the three edges of each face class (one representative).
    const std::vector<std::array<int, 3>>& face_triples() const { return face_triples_; }

    /// Colors of the six edges of a tetrahedron in the tetrahedral-network
    /// slot order, given a coloring of the edge classes.
    blocks::SixColors six_colors(int tet, const std::vector<long long>& coloring) const {
        std::array<long long, 6> w{};
        for (int e = 0; e < 6; ++e) w[static_cast<size_t>(e)] = coloring.at(static_cast<size_t>(edge_class(tet, e)));
        return blocks::six_from_edges(w);
    }

    bool coloring_admissible(const std::vector<long long>& coloring) const {
        for (const auto& tr : face_triples_)
            if (!blocks::is_admissible(coloring.at(static_cast<size_t>(tr[0])),
                                       coloring.at(static_cast<size_t>(tr[1])),
                                       coloring.at(static_cast<size_t>(tr[2]))))
                return false;
        return true;
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json doc;
        doc["tets"] = t_;
        auto arr = nlohmann::ordered_json::array();
        for (int t = 0; t < t_; ++t)
            for (int f = 0; f < 4; ++f) {
                const FaceGluing& g = gluing(t, f);
                if (std::make_pair(t, f) < std::make_pair(g.tet, g.face))
                    arr.push_back({t, f, g.tet, g.face, g.perm});
            }
        doc["gluings"] = std::move(arr);
        return doc;
    }

private:
    Triangulation() = default;

    void derive();

    int t_ = 0;
    std::vector<FaceGluing> gluing_;
    std::vector<int> edge_class_;
    std::vector<EdgeClass> edge_classes_;
    std::vector<int> face_class_;
    int face_class_count_ = 0;
    std::vector<std::array<int, 3>> face_triples_;
    int cusp_count_ = 0;
};

inline bool perm_is_odd(const std::array<int, 4>& p) {
    int inv = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (p[static_cast<size_t>(i)] > p[static_cast<size_t>(j)]) ++inv;
    return inv % 2 == 1;
}

inline Triangulation Triangulation::parse(const nlohmann::json& doc) {
    Triangulation tr;
    tr.t_ = doc.at("tets").get<int>();
    if (tr.t_ <= 0) throw std::runtime_error("triangulation: tetrahedron count must be positive");
    tr.gluing_.assign(static_cast<size_t>(4 * tr.t_), FaceGluing{});

    auto describe = [](int t, int f) { return "tetrahedron " + std::to_string(t) + " face " + std::to_string(f); };

    for (const auto& g : doc.at("gluings")) {
        int t0 = g.at(0).get<int>(), f0 = g.at(1).get<int>();
        int t1 = g.at(2).get<int>(), f1 = g.at(3).get<int>();
        std::array<int, 4> p{};
        for (int i = 0; i < 4; ++i) p[static_cast<size_t>(i)] = g.at(4).at(static_cast<size_t>(i)).get<int>();

        for (int idx : {t0, t1})
            if (idx < 0 || idx >= tr.t_) throw std::runtime_error("triangulation: tetrahedron index out of range");
        for (int idx : {f0, f1})
            if (idx < 0 || idx > 3) throw std::runtime_error("triangulation: face index out of range");
        std::array<bool, 4> seen{};
        for (int v : p) {
            if (v < 0 || v > 3 || seen[static_cast<size_t>(v)])
                throw std::runtime_error("triangulation: invalid permutation at " + describe(t0, f0));
            seen[static_cast<size_t>(v)] = true;
        }
        if (p[static_cast<size_t>(f0)] != f1)
            throw std::runtime_error("triangulation: permutation does not map " + describe(t0, f0) +
                                     " onto the target face");
        if (t0 == t1 && f0 == f1) throw std::runtime_error("triangulation: face glued to itself at " + describe(t0, f0));
        if (!perm_is_odd(p))
            throw std::runtime_error("triangulation: orientation-violating gluing at " + describe(t0, f0));

        std::array<int, 4> pinv{};
        for (int i = 0; i < 4; ++i) pinv[static_cast<size_t>(p[static_cast<size_t>(i)])] = i;

        auto set = [&](int t, int f, int tt, int tf, const std::array<int, 4>& q) {
            FaceGluing& slot = tr.gluing_[static_cast<size_t>(4 * t + f)];
            FaceGluing want{tt, tf, q};
            if (slot.tet >= 0) {
                if (slot.tet != want.tet || slot.face != want.face || slot.perm != want.perm)
                    throw std::runtime_error("triangulation: conflicting gluings at " + describe(t, f));
            } else {
                slot = want;
            }
        };
        set(t0, f0, t1, f1, p);
        set(t1, f1, t0, f0, pinv);
    }

    for (int t = 0; t < tr.t_; ++t)
        for (int f = 0; f < 4; ++f)
            if (tr.gluing_[static_cast<size_t>(4 * t + f)].tet < 0)
                throw std::runtime_error("triangulation: unglued face at " + describe(t, f));

    tr.derive();
    return tr;
}

inline void Triangulation::derive() {
    // edge classes: orbits of (tet, edge) under the face identifications
    detail::UnionFind edges(static_cast<size_t>(6 * t_));
    detail::UnionFind corners(static_cast<size_t>(4 * t_));
    for (int t = 0; t < t_; ++t)
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = gluing(t, f);
            for (int i = 0; i < 4; ++i) {
                if (i == f) continue;
                corners.unite(4 * t + i, 4 * g.tet + g.perm[static_cast<size_t>(i)]);
                for (int j = i + 1; j < 4; ++j) {
                    if (j == f) continue;
                    int e = edge_index(i, j);
                    int ei = edge_index(g.perm[static_cast<size_t>(i)], g.perm[static_cast<size_t>(j)]);
                    edges.unite(6 * t + e, 6 * g.tet + ei);
                }
            }
        }

    edge_class_.assign(static_cast<size_t>(6 * t_), -1);
    std::map<int, int> root_to_id;
    for (int x = 0; x < 6 * t_; ++x) {
        int r = edges.find(x);
        auto [it, inserted] = root_to_id.try_emplace(r, static_cast<int>(root_to_id.size()));
        edge_class_[static_cast<size_t>(x)] = it->second;
        (void)inserted;
    }
    edge_classes_.assign(root_to_id.size(), EdgeClass{});
    for (int x = 0; x < 6 * t_; ++x) {
        int id = edge_class_[static_cast<size_t>(x)];
        edge_classes_[static_cast<size_t>(id)].id = id;
        edge_classes_[static_cast<size_t>(id)].incidences.emplace_back(x / 6, x % 6);
    }

    // face classes: glued pairs
    face_class_.assign(static_cast<size_t>(4 * t_), -1);
    face_class_count_ = 0;
    for (int t = 0; t < t_; ++t)
        for (int f = 0; f < 4; ++f) {
            if (face_class_[static_cast<size_t>(4 * t + f)] >= 0) continue;
            const FaceGluing& g = gluing(t, f);
            face_class_[static_cast<size_t>(4 * t + f)] = face_class_count_;
            face_class_[static_cast<size_t>(4 * g.tet + g.face)] = face_class_count_;
            std::array<int, 3> triple{};
            int k = 0;
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j) {
                    if (i == f || j == f) continue;
                    triple[static_cast<size_t>(k++)] = edge_class(t, edge_index(i, j));
                }
            face_triples_.push_back(triple);
            ++face_class_count_;
        }

    // cusps and their link surfaces; each link must be a torus
    std::map<int, int> cusp_id;
    for (int x = 0; x < 4 * t_; ++x) {
        int r = corners.find(x);
        cusp_id.try_emplace(r, static_cast<int>(cusp_id.size()));
    }
    cusp_count_ = static_cast<int>(cusp_id.size());

    // link vertices: orbits of (tet, corner vertex, other edge endpoint)
    detail::UnionFind linkverts(static_cast<size_t>(16 * t_));  // index 16*t + 4*w + x
    for (int t = 0; t < t_; ++t)
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = gluing(t, f);
            for (int w = 0; w < 4; ++w) {
                if (w == f) continue;
                for (int x = 0; x < 4; ++x) {
                    if (x == f || x == w) continue;
                    linkverts.unite(16 * t + 4 * w + x,
                                    16 * g.tet + 4 * g.perm[static_cast<size_t>(w)] + g.perm[static_cast<size_t>(x)]);
                }
            }
        }
    std::map<int, int> lv_cusp;  // link-vertex root -> cusp id
    for (int t = 0; t < t_; ++t)
        for (int w = 0; w < 4; ++w)
            for (int x = 0; x < 4; ++x) {
                if (x == w) continue;
                lv_cusp[linkverts.find(16 * t + 4 * w + x)] =
                    cusp_id.at(corners.find(4 * t + w));
            }
    std::vector<long long> link_V(static_cast<size_t>(cusp_count_), 0), link_F(static_cast<size_t>(cusp_count_), 0);
    for (auto& [root, cusp] : lv_cusp) link_V[static_cast<size_t>(cusp)]++;
    for (int x = 0; x < 4 * t_; ++x) link_F[static_cast<size_t>(cusp_id.at(corners.find(x)))]++;
    for (int c = 0; c < cusp_count_; ++c) {
        if (link_F[static_cast<size_t>(c)] * 3 % 2 != 0)
            throw std::runtime_error("triangulation: vertex link is not closed");
        long long chi = link_V[static_cast<size_t>(c)] - link_F[static_cast<size_t>(c)] / 2;
        if (chi != 0)
            throw std::runtime_error("triangulation: vertex link is not a torus (chi = " + std::to_string(chi) + ")");
    }
}

}  // namespace tri
}  // namespace spindex
