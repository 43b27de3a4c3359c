// Embedded triangulation fixtures for the figure-eight knot complement.
//
// fig8-2tet is the standard two-tetrahedron ideal triangulation (isometry
// signature cPcbbbiht); fig8-3tet is the three-tetrahedron triangulation
// obtained from it by a 2-3 move across one face pair.  Both tables were
// generated offline and are pinned by the stabilized series tests; regenerate
// and cross-check against an independent triangulation tool (SnapPy or
// Regina) before any release that touches them.  1-efficiency of both
// triangulations is an input assumption, not verified here.

#pragma once

#include <string>

#include "triangulation.hpp"

namespace spindex {
namespace tri {

inline const char* kFig8TwoTet =
    R"({"tets":2,"gluings":[[0,0,1,0,[0,1,3,2]],[0,1,1,1,[2,1,0,3]],[0,2,1,2,[0,3,2,1]],[0,3,1,3,[1,0,2,3]]]})";

inline const char* kFig8ThreeTet =
    R"({"tets":3,"gluings":[[0,2,1,3,[0,1,3,2]],[1,2,2,3,[0,1,3,2]],[2,2,0,3,[0,1,3,2]],)"
    R"([0,1,0,0,[3,0,1,2]],[1,1,2,0,[1,0,2,3]],[2,1,1,0,[3,0,1,2]]]})";

/// Fixture lookup by name; returns nullptr for unknown names.
inline const char* fixture_document(const std::string& name) {
    if (name == "fig8-2tet") return kFig8TwoTet;
    if (name == "fig8-3tet") return kFig8ThreeTet;
    return nullptr;
}

/// Loads a named fixture, or parses `name` as a file path otherwise.
inline Triangulation load_fixture(const std::string& name) {
    const char* doc = fixture_document(name);
    if (!doc) throw std::invalid_argument("unknown fixture: " + name);
    return Triangulation::parse(std::string(doc));
}

}  // namespace tri
}  // namespace spindex
