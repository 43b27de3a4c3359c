// Small exact integer/rational linear algebra: Hermite normal form for
// lattice membership and Gaussian elimination over the rationals.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <vector>

namespace spindex {
namespace linalg {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using IntMatrix = std::vector<std::vector<Int>>;

/// Row-style Hermite normal form: returns rows with strictly increasing pivot
/// columns, positive pivots, entries above each pivot reduced into [0, pivot),
/// and zero rows dropped.
inline IntMatrix hermite_normal_form(IntMatrix m) {
    if (m.empty()) return m;
    size_t cols = m[0].size();
    size_t r = 0;
    for (size_t col = 0; col < cols && r < m.size(); ++col) {
        // euclidean elimination below row r
        for (size_t j = r + 1; j < m.size(); ++j) {
            while (m[j][col] != 0) {
                if (m[r][col] == 0 || abs(m[j][col]) < abs(m[r][col])) std::swap(m[r], m[j]);
                if (m[j][col] == 0) break;
                Int q = m[j][col] / m[r][col];
                for (size_t c = col; c < cols; ++c) m[j][c] -= q * m[r][c];
            }
        }
        if (m[r][col] == 0) continue;
        if (m[r][col] < 0)
            for (size_t c = col; c < cols; ++c) m[r][c] = -m[r][c];
        for (size_t k = 0; k < r; ++k) {
            Int q = m[k][col] / m[r][col];
            if (m[k][col] < 0 && m[k][col] % m[r][col] != 0) q -= 1;
            if (q != 0)
                for (size_t c = col; c < cols; ++c) m[k][c] -= q * m[r][c];
        }
        ++r;
    }
    m.resize(r);
    return m;
}

inline std::vector<size_t> pivot_columns(const IntMatrix& hnf) {
    std::vector<size_t> p;
    for (const auto& row : hnf) {
        size_t c = 0;
        while (c < row.size() && row[c] == 0) ++c;
        p.push_back(c);
    }
    return p;
}

/// Does v lie in the integer row span of the HNF basis?
inline bool in_lattice(const IntMatrix& hnf, const std::vector<size_t>& pivots, std::vector<Int> v) {
    for (size_t i = 0; i < hnf.size(); ++i) {
        size_t p = pivots[i];
        if (v[p] % hnf[i][p] != 0) return false;
        Int q = v[p] / hnf[i][p];
        if (q != 0)
            for (size_t c = p; c < v.size(); ++c) v[c] -= q * hnf[i][c];
    }
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

/// One solution of Ax = b over the rationals, or nullopt if inconsistent.
/// Free variables are set to zero.
inline std::optional<std::vector<Rat>> solve_rational(std::vector<std::vector<Rat>> a,
                                                      std::vector<Rat> b) {
    size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::vector<size_t> pivot_of_row;
    size_t r = 0;
    for (size_t col = 0; col < cols && r < rows; ++col) {
        size_t sel = r;
        while (sel < rows && a[sel][col] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(a[sel], a[r]);
        std::swap(b[sel], b[r]);
        for (size_t j = 0; j < rows; ++j) {
            if (j == r || a[j][col] == 0) continue;
            Rat f = a[j][col] / a[r][col];
            for (size_t c = col; c < cols; ++c) a[j][c] -= f * a[r][c];
            b[j] -= f * b[r];
        }
        pivot_of_row.push_back(col);
        ++r;
    }
    for (size_t j = r; j < rows; ++j)
        if (b[j] != 0) return std::nullopt;
    std::vector<Rat> x(cols, Rat(0));
    for (size_t i = 0; i < r; ++i) x[pivot_of_row[i]] = b[i] / a[i][pivot_of_row[i]];
    return x;
}

}  // namespace linalg
}  // namespace spindex
