#pragma once

#include <cstdlib>

#include "crepant/matrix.hpp"

namespace crepant {

/// Smith normal form u*a*v = d with u, v unimodular and d diagonal,
/// d(i,i) >= 0 and d(i,i) | d(i+1,i+1).
struct SmithResult {
    Mat<Int> u; // rows x rows
    Mat<Int> d; // rows x cols, diagonal
    Mat<Int> v; // cols x cols
    size_t rank = 0;
};

namespace detail {

inline Int int_abs(const Int& x) { return x < 0 ? Int(-x) : x; }

} // namespace detail

inline SmithResult smith_normal_form(const Mat<Int>& a) {
    const size_t m = a.rows(), n = a.cols();
    SmithResult res;
    res.u = Mat<Int>::identity(m);
    res.v = Mat<Int>::identity(n);
    res.d = a;
    Mat<Int>& d = res.d;

    auto add_row = [&](size_t dst, size_t src, const Int& f) {
        for (size_t j = 0; j < n; ++j) d(dst, j) += f * d(src, j);
        for (size_t j = 0; j < m; ++j) res.u(dst, j) += f * res.u(src, j);
    };
    auto add_col = [&](size_t dst, size_t src, const Int& f) {
        for (size_t i = 0; i < m; ++i) d(i, dst) += f * d(i, src);
        for (size_t i = 0; i < n; ++i) res.v(i, dst) += f * res.v(i, src);
    };
    auto swap_row = [&](size_t x, size_t y) {
        d.swap_rows(x, y);
        res.u.swap_rows(x, y);
    };
    auto swap_col = [&](size_t x, size_t y) {
        d.swap_cols(x, y);
        res.v.swap_cols(x, y);
    };
    auto negate_row = [&](size_t x) {
        for (size_t j = 0; j < n; ++j) d(x, j) = -d(x, j);
        for (size_t j = 0; j < m; ++j) res.u(x, j) = -res.u(x, j);
    };

    size_t t = 0;
    while (t < m && t < n) {
        // deterministic pivot: smallest |entry| != 0, ties by row then column
        size_t pi = m, pj = n;
        for (size_t i = t; i < m; ++i)
            for (size_t j = t; j < n; ++j) {
                if (d(i, j) == 0) continue;
                if (pi == m || detail::int_abs(d(i, j)) < detail::int_abs(d(pi, pj))) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi == m) break; // rest is zero
        swap_row(t, pi);
        swap_col(t, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = t + 1; i < m; ++i) {
                if (d(i, t) == 0) continue;
                Int q = d(i, t) / d(t, t);
                if (q != 0) add_row(i, t, -q);
                if (d(i, t) != 0) { // remainder strictly smaller: make it the pivot
                    swap_row(t, i);
                    clean = false;
                }
            }
            for (size_t j = t + 1; j < n; ++j) {
                if (d(t, j) == 0) continue;
                Int q = d(t, j) / d(t, t);
                if (q != 0) add_col(j, t, -q);
                if (d(t, j) != 0) {
                    swap_col(t, j);
                    clean = false;
                }
            }
        }

        // enforce the divisibility chain
        bool divides_all = true;
        for (size_t i = t + 1; i < m && divides_all; ++i)
            for (size_t j = t + 1; j < n; ++j) {
                if (d(i, j) % d(t, t) != 0) {
                    add_row(t, i, Int(1));
                    divides_all = false;
                    break;
                }
            }
        if (!divides_all) continue; // redo this t with the new row mixed in

        if (d(t, t) < 0) negate_row(t);
        ++t;
    }
    res.rank = t;
    return res;
}

} // namespace crepant
