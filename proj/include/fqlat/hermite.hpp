#pragma once

#include "matrix.hpp"

namespace fqlat {

struct HermiteResult {
    MatR H;  // canonical column echelon form, one per column span over R
    MatR U;  // unimodular with H = B * U
    std::vector<int> pivot_rows;
};

// Canonical column Hermite form over F_q[Y]: column operations only, monic
// pivots at the topmost possible rows, entries left of a pivot in its row
// reduced to degree < deg(pivot).  Requires full column rank over K.
inline HermiteResult hermite_form(const MatR& B) {
    const Fq& F = B.at(0, 0).field();
    int D = B.rows(), d = B.cols();
    MatR H = B;
    MatR U = matR_identity(F, d);
    auto col_sub = [&](int dst, int src, const Poly& f) {  // col dst -= f * col src
        for (int i = 0; i < D; ++i) H.at(i, dst) = H.at(i, dst) - f * H.at(i, src);
        for (int i = 0; i < d; ++i) U.at(i, dst) = U.at(i, dst) - f * U.at(i, src);
    };
    auto col_swap = [&](int a, int b) {
        if (a == b) return;
        for (int i = 0; i < D; ++i) std::swap(H.at(i, a), H.at(i, b));
        for (int i = 0; i < d; ++i) std::swap(U.at(i, a), U.at(i, b));
    };
    auto col_scale = [&](int c, FqElem s) {
        for (int i = 0; i < D; ++i) H.at(i, c) = H.at(i, c).scale(s);
        for (int i = 0; i < d; ++i) U.at(i, c) = U.at(i, c).scale(s);
    };

    std::vector<int> pivots;
    int cur = 0;
    for (int r = 0; r < D && cur < d; ++r) {
        // reduce the active columns against each other at row r until one survives
        while (true) {
            int best = -1;
            for (int c = cur; c < d; ++c)
                if (!H.at(r, c).is_zero() && (best < 0 || H.at(r, c).deg() < H.at(r, best).deg()))
                    best = c;
            if (best < 0) break;
            bool again = false;
            for (int c = cur; c < d; ++c) {
                if (c == best || H.at(r, c).is_zero()) continue;
                col_sub(c, best, H.at(r, c) / H.at(r, best));
                if (!H.at(r, c).is_zero()) again = true;
            }
            if (!again) {
                col_swap(cur, best == cur ? cur : best);
                break;
            }
        }
        if (H.at(r, cur).is_zero()) continue;
        col_scale(cur, F.inv(H.at(r, cur).lc()));
        // reduce earlier columns at this pivot row
        for (int c = 0; c < cur; ++c)
            if (!H.at(r, c).is_zero() && H.at(r, c).deg() >= H.at(r, cur).deg())
                col_sub(c, cur, H.at(r, c) / H.at(r, cur));
        pivots.push_back(r);
        ++cur;
    }
    if (cur < d) throw std::invalid_argument("hermite_form: rank deficient");
    return {H, U, pivots};
}

struct SmithResult {
    std::vector<Poly> factors;  // monic invariant factors s_1 | s_2 | ...
    MatR L, R;                  // unimodular, L * B * R = diag(factors)
    MatR Linv;                  // inverse of L, accumulated alongside
};

// Smith normal form over the PID F_q[Y].
inline SmithResult smith_form(const MatR& B) {
    const Fq& F = B.at(0, 0).field();
    int m = B.rows(), n = B.cols();
    MatR A = B;
    MatR L = matR_identity(F, m), Li = matR_identity(F, m), R = matR_identity(F, n);
    auto row_sub = [&](int dst, int src, const Poly& f) {
        for (int j = 0; j < n; ++j) A.at(dst, j) = A.at(dst, j) - f * A.at(src, j);
        for (int j = 0; j < m; ++j) L.at(dst, j) = L.at(dst, j) - f * L.at(src, j);
        for (int i = 0; i < m; ++i) Li.at(i, src) = Li.at(i, src) + f * Li.at(i, dst);
    };
    auto col_sub = [&](int dst, int src, const Poly& f) {
        for (int i = 0; i < m; ++i) A.at(i, dst) = A.at(i, dst) - f * A.at(i, src);
        for (int i = 0; i < n; ++i) R.at(i, dst) = R.at(i, dst) - f * R.at(i, src);
    };
    auto row_swap = [&](int a, int b) {
        if (a == b) return;
        for (int j = 0; j < n; ++j) std::swap(A.at(a, j), A.at(b, j));
        for (int j = 0; j < m; ++j) std::swap(L.at(a, j), L.at(b, j));
        for (int i = 0; i < m; ++i) std::swap(Li.at(i, a), Li.at(i, b));
    };
    auto col_swap = [&](int a, int b) {
        if (a == b) return;
        for (int i = 0; i < m; ++i) std::swap(A.at(i, a), A.at(i, b));
        for (int i = 0; i < n; ++i) std::swap(R.at(i, a), R.at(i, b));
    };
    auto row_scale = [&](int r, FqElem s) {
        for (int j = 0; j < n; ++j) A.at(r, j) = A.at(r, j).scale(s);
        for (int j = 0; j < m; ++j) L.at(r, j) = L.at(r, j).scale(s);
        FqElem si = F.inv(s);
        for (int i = 0; i < m; ++i) Li.at(i, r) = Li.at(i, r).scale(si);
    };

    int t = 0, rmax = std::min(m, n);
    while (t < rmax) {
        // locate a minimal-degree nonzero entry in the trailing block
        int pi = -1, pj = -1;
        for (int i = t; i < m; ++i)
            for (int j = t; j < n; ++j)
                if (!A.at(i, j).is_zero() &&
                    (pi < 0 || A.at(i, j).deg() < A.at(pi, pj).deg())) { pi = i; pj = j; }
        if (pi < 0) break;
        row_swap(t, pi);
        col_swap(t, pj);
        bool clean = true;
        for (int i = t + 1; i < m; ++i) {
            if (A.at(i, t).is_zero()) continue;
            row_sub(i, t, A.at(i, t) / A.at(t, t));
            if (!A.at(i, t).is_zero()) clean = false;
        }
        for (int j = t + 1; j < n; ++j) {
            if (A.at(t, j).is_zero()) continue;
            col_sub(j, t, A.at(t, j) / A.at(t, t));
            if (!A.at(t, j).is_zero()) clean = false;
        }
        if (!clean) continue;  // degrees dropped; repeat with a smaller pivot
        // enforce divisibility: pivot must divide the trailing block
        bool fixed = false;
        for (int i = t + 1; i < m && !fixed; ++i)
            for (int j = t + 1; j < n && !fixed; ++j)
                if (!(A.at(i, j) % A.at(t, t)).is_zero()) {
                    row_sub(t, i, Poly::one(F).negate());  // row t += row i
                    fixed = true;
                }
        if (fixed) continue;
        row_scale(t, F.inv(A.at(t, t).lc()));
        ++t;
    }
    std::vector<Poly> factors;
    for (int i = 0; i < t; ++i) factors.push_back(A.at(i, i));
    return {factors, L, R, Li};
}

} // namespace fqlat
