#pragma once

#include <functional>
#include <numeric>

#include "blocklu.hpp"
#include "lattice.hpp"
#include "measures.hpp"

namespace fqlat {

// Splitting type parametrizing Sh^1_k: nonincreasing integers summing to 0.
struct ShapeClass {
    int k = 0;
    std::vector<int> type;

    friend bool operator==(const ShapeClass& a, const ShapeClass& b) { return a.type == b.type; }
    friend bool operator!=(const ShapeClass& a, const ShapeClass& b) { return !(a == b); }
    friend bool operator<(const ShapeClass& a, const ShapeClass& b) { return a.type < b.type; }

    std::string str() const {
        std::string s = "[";
        for (size_t i = 0; i < type.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(type[i]);
        }
        return s + "]";
    }
};

// Column reduction by leading-coefficient cancellation (weak-Popov style):
// returns the column degrees of a column-reduced form of the invertible
// polynomial matrix A.
inline std::vector<int> column_reduced_degrees(const MatR& A0) {
    const Fq& F = A0.at(0, 0).field();
    MatR A = A0;
    int k = A.rows();
    auto coldeg = [&](int j) {
        int dmax = Poly::kZeroDeg;
        for (int i = 0; i < k; ++i) dmax = std::max(dmax, A.at(i, j).deg());
        return dmax;
    };
    while (true) {
        std::vector<int> cd(k);
        for (int j = 0; j < k; ++j) {
            cd[j] = coldeg(j);
            if (cd[j] == Poly::kZeroDeg) throw std::invalid_argument("singular matrix in column reduction");
        }
        // leading coefficient matrix over F_q
        std::vector<std::vector<FqElem>> M(k, std::vector<FqElem>(k, F.zero()));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) M[i][j] = A.at(i, j).coeff(cd[j]);
        // kernel vector of M by elimination
        std::vector<std::vector<FqElem>> W = M;
        std::vector<int> pivot_col(k, -1);
        int prow = 0;
        std::vector<int> free_cols;
        for (int j = 0; j < k; ++j) {
            int p = -1;
            for (int i = prow; i < k; ++i)
                if (W[i][j].v != 0) { p = i; break; }
            if (p < 0) { free_cols.push_back(j); continue; }
            std::swap(W[p], W[prow]);
            FqElem inv = F.inv(W[prow][j]);
            for (int c = 0; c < k; ++c) W[prow][c] = F.mul(W[prow][c], inv);
            for (int i = 0; i < k; ++i) {
                if (i == prow || W[i][j].v == 0) continue;
                FqElem f = W[i][j];
                for (int c = 0; c < k; ++c) W[i][c] = F.sub(W[i][c], F.mul(f, W[prow][c]));
            }
            pivot_col[prow] = j;
            ++prow;
        }
        if (free_cols.empty()) {  // nonsingular leading matrix: column reduced
            return cd;
        }
        int fc = free_cols.front();
        std::vector<FqElem> v(k, F.zero());
        v[fc] = F.one();
        for (int i = 0; i < prow; ++i)
            if (pivot_col[i] >= 0) v[pivot_col[i]] = F.neg(W[i][fc]);
        // cancel into the column of maximal degree in the kernel support
        // (lowest index on ties)
        int jstar = -1;
        for (int j = 0; j < k; ++j)
            if (v[j].v != 0 && (jstar < 0 || cd[j] > cd[jstar])) jstar = j;
        FqElem scale = F.inv(v[jstar]);
        for (int j = 0; j < k; ++j) {
            if (j == jstar || v[j].v == 0) continue;
            Poly f = Poly::monomial(F, F.mul(v[j], scale), cd[jstar] - cd[j]);
            for (int i = 0; i < k; ++i) A.at(i, jstar) = A.at(i, jstar) + f * A.at(i, j);
        }
        // degree of column jstar strictly dropped; iterate
    }
}

// Shape of the unimodular full lattice pi^m A R^k: sorted reduced column
// degrees shifted by m.
inline ShapeClass shape_of_full(int m, const MatR& A) {
    int k = A.rows();
    if (A.cols() != k) throw std::invalid_argument("shape_of_full needs a square matrix");
    Poly dA = det(A);
    if (dA.is_zero() || dA.deg() != k * m) throw std::domain_error("covolume not 1");
    std::vector<int> cd = column_reduced_degrees(A);
    ShapeClass c;
    c.k = k;
    for (int x : cd) c.type.push_back(x - m);
    std::sort(c.type.begin(), c.type.end(), std::greater<int>());
    return c;
}

// Shape of a full lattice with covolume exponent divisible by k, using
// homothety invariance of the shape map.
inline ShapeClass shape_of_full_lat(const FullLat& L) {
    int k = L.k();
    int e = det(L.num()).deg();
    if (e % k != 0) throw std::domain_error("shape undefined");
    return shape_of_full(e / k, L.num());
}

// Shape of a primitive partial lattice whose covolume exponent is divisible
// by its rank: flatten (permuting coordinates if necessary) and read the
// shape of the top block.
inline ShapeClass shape_of_partial(const PartialLattice& L) {
    if (L.covol_exp() % L.d() != 0) throw std::domain_error("shape undefined");
    const MatR* B = &L.basis();
    MatR moved = L.basis();
    if (!is_sharp(L)) {
        MatR sigma = flat_permutation(L.basis(), L.d());
        moved = mat_mul(sigma, L.basis());
        B = &moved;
    }
    return shape_of_full(L.covol_exp() / L.d(), B->block(0, 0, L.d(), L.d()));
}

// the double-coset inverse D -> D^{-1}: negate the type and re-sort
inline ShapeClass invert_class(const ShapeClass& c) {
    ShapeClass r;
    r.k = c.k;
    for (int x : c.type) r.type.push_back(-x);
    std::sort(r.type.begin(), r.type.end(), std::greater<int>());
    return r;
}

// Order of the stabilizer in GL_k(R_nu) of the building vertex with the given
// splitting type: product of GL over the multiplicity blocks times
// q^{sum over pairs a_i > a_j of (a_i - a_j + 1)}.
inline BigInt stabilizer_order(const ShapeClass& c, long q) {
    BigInt acc = 1;
    size_t i = 0;
    while (i < c.type.size()) {
        size_t j = i;
        while (j < c.type.size() && c.type[j] == c.type[i]) ++j;
        acc *= card_GL(static_cast<long>(j - i), q);
        i = j;
    }
    long expo = 0;
    for (size_t a = 0; a < c.type.size(); ++a)
        for (size_t b = 0; b < c.type.size(); ++b)
            if (c.type[a] > c.type[b]) expo += c.type[a] - c.type[b] + 1;
    for (long t = 0; t < expo; ++t) acc *= q;
    return acc;
}

// all splitting types with k parts, sum 0, a_1 <= A, in lexicographic order
inline std::vector<ShapeClass> shape_classes_up_to(int k, int A) {
    std::vector<ShapeClass> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rem, int last) {
        if (rem == 1) {
            if (-std::accumulate(cur.begin(), cur.end(), 0) <= last) {
                ShapeClass c;
                c.k = k;
                c.type = cur;
                c.type.push_back(-std::accumulate(cur.begin(), cur.end(), 0));
                out.push_back(c);
            }
            return;
        }
        int s = -std::accumulate(cur.begin(), cur.end(), 0);  // remaining sum
        // need rem values, all <= last, summing to s: max value >= ceil(s/rem)
        int lo = (s >= 0) ? (s + rem - 1) / rem : -((-s) / rem);
        while (lo * rem < s) ++lo;
        for (int a = std::min(last, A); a >= lo; --a) {
            cur.push_back(a);
            rec(rem - 1, a);
            cur.pop_back();
        }
    };
    if (k == 1) {
        if (A >= 0) out.push_back(ShapeClass{1, {0}});
        return out;
    }
    rec(k, A);
    std::sort(out.begin(), out.end());
    return out;
}

// sum of 1/stabilizer over all classes with a_1 <= A
inline Rational shape_mass_partial_sum(int k, long q, int A) {
    if (A < 0) throw std::invalid_argument("bound must be nonnegative");
    Rational s = 0;
    for (const auto& c : shape_classes_up_to(k, A))
        s += Rational(1) / Rational(stabilizer_order(c, q));
    return s;
}

// certified upper bound on the mass of classes with a_1 > A
inline Rational shape_mass_tail_bound(int k, long q, int A) {
    if (k == 1) return 0;
    if (k == 2) {
        // exact geometric tail: sum_{a > A} (q-1)^{-2} q^{-2a-1}
        return Rational(1) / ((q_pow(q, 1) - 1) * (q_pow(q, 1) - 1)) * q_pow(q, -2 * A - 1) /
               (q_pow(q, 2) - 1);
    }
    // classes with a_1 = a number at most (2ka+1)^{k-2}; each stabilizer is at
    // least q^{a+1}.  Bound the series by its first term over 1 - ratio.
    auto term = [&](long a) {
        Rational cnt = 1;
        for (int i = 0; i < k - 2; ++i) cnt *= 2 * k * a + 1;
        return cnt * q_pow(q, -a - 1);
    };
    long a0 = A + 1;
    Rational ratio = term(a0 + 1) / term(a0);
    while (ratio >= 1) {  // extend until the geometric comparison applies
        ++a0;
        ratio = term(a0 + 1) / term(a0);
    }
    Rational head = 0;
    for (long a = A + 1; a < a0; ++a) head += term(a);
    return head + term(a0) / (Rational(1) - ratio);
}

// total vertex mass of Sh^1_k (closed form for k <= 2)
inline Rational shape_mass_total_vertex(int k, long q) {
    if (k == 1) return Rational(1) / (q - 1);
    if (k == 2)
        return Rational(1) / Rational(card_GL(2, q)) +
               Rational(1) / ((q_pow(q, 1) - 1) * (q_pow(q, 1) - 1) * q_pow(q, 1) * (q_pow(q, 2) - 1));
    throw std::invalid_argument("closed form implemented for k <= 2; use partial sums");
}

} // namespace fqlat
