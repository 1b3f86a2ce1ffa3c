#pragma once

#include "hermite.hpp"
#include "ideal.hpp"

namespace fqlat {

namespace detail {
// all size-k subsets of {0..n-1} in lexicographic order
inline std::vector<std::vector<int>> subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}
} // namespace detail

// log_q of the normalized covolume of the integral lattice spanned by the
// columns of B: the maximal degree over all maximal minors (Plücker sup norm).
inline int covol_exponent_of(const MatR& B) {
    int D = B.rows(), d = B.cols();
    int best = Poly::kZeroDeg;
    for (const auto& rows : detail::subsets(D, d)) {
        MatR sub(d, d, B.at(0, 0));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) sub.at(i, j) = B.at(rows[i], j);
        Poly m = det(sub);
        if (!m.is_zero()) best = std::max(best, m.deg());
    }
    if (best == Poly::kZeroDeg) throw std::invalid_argument("rank-deficient basis");
    return best;
}

// Integral rank-d sublattice of R^D in canonical column Hermite form.
class PartialLattice {
  public:
    PartialLattice(int D, int d, const MatR& basis_any)
        : D_(D), d_(d) {
        if (!(1 <= d && d < D)) throw std::invalid_argument("need 1 <= d < D");
        if (basis_any.rows() != D || basis_any.cols() != d)
            throw std::invalid_argument("basis shape mismatch");
        auto h = hermite_form(basis_any);
        basis_ = h.H;
        pivot_rows_ = h.pivot_rows;
        covol_exp_ = covol_exponent_of(basis_);
    }

    const Fq& field() const { return basis_.at(0, 0).field(); }
    int D() const { return D_; }
    int d() const { return d_; }
    int n() const { return D_ - d_; }
    const MatR& basis() const { return basis_; }
    const std::vector<int>& pivot_rows() const { return pivot_rows_; }
    int covol_exp() const { return covol_exp_; }

    friend bool operator==(const PartialLattice& a, const PartialLattice& b) {
        return a.D_ == b.D_ && a.d_ == b.d_ && a.basis_ == b.basis_;
    }
    friend bool operator!=(const PartialLattice& a, const PartialLattice& b) { return !(a == b); }
    friend bool operator<(const PartialLattice& a, const PartialLattice& b) {
        if (a.D_ != b.D_) return a.D_ < b.D_;
        if (a.d_ != b.d_) return a.d_ < b.d_;
        for (int i = 0; i < a.D_; ++i)
            for (int j = 0; j < a.d_; ++j) {
                if (a.basis_.at(i, j) != b.basis_.at(i, j)) return a.basis_.at(i, j) < b.basis_.at(i, j);
            }
        return false;
    }

  private:
    int D_, d_;
    MatR basis_;
    std::vector<int> pivot_rows_;
    int covol_exp_ = 0;
};

inline int covol_exponent(const PartialLattice& L) { return L.covol_exp(); }

// gcd of all maximal minors is a unit
inline bool is_primitive_minors(const PartialLattice& L) {
    const MatR& B = L.basis();
    Poly g = Poly::zero(L.field());
    for (const auto& rows : detail::subsets(L.D(), L.d())) {
        MatR sub(L.d(), L.d(), B.at(0, 0));
        for (int i = 0; i < L.d(); ++i)
            for (int j = 0; j < L.d(); ++j) sub.at(i, j) = B.at(rows[i], j);
        Poly m = det(sub);
        if (m.is_zero()) continue;
        g = g.is_zero() ? m.make_monic() : poly_gcd(g, m);
        if (g.is_one()) return true;
    }
    return !g.is_zero() && g.is_one();
}

// all Smith invariant factors are units
inline bool is_primitive_smith(const PartialLattice& L) {
    auto s = smith_form(L.basis());
    if (static_cast<int>(s.factors.size()) != L.d()) return false;
    for (const Poly& f : s.factors)
        if (!f.is_one()) return false;
    return true;
}

inline bool is_primitive(const PartialLattice& L) { return is_primitive_minors(L); }

// Completion of a primitive lattice to an element of SL_D(R): determinant
// exactly 1, first d columns exactly the canonical basis of L.
inline MatR complete_to_sl(const PartialLattice& L) {
    const Fq& F = L.field();
    auto s = smith_form(L.basis());
    bool prim = static_cast<int>(s.factors.size()) == L.d();
    for (const Poly& f : s.factors) prim = prim && f.is_one();
    if (!prim) throw std::domain_error("not a direct factor");
    int D = L.D(), d = L.d();
    MatR g = matR_zero(F, D, D);
    g.paste(0, 0, L.basis());
    g.paste(0, d, s.Linv.block(0, d, D, D - d));
    Poly dg = det(g);
    if (!dg.is_unit()) throw std::logic_error("completion determinant not a unit");
    FqElem fix = F.inv(dg.lc());
    for (int i = 0; i < D; ++i) g.at(i, D - 1) = g.at(i, D - 1).scale(fix);
    return g;
}

// Orthogonal lattice: Smith-saturated kernel of the transpose pairing,
// expressed in the dual coordinates.  Primitive of rank D-d.
inline PartialLattice orthogonal_lattice(const PartialLattice& L) {
    if (!is_primitive(L)) throw std::domain_error("not a direct factor");
    auto s = smith_form(L.basis().transpose());  // d x D
    int D = L.D(), n = L.n();
    return PartialLattice(D, n, s.R.block(0, L.d(), D, n));
}

struct FlattenResult {
    MatK u;  // sup-norm isometry: u and u^{-1} have entries in O_nu
    MatK C;  // u * B, supported on the first d rows
};

// Ultrametric full-pivoting elimination adapted to the flag: brings B to a
// matrix supported on the first d rows by an isometry of (K_nu^D, sup norm).
inline FlattenResult isometric_flatten(const MatK& B, int d) {
    const Fq& F = B.at(0, 0).field();
    int D = B.rows();
    if (B.cols() != d) throw std::invalid_argument("flatten: expected D x d input");
    MatK C = B;
    MatK u = matK_identity(F, D);
    for (int j = 0; j < d; ++j) {
        int piv = -1;
        std::optional<int> best;
        for (int i = j; i < D; ++i) {
            auto e = abs_value_exponent(C.at(i, j));
            if (e && (!best || *e > *best)) { best = e; piv = i; }
        }
        if (piv < 0) throw std::invalid_argument("rank-deficient input");
        if (piv != j) {
            for (int k = 0; k < d; ++k) std::swap(C.at(j, k), C.at(piv, k));
            for (int k = 0; k < D; ++k) std::swap(u.at(j, k), u.at(piv, k));
        }
        RatFun pinv = C.at(j, j).inverse();
        for (int i = j + 1; i < D; ++i) {
            if (C.at(i, j).is_zero()) continue;
            RatFun c = C.at(i, j) * pinv;  // |c| <= 1 by pivot maximality
            for (int k = 0; k < d; ++k) C.at(i, k) = C.at(i, k) - c * C.at(j, k);
            for (int k = 0; k < D; ++k) u.at(i, k) = u.at(i, k) - c * u.at(j, k);
        }
    }
    return {u, C};
}

// Full lattice in K^k given by an invertible matrix of column generators,
// canonically represented as s^{-1} H R^k with s the minimal monic
// denominator and H the column Hermite form of s * basis.
class FullLat {
  public:
    explicit FullLat(const MatK& gens) {
        if (gens.rows() != gens.cols()) throw std::invalid_argument("full lattice needs square basis");
        den_ = minimal_denominator(gens);
        MatR cleared = mat_scale(gens, RatFun(den_)).map([](const RatFun& f) {
            return f.num();  // polynomial after clearing
        });
        num_ = hermite_form(cleared).H;
        k_ = gens.rows();
    }

    int k() const { return k_; }
    const Poly& den() const { return den_; }
    const MatR& num() const { return num_; }
    MatK gens() const { return mat_scale(to_matK(num_), RatFun(Poly::one(den_.field()), den_)); }
    const Fq& field() const { return den_.field(); }

    // log_q of the normalized covolume: deg det(num) - k deg(den)
    int covol_exp() const { return det(num_).deg() - k_ * den_.deg(); }

    friend bool operator==(const FullLat& a, const FullLat& b) {
        return a.k_ == b.k_ && a.den_ == b.den_ && a.num_ == b.num_;
    }
    friend bool operator!=(const FullLat& a, const FullLat& b) { return !(a == b); }

  private:
    int k_ = 0;
    Poly den_;
    MatR num_;
};

// dual of a full lattice: transpose-inverse generators
inline FullLat dual_full(const FullLat& L) {
    return FullLat(inverse(L.gens().transpose()));
}

// Dual lattice of a partial lattice, carried to K^d by an isometric
// flattening of V_Lambda.  Normalized covolume exponents negate.
inline FullLat dual_lattice(const PartialLattice& L) {
    auto fl = isometric_flatten(to_matK(L.basis()), L.d());
    return FullLat(inverse(fl.C.block(0, 0, L.d(), L.d()).transpose()));
}

// Factor lattice R^D / Lambda carried to K^n with the quotient norm: the last
// n coordinates, after flattening, of the completion's last n columns.
inline FullLat factor_lattice(const PartialLattice& L) {
    MatR g = complete_to_sl(L);  // throws on non-primitive input
    auto fl = isometric_flatten(to_matK(L.basis()), L.d());
    MatK ug = mat_mul(fl.u, to_matK(g));
    return FullLat(ug.block(L.d(), L.d(), L.n(), L.n()));
}

// Solve H x = y over R for H in column Hermite form; nullopt if y is not in
// the lattice.
inline std::optional<std::vector<Poly>> lattice_member(const PartialLattice& L, const std::vector<Poly>& y) {
    const MatR& H = L.basis();
    const Fq& F = L.field();
    std::vector<Poly> rem = y;
    std::vector<Poly> x(L.d(), Poly::zero(F));
    for (int j = 0; j < L.d(); ++j) {
        int r = L.pivot_rows()[j];
        auto [q, rr] = rem[r].divmod(H.at(r, j));
        if (!rr.is_zero()) return std::nullopt;
        x[j] = q;
        for (int i = 0; i < L.D(); ++i) rem[i] = rem[i] - q * H.at(i, j);
    }
    for (const Poly& p : rem)
        if (!p.is_zero()) return std::nullopt;
    return x;
}

// horizontal modulo I: all of the last n coordinates of the lattice lie in I
inline bool is_horizontal_mod(const PartialLattice& L, const IdealR& I) {
    if (I.is_unit()) return true;
    for (int i = L.d(); i < L.D(); ++i)
        for (int j = 0; j < L.d(); ++j)
            if (!I.contains(L.basis().at(i, j))) return false;
    return true;
}

} // namespace fqlat
