#pragma once

#include <numeric>

#include "lattice.hpp"

namespace fqlat {

inline int lcm_int(int a, int b) { return a / std::gcd(a, b) * b; }

// Refined block-LU factorization g = u^- g'' z u^+ of g in SL_D(K) with
// invertible upper-left block and lcm(d,n)-divisible nu(det alpha).
// The level t satisfies chi_d(z) = pi^{-lcm(d,n) t / d}, so the lattice of the
// first d columns has normalized covolume exponent lcm(d,n) * t.
struct BlockLU {
    int d = 0, n = 0;
    int t = 0;
    MatK lower;    // n x d block beta alpha^{-1} of u^-
    MatK g_bar;    // d x d, |det| = 1
    MatK g_under;  // n x n, |det| = 1
    MatK upper;    // d x n block alpha^{-1} gamma of u^+

    MatK z() const {
        const Fq& F = g_bar.at(0, 0).field();
        int l = lcm_int(d, n);
        MatK m = matK_zero(F, d + n, d + n);
        for (int i = 0; i < d; ++i) m.at(i, i) = RatFun::Y_pow(F, l * t / d);
        for (int i = d; i < d + n; ++i) m.at(i, i) = RatFun::Y_pow(F, -l * t / n);
        return m;
    }
    MatK u_minus() const {
        const Fq& F = g_bar.at(0, 0).field();
        MatK m = matK_identity(F, d + n);
        m.paste(d, 0, lower);
        return m;
    }
    MatK u_plus() const {
        const Fq& F = g_bar.at(0, 0).field();
        MatK m = matK_identity(F, d + n);
        m.paste(0, d, upper);
        return m;
    }
    MatK g_dd() const {
        const Fq& F = g_bar.at(0, 0).field();
        MatK m = matK_zero(F, d + n, d + n);
        m.paste(0, 0, g_bar);
        m.paste(d, d, g_under);
        return m;
    }
    MatK reassemble() const { return mat_mul(mat_mul(u_minus(), g_dd()), mat_mul(z(), u_plus())); }
};

inline BlockLU block_lu(const MatK& g, int d) {
    int D = g.rows();
    if (g.cols() != D || d < 1 || d >= D) throw std::invalid_argument("block_lu: bad shape");
    int n = D - d;
    const Fq& F = g.at(0, 0).field();
    MatK alpha = g.block(0, 0, d, d);
    MatK gamma = g.block(0, d, d, n);
    MatK beta = g.block(d, 0, n, d);
    MatK delta = g.block(d, d, n, n);
    RatFun da = det(alpha);
    if (da.is_zero()) throw std::domain_error("in U_G_bullet");
    int va = *valuation(da);
    int l = lcm_int(d, n);
    if (((va % l) + l) % l != 0) throw std::domain_error("not in U_G");
    BlockLU r;
    r.d = d; r.n = n;
    r.t = -va / l;
    MatK ainv = inverse(alpha);
    r.lower = mat_mul(beta, ainv);
    r.upper = mat_mul(ainv, gamma);
    MatK dprime = mat_sub(delta, mat_mul(r.lower, gamma));
    r.g_bar = mat_scale(alpha, RatFun::Y_pow(F, va / d));
    r.g_under = mat_scale(dprime, RatFun::Y_pow(F, -va / n));
    return r;
}

// membership in G^sharp at the lattice level: invertible top block with
// lcm-divisible valuation and integral beta alpha^{-1}; basis independent
inline bool is_sharp(const PartialLattice& L) {
    const MatR& B = L.basis();
    int d = L.d(), n = L.n();
    MatK alpha = to_matK(B.block(0, 0, d, d));
    RatFun da = det(alpha);
    if (da.is_zero()) return false;
    int va = *valuation(da);
    int l = lcm_int(d, n);
    if (((va % l) + l) % l != 0) return false;
    MatK bai = mat_mul(to_matK(B.block(d, 0, n, d)), inverse(alpha));
    return entries_integral_at_infinity(bai);
}

// Signed permutation matrix sigma (det 1) moving a maximal-degree d x d minor
// of B to the top block; lexicographically smallest row subset on ties.
inline MatR flat_permutation(const MatR& B, int d) {
    const Fq& F = B.at(0, 0).field();
    int D = B.rows();
    int best = Poly::kZeroDeg;
    std::vector<int> bestRows;
    for (const auto& rows : detail::subsets(D, d)) {
        MatR sub(d, d, B.at(0, 0));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) sub.at(i, j) = B.at(rows[i], j);
        Poly m = det(sub);
        if (m.is_zero()) continue;
        if (bestRows.empty() || m.deg() > best) { best = m.deg(); bestRows = rows; }
    }
    if (bestRows.empty()) throw std::invalid_argument("rank-deficient basis");
    std::vector<int> perm = bestRows;
    std::vector<bool> used(D, false);
    for (int r : bestRows) used[r] = true;
    for (int i = 0; i < D; ++i)
        if (!used[i]) perm.push_back(i);
    // permutation parity by inversion count
    int inv = 0;
    for (size_t i = 0; i < perm.size(); ++i)
        for (size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) ++inv;
    MatR sigma = matR_zero(F, D, D);
    for (int k = 0; k < D; ++k) sigma.at(k, perm[k]) = Poly::one(F);
    if (inv % 2 == 1)  // restore det 1 with a sign in the last row
        for (int j = 0; j < D; ++j) sigma.at(D - 1, j) = sigma.at(D - 1, j).negate();
    return sigma;
}

namespace detail {

// canonical section of G''/G''(R_nu): Hermite-canonicalize both blocks after
// clearing denominators and push the leftover unit determinant into the last
// column of the n-block, making the combined transform lie in G''(R_nu)
struct GppCanon {
    MatK f_bar, f_under;
    MatR U_d, U_n;  // f = g * U blockwise, det(U_d) det(U_n) = 1
};

inline GppCanon canon_gpp(const MatK& g_bar, const MatK& g_under) {
    const Fq& F = g_bar.at(0, 0).field();
    auto clear = [&](const MatK& X) {
        Poly s = minimal_denominator(X);
        return mat_scale(X, RatFun(s)).map([](const RatFun& f) { return f.num(); });
    };
    auto hd = hermite_form(clear(g_bar));
    auto hn = hermite_form(clear(g_under));
    FqElem du = F.mul(det(hd.U).lc(), det(hn.U).lc());
    FqElem lambda = F.inv(du);
    MatR U_n = hn.U;
    int n = U_n.cols();
    for (int i = 0; i < n; ++i) U_n.at(i, n - 1) = U_n.at(i, n - 1).scale(lambda);
    GppCanon c;
    c.U_d = hd.U;
    c.U_n = U_n;
    c.f_bar = mat_mul(g_bar, to_matK(hd.U));
    c.f_under = mat_mul(g_under, to_matK(U_n));
    return c;
}

} // namespace detail

// The Gamma-cap-Omega representative of a sharp primitive lattice, with its
// block-LU data: u^- integral at infinity, g'' in the canonical fundamental
// domain section, u^+ block strictly proper entrywise.
struct OmegaRep {
    MatR g;
    BlockLU lu;
};

inline OmegaRep to_omega_rep(const PartialLattice& L) {
    if (!is_sharp(L)) throw std::domain_error("not sharp");
    const Fq& F = L.field();
    MatR g0 = complete_to_sl(L);
    BlockLU lu = block_lu(to_matK(g0), L.d());
    auto canon = detail::canon_gpp(lu.g_bar, lu.g_under);
    // conjugate the u^+ block through diag(U_d, U_n), then split off the
    // polynomial part entrywise (the box condition)
    MatK upper2 = mat_mul(mat_mul(inverse(to_matK(canon.U_d)), lu.upper), to_matK(canon.U_n));
    MatR pol = matR_zero(F, L.d(), L.n());
    MatK box = matK_zero(F, L.d(), L.n());
    for (int i = 0; i < L.d(); ++i)
        for (int j = 0; j < L.n(); ++j) {
            auto [p, prop] = proper_split(upper2.at(i, j));
            pol.at(i, j) = p;
            box.at(i, j) = prop;
        }
    BlockLU luo = lu;
    luo.g_bar = canon.f_bar;
    luo.g_under = canon.f_under;
    luo.upper = box;
    MatK gK = luo.reassemble();
    if (!entries_polynomial(gK)) throw std::logic_error("omega representative not integral");
    OmegaRep r{to_matR(gK), luo};
    return r;
}

// Correlated pair of unimodular lattices attached to a sharp primitive
// lattice: (g_bar R^d, transpose-inverse(g_under) R^n), plus the determinant
// class as a normalized Laurent jet.
struct CorrelatedPair {
    FullLat lat_d;
    FullLat lat_n;
    LaurentJet det_jet;
};

inline constexpr int kDetJetPrecision = 8;

inline CorrelatedPair correlated_pair(const PartialLattice& L, int jet_precision = kDetJetPrecision) {
    if (!is_sharp(L)) throw std::domain_error("not sharp");
    BlockLU lu = block_lu(to_matK(complete_to_sl(L)), L.d());
    FullLat lat_d(lu.g_bar);
    FullLat lat_n(inverse(lu.g_under.transpose()));
    RatFun dbar = det(lu.g_bar);
    CorrelatedPair p{std::move(lat_d), std::move(lat_n),
                     laurent_jet(normalize_leading_unit(dbar), jet_precision)};
    return p;
}

} // namespace fqlat
