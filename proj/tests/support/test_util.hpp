#pragma once

#include <random>

#include "fqlat/blocklu.hpp"
#include "fqlat/grassmann.hpp"
#include "fqlat/shape.hpp"
#include "fqlat/textio.hpp"

namespace fqlat::testutil {

using Rng = std::mt19937;

inline Poly random_poly(Rng& rng, const Fq& F, int max_deg, bool allow_zero = true) {
    std::uniform_int_distribution<int> degd(allow_zero ? -1 : 0, max_deg);
    int d = degd(rng);
    if (d < 0) return Poly::zero(F);
    std::uniform_int_distribution<long> cd(0, F.q() - 1);
    std::vector<FqElem> c(d + 1);
    for (int i = 0; i < d; ++i) c[i] = F.from_index(cd(rng));
    c[d] = F.from_index(1 + (cd(rng) % (F.q() - 1)));  // degree exactly d
    return Poly(F, std::move(c));
}

inline Poly random_monic(Rng& rng, const Fq& F, int deg) {
    std::uniform_int_distribution<long> cd(0, F.q() - 1);
    std::vector<FqElem> c(deg + 1);
    for (int i = 0; i < deg; ++i) c[i] = F.from_index(cd(rng));
    c[deg] = F.one();
    return Poly(F, std::move(c));
}

inline RatFun random_ratfun(Rng& rng, const Fq& F, int max_deg) {
    Poly n = random_poly(rng, F, max_deg);
    Poly d = random_monic(rng, F, std::uniform_int_distribution<int>(0, max_deg)(rng));
    return RatFun(n, d);
}

inline MatR random_matR(Rng& rng, const Fq& F, int rows, int cols, int max_deg) {
    MatR m = matR_zero(F, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = random_poly(rng, F, max_deg);
    return m;
}

// random unimodular square matrix over R: product of elementary column ops
inline MatR random_unimodular(Rng& rng, const Fq& F, int k, int ops, int max_deg) {
    MatR U = matR_identity(F, k);
    std::uniform_int_distribution<int> idx(0, k - 1);
    std::uniform_int_distribution<long> unit(1, F.q() - 1);
    for (int t = 0; t < ops; ++t) {
        int a = idx(rng), b = idx(rng);
        if (a == b) {
            FqElem s = F.from_index(unit(rng));
            for (int i = 0; i < k; ++i) U.at(i, a) = U.at(i, a).scale(s);
        } else {
            Poly f = random_poly(rng, F, max_deg);
            for (int i = 0; i < k; ++i) U.at(i, a) = U.at(i, a) + f * U.at(i, b);
        }
    }
    return U;
}

// random primitive partial lattice: first d columns of a random product of
// elementary matrices in SL_D(R)
inline PartialLattice random_primitive(Rng& rng, const Fq& F, int D, int d, int ops, int max_deg) {
    MatR g = matR_identity(F, D);
    std::uniform_int_distribution<int> idx(0, D - 1);
    for (int t = 0; t < ops; ++t) {
        int a = idx(rng), b = idx(rng);
        if (a == b) continue;
        Poly f = random_poly(rng, F, max_deg);
        for (int i = 0; i < D; ++i) g.at(i, a) = g.at(i, a) + f * g.at(i, b);
    }
    return PartialLattice(D, d, g.block(0, 0, D, d));
}

// ---------------------------------------------------------------------------
// independent stabilizer oracles (see shapes: stabilizer_order)

// v1: full enumeration of gamma with g gamma g^{-1} integral at infinity,
// over the complete degree box; returns nullopt when the box exceeds `cap`
inline std::optional<BigInt> stabilizer_bruteforce_full(const ShapeClass& c, long q,
                                                        long long cap = 1000000) {
    const Fq F = Fq::make(q);
    int k = c.k;
    // slot list: entry (i,j) admits polynomials of degree <= a_j - a_i
    struct Slot { int i, j, pos; };
    std::vector<Slot> slots;
    double logsize = 0;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            int cap_ij = c.type[j] - c.type[i];
            if (cap_ij < 0) continue;
            for (int p = 0; p <= cap_ij; ++p) slots.push_back({i, j, p});
            logsize += (cap_ij + 1) * std::log(static_cast<double>(q));
        }
    if (logsize > std::log(static_cast<double>(cap))) return std::nullopt;
    std::vector<uint16_t> digits(slots.size(), 0);
    BigInt count = 0;
    while (true) {
        MatR g = matR_zero(F, k, k);
        std::vector<std::vector<FqElem>> coef(static_cast<size_t>(k) * k);
        for (size_t s = 0; s < slots.size(); ++s) {
            auto& cf = coef[slots[s].i * k + slots[s].j];
            if (static_cast<int>(cf.size()) <= slots[s].pos) cf.resize(slots[s].pos + 1, F.zero());
            cf[slots[s].pos] = F.from_index(digits[s]);
        }
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                if (!coef[i * k + j].empty()) g.at(i, j) = Poly(F, coef[i * k + j]);
        Poly dg = det(g);
        if (dg.is_unit()) ++count;
        size_t s = 0;
        while (s < digits.size() && ++digits[s] == q) digits[s++] = 0;
        if (s == digits.size()) break;
    }
    return count;
}

// v2: only the constant coefficients can influence the determinant (in every
// permutation product the degrees telescope to <= 0), so count invertible
// constant patterns by brute force and multiply by the free higher
// coefficients
inline BigInt stabilizer_bruteforce_const(const ShapeClass& c, long q) {
    const Fq F = Fq::make(q);
    int k = c.k;
    std::vector<std::pair<int, int>> const_slots;
    long free_higher = 0;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            int cap_ij = c.type[j] - c.type[i];
            if (cap_ij < 0) continue;
            const_slots.emplace_back(i, j);
            free_higher += cap_ij;
        }
    std::vector<uint16_t> digits(const_slots.size(), 0);
    BigInt invertible = 0;
    while (true) {
        MatR g = matR_zero(F, k, k);
        for (size_t s = 0; s < const_slots.size(); ++s)
            g.at(const_slots[s].first, const_slots[s].second) =
                Poly::constant(F, F.from_index(digits[s]));
        Poly dg = det(g);
        if (dg.is_unit()) ++invertible;
        size_t s = 0;
        while (s < digits.size() && ++digits[s] == q) digits[s++] = 0;
        if (s == digits.size()) break;
    }
    BigInt total = invertible;
    for (long t = 0; t < free_higher; ++t) total *= q;
    return total;
}

// brute-force |SL_D(F_q)| by enumerating all matrices over the residue ring
inline std::optional<BigInt> count_sl_bruteforce(int D, long q, long long cap = 20000000) {
    const Fq F = Fq::make(q);
    double logsize = D * D * std::log(static_cast<double>(q));
    if (logsize > std::log(static_cast<double>(cap))) return std::nullopt;
    std::vector<uint16_t> digits(static_cast<size_t>(D) * D, 0);
    BigInt count = 0;
    while (true) {
        MatR g = matR_zero(F, D, D);
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j)
                g.at(i, j) = Poly::constant(F, F.from_index(digits[i * D + j]));
        Poly dg = det(g);
        if (dg.is_one()) ++count;
        size_t s = 0;
        while (s < digits.size() && ++digits[s] == q) digits[s++] = 0;
        if (s == digits.size()) break;
    }
    return count;
}

// brute-force [Gamma : Gamma_I] = |SL_D(R/I)| / |T_{d,D}(I)| by enumeration
// over the finite ring R/I; returns nullopt when too big
inline std::optional<Rational> index_bruteforce(int d, int n, long q, const IdealR& I,
                                                long long cap = 20000000) {
    const Fq F = Fq::make(q);
    int D = d + n;
    const Poly& gen = I.gen();
    if (gen.is_one()) return Rational(1);
    long N = 1;
    for (int i = 0; i < I.deg(); ++i) N *= q;  // |R/I|
    double logsize = static_cast<double>(D) * D * std::log(static_cast<double>(N));
    if (logsize > std::log(static_cast<double>(cap))) return std::nullopt;
    // residues of R/I indexed by coefficient vectors of degree < deg I
    long degI = I.deg();
    auto residue = [&](long code) {
        std::vector<FqElem> c(degI, F.zero());
        for (int i = 0; i < degI; ++i) { c[i] = F.from_index(code % q); code /= q; }
        return Poly(F, std::move(c));
    };
    std::vector<long> digits(static_cast<size_t>(D) * D, 0);
    BigInt sl = 0, tri = 0;
    while (true) {
        MatR g = matR_zero(F, D, D);
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j) g.at(i, j) = residue(digits[i * D + j]);
        Poly dg = det(g) % gen;
        if (dg.is_one()) {
            ++sl;
            bool upper = true;
            for (int i = d; i < D && upper; ++i)
                for (int j = 0; j < d && upper; ++j)
                    if (!(g.at(i, j) % gen).is_zero()) upper = false;
            if (upper) ++tri;
        }
        size_t s = 0;
        while (s < digits.size() && ++digits[s] == N) digits[s++] = 0;
        if (s == digits.size()) break;
    }
    return Rational(sl) / Rational(tri);
}

// two-pipeline data of a lattice: (V-jet id, shape, orthogonal shape, covol)
struct TripleData {
    std::string cell;
    ShapeClass sh, shperp;
    int covol;
};

// direct route: lattice-side computations only
inline TripleData triple_direct(const PartialLattice& L, int precision) {
    TripleData t;
    t.cell = grass_cell(L, precision).str();
    t.sh = shape_of_partial(L);
    t.shperp = shape_of_partial(orthogonal_lattice(L));
    t.covol = L.covol_exp();
    return t;
}

// group route: through the Omega representative and its block-LU data
inline TripleData triple_group(const PartialLattice& L, int precision) {
    OmegaRep om = to_omega_rep(L);
    TripleData t;
    auto jets = om.lu.lower.map([&](const RatFun& f) { return laurent_jet(f, precision); });
    GrassCell c;
    c.d = L.d(); c.n = L.n(); c.j = precision;
    for (int i = 0; i < jets.rows(); ++i)
        for (int k = 0; k < jets.cols(); ++k)
            for (int e = 0; e < precision; ++e) c.coeffs.push_back(jets.at(i, k).coeff(e).v);
    t.cell = c.str();
    int l = lcm_int(L.d(), L.n());
    t.covol = l * om.lu.t;
    t.sh = shape_of_full_lat(FullLat(om.lu.g_bar));
    t.shperp = shape_of_full_lat(FullLat(inverse(om.lu.g_under.transpose())));
    return t;
}

} // namespace fqlat::testutil
