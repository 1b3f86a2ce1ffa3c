#pragma once

#include "blocklu.hpp"
#include "measures.hpp"

namespace fqlat {

// Identifier of a precision-j cell of the flat part of the Grassmannian:
// the finite coefficient table of the jet of beta alpha^{-1}.
struct GrassCell {
    int d = 0, n = 0, j = 0;
    std::vector<uint16_t> coeffs;  // row-major per entry, j coefficients each

    friend bool operator==(const GrassCell& a, const GrassCell& b) {
        return a.d == b.d && a.n == b.n && a.j == b.j && a.coeffs == b.coeffs;
    }
    friend bool operator<(const GrassCell& a, const GrassCell& b) { return a.coeffs < b.coeffs; }

    std::string str() const {
        std::string s = "[";
        for (int e = 0; e < n * d; ++e) {
            if (e) s += ",";
            s += "[";
            for (int k = 0; k < j; ++k) {
                if (k) s += ",";
                s += std::to_string(coeffs[e * j + k]);
            }
            s += "]";
        }
        return s + "]";
    }
};

// The jet matrix of beta alpha^{-1} for a sharp lattice; identical for
// lattices with the same span.
inline Mat<LaurentJet> grass_point(const PartialLattice& L, int precision) {
    if (precision < 1) throw std::invalid_argument("precision must be >= 1");
    if (!is_sharp(L)) throw std::domain_error("not sharp");
    int d = L.d(), n = L.n();
    MatK alpha = to_matK(L.basis().block(0, 0, d, d));
    MatK bai = mat_mul(to_matK(L.basis().block(d, 0, n, d)), inverse(alpha));
    return bai.map([&](const RatFun& f) { return laurent_jet(f, precision); });
}

inline GrassCell grass_cell(const PartialLattice& L, int precision) {
    auto jets = grass_point(L, precision);
    GrassCell c;
    c.d = L.d(); c.n = L.n(); c.j = precision;
    for (int i = 0; i < jets.rows(); ++i)
        for (int k = 0; k < jets.cols(); ++k)
            for (int e = 0; e < precision; ++e) c.coeffs.push_back(jets.at(i, k).coeff(e).v);
    return c;
}

// d(orb(b1), orb(b2)) = ||b1 - b2|| for integral matrices (isometry of the
// flat part onto the matrix ball).
inline Rational grass_distance(const MatK& b1, const MatK& b2) {
    if (!entries_integral_at_infinity(b1) || !entries_integral_at_infinity(b2))
        throw std::invalid_argument("grass_distance needs integral matrices");
    auto e = sup_norm_exponent(mat_sub(b1, b2));
    if (!e) return 0;
    return q_pow(b1.at(0, 0).field().q(), *e);
}

// mu_Gr of one precision-j cell of the flat part: c_1 q^{-j d n}; at j = 0 the
// mass of the whole flat part.
inline Rational cell_mass(long d, long n, long q, long j) {
    if (j < 0) throw std::invalid_argument("precision must be >= 0");
    return c1(d, n, q) * q_pow(q, -j * d * n);
}

} // namespace fqlat
