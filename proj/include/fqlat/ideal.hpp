#pragma once

#include <map>

#include "poly.hpp"
#include "rational.hpp"

namespace fqlat {

// monic irreducibles of the given degree, in deterministic order
inline std::vector<Poly> monic_irreducibles(const Fq& F, int degree) {
    std::vector<Poly> irr;
    // all monic polys of degree `degree`, trial division by smaller irreducibles
    std::vector<Poly> smaller;
    for (int d = 1; d <= degree; ++d) {
        long count = 1;
        for (int i = 0; i < d; ++i) count *= F.q();
        for (long code = 0; code < count; ++code) {
            std::vector<FqElem> c(d + 1, F.zero());
            long x = code;
            for (int i = 0; i < d; ++i) { c[i] = F.from_index(x % F.q()); x /= F.q(); }
            c[d] = F.one();
            Poly p(F, std::move(c));
            bool irred = true;
            for (const Poly& s : smaller)
                if (2 * s.deg() <= d && (p % s).is_zero()) { irred = false; break; }
            if (irred) {
                if (d == degree) irr.push_back(p);
                smaller.push_back(p);
            }
        }
        if (d == degree) break;
    }
    return irr;
}

// factorization of a monic polynomial into monic irreducibles with multiplicity,
// by trial division in increasing degree
inline std::vector<std::pair<Poly, int>> factor_monic(const Poly& p) {
    if (p.is_zero() || !p.is_monic()) throw std::invalid_argument("factor_monic needs a monic polynomial");
    const Fq& F = p.field();
    std::vector<std::pair<Poly, int>> out;
    Poly rest = p;
    for (int d = 1; rest.deg() > 0; ++d) {
        if (2 * d > rest.deg()) {  // remainder is irreducible
            out.emplace_back(rest, 1);
            break;
        }
        for (const Poly& f : monic_irreducibles(F, d)) {
            int m = 0;
            while (true) {
                auto [q, r] = rest.divmod(f);
                if (!r.is_zero()) break;
                rest = q;
                ++m;
            }
            if (m > 0) out.emplace_back(f, m);
            if (rest.deg() < 2 * d) break;
        }
    }
    return out;
}

// Nonzero ideal of R = F_q[Y], by its monic generator; factorization cached.
class IdealR {
  public:
    explicit IdealR(Poly gen) : gen_(std::move(gen)) {
        if (gen_.is_zero()) throw std::invalid_argument("zero ideal");
        gen_ = gen_.make_monic();
        if (gen_.deg() > 0) factors_ = factor_monic(gen_);
    }
    static IdealR unit(const Fq& F) { return IdealR(Poly::one(F)); }

    const Poly& gen() const { return gen_; }
    bool is_unit() const { return gen_.is_one(); }
    int deg() const { return gen_.deg(); }
    Rational norm() const { return q_pow(gen_.field().q(), gen_.deg()); }  // N(I) = q^deg
    const std::vector<std::pair<Poly, int>>& factors() const { return factors_; }
    bool contains(const Poly& p) const { return (p % gen_).is_zero(); }

  private:
    Poly gen_;
    std::vector<std::pair<Poly, int>> factors_;
};

} // namespace fqlat
