#pragma once

#include <cstdint>
#include <functional>

#include "blocklu.hpp"
#include "lattice.hpp"
#include "textio.hpp"

namespace fqlat {

struct EnumSpec {
    long q = 2;
    int D = 2;
    int d = 1;
    int covol_exp = 1;
    IdealR ideal;
    bool dualize = false;

    EnumSpec(long q_, int D_, int d_, int e_, IdealR I)
        : q(q_), D(D_), d(d_), covol_exp(e_), ideal(std::move(I)) {
        if (!(1 <= d && d < D)) throw std::invalid_argument("need 1 <= d < D");
        if (covol_exp < 0) throw std::invalid_argument("covol_exp must be >= 0");
    }
    static EnumSpec make(long q, int D, int d, int e) {
        return EnumSpec(q, D, d, e, IdealR::unit(Fq::make(q)));
    }
};

struct BudgetExceeded : std::runtime_error {
    BigInt nodes;
    explicit BudgetExceeded(BigInt n)
        : std::runtime_error("enumeration budget exceeded"), nodes(std::move(n)) {}
};

namespace detail {

// A template fixes the pivot rows and pivot degrees of a canonical Hermite
// form; its slots are the free F_q coefficients.
struct EnumTemplate {
    std::vector<int> rows;  // pivot row of each column, increasing
    std::vector<int> degs;  // monic pivot degrees
    struct Slot { int row, col, pos; };
    std::vector<Slot> slots;
};

inline std::vector<EnumTemplate> enum_templates(int D, int d, int e) {
    std::vector<EnumTemplate> out;
    for (const auto& rows : subsets(D, d)) {
        std::vector<int> degs(d, 0);
        std::function<void(int, int)> rec = [&](int j, int left) {
            if (j < d) {
                for (int a = 0; a <= left; ++a) {
                    degs[j] = a;
                    rec(j + 1, left - a);
                }
                return;
            }
            EnumTemplate t;
            t.rows = rows;
            t.degs = degs;
            for (int c = 0; c < d; ++c) {
                for (int k = 0; k < degs[c]; ++k) t.slots.push_back({rows[c], c, k});
                for (int i = rows[c] + 1; i < D; ++i) {
                    int jp = -1;
                    for (int k = 0; k < d; ++k)
                        if (rows[k] == i) jp = k;
                    int cap = jp >= 0 ? degs[jp] : e + 1;  // reduced mod pivot / free box entry
                    for (int k = 0; k < cap; ++k) t.slots.push_back({i, c, k});
                }
            }
            out.push_back(std::move(t));
        };
        rec(0, e);
    }
    return out;
}

inline uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace detail

// deterministic shard key: FNV-1a of the canonical form's first column
inline uint64_t shard_key(const PartialLattice& L) {
    std::string s;
    for (int i = 0; i < L.D(); ++i) s += poly_str(L.basis().at(i, 0));
    return detail::fnv1a(s);
}

// number of candidate matrices the enumerator will visit
inline BigInt enum_node_estimate(const EnumSpec& spec) {
    BigInt total = 0;
    for (const auto& t : detail::enum_templates(spec.D, spec.d, spec.covol_exp)) {
        BigInt c = 1;
        for (size_t i = 0; i < t.slots.size(); ++i) c *= spec.q;
        total += c;
    }
    return total;
}

// Exhaustive canonical enumeration of the primitive d-lattices in R^D with
// normalized covolume exponent spec.covol_exp, horizontal modulo spec.ideal.
// Every emitted basis is its own Hermite form, each lattice appears exactly
// once, and the order is deterministic.  budget < 0 disables the guard.
// When shards > 1 only lattices with shard_key % shards == shard are emitted.
inline void enum_primitive(const EnumSpec& spec,
                           const std::function<void(const PartialLattice&)>& sink,
                           long long budget = -1, int shard = 0, int shards = 1) {
    if (budget >= 0) {
        BigInt est = enum_node_estimate(spec);
        if (est > budget) throw BudgetExceeded(est);
    }
    const Fq F = Fq::make(spec.q);
    int D = spec.D, d = spec.d, e = spec.covol_exp;

    for (const auto& t : detail::enum_templates(D, d, e)) {
        std::vector<uint16_t> digits(t.slots.size(), 0);
        // coefficient tables, rebuilt incrementally from the counter
        std::vector<std::vector<std::vector<FqElem>>> coef(
            D, std::vector<std::vector<FqElem>>(d));
        for (int c = 0; c < d; ++c) {
            coef[t.rows[c]][c].assign(t.degs[c] + 1, F.zero());
            coef[t.rows[c]][c][t.degs[c]] = F.one();
            for (int i = t.rows[c] + 1; i < D; ++i) {
                int jp = -1;
                for (int k = 0; k < d; ++k)
                    if (t.rows[k] == i) jp = k;
                coef[i][c].assign(jp >= 0 ? std::max(t.degs[jp], 1) : e + 1, F.zero());
                if (jp >= 0 && t.degs[jp] == 0) coef[i][c].clear();  // reduced mod a unit pivot: zero
            }
        }
        while (true) {
            for (size_t s = 0; s < t.slots.size(); ++s)
                coef[t.slots[s].row][t.slots[s].col][t.slots[s].pos] = F.from_index(digits[s]);
            MatR H = matR_zero(F, D, d);
            for (int i = 0; i < D; ++i)
                for (int c = 0; c < d; ++c)
                    if (!coef[i][c].empty()) H.at(i, c) = Poly(F, coef[i][c]);
            bool keep = true;
            // covolume filter
            if (keep) {
                if (d == 1) {
                    int mx = Poly::kZeroDeg;
                    for (int i = 0; i < D; ++i) mx = std::max(mx, H.at(i, 0).deg());
                    keep = mx == e;
                } else {
                    int mx = Poly::kZeroDeg;
                    bool fullrank = false;
                    for (const auto& rows : detail::subsets(D, d)) {
                        MatR sub(d, d, H.at(0, 0));
                        for (int i = 0; i < d; ++i)
                            for (int jj = 0; jj < d; ++jj) sub.at(i, jj) = H.at(rows[i], jj);
                        Poly m = det(sub);
                        if (!m.is_zero()) { fullrank = true; mx = std::max(mx, m.deg()); }
                    }
                    keep = fullrank && mx == e;
                }
            }
            // primitivity filter (gcd of maximal minors a unit)
            if (keep) {
                Poly g = Poly::zero(F);
                for (const auto& rows : detail::subsets(D, d)) {
                    MatR sub(d, d, H.at(0, 0));
                    for (int i = 0; i < d; ++i)
                        for (int jj = 0; jj < d; ++jj) sub.at(i, jj) = H.at(rows[i], jj);
                    Poly m = det(sub);
                    if (m.is_zero()) continue;
                    g = g.is_zero() ? m.make_monic() : poly_gcd(g, m);
                    if (g.is_one()) break;
                }
                keep = !g.is_zero() && g.is_one();
            }
            // congruence filter
            if (keep && !spec.ideal.is_unit()) {
                for (int i = d; i < D && keep; ++i)
                    for (int c = 0; c < d && keep; ++c)
                        if (!spec.ideal.contains(H.at(i, c))) keep = false;
            }
            if (keep) {
                PartialLattice L(D, d, H);
                if (shards <= 1 || shard_key(L) % static_cast<uint64_t>(shards) ==
                                       static_cast<uint64_t>(shard))
                    sink(L);
            }
            // advance counter
            size_t s = 0;
            while (s < digits.size() && ++digits[s] == spec.q) digits[s++] = 0;
            if (s == digits.size() && !digits.empty()) break;
            if (digits.empty()) break;
        }
    }
}

inline std::vector<PartialLattice> enum_primitive_all(const EnumSpec& spec, long long budget = -1,
                                                      int shard = 0, int shards = 1) {
    std::vector<PartialLattice> out;
    enum_primitive(spec, [&](const PartialLattice& L) { out.push_back(L); }, budget, shard, shards);
    return out;
}

// Census through the orthogonal bijection: enumerate rank-1 primitive
// lattices of the same covolume in the dual and take orthogonals; must
// reproduce the direct d = D-1 census as a set of canonical forms.
inline std::vector<PartialLattice> enum_by_duality(const EnumSpec& spec, long long budget = -1) {
    if (spec.d != spec.D - 1) throw std::invalid_argument("enum_by_duality needs d = D-1");
    EnumSpec dual(spec.q, spec.D, 1, spec.covol_exp, IdealR::unit(Fq::make(spec.q)));
    std::vector<PartialLattice> out;
    enum_primitive(dual, [&](const PartialLattice& line) {
        PartialLattice orth = orthogonal_lattice(line);
        if (is_horizontal_mod(orth, spec.ideal)) out.push_back(orth);
    }, budget);
    std::sort(out.begin(), out.end());
    return out;
}

// reference oracle: generate-and-filter over all integral matrices with
// entries of degree <= covol_exp, canonicalized and deduplicated
inline std::vector<PartialLattice> enum_naive_oracle(const EnumSpec& spec) {
    const Fq F = Fq::make(spec.q);
    int D = spec.D, d = spec.d, e = spec.covol_exp;
    size_t cells = static_cast<size_t>(D) * d * (e + 1);
    std::vector<uint16_t> digits(cells, 0);
    std::vector<PartialLattice> out;
    while (true) {
        MatR B = matR_zero(F, D, d);
        size_t s = 0;
        for (int i = 0; i < D; ++i)
            for (int c = 0; c < d; ++c) {
                std::vector<FqElem> coefs(e + 1, F.zero());
                for (int k = 0; k <= e; ++k) coefs[k] = F.from_index(digits[s++]);
                B.at(i, c) = Poly(F, std::move(coefs));
            }
        try {
            PartialLattice L(D, d, B);
            if (L.covol_exp() == spec.covol_exp && is_primitive(L) &&
                is_horizontal_mod(L, spec.ideal))
                out.push_back(L);
        } catch (const std::invalid_argument&) {
            // rank-deficient sample
        }
        size_t k = 0;
        while (k < digits.size() && ++digits[k] == spec.q) digits[k++] = 0;
        if (k == digits.size()) break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace fqlat
