#pragma once

#include "ideal.hpp"
#include "rational.hpp"

namespace fqlat {

// Dedekind zeta of the genus-0 curve P^1 over F_q, as a rational function of
// q^{-s} evaluated at integer s.  Poles at s = 0 and s = 1.
inline Rational zeta_K(long q, long s) {
    if (s == 0 || s == 1) throw std::domain_error("zeta pole");
    Rational a = Rational(1) - q_pow(q, -s);
    Rational b = Rational(1) - q_pow(q, 1 - s);
    return Rational(1) / (a * b);
}

// literal ideal-sum zeta of the affine ring F_q[Y]: sum over monic f of q^{-s deg f}
inline Rational zeta_affine(long q, long s) {
    if (s == 1) throw std::domain_error("zeta pole");
    return Rational(1) / (Rational(1) - q_pow(q, 1 - s));
}

inline BigInt card_GL(long l, long q) {
    BigInt acc = 1;
    for (long i = 0; i < l * (l - 1) / 2; ++i) acc *= q;
    for (long i = 1; i <= l; ++i) {
        BigInt t = 1;
        for (long j = 0; j < i; ++j) t *= q;
        acc *= t - 1;
    }
    return acc;
}
inline BigInt card_SL(long l, long q) { return card_GL(l, q) / (q - 1); }

// mass of the lower Bruhat cell of the Grassmannian (flat part):
// c_1 = q^{dn} prod_{i<=d}(q^i-1) prod_{i<=n}(q^i-1) / prod_{i<=D}(q^i-1)
inline Rational c1(long d, long n, long q) {
    if (d < 1 || n < 1) throw std::invalid_argument("c1 needs d,n >= 1");
    Rational num = q_pow(q, d * n);
    for (long i = 1; i <= d; ++i) num *= q_pow(q, i) - 1;
    for (long i = 1; i <= n; ++i) num *= q_pow(q, i) - 1;
    Rational den = 1;
    for (long i = 1; i <= d + n; ++i) den *= q_pow(q, i) - 1;
    return num / den;
}

// [Gamma : Gamma_I] = N(I)^{dn} prod_{p|I} prod_{i=1}^{d} (N(p)^i - N(p)^{-n}) / (N(p)^i - 1)
inline Rational index_gamma_I(long d, long n, long q, const IdealR& I) {
    Rational acc = 1;
    for (long i = 0; i < d * n; ++i) acc *= q_pow(q, I.deg());
    for (const auto& [p, mult] : I.factors()) {
        long degp = p.deg();
        for (long i = 1; i <= d; ++i)
            acc *= (q_pow(q, i * degp) - q_pow(q, -n * degp)) / (q_pow(q, i * degp) - 1);
    }
    return acc;
}

// [G(O) : H_N] = q^{N(D^2-1) - D(D+1)/2 + 1} prod_{i=2}^{D} (q^i - 1)
inline Rational reduction_index(long D, long q, long N) {
    if (N < 1) throw std::invalid_argument("reduction_index needs N >= 1");
    Rational acc = q_pow(q, N * (D * D - 1) - D * (D + 1) / 2 + 1);
    for (long i = 2; i <= D; ++i) acc *= q_pow(q, i) - 1;
    return acc;
}

// ||mu_{SL_k(K_nu)/SL_k(R_nu)}|| = prod_{i=1}^{k-1} zeta_K(-i) / (q^i - 1)
inline Rational mass_sl_mod_sl(long k, long q) {
    Rational acc = 1;
    for (long i = 1; i <= k - 1; ++i) acc *= zeta_K(q, -i) / (q_pow(q, i) - 1);
    return acc;
}

// ||mu_{Lat^1_k}|| = ||mu_{Sh^1_k}|| = mass_sl_mod_sl / (q-1)
inline Rational mass_lat1(long k, long q) { return mass_sl_mod_sl(k, q) / (q - 1); }

// ||mu_{Lat^1_{d,n}}|| = (q-1) ||mu_{Lat^1_d}|| ||mu_{Lat^1_n}||
inline Rational mass_latpair(long d, long n, long q) {
    return (q - 1) * mass_lat1(d, q) * mass_lat1(n, q);
}

// c_I = q^{(g-1)(D^2-1-dn)} prod_{i=1}^{D-1} zeta_K(i+1)/(q^i-1) * [Gamma:Gamma_I] factors,
// genus 0 here
inline Rational c_I(long d, long n, long q, const IdealR& I) {
    long D = d + n;
    Rational acc = q_pow(q, -(D * D - 1 - d * n));
    for (long i = 1; i <= D - 1; ++i) acc *= zeta_K(q, i + 1) / (q_pow(q, i) - 1);
    return acc * index_gamma_I(d, n, q, I);
}

inline Rational c_prime(long d, long n, long q) {
    Fq F = Fq::make(q);
    return (q - 1) * c_I(d, n, q, IdealR::unit(F));
}

// Every arithmetic constant the experiments consume, exactly.
struct ConstantsBundle {
    long q, d, n, D;
    Poly ideal_gen;
    std::vector<std::pair<long, Rational>> zeta_values;  // s in {-(D-1)..-1} and {2..D}
    Rational c1_value;
    Rational index_gamma;
    Rational cI_value;
    Rational c_prime_value;
    Rational mass_lat_d, mass_lat_n, mass_lat_D, mass_pair;
    Rational mass_sh_d, mass_sh_n;
    Rational mass_slsl_d, mass_slsl_n;
    Rational reduction_index_N1, reduction_index_N2;
};

inline ConstantsBundle constants_bundle(long q, long d, long n, const IdealR& I) {
    ConstantsBundle b;
    b.q = q; b.d = d; b.n = n; b.D = d + n;
    b.ideal_gen = I.gen();
    for (long i = b.D - 1; i >= 1; --i) b.zeta_values.emplace_back(-i, zeta_K(q, -i));
    for (long s = 2; s <= b.D; ++s) b.zeta_values.emplace_back(s, zeta_K(q, s));
    b.c1_value = c1(d, n, q);
    b.index_gamma = index_gamma_I(d, n, q, I);
    b.cI_value = c_I(d, n, q, I);
    b.c_prime_value = c_prime(d, n, q);
    b.mass_lat_d = mass_lat1(d, q);
    b.mass_lat_n = mass_lat1(n, q);
    b.mass_lat_D = mass_lat1(b.D, q);
    b.mass_pair = mass_latpair(d, n, q);
    b.mass_sh_d = b.mass_lat_d;
    b.mass_sh_n = b.mass_lat_n;
    b.mass_slsl_d = mass_sl_mod_sl(d, q);
    b.mass_slsl_n = mass_sl_mod_sl(n, q);
    b.reduction_index_N1 = reduction_index(b.D, q, 1);
    b.reduction_index_N2 = reduction_index(b.D, q, 2);
    return b;
}

} // namespace fqlat
