#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace fqlat {

// Element of F_q, stored as an index in [0, q).  For prime q the index is the
// residue; for q = p^e it packs the coefficient vector of the residue class
// modulo the table-selected irreducible, base p, little-endian.
struct FqElem {
    uint16_t v = 0;
    friend bool operator==(FqElem a, FqElem b) { return a.v == b.v; }
    friend bool operator!=(FqElem a, FqElem b) { return a.v != b.v; }
    friend bool operator<(FqElem a, FqElem b) { return a.v < b.v; }
};

namespace detail {

struct FqTables {
    long p = 0, e = 1, q = 0;
    std::vector<uint16_t> modulus;   // monic irreducible over F_p, little-endian, size e+1 (empty when e == 1)
    std::vector<uint16_t> add, mul;  // q*q flattened
    std::vector<uint16_t> neg, inv;  // inv[0] unused
};

inline bool prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// digits base p <-> packed index
inline std::vector<long> unpack(long v, long p, long e) {
    std::vector<long> d(e, 0);
    for (long i = 0; i < e; ++i) { d[i] = v % p; v /= p; }
    return d;
}
inline long pack(const std::vector<long>& d, long p) {
    long v = 0;
    for (size_t i = d.size(); i-- > 0;) v = v * p + d[i];
    return v;
}

// multiply residues of F_p[X]/(m) given as packed indices
inline long ext_mul(long a, long b, long p, long e, const std::vector<uint16_t>& m) {
    auto da = unpack(a, p, e), db = unpack(b, p, e);
    std::vector<long> prod(2 * e - 1, 0);
    for (long i = 0; i < e; ++i)
        for (long j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    // reduce modulo m (monic of degree e)
    for (long k = 2 * e - 2; k >= e; --k) {
        long c = prod[k];
        if (c == 0) continue;
        for (long i = 0; i < e; ++i)
            prod[k - e + i] = ((prod[k - e + i] - c * m[i]) % p + p * p) % p;
        prod[k] = 0;
    }
    prod.resize(e);
    return pack(prod, p);
}

// lexicographically first monic irreducible of degree e over F_p, by trial division
inline std::vector<uint16_t> pick_modulus(long p, long e) {
    long total = 1;
    for (long i = 0; i < e; ++i) total *= p;
    for (long low = 0; low < total; ++low) {
        std::vector<uint16_t> m(e + 1, 0);
        auto d = unpack(low, p, e);
        for (long i = 0; i < e; ++i) m[i] = static_cast<uint16_t>(d[i]);
        m[e] = 1;
        // irreducible iff no monic divisor of degree 1..e/2; test by dividing by all
        // monic polys of those degrees (e is small: q is desk scale)
        bool irred = true;
        for (long dd = 1; irred && 2 * dd <= e; ++dd) {
            long cnt = 1;
            for (long i = 0; i < dd; ++i) cnt *= p;
            for (long c = 0; c < cnt && irred; ++c) {
                std::vector<long> div = unpack(c, p, dd);
                div.push_back(1);
                // polynomial remainder of m by div over F_p
                std::vector<long> r(m.begin(), m.end());
                for (long k = e; k >= dd; --k) {
                    long lead = r[k] % p;
                    if (lead == 0) continue;
                    for (long i = 0; i <= dd; ++i)
                        r[k - dd + i] = ((r[k - dd + i] - lead * div[i]) % p + p * p) % p;
                }
                bool zero = true;
                for (long i = 0; i < dd; ++i)
                    if (r[i] % p != 0) zero = false;
                if (zero) irred = false;
            }
        }
        if (irred) return m;
    }
    throw std::logic_error("no irreducible found");
}

} // namespace detail

// Immutable finite-field context; cheap to copy, shared per q.
class Fq {
  public:
    Fq() = default;

    static Fq make(long q) {
        static std::map<long, std::shared_ptr<const detail::FqTables>> cache;
        static std::mutex mtx;
        std::lock_guard<std::mutex> lk(mtx);
        auto it = cache.find(q);
        if (it != cache.end()) return Fq(it->second);
        auto t = build(q);
        cache[q] = t;
        return Fq(t);
    }

    long q() const { return t_->q; }
    long p() const { return t_->p; }
    long ext_degree() const { return t_->e; }
    const std::vector<uint16_t>& modulus() const { return t_->modulus; }

    FqElem zero() const { return {0}; }
    FqElem one() const { return {1}; }
    FqElem of(long n) const {
        long p = t_->p;
        long r = ((n % p) + p) % p;  // integers embed through the prime field
        return {static_cast<uint16_t>(r)};
    }
    FqElem from_index(long v) const {
        if (v < 0 || v >= t_->q) throw std::invalid_argument("field element index out of range");
        return {static_cast<uint16_t>(v)};
    }

    FqElem add(FqElem a, FqElem b) const { return {t_->add[a.v * t_->q + b.v]}; }
    FqElem sub(FqElem a, FqElem b) const { return add(a, neg(b)); }
    FqElem mul(FqElem a, FqElem b) const { return {t_->mul[a.v * t_->q + b.v]}; }
    FqElem neg(FqElem a) const { return {t_->neg[a.v]}; }
    FqElem inv(FqElem a) const {
        if (a.v == 0) throw std::domain_error("inverse of zero");
        return {t_->inv[a.v]};
    }
    FqElem div(FqElem a, FqElem b) const { return mul(a, inv(b)); }

    bool same(const Fq& o) const { return t_ == o.t_; }
    bool valid() const { return t_ != nullptr; }

  private:
    explicit Fq(std::shared_ptr<const detail::FqTables> t) : t_(std::move(t)) {}

    static std::shared_ptr<const detail::FqTables> build(long q) {
        if (q < 2 || q > 512) throw std::invalid_argument("q out of supported range [2,512]");
        long p = 0, e = 0;
        for (long c = 2; c <= q; ++c) {
            if (!detail::prime(c)) continue;
            long pw = c, k = 1;
            while (pw < q) { pw *= c; ++k; }
            if (pw == q) { p = c; e = k; break; }
        }
        if (p == 0) throw std::invalid_argument("q is not a prime power");
        auto t = std::make_shared<detail::FqTables>();
        t->p = p; t->e = e; t->q = q;
        if (e > 1) t->modulus = detail::pick_modulus(p, e);
        t->add.resize(q * q);
        t->mul.resize(q * q);
        t->neg.resize(q);
        t->inv.resize(q);
        for (long a = 0; a < q; ++a) {
            auto da = detail::unpack(a, p, e);
            for (long b = 0; b < q; ++b) {
                auto db = detail::unpack(b, p, e);
                std::vector<long> s(e);
                for (long i = 0; i < e; ++i) s[i] = (da[i] + db[i]) % p;
                t->add[a * q + b] = static_cast<uint16_t>(detail::pack(s, p));
                long m = e == 1 ? (a * b) % p : detail::ext_mul(a, b, p, e, t->modulus);
                t->mul[a * q + b] = static_cast<uint16_t>(m);
            }
            std::vector<long> n(e);
            for (long i = 0; i < e; ++i) n[i] = (p - da[i]) % p;
            t->neg[a] = static_cast<uint16_t>(detail::pack(n, p));
        }
        for (long a = 1; a < q; ++a)
            for (long b = 1; b < q; ++b)
                if (t->mul[a * q + b] == 1) { t->inv[a] = static_cast<uint16_t>(b); break; }
        for (long a = 1; a < q; ++a)
            if (t->inv[a] == 0) throw std::logic_error("field table build failed: non-invertible element");
        return t;
    }

    std::shared_ptr<const detail::FqTables> t_;
};

} // namespace fqlat
