#pragma once

#include <algorithm>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "fq.hpp"

namespace fqlat {

// Polynomial in Y over F_q, little-endian coefficients, no trailing zeros.
// deg(0) is the sentinel kZeroDeg.
class Poly {
  public:
    static constexpr int kZeroDeg = -1;

    Poly() = default;
    explicit Poly(Fq F) : F_(std::move(F)) {}
    Poly(Fq F, std::vector<FqElem> c) : F_(std::move(F)), c_(std::move(c)) { trim(); }

    static Poly zero(const Fq& F) { return Poly(F); }
    static Poly constant(const Fq& F, FqElem a) {
        Poly r(F);
        if (a.v != 0) r.c_ = {a};
        return r;
    }
    static Poly one(const Fq& F) { return constant(F, F.one()); }
    static Poly Y(const Fq& F) { return Poly(F, {F.zero(), F.one()}); }
    // c * Y^k
    static Poly monomial(const Fq& F, FqElem c, int k) {
        Poly r(F);
        if (c.v != 0) {
            r.c_.assign(k + 1, F.zero());
            r.c_[k] = c;
        }
        return r;
    }
    static Poly from_ints(const Fq& F, std::initializer_list<long> cs) {
        std::vector<FqElem> v;
        for (long x : cs) v.push_back(F.of(x));
        return Poly(F, std::move(v));
    }

    const Fq& field() const { return F_; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0].v == 1; }
    bool is_unit() const { return c_.size() == 1; }
    int deg() const { return static_cast<int>(c_.size()) - 1; }
    FqElem coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : F_.zero();
    }
    FqElem lc() const {
        if (is_zero()) throw std::domain_error("leading coefficient of zero");
        return c_.back();
    }
    bool is_monic() const { return !is_zero() && c_.back().v == 1; }
    const std::vector<FqElem>& coeffs() const { return c_; }

    Poly operator+(const Poly& o) const {
        check(o);
        std::vector<FqElem> r(std::max(c_.size(), o.c_.size()), F_.zero());
        for (size_t i = 0; i < r.size(); ++i) r[i] = F_.add(coeff(i), o.coeff(i));
        return Poly(F_, std::move(r));
    }
    Poly operator-(const Poly& o) const { return *this + o.negate(); }
    Poly negate() const {
        std::vector<FqElem> r(c_);
        for (auto& x : r) x = F_.neg(x);
        return Poly(F_, std::move(r));
    }
    Poly operator*(const Poly& o) const {
        check(o);
        if (is_zero() || o.is_zero()) return zero(F_);
        std::vector<FqElem> r(c_.size() + o.c_.size() - 1, F_.zero());
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].v == 0) continue;
            for (size_t j = 0; j < o.c_.size(); ++j)
                r[i + j] = F_.add(r[i + j], F_.mul(c_[i], o.c_[j]));
        }
        return Poly(F_, std::move(r));
    }
    Poly scale(FqElem a) const {
        std::vector<FqElem> r(c_);
        for (auto& x : r) x = F_.mul(x, a);
        return Poly(F_, std::move(r));
    }
    Poly make_monic() const {
        if (is_zero()) return *this;
        return scale(F_.inv(lc()));
    }
    Poly shift(int k) const {  // * Y^k, k >= 0
        if (is_zero()) return *this;
        std::vector<FqElem> r(c_.size() + k, F_.zero());
        std::copy(c_.begin(), c_.end(), r.begin() + k);
        return Poly(F_, std::move(r));
    }

    // euclidean division
    std::pair<Poly, Poly> divmod(const Poly& b) const {
        check(b);
        if (b.is_zero()) throw std::domain_error("poly division by zero");
        Poly r = *this;
        Poly q = zero(F_);
        FqElem li = F_.inv(b.lc());
        while (!r.is_zero() && r.deg() >= b.deg()) {
            int k = r.deg() - b.deg();
            FqElem c = F_.mul(r.lc(), li);
            q = q + monomial(F_, c, k);
            r = r - b.shift(k).scale(c);
        }
        return {q, r};
    }
    Poly operator/(const Poly& b) const { return divmod(b).first; }
    Poly operator%(const Poly& b) const { return divmod(b).second; }

    FqElem eval(FqElem x) const {
        FqElem acc = F_.zero();
        for (size_t i = c_.size(); i-- > 0;) acc = F_.add(F_.mul(acc, x), c_[i]);
        return acc;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.c_.size() == b.c_.size() && std::equal(a.c_.begin(), a.c_.end(), b.c_.begin());
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
    friend bool operator<(const Poly& a, const Poly& b) {  // deterministic order for dedup/sort
        if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
        for (size_t i = a.c_.size(); i-- > 0;)
            if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
        return false;
    }

  private:
    void check(const Poly& o) const {
        if (!F_.same(o.F_)) throw std::invalid_argument("mixed fields");
    }
    void trim() {
        while (!c_.empty() && c_.back().v == 0) c_.pop_back();
    }

    Fq F_;
    std::vector<FqElem> c_;
};

// extended gcd: g = u*a + v*b, g monic.  Errors on (0,0).
inline std::tuple<Poly, Poly, Poly> poly_xgcd(const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) throw std::invalid_argument("zero gcd undefined");
    const Fq& F = a.field();
    Poly r0 = a, r1 = b;
    Poly u0 = Poly::one(F), u1 = Poly::zero(F);
    Poly v0 = Poly::zero(F), v1 = Poly::one(F);
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        r0 = r1; r1 = r;
        Poly u2 = u0 - q * u1; u0 = u1; u1 = u2;
        Poly v2 = v0 - q * v1; v0 = v1; v1 = v2;
    }
    FqElem li = F.inv(r0.lc());
    return {r0.scale(li), u0.scale(li), v0.scale(li)};
}

inline Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) return a;
    if (a.is_zero()) return b.make_monic();
    if (b.is_zero()) return a.make_monic();
    return std::get<0>(poly_xgcd(a, b));
}

} // namespace fqlat
