#pragma once

#include <optional>
#include <utility>

#include "poly.hpp"

namespace fqlat {

// Element of K = F_q(Y), reduced, monic denominator.
class RatFun {
  public:
    RatFun() = default;
    explicit RatFun(Poly num)
        : n_(std::move(num)), d_(Poly::one(n_.field())) {}
    RatFun(Poly num, Poly den) : n_(std::move(num)), d_(std::move(den)) { reduce(); }

    static RatFun zero(const Fq& F) { return RatFun(Poly::zero(F)); }
    static RatFun one(const Fq& F) { return RatFun(Poly::one(F)); }
    // Y^k for k of either sign
    static RatFun Y_pow(const Fq& F, int k) {
        Poly y = Poly::monomial(F, F.one(), k >= 0 ? k : -k);
        return k >= 0 ? RatFun(y) : RatFun(Poly::one(F), y);
    }

    const Poly& num() const { return n_; }
    const Poly& den() const { return d_; }
    const Fq& field() const { return n_.field(); }
    bool is_zero() const { return n_.is_zero(); }
    bool is_polynomial() const { return d_.is_one(); }

    RatFun operator+(const RatFun& o) const { return RatFun(n_ * o.d_ + o.n_ * d_, d_ * o.d_); }
    RatFun operator-(const RatFun& o) const { return RatFun(n_ * o.d_ - o.n_ * d_, d_ * o.d_); }
    RatFun operator*(const RatFun& o) const { return RatFun(n_ * o.n_, d_ * o.d_); }
    RatFun operator/(const RatFun& o) const {
        if (o.is_zero()) throw std::domain_error("division by zero");
        return RatFun(n_ * o.d_, d_ * o.n_);
    }
    RatFun negate() const { return RatFun(n_.negate(), d_); }
    RatFun inverse() const {
        if (is_zero()) throw std::domain_error("inverse of zero");
        return RatFun(d_, n_);
    }

    friend bool operator==(const RatFun& a, const RatFun& b) { return a.n_ == b.n_ && a.d_ == b.d_; }
    friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }

  private:
    void reduce() {
        if (d_.is_zero()) throw std::domain_error("zero denominator");
        if (n_.is_zero()) { d_ = Poly::one(n_.field()); return; }
        Poly g = poly_gcd(n_, d_);
        if (g.deg() > 0) { n_ = n_ / g; d_ = d_ / g; }
        FqElem li = n_.field().inv(d_.lc());
        n_ = n_.scale(li);
        d_ = d_.scale(li);
    }

    Poly n_, d_;
};

// valuation at the place at infinity: deg den - deg num; nullopt encodes +infinity (f = 0).
inline std::optional<int> valuation(const RatFun& f) {
    if (f.is_zero()) return std::nullopt;
    return f.den().deg() - f.num().deg();
}

// log_q |f| = -nu(f); nullopt encodes -infinity (f = 0).
inline std::optional<int> abs_value_exponent(const RatFun& f) {
    auto v = valuation(f);
    if (!v) return std::nullopt;
    return -*v;
}

inline bool is_integral_at_infinity(const RatFun& f) {  // nu(f) >= 0
    auto v = valuation(f);
    return !v || *v >= 0;
}
inline bool is_strictly_proper(const RatFun& f) {  // nu(f) >= 1
    auto v = valuation(f);
    return !v || *v >= 1;
}

// f = pol + prop with pol in F_q[Y] and nu(prop) >= 1; unique.
inline std::pair<Poly, RatFun> proper_split(const RatFun& f) {
    auto [q, r] = f.num().divmod(f.den());
    return {q, RatFun(r, f.den())};
}

} // namespace fqlat
