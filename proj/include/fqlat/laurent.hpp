#pragma once

#include <climits>

#include "ratfun.hpp"

namespace fqlat {

// Truncated Laurent expansion at infinity in powers of pi = Y^{-1}:
//   sum_{k=lead}^{lead+len-1} c[k-lead] pi^k   exact below exponent `prec`.
// coeffs empty means zero modulo pi^prec; prec == kExact means exactly zero.
class LaurentJet {
  public:
    static constexpr int kExact = INT_MAX;

    LaurentJet() = default;
    LaurentJet(Fq F, int lead, std::vector<FqElem> c, int prec)
        : F_(std::move(F)), lead_(lead), c_(std::move(c)), prec_(prec) {
        normalize();
    }
    static LaurentJet exact_zero(const Fq& F) { return LaurentJet(F, 0, {}, kExact); }
    static LaurentJet zero_mod(const Fq& F, int prec) { return LaurentJet(F, 0, {}, prec); }

    const Fq& field() const { return F_; }
    bool is_zero() const { return c_.empty(); }
    bool is_exact_zero() const { return c_.empty() && prec_ == kExact; }
    int leading_exponent() const {
        if (is_zero()) throw std::domain_error("leading exponent of zero jet");
        return lead_;
    }
    int precision() const { return prec_; }
    const std::vector<FqElem>& coeffs() const { return c_; }
    FqElem coeff(int k) const {  // coefficient of pi^k, valid for k < prec
        if (k >= prec_) throw std::domain_error("coefficient beyond jet precision");
        if (c_.empty() || k < lead_ || k >= lead_ + static_cast<int>(c_.size())) return F_.zero();
        return c_[k - lead_];
    }

    LaurentJet truncated(int p) const {
        if (p >= prec_) return *this;
        std::vector<FqElem> c;
        for (int k = lead_; k < std::min(p, lead_ + static_cast<int>(c_.size())); ++k)
            c.push_back(c_[k - lead_]);
        return LaurentJet(F_, lead_, std::move(c), p);
    }

    LaurentJet operator+(const LaurentJet& o) const {
        int p = std::min(prec_, o.prec_);
        if (is_zero() && o.is_zero()) return zero_mod(F_, p);
        int lo = is_zero() ? o.lead_ : (o.is_zero() ? lead_ : std::min(lead_, o.lead_));
        std::vector<FqElem> c;
        for (int k = lo; k < p; ++k) c.push_back(F_.add(at(k), o.at(k)));
        return LaurentJet(F_, lo, std::move(c), p);
    }
    LaurentJet operator-(const LaurentJet& o) const { return *this + o.negate(); }
    LaurentJet negate() const {
        std::vector<FqElem> c(c_);
        for (auto& x : c) x = F_.neg(x);
        return LaurentJet(F_, lead_, std::move(c), prec_);
    }
    LaurentJet operator*(const LaurentJet& o) const {
        if (is_exact_zero() || o.is_exact_zero()) return exact_zero(F_);
        // pessimistic precision: O(pi^pa)*lead lb and symmetrically
        long pa = prec_, pb = o.prec_;
        long la = is_zero() ? pa : lead_, lb = o.is_zero() ? pb : o.lead_;
        long p = std::min(pa == kExact ? static_cast<long>(kExact) : pa + lb,
                          pb == kExact ? static_cast<long>(kExact) : pb + la);
        int prec = p >= kExact ? kExact : static_cast<int>(p);
        if (is_zero() || o.is_zero()) return zero_mod(F_, prec);
        int lo = lead_ + o.lead_;
        std::vector<FqElem> c(prec == kExact ? c_.size() + o.c_.size() - 1 : prec - lo, F_.zero());
        for (size_t i = 0; i < c_.size(); ++i)
            for (size_t j = 0; j < o.c_.size(); ++j) {
                size_t k = i + j;
                if (k < c.size()) c[k] = F_.add(c[k], F_.mul(c_[i], o.c_[j]));
            }
        return LaurentJet(F_, lo, std::move(c), prec);
    }

    // equality of the shared exactly-known part
    friend bool eq_at_shared_precision(const LaurentJet& a, const LaurentJet& b) {
        int p = std::min(a.prec_, b.prec_);
        return a.truncated(p) == b.truncated(p);
    }
    friend bool operator==(const LaurentJet& a, const LaurentJet& b) {
        return a.lead_ == b.lead_ && a.prec_ == b.prec_ && a.c_ == b.c_;
    }
    friend bool operator!=(const LaurentJet& a, const LaurentJet& b) { return !(a == b); }

  private:
    FqElem at(int k) const {
        if (c_.empty() || k < lead_ || k >= lead_ + static_cast<int>(c_.size())) return F_.zero();
        return c_[k - lead_];
    }
    void normalize() {
        size_t i = 0;
        while (i < c_.size() && c_[i].v == 0) ++i;
        if (i > 0) { c_.erase(c_.begin(), c_.begin() + i); lead_ += static_cast<int>(i); }
        while (!c_.empty() && c_.back().v == 0) c_.pop_back();
        if (c_.empty()) lead_ = prec_;
        if (!c_.empty() && prec_ != kExact && lead_ >= prec_)
            throw std::logic_error("jet coefficient at or beyond precision");
    }

    Fq F_;
    int lead_ = 0;
    std::vector<FqElem> c_;
    int prec_ = kExact;
};

// Expansion of f in powers of Y^{-1}, exact below exponent `precision`.
inline LaurentJet laurent_jet(const RatFun& f, int precision) {
    const Fq& F = f.field();
    if (f.is_zero()) return LaurentJet::exact_zero(F);
    int v = *valuation(f);
    if (precision <= v) return LaurentJet::zero_mod(F, precision);
    int n = precision - v;  // number of series coefficients needed
    const Poly &P = f.num(), &Q = f.den();
    int dp = P.deg(), dq = Q.deg();
    // reversed coefficient sequences: p(t) = t^dp P(1/t), q(t) = t^dq Q(1/t), q(0) = 1
    auto pc = [&](int i) { return i <= dp ? P.coeff(dp - i) : F.zero(); };
    auto qc = [&](int i) { return i <= dq ? Q.coeff(dq - i) : F.zero(); };
    std::vector<FqElem> c(n, F.zero());
    for (int j = 0; j < n; ++j) {
        FqElem s = pc(j);
        for (int i = 0; i < j; ++i) s = F.sub(s, F.mul(c[i], qc(j - i)));
        c[j] = s;  // q(0) = lc(Q) = 1, denominator monic
    }
    return LaurentJet(F, v, std::move(c), precision);
}

// f scaled so its leading Laurent coefficient is 1 (f nonzero).
inline RatFun normalize_leading_unit(const RatFun& f) {
    if (f.is_zero()) throw std::domain_error("normalizing zero");
    FqElem lead = f.num().lc();  // denominator is monic
    return f * RatFun(Poly::constant(f.field(), f.field().inv(lead)));
}

} // namespace fqlat
