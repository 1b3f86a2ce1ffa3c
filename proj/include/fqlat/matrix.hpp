#pragma once

#include <functional>

#include "laurent.hpp"
#include "ratfun.hpp"

namespace fqlat {

template <class T>
class Mat {
  public:
    Mat() = default;
    Mat(int rows, int cols, T fill) : r_(rows), c_(cols), e_(static_cast<size_t>(rows) * cols, fill) {}

    int rows() const { return r_; }
    int cols() const { return c_; }
    T& at(int i, int j) { return e_[static_cast<size_t>(i) * c_ + j]; }
    const T& at(int i, int j) const { return e_[static_cast<size_t>(i) * c_ + j]; }

    Mat transpose() const {
        Mat t(c_, r_, e_.empty() ? T() : e_[0]);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) t.at(j, i) = at(i, j);
        return t;
    }
    Mat block(int i0, int j0, int h, int w) const {
        Mat b(h, w, e_[0]);
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < w; ++j) b.at(i, j) = at(i0 + i, j0 + j);
        return b;
    }
    void paste(int i0, int j0, const Mat& b) {
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j) at(i0 + i, j0 + j) = b.at(i, j);
    }
    template <class F>
    auto map(F f) const -> Mat<decltype(f(std::declval<const T&>()))> {
        Mat<decltype(f(std::declval<const T&>()))> m(r_, c_, f(e_[0]));
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) m.at(i, j) = f(at(i, j));
        return m;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.e_ == b.e_;
    }
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

  private:
    int r_ = 0, c_ = 0;
    std::vector<T> e_;
};

using MatR = Mat<Poly>;    // entries in F_q[Y]
using MatK = Mat<RatFun>;  // entries in F_q(Y)

inline MatR matR_zero(const Fq& F, int r, int c) { return MatR(r, c, Poly::zero(F)); }
inline MatR matR_identity(const Fq& F, int n) {
    MatR m = matR_zero(F, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Poly::one(F);
    return m;
}
inline MatK matK_zero(const Fq& F, int r, int c) { return MatK(r, c, RatFun::zero(F)); }
inline MatK matK_identity(const Fq& F, int n) {
    MatK m = matK_zero(F, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = RatFun::one(F);
    return m;
}
inline MatK to_matK(const MatR& a) {
    return a.map([](const Poly& p) { return RatFun(p); });
}

template <class T>
Mat<T> mat_mul(const Mat<T>& a, const Mat<T>& b) {
    Mat<T> m(a.rows(), b.cols(), a.at(0, 0) - a.at(0, 0));
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const T& x = a.at(i, k);
            for (int j = 0; j < b.cols(); ++j) m.at(i, j) = m.at(i, j) + x * b.at(k, j);
        }
    return m;
}
template <class T>
Mat<T> mat_add(const Mat<T>& a, const Mat<T>& b) {
    Mat<T> m = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j) + b.at(i, j);
    return m;
}
template <class T>
Mat<T> mat_sub(const Mat<T>& a, const Mat<T>& b) {
    Mat<T> m = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j) - b.at(i, j);
    return m;
}
template <class T, class S>
Mat<T> mat_scale(const Mat<T>& a, const S& s) {
    Mat<T> m = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j) * s;
    return m;
}

// determinant by cofactor expansion; sizes here are desk scale
template <class T>
T mat_det(const Mat<T>& a, const T& one) {
    int n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("det of non-square matrix");
    if (n == 1) return a.at(0, 0);
    if (n == 2) return a.at(0, 0) * a.at(1, 1) - a.at(0, 1) * a.at(1, 0);
    T acc = one - one;
    T sign = one;
    for (int j = 0; j < n; ++j) {
        Mat<T> sub(n - 1, n - 1, one);
        for (int i = 1; i < n; ++i) {
            int jj = 0;
            for (int k = 0; k < n; ++k) {
                if (k == j) continue;
                sub.at(i - 1, jj++) = a.at(i, k);
            }
        }
        acc = acc + sign * a.at(0, j) * mat_det(sub, one);
        sign = (one - one) - sign;
    }
    return acc;
}

inline Poly det(const MatR& a) { return mat_det(a, Poly::one(a.at(0, 0).field())); }
inline RatFun det(const MatK& a) { return mat_det(a, RatFun::one(a.at(0, 0).field())); }

// inverse over K by Gauss-Jordan
inline MatK inverse(const MatK& a) {
    int n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("inverse of non-square matrix");
    const Fq& F = a.at(0, 0).field();
    MatK w = a, inv = matK_identity(F, n);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (!w.at(i, col).is_zero()) { piv = i; break; }
        if (piv < 0) throw std::domain_error("singular matrix");
        for (int j = 0; j < n; ++j) {
            std::swap(w.at(col, j), w.at(piv, j));
            std::swap(inv.at(col, j), inv.at(piv, j));
        }
        RatFun pi = w.at(col, col).inverse();
        for (int j = 0; j < n; ++j) {
            w.at(col, j) = w.at(col, j) * pi;
            inv.at(col, j) = inv.at(col, j) * pi;
        }
        for (int i = 0; i < n; ++i) {
            if (i == col || w.at(i, col).is_zero()) continue;
            RatFun f = w.at(i, col);
            for (int j = 0; j < n; ++j) {
                w.at(i, j) = w.at(i, j) - f * w.at(col, j);
                inv.at(i, j) = inv.at(i, j) - f * inv.at(col, j);
            }
        }
    }
    return inv;
}

// sup-norm exponent log_q ||X|| of a nonzero matrix; nullopt for the zero matrix
inline std::optional<int> sup_norm_exponent(const MatK& a) {
    std::optional<int> best;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            auto e = abs_value_exponent(a.at(i, j));
            if (e && (!best || *e > *best)) best = e;
        }
    return best;
}

inline bool entries_integral_at_infinity(const MatK& a) {
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (!is_integral_at_infinity(a.at(i, j))) return false;
    return true;
}

inline bool entries_polynomial(const MatK& a) {
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (!a.at(i, j).is_polynomial()) return false;
    return true;
}

inline MatR to_matR(const MatK& a) {
    if (!entries_polynomial(a)) throw std::invalid_argument("matrix has non-polynomial entries");
    return a.map([](const RatFun& f) { return f.num(); });
}

// monic generator of { p in R : p*X has polynomial entries }
inline Poly minimal_denominator(const MatK& a) {
    const Fq& F = a.at(0, 0).field();
    Poly l = Poly::one(F);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const Poly& d = a.at(i, j).den();
            l = (l * d) / poly_gcd(l, d);
        }
    return l.make_monic();
}

} // namespace fqlat
