#pragma once
// Exact scalars, truncated Laurent series in u^-1 and small dense matrices.

#include <gmpxx.h>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace twy {

using Q = mpq_class;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingularError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// raised when a weight turns out not to be generic enough (zero denominator)
struct GenericityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "p/q" (or "p" when q == 1)
std::string qstr(const Q& q);
Q qparse(const std::string& s);

inline Q qint(long v) { return Q(v); }
inline Q qfrac(long p, long d) {
    Q r(p, d);
    r.canonicalize();
    return r;
}

// Ring traits: every coefficient ring used inside a series supplies these.
template <class R>
struct RingTraits;

template <>
struct RingTraits<Q> {
    static Q zero_like(const Q&) { return Q(0); }
    static Q one_like(const Q&) { return Q(1); }
    static bool is_zero(const Q& a) { return sgn(a) == 0; }
    static Q scale(const Q& a, const Q& s) { return a * s; }
    static Q from_scalar(const Q&, const Q& s) { return s; }
    static bool same_ring(const Q&, const Q&) { return true; }
};

// Series  sum_{e=-2}^{K} c_e u^{-e}.  Coefficients with e <= prec are exact;
// beyond prec they are unknown (lost to truncation), e.g. after multiplying
// by u^2.  prec never exceeds K.
template <class R>
class TruncSeries {
public:
    static constexpr int kMinExp = -2;

    TruncSeries() = default;
    TruncSeries(int K, const R& zero) : K_(K), prec_(K), c_(K + 3, RingTraits<R>::zero_like(zero)) {
        if (K < 0) throw ConfigError("truncation order must be nonnegative");
    }

    static TruncSeries constant(int K, const R& value) {
        TruncSeries s(K, value);
        s.c_[2] = value;
        return s;
    }
    // the monomial  value * u^{-e}
    static TruncSeries monomial(int K, int e, const R& value) {
        TruncSeries s(K, value);
        s.set(e, value);
        return s;
    }

    int K() const { return K_; }
    int prec() const { return prec_; }
    void set_prec(int p) { prec_ = std::min(p, K_); }

    const R& operator[](int e) const { return c_.at(e + 2); }
    R& at(int e) { return c_.at(e + 2); }
    void set(int e, const R& v) {
        if (e < kMinExp || e > K_) throw ConfigError("exponent outside the Laurent range");
        c_[e + 2] = v;
    }
    const R& zero_elem() const { return c_[0]; }

    // smallest exponent with a (known) nonzero coefficient, prec+1 if none
    int valuation() const {
        for (int e = kMinExp; e <= prec_; ++e)
            if (!RingTraits<R>::is_zero(c_[e + 2])) return e;
        return prec_ + 1;
    }
    bool is_zero_upto(int p) const {
        for (int e = kMinExp; e <= std::min(p, K_); ++e)
            if (!RingTraits<R>::is_zero(c_[e + 2])) return false;
        return true;
    }

    void check_compatible(const TruncSeries& o) const {
        if (K_ != o.K_) throw ConfigError("truncation orders differ");
    }

    TruncSeries& operator+=(const TruncSeries& o) {
        check_compatible(o);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
        prec_ = std::min(prec_, o.prec_);
        return *this;
    }
    TruncSeries& operator-=(const TruncSeries& o) {
        check_compatible(o);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
        prec_ = std::min(prec_, o.prec_);
        return *this;
    }
    friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
    friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
    TruncSeries operator-() const {
        TruncSeries r = *this;
        for (auto& x : r.c_) x = RingTraits<R>::scale(x, Q(-1));
        return r;
    }
    TruncSeries scaled(const Q& s) const {
        TruncSeries r = *this;
        for (auto& x : r.c_) x = RingTraits<R>::scale(x, s);
        return r;
    }

    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
        a.check_compatible(b);
        const int va = a.valuation(), vb = b.valuation();
        int p = std::min({a.K_, a.prec_ + vb, b.prec_ + va});
        TruncSeries r(a.K_, a.c_[0]);
        for (int i = kMinExp; i <= a.prec_; ++i) {
            const R& x = a.c_[i + 2];
            if (RingTraits<R>::is_zero(x)) continue;
            for (int j = kMinExp; j <= b.prec_; ++j) {
                const R& y = b.c_[j + 2];
                if (RingTraits<R>::is_zero(y)) continue;
                int e = i + j;
                if (e > p) break;
                if (e < kMinExp) throw ConfigError("product leaves the Laurent range");
                r.c_[e + 2] = r.c_[e + 2] + x * y;
            }
        }
        r.prec_ = p;
        return r;
    }

    // u -> -u
    TruncSeries negate_var() const {
        TruncSeries r = *this;
        for (int e = kMinExp; e <= K_; ++e)
            if (e % 2 != 0) r.c_[e + 2] = RingTraits<R>::scale(r.c_[e + 2], Q(-1));
        return r;
    }

    // Input is read as a series in (u - z)^{-1}; returns its expansion in u^{-1}.
    // Only nonnegative exponents may be present (a power series in (u-z)^{-1}).
    TruncSeries reexpand(const Q& z) const {
        for (int e = kMinExp; e < 0; ++e)
            if (!RingTraits<R>::is_zero(c_[e + 2]))
                throw ConfigError("reexpand needs a power series in (u-z)^{-1}");
        TruncSeries r(K_, c_[0]);
        r.c_[2] = c_[2];
        // (u-z)^{-k} = sum_j C(k+j-1, j) z^j u^{-k-j}
        for (int k = 1; k <= prec_; ++k) {
            const R& x = c_[k + 2];
            if (RingTraits<R>::is_zero(x)) continue;
            mpz_class binom = 1;
            Q zp = 1;
            for (int j = 0; k + j <= prec_; ++j) {
                if (j > 0) {
                    binom = binom * (k + j - 1) / j;
                    zp *= z;
                }
                Q coef = Q(binom) * zp;
                if (sgn(coef) != 0) r.c_[k + j + 2] = r.c_[k + j + 2] + RingTraits<R>::scale(x, coef);
            }
        }
        r.prec_ = prec_;
        return r;
    }

    // Convenience: the series s(u + w) for a power series s in u^{-1}
    TruncSeries shift_arg(const Q& w) const { return reexpand(-w); }

    bool equal_upto(const TruncSeries& o, int p) const {
        int q = std::min({p, prec_, o.prec_});
        for (int e = kMinExp; e <= q; ++e) {
            R d = c_[e + 2] - o.c_[e + 2];
            if (!RingTraits<R>::is_zero(d)) return false;
        }
        return true;
    }
    // first exponent <= p where the two series differ, or p+1
    int first_difference(const TruncSeries& o, int p) const {
        int q = std::min({p, prec_, o.prec_});
        for (int e = kMinExp; e <= q; ++e) {
            R d = c_[e + 2] - o.c_[e + 2];
            if (!RingTraits<R>::is_zero(d)) return e;
        }
        return q + 1;
    }

    template <class F>
    auto map(F f) const -> TruncSeries<decltype(f(std::declval<R>()))> {
        using S = decltype(f(std::declval<R>()));
        TruncSeries<S> r(K_, f(c_[0]));
        for (int e = kMinExp; e <= K_; ++e) r.set(e, f(c_[e + 2]));
        r.set_prec(prec_);
        return r;
    }

private:
    int K_ = 0;
    int prec_ = 0;
    std::vector<R> c_;
};

// Series with constant term a unit of Q-valued leading coefficient; computes
// the two-sided inverse up to the known precision.
template <class R>
TruncSeries<R> series_inv(const TruncSeries<R>& a, const R& one) {
    if (a.valuation() != 0) throw SingularError("series_inv: constant term missing or negative powers present");
    // require constant term to be the scalar 1 times a rational unit
    const R& c0 = a[0];
    R diff = c0 - one;
    Q lead;
    bool scalar_one = RingTraits<R>::is_zero(diff);
    if (!scalar_one) throw SingularError("series_inv: constant term is not 1");
    TruncSeries<R> r(a.K(), c0);
    r.set(0, one);
    // b_e = - sum_{j=1}^{e} a_j b_{e-j}
    for (int e = 1; e <= a.prec(); ++e) {
        R acc = RingTraits<R>::zero_like(c0);
        for (int j = 1; j <= e; ++j) acc = acc + a[j] * r[e - j];
        r.set(e, RingTraits<R>::scale(acc, Q(-1)));
    }
    r.set_prec(a.prec());
    return r;
}

inline TruncSeries<Q> series_inv(const TruncSeries<Q>& a) {
    if (a.valuation() != 0) throw SingularError("series_inv: zero constant term");
    Q c0 = a[0];
    TruncSeries<Q> r(a.K(), Q(0));
    r.set(0, 1 / c0);
    for (int e = 1; e <= a.prec(); ++e) {
        Q acc = 0;
        for (int j = 1; j <= e; ++j) acc += a[j] * r[e - j];
        r.set(e, -acc / c0);
    }
    r.set_prec(a.prec());
    return r;
}

// Two-variable series  sum c_{e,f} u^{-e} v^{-f},  -2 <= e,f <= K.
// Known exactly on the box e <= pu, f <= pv.
template <class R>
class BiTruncSeries {
public:
    BiTruncSeries() = default;
    BiTruncSeries(int K, const R& zero)
        : K_(K), pu_(K), pv_(K), c_((K + 3) * (K + 3), RingTraits<R>::zero_like(zero)) {}

    // a(u) * b(v), the u-factor written first
    static BiTruncSeries outer(const TruncSeries<R>& a, const TruncSeries<R>& b) {
        a.check_compatible(b);
        BiTruncSeries r(a.K(), a.zero_elem());
        for (int e = -2; e <= a.prec(); ++e) {
            if (RingTraits<R>::is_zero(a[e])) continue;
            for (int f = -2; f <= b.prec(); ++f) {
                if (RingTraits<R>::is_zero(b[f])) continue;
                r.ref(e, f) = a[e] * b[f];
            }
        }
        r.pu_ = a.prec();
        r.pv_ = b.prec();
        return r;
    }

    int K() const { return K_; }
    int prec_u() const { return pu_; }
    int prec_v() const { return pv_; }
    const R& get(int e, int f) const { return c_[(e + 2) * (K_ + 3) + (f + 2)]; }
    R& ref(int e, int f) { return c_[(e + 2) * (K_ + 3) + (f + 2)]; }

    BiTruncSeries& operator+=(const BiTruncSeries& o) {
        if (K_ != o.K_) throw ConfigError("truncation orders differ");
        for (size_t i = 0; i < c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
        pu_ = std::min(pu_, o.pu_);
        pv_ = std::min(pv_, o.pv_);
        return *this;
    }
    BiTruncSeries& operator-=(const BiTruncSeries& o) {
        if (K_ != o.K_) throw ConfigError("truncation orders differ");
        for (size_t i = 0; i < c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
        pu_ = std::min(pu_, o.pu_);
        pv_ = std::min(pv_, o.pv_);
        return *this;
    }
    friend BiTruncSeries operator+(BiTruncSeries a, const BiTruncSeries& b) { return a += b; }
    friend BiTruncSeries operator-(BiTruncSeries a, const BiTruncSeries& b) { return a -= b; }
    BiTruncSeries scaled(const Q& s) const {
        BiTruncSeries r = *this;
        for (auto& x : r.c_) x = RingTraits<R>::scale(x, s);
        return r;
    }

    // multiply by a scalar polynomial sum coef * u^i v^j  (i, j >= 0)
    struct PolyTerm {
        int i, j;
        Q coef;
    };
    BiTruncSeries mul_poly(const std::vector<PolyTerm>& poly) const {
        BiTruncSeries r(K_, c_[0]);
        int pu = K_, pv = K_;
        for (const auto& t : poly) {
            pu = std::min(pu, pu_ - t.i);
            pv = std::min(pv, pv_ - t.j);
        }
        for (const auto& t : poly) {
            for (int e = -2; e <= pu_; ++e)
                for (int f = -2; f <= pv_; ++f) {
                    const R& x = get(e, f);
                    if (RingTraits<R>::is_zero(x)) continue;
                    int ne = e - t.i, nf = f - t.j;
                    if (ne > pu || nf > pv) continue;
                    if (ne < -2 || nf < -2) throw ConfigError("polynomial factor leaves the Laurent range");
                    r.ref(ne, nf) = r.ref(ne, nf) + RingTraits<R>::scale(x, t.coef);
                }
        }
        r.pu_ = pu;
        r.pv_ = pv;
        return r;
    }

    // first (e,f) inside the common box where the series differ; {K+1,K+1} if none
    std::pair<int, int> first_difference(const BiTruncSeries& o) const {
        int qu = std::min(pu_, o.pu_), qv = std::min(pv_, o.pv_);
        for (int e = -2; e <= qu; ++e)
            for (int f = -2; f <= qv; ++f) {
                R d = get(e, f) - o.get(e, f);
                if (!RingTraits<R>::is_zero(d)) return {e, f};
            }
        return {K_ + 1, K_ + 1};
    }

private:
    int K_ = 0, pu_ = 0, pv_ = 0;
    std::vector<R> c_;
};

// ---------------------------------------------------------------------------
// dense exact matrices

class QMatrix {
public:
    QMatrix() = default;
    QMatrix(size_t r, size_t c) : rows_(r), cols_(c), d_(r * c) {}
    static QMatrix identity(size_t n) {
        QMatrix m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    Q& operator()(size_t i, size_t j) { return d_[i * cols_ + j]; }
    const Q& operator()(size_t i, size_t j) const { return d_[i * cols_ + j]; }

    friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
    friend QMatrix operator+(const QMatrix& a, const QMatrix& b);
    friend QMatrix operator-(const QMatrix& a, const QMatrix& b);
    QMatrix scaled(const Q& s) const;
    bool operator==(const QMatrix& o) const;
    bool is_zero() const;
    QMatrix transpose() const;

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<Q> d_;
};

struct RrefResult {
    QMatrix R;                  // reduced row echelon form
    std::vector<size_t> pivots; // pivot column of each nonzero row
};
RrefResult rref(QMatrix m);
size_t rank(const QMatrix& m);
// basis of {x : m x = 0}, one column per vector
QMatrix nullspace(const QMatrix& m);
QMatrix inverse(const QMatrix& m);

// JSON-style dump: {rows, cols, entries: [[r, c, "p/q"], ...]}
std::string matrix_json(const QMatrix& m);
std::string matrix_csv(const QMatrix& m);

} // namespace twy
