#include "twy/exact.hpp"

#include <sstream>

namespace twy {

std::string qstr(const Q& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Q qparse(const std::string& s) {
    Q r;
    if (r.set_str(s, 10) != 0) throw ConfigError("not a rational number: " + s);
    if (r.get_den() == 0) throw ConfigError("zero denominator: " + s);
    r.canonicalize();
    return r;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
    if (a.cols_ != b.rows_) throw ConfigError("matrix shapes do not match");
    QMatrix r(a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
        for (size_t k = 0; k < a.cols_; ++k) {
            const Q& x = a(i, k);
            if (sgn(x) == 0) continue;
            for (size_t j = 0; j < b.cols_; ++j)
                if (sgn(b(k, j)) != 0) r(i, j) += x * b(k, j);
        }
    return r;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ConfigError("matrix shapes do not match");
    QMatrix r = a;
    for (size_t i = 0; i < r.d_.size(); ++i) r.d_[i] += b.d_[i];
    return r;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ConfigError("matrix shapes do not match");
    QMatrix r = a;
    for (size_t i = 0; i < r.d_.size(); ++i) r.d_[i] -= b.d_[i];
    return r;
}

QMatrix QMatrix::scaled(const Q& s) const {
    QMatrix r = *this;
    for (auto& x : r.d_) x *= s;
    return r;
}

bool QMatrix::operator==(const QMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && d_ == o.d_;
}

bool QMatrix::is_zero() const {
    for (const auto& x : d_)
        if (sgn(x) != 0) return false;
    return true;
}

QMatrix QMatrix::transpose() const {
    QMatrix r(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

RrefResult rref(QMatrix m) {
    RrefResult res;
    size_t row = 0;
    for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        size_t piv = row;
        while (piv < m.rows() && sgn(m(piv, col)) == 0) ++piv;
        if (piv == m.rows()) continue;
        if (piv != row)
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
        Q inv = 1 / m(row, col);
        for (size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == row || sgn(m(i, col)) == 0) continue;
            Q f = m(i, col);
            for (size_t j = col; j < m.cols(); ++j)
                if (sgn(m(row, j)) != 0) m(i, j) -= f * m(row, j);
        }
        res.pivots.push_back(col);
        ++row;
    }
    res.R = std::move(m);
    return res;
}

size_t rank(const QMatrix& m) { return rref(m).pivots.size(); }

QMatrix nullspace(const QMatrix& m) {
    RrefResult r = rref(m);
    std::vector<bool> is_piv(m.cols(), false);
    for (auto p : r.pivots) is_piv[p] = true;
    std::vector<size_t> free_cols;
    for (size_t j = 0; j < m.cols(); ++j)
        if (!is_piv[j]) free_cols.push_back(j);
    QMatrix ns(m.cols(), free_cols.size());
    for (size_t k = 0; k < free_cols.size(); ++k) {
        size_t f = free_cols[k];
        ns(f, k) = 1;
        for (size_t i = 0; i < r.pivots.size(); ++i) ns(r.pivots[i], k) = -r.R(i, f);
    }
    return ns;
}

QMatrix inverse(const QMatrix& m) {
    if (m.rows() != m.cols()) throw ConfigError("inverse of a non-square matrix");
    size_t n = m.rows();
    QMatrix aug(n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    RrefResult r = rref(aug);
    if (r.pivots.size() < n || r.pivots[n - 1] != n - 1) throw SingularError("singular matrix");
    QMatrix inv(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv(i, j) = r.R(i, n + j);
    return inv;
}

std::string matrix_json(const QMatrix& m) {
    std::ostringstream os;
    os << "{\"rows\":" << m.rows() << ",\"cols\":" << m.cols() << ",\"entries\":[";
    bool first = true;
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) {
            if (sgn(m(i, j)) == 0) continue;
            if (!first) os << ",";
            first = false;
            os << "[" << i << "," << j << ",\"" << qstr(m(i, j)) << "\"]";
        }
    os << "]}";
    return os.str();
}

std::string matrix_csv(const QMatrix& m) {
    std::ostringstream os;
    for (size_t i = 0; i < m.rows(); ++i) {
        for (size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ",";
            os << qstr(m(i, j));
        }
        os << "\n";
    }
    return os.str();
}

} // namespace twy
