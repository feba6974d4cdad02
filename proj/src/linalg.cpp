#include "formflow/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace formflow {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat Mat::transposed() const {
    Mat t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Mat Mat::operator*(const Mat& rhs) const {
    if (cols_ != rhs.rows_) throw DimensionError("matrix product shape mismatch");
    Mat out(rows_, rhs.cols_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k) {
            const double a = (*this)(r, k);
            if (a == 0.0) continue;
            for (int c = 0; c < rhs.cols_; ++c) out(r, c) += a * rhs(k, c);
        }
    return out;
}

Vec Mat::operator*(const Vec& v) const {
    if (cols_ != static_cast<int>(v.size())) throw DimensionError("matrix-vector shape mismatch");
    Vec out(static_cast<std::size_t>(rows_), 0.0);
    for (int r = 0; r < rows_; ++r) {
        double s = 0.0;
        for (int c = 0; c < cols_; ++c) s += (*this)(r, c) * v[static_cast<std::size_t>(c)];
        out[static_cast<std::size_t>(r)] = s;
    }
    return out;
}

Mat Mat::operator+(const Mat& rhs) const {
    Mat out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + rhs.data_[i];
    return out;
}

Mat Mat::operator-(const Mat& rhs) const {
    Mat out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - rhs.data_[i];
    return out;
}

Mat Mat::scaled(double s) const {
    Mat out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] * s;
    return out;
}

Vec Mat::col(int c) const {
    Vec out(static_cast<std::size_t>(rows_));
    for (int r = 0; r < rows_; ++r) out[static_cast<std::size_t>(r)] = (*this)(r, c);
    return out;
}

void Mat::setCol(int c, const Vec& v) {
    for (int r = 0; r < rows_; ++r) (*this)(r, c) = v[static_cast<std::size_t>(r)];
}

double Mat::maxAbs() const {
    double m = 0.0;
    for (double x : data_) m = std::max(m, std::abs(x));
    return m;
}

double Mat::normInf() const {
    double m = 0.0;
    for (int r = 0; r < rows_; ++r) {
        double s = 0.0;
        for (int c = 0; c < cols_; ++c) s += std::abs((*this)(r, c));
        m = std::max(m, s);
    }
    return m;
}

LuFactor::LuFactor(const Mat& a) : lu_(a), perm_(static_cast<std::size_t>(a.rows())) {
    const int n = a.rows();
    if (a.cols() != n) throw DimensionError("LU requires a square matrix");
    std::iota(perm_.begin(), perm_.end(), 0);
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(lu_(k, k));
        for (int r = k + 1; r < n; ++r) {
            const double v = std::abs(lu_(r, k));
            if (v > best) { best = v; piv = r; }
        }
        if (best == 0.0) { singular_ = true; return; }
        if (piv != k) {
            std::swap(perm_[static_cast<std::size_t>(k)], perm_[static_cast<std::size_t>(piv)]);
            for (int c = 0; c < n; ++c) std::swap(lu_(k, c), lu_(piv, c));
        }
        for (int r = k + 1; r < n; ++r) {
            lu_(r, k) /= lu_(k, k);
            const double f = lu_(r, k);
            if (f == 0.0) continue;
            for (int c = k + 1; c < n; ++c) lu_(r, c) -= f * lu_(k, c);
        }
    }
}

Vec LuFactor::solve(const Vec& b) const {
    if (singular_) throw Error("linear solve: singular matrix");
    const int n = lu_.rows();
    Vec y(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double s = b[static_cast<std::size_t>(perm_[static_cast<std::size_t>(i)])];
        for (int j = 0; j < i; ++j) s -= lu_(i, j) * y[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = y[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j) s -= lu_(i, j) * y[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = s / lu_(i, i);
    }
    return y;
}

Mat LuFactor::inverse() const {
    const int n = lu_.rows();
    Mat inv(n, n);
    Vec e(static_cast<std::size_t>(n), 0.0);
    for (int c = 0; c < n; ++c) {
        e[static_cast<std::size_t>(c)] = 1.0;
        inv.setCol(c, solve(e));
        e[static_cast<std::size_t>(c)] = 0.0;
    }
    return inv;
}

double LuFactor::condInf(const Mat& original) const {
    if (singular_) return std::numeric_limits<double>::infinity();
    return original.normInf() * inverse().normInf();
}

Vec solveLinear(const Mat& a, const Vec& b) { return LuFactor(a).solve(b); }

Svd jacobiSvd(const Mat& a) {
    // Operate on a square zero-padded copy so that tall, wide, and
    // rank-deficient inputs all go through the same sweep.
    const int m = a.rows(), n = a.cols();
    const int dim = std::max(m, n);
    Mat work(dim, n);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < n; ++c) work(r, c) = a(r, c);
    Mat v = Mat::identity(n);

    const double eps = 1e-14;
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0, apq = 0.0;
                for (int r = 0; r < dim; ++r) {
                    app += work(r, p) * work(r, p);
                    aqq += work(r, q) * work(r, q);
                    apq += work(r, p) * work(r, q);
                }
                if (std::abs(apq) <= eps * std::sqrt(app * aqq) || apq == 0.0) continue;
                off = std::max(off, std::abs(apq) / std::sqrt(app * aqq + 1e-300));
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (int r = 0; r < dim; ++r) {
                    const double wp = work(r, p), wq = work(r, q);
                    work(r, p) = c * wp - s * wq;
                    work(r, q) = s * wp + c * wq;
                }
                for (int r = 0; r < n; ++r) {
                    const double vp = v(r, p), vq = v(r, q);
                    v(r, p) = c * vp - s * vq;
                    v(r, q) = s * vp + c * vq;
                }
            }
        }
        if (off < eps) break;
    }

    Vec sigma(static_cast<std::size_t>(n));
    Mat u(m, n);
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    Vec norms(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) {
        double s = 0.0;
        for (int r = 0; r < dim; ++r) s += work(r, c) * work(r, c);
        norms[static_cast<std::size_t>(c)] = std::sqrt(s);
    }
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        return norms[static_cast<std::size_t>(x)] > norms[static_cast<std::size_t>(y)];
    });
    Svd out;
    out.v = Mat(n, n);
    for (int c = 0; c < n; ++c) {
        const int src = order[static_cast<std::size_t>(c)];
        const double s = norms[static_cast<std::size_t>(src)];
        sigma[static_cast<std::size_t>(c)] = s;
        for (int r = 0; r < n; ++r) out.v(r, c) = v(r, src);
        if (s > 0.0)
            for (int r = 0; r < m; ++r) u(r, c) = work(r, src) / s;
    }
    out.u = u;
    out.sigma = sigma;
    return out;
}

Mat orthonormalSpan(const Mat& vectors, double relTol) {
    if (vectors.cols() == 0) return Mat(vectors.rows(), 0);
    const Svd s = jacobiSvd(vectors);
    const double smax = s.sigma.empty() ? 0.0 : s.sigma[0];
    int rank = 0;
    for (double sv : s.sigma)
        if (sv > relTol * smax && sv > 0.0) ++rank;
    Mat basis(vectors.rows(), rank);
    for (int c = 0; c < rank; ++c)
        for (int r = 0; r < vectors.rows(); ++r) basis(r, c) = s.u(r, c);
    return basis;
}

Mat nullSpace(const Mat& a, double relTol) {
    const Svd s = jacobiSvd(a);
    const double smax = s.sigma.empty() ? 0.0 : s.sigma[0];
    std::vector<int> keep;
    for (int c = 0; c < a.cols(); ++c)
        if (s.sigma[static_cast<std::size_t>(c)] <= relTol * smax) keep.push_back(c);
    Mat out(a.cols(), static_cast<int>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k)
        for (int r = 0; r < a.cols(); ++r) out(r, static_cast<int>(k)) = s.v(r, keep[k]);
    return out;
}

double subspaceResidual(const Mat& basis, const Vec& c) {
    Vec proj(c.size(), 0.0);
    for (int j = 0; j < basis.cols(); ++j) {
        double coeff = 0.0;
        for (std::size_t r = 0; r < c.size(); ++r) coeff += basis(static_cast<int>(r), j) * c[r];
        for (std::size_t r = 0; r < c.size(); ++r) proj[r] += coeff * basis(static_cast<int>(r), j);
    }
    double resid = 0.0, scale = 0.0;
    for (std::size_t r = 0; r < c.size(); ++r) {
        resid += (c[r] - proj[r]) * (c[r] - proj[r]);
        scale += c[r] * c[r];
    }
    return std::sqrt(resid) / std::max(1.0, std::sqrt(scale));
}

double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

Vec axpy(double a, const Vec& x, const Vec& y) {
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + y[i];
    return out;
}

Vec sub(const Vec& a, const Vec& b) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

}  // namespace formflow
