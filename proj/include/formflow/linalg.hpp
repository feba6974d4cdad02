#pragma once

#include <cstddef>
#include <vector>

#include "formflow/error.hpp"

namespace formflow {

using Vec = std::vector<double>;

// Small dense row-major matrix. Everything in this project is n <= 8, so the
// implementations favour clarity over blocking tricks.
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), fill) {}

    static Mat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    double operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

    Mat transposed() const;
    Mat operator*(const Mat& rhs) const;
    Vec operator*(const Vec& v) const;
    Mat operator+(const Mat& rhs) const;
    Mat operator-(const Mat& rhs) const;
    Mat scaled(double s) const;

    Vec col(int c) const;
    void setCol(int c, const Vec& v);

    double maxAbs() const;
    double normInf() const;  // max row sum

private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

// LU factorization with partial pivoting of a square matrix.
class LuFactor {
public:
    explicit LuFactor(const Mat& a);

    bool singular() const { return singular_; }
    Vec solve(const Vec& b) const;
    Mat inverse() const;
    // normInf(A) * normInf(A^-1); +inf when singular.
    double condInf(const Mat& original) const;

private:
    Mat lu_;
    std::vector<int> perm_;
    bool singular_ = false;
};

Vec solveLinear(const Mat& a, const Vec& b);

struct Svd {
    Mat u;        // m x n, columns for nonzero singular values are orthonormal
    Vec sigma;    // n, descending
    Mat v;        // n x n orthogonal
};

// One-sided Jacobi SVD; adequate and robust at the matrix sizes used here.
Svd jacobiSvd(const Mat& a);

// Orthonormal basis of the span of the columns of `vectors`, keeping singular
// values above relTol * sigma_max. Returns an n x rank matrix.
Mat orthonormalSpan(const Mat& vectors, double relTol = 1e-9);

// Orthonormal basis of the null space {v : a*v = 0}, keeping directions with
// singular value <= relTol * sigma_max (all of them if a == 0).
Mat nullSpace(const Mat& a, double relTol = 1e-9);

// Residual of c against the subspace spanned by the orthonormal columns of
// basis: ||c - B B^T c|| / max(1, ||c||).
double subspaceResidual(const Mat& basis, const Vec& c);

double dot(const Vec& a, const Vec& b);
double norm2(const Vec& a);
Vec axpy(double a, const Vec& x, const Vec& y);  // a*x + y
Vec sub(const Vec& a, const Vec& b);

}  // namespace formflow
