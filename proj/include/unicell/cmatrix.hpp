#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace unicell {

using cplx = std::complex<double>;

// Global default relative tolerance; every tolerance parameter in the
// library defaults to this single knob.
inline constexpr double kDefaultTol = 1e-9;

// Dense square complex matrix, row-major storage, 0-based indexing in code
// (the accompanying docs use the 1-based convention of the underlying math).
class CMatrix {
  public:
    CMatrix() : n_(0) {}
    explicit CMatrix(std::size_t n) : n_(n), a_(n * n, cplx{0.0, 0.0}) {}
    CMatrix(std::size_t n, std::vector<cplx> entries);

    static CMatrix identity(std::size_t n);

    std::size_t order() const { return n_; }

    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    const std::vector<cplx>& data() const { return a_; }

    bool is_finite() const;

    CMatrix& operator+=(const CMatrix& rhs);
    CMatrix& operator-=(const CMatrix& rhs);
    CMatrix& operator*=(cplx s);

  private:
    std::size_t n_;
    std::vector<cplx> a_;
};

CMatrix operator+(CMatrix lhs, const CMatrix& rhs);
CMatrix operator-(CMatrix lhs, const CMatrix& rhs);
CMatrix operator*(cplx s, CMatrix m);
CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs);  // = mat_mul

// Exact semantic matrix product. Orders must agree.
CMatrix mat_mul(const CMatrix& a, const CMatrix& b);

// Conjugate transpose.
CMatrix adjoint(const CMatrix& a);

// Plain transpose (no conjugation).
CMatrix transpose(const CMatrix& a);

// Kronecker product, order a.order()*b.order().
CMatrix kron(const CMatrix& a, const CMatrix& b);

// Sum of diagonal entries.
cplx trace(const CMatrix& a);

// Top-left k x k corner, 1 <= k <= order.
CMatrix leading_submatrix(const CMatrix& a, std::size_t k);

// Frobenius norm, sqrt(sum |a_ij|^2).
double frobenius_norm(const CMatrix& a);

// Largest entry modulus.
double max_abs_entry(const CMatrix& a);

// A^p by repeated multiplication; p = 0 gives the identity.
CMatrix matrix_power(const CMatrix& a, std::size_t p);

// Entrywise equality within an absolute tolerance.
bool entrywise_close(const CMatrix& a, const CMatrix& b, double atol);

}  // namespace unicell
