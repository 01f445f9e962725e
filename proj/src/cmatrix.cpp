#include "unicell/cmatrix.hpp"

#include <cmath>
#include <utility>

#include "unicell/errors.hpp"

namespace unicell {

namespace {

void require_same_order(const CMatrix& a, const CMatrix& b, const char* what) {
    if (a.order() != b.order()) {
        throw dimension_error(std::string(what) + ": orders differ");
    }
}

}  // namespace

CMatrix::CMatrix(std::size_t n, std::vector<cplx> entries) : n_(n), a_(std::move(entries)) {
    if (a_.size() != n_ * n_) {
        throw dimension_error("CMatrix: entry count does not match order");
    }
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

bool CMatrix::is_finite() const {
    for (const cplx& v : a_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
    return true;
}

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
    require_same_order(*this, rhs, "operator+=");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += rhs.a_[k];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& rhs) {
    require_same_order(*this, rhs, "operator-=");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= rhs.a_[k];
    return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
    for (cplx& v : a_) v *= s;
    return *this;
}

CMatrix operator+(CMatrix lhs, const CMatrix& rhs) { return lhs += rhs; }
CMatrix operator-(CMatrix lhs, const CMatrix& rhs) { return lhs -= rhs; }
CMatrix operator*(cplx s, CMatrix m) { return m *= s; }
CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs) { return mat_mul(lhs, rhs); }

CMatrix mat_mul(const CMatrix& a, const CMatrix& b) {
    require_same_order(a, b, "mat_mul");
    const std::size_t n = a.order();
    CMatrix c(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < n; ++j) {
                c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

CMatrix adjoint(const CMatrix& a) {
    const std::size_t n = a.order();
    CMatrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c(j, i) = std::conj(a(i, j));
    return c;
}

CMatrix transpose(const CMatrix& a) {
    const std::size_t n = a.order();
    CMatrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c(j, i) = a(i, j);
    return c;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    const std::size_t na = a.order(), nb = b.order();
    CMatrix c(na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx{0.0, 0.0}) continue;
            for (std::size_t p = 0; p < nb; ++p)
                for (std::size_t q = 0; q < nb; ++q)
                    c(i * nb + p, j * nb + q) = aij * b(p, q);
        }
    return c;
}

cplx trace(const CMatrix& a) {
    cplx t{0.0, 0.0};
    for (std::size_t i = 0; i < a.order(); ++i) t += a(i, i);
    return t;
}

CMatrix leading_submatrix(const CMatrix& a, std::size_t k) {
    if (k < 1 || k > a.order()) {
        throw dimension_error("leading_submatrix: k out of range");
    }
    CMatrix c(k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) c(i, j) = a(i, j);
    return c;
}

double frobenius_norm(const CMatrix& a) {
    double s = 0.0;
    for (const cplx& v : a.data()) s += std::norm(v);
    return std::sqrt(s);
}

double max_abs_entry(const CMatrix& a) {
    double m = 0.0;
    for (const cplx& v : a.data()) m = std::max(m, std::abs(v));
    return m;
}

CMatrix matrix_power(const CMatrix& a, std::size_t p) {
    CMatrix r = CMatrix::identity(a.order());
    for (std::size_t k = 0; k < p; ++k) r = r * a;
    return r;
}

bool entrywise_close(const CMatrix& a, const CMatrix& b, double atol) {
    if (a.order() != b.order()) return false;
    for (std::size_t k = 0; k < a.data().size(); ++k) {
        if (std::abs(a.data()[k] - b.data()[k]) > atol) return false;
    }
    return true;
}

}  // namespace unicell
