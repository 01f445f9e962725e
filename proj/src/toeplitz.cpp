#include "unicell/toeplitz.hpp"

#include <cmath>
#include <sstream>

#include "unicell/errors.hpp"
#include "unicell/linalg.hpp"

namespace unicell {

CMatrix UpperToeplitz::to_matrix() const {
    const std::size_t n = z.size();
    CMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m(i, j) = z[j - i];
    return m;
}

CMatrix shift_matrix(std::size_t n) {
    if (n < 1) throw dimension_error("shift_matrix: order must be positive");
    CMatrix s(n);
    for (std::size_t i = 0; i + 1 < n; ++i) s(i, i + 1) = 1.0;
    return s;
}

CMatrix ones_nilpotent(std::size_t n) {
    if (n < 1) throw dimension_error("ones_nilpotent: order must be positive");
    CMatrix q(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) q(i, j) = 1.0;
    return q;
}

bool is_generator(const UpperToeplitz& r) {
    const std::size_t n = r.order();
    if (n == 0) throw dimension_error("is_generator: empty coefficient list");
    if (n == 1) return true;
    double zmax = 0.0;
    for (const cplx& c : r.z) zmax = std::max(zmax, std::abs(c));
    return std::abs(r.z[1]) > 1e-12 * zmax;
}

CMatrix alternating_sum(const CMatrix& a, double tol) {
    const std::size_t n = a.order();
    CMatrix sum(n);
    CMatrix power = a;
    double sign = 1.0;
    for (std::size_t k = 1; k + 1 <= n; ++k) {
        if (sign > 0) {
            sum += power;
        } else {
            sum -= power;
        }
        sign = -sign;
        power = power * a;
    }
    // power now holds A^n (when n >= 1); nilpotency gate
    const double na = frobenius_norm(a);
    const double scale = std::pow(1.0 + na, static_cast<double>(n));
    const double leak = n >= 1 ? frobenius_norm(power) : 0.0;
    if (leak > tol * scale) {
        std::ostringstream msg;
        msg << "alternating_sum: input is not nilpotent at tolerance (||A^n|| = " << leak << ")";
        throw hypothesis_error(msg.str());
    }
    return sum;
}

bool lemma2_verify(const CMatrix& a, double tol) {
    const std::size_t n = a.order();
    if (n < 1) throw dimension_error("lemma2_verify: empty matrix");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            if (std::abs(a(i, j)) > tol) {
                throw hypothesis_error("lemma2_verify: matrix is not strictly upper triangular");
            }
        }
        if (i + 1 < n && std::abs(a(i, i + 1) - 1.0) > tol) {
            throw hypothesis_error("lemma2_verify: first superdiagonal is not identically one");
        }
    }
    return spectral_norm(alternating_sum(a, tol)) <= 1.0 + tol;
}

CMatrix volterra_discretization(std::size_t m) {
    if (m < 1) throw dimension_error("volterra_discretization: order must be positive");
    CMatrix v(m);
    const double inv = 1.0 / static_cast<double>(m);
    for (std::size_t j = 0; j < m; ++j) {
        v(j, j) = cplx{0.0, inv};
        for (std::size_t k = j + 1; k < m; ++k) v(j, k) = cplx{0.0, 2.0 * inv};
    }
    return v;
}

double volterra_norm_estimate(std::size_t m) {
    if (m < 1) throw dimension_error("volterra_norm_estimate: order must be positive");
    if (m > 10000) throw budget_error("volterra_norm_estimate: m exceeds the 10000 cap");
    // Work with M = I + 2Q; the full matrix is (i/m) M, so the norm scales by
    // 1/m.  Mx and M*x are suffix and prefix sums, O(m) each.
    const MatVec fwd = [m](const std::vector<cplx>& x, std::vector<cplx>& y) {
        cplx suffix{0.0, 0.0};
        for (std::size_t j = m; j-- > 0;) {
            y[j] = x[j] + 2.0 * suffix;
            suffix += x[j];
        }
    };
    const MatVec adj = [m](const std::vector<cplx>& x, std::vector<cplx>& y) {
        cplx prefix{0.0, 0.0};
        for (std::size_t j = 0; j < m; ++j) {
            y[j] = x[j] + 2.0 * prefix;
            prefix += x[j];
        }
    };
    return spectral_norm_op(m, fwd, adj) / static_cast<double>(m);
}

}  // namespace unicell
