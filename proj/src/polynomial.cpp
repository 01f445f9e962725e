#include "unicell/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "unicell/errors.hpp"
#include "unicell/linalg.hpp"

namespace unicell {

namespace {

constexpr double kCoeffFloor = 1e-300;  // subnormal guard, not rounding
constexpr double kDependTol = 1e-10;
constexpr double kCleanDependTol = 1e-13;

double vec_norm(const std::vector<cplx>& v) {
    double s = 0.0;
    for (const cplx& x : v) s += std::norm(x);
    return std::sqrt(s);
}

void mgs_project(const std::vector<std::vector<cplx>>& basis, std::vector<cplx>& w) {
    for (const auto& q : basis) {
        cplx dot{0.0, 0.0};
        for (std::size_t i = 0; i < w.size(); ++i) dot += std::conj(q[i]) * w[i];
        for (std::size_t i = 0; i < w.size(); ++i) w[i] -= dot * q[i];
    }
}

}  // namespace

Polynomial::Polynomial(std::vector<cplx> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::monomial(std::size_t k, cplx scale) {
    std::vector<cplx> c(k + 1, cplx{0.0, 0.0});
    c[k] = scale;
    return Polynomial(std::move(c));
}

void Polynomial::trim() {
    while (!c_.empty() && std::abs(c_.back()) < kCoeffFloor) c_.pop_back();
}

cplx Polynomial::eval(cplx t) const {
    cplx r{0.0, 0.0};
    for (std::size_t k = c_.size(); k-- > 0;) r = r * t + c_[k];
    return r;
}

CMatrix Polynomial::eval_matrix(const CMatrix& a) const {
    const std::size_t n = a.order();
    if (c_.empty()) return CMatrix(n);
    CMatrix r(n);
    for (std::size_t i = 0; i < n; ++i) r(i, i) = c_.back();
    for (std::size_t k = c_.size() - 1; k-- > 0;) {
        r = r * a;
        for (std::size_t i = 0; i < n; ++i) r(i, i) += c_[k];
    }
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), cplx{0.0, 0.0});
    for (std::size_t k = 0; k < rhs.c_.size(); ++k) c_[k] += rhs.c_[k];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
    if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), cplx{0.0, 0.0});
    for (std::size_t k = 0; k < rhs.c_.size(); ++k) c_[k] -= rhs.c_[k];
    trim();
    return *this;
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
    if (c_.empty() || rhs.c_.empty()) return Polynomial();
    std::vector<cplx> out(c_.size() + rhs.c_.size() - 1, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < rhs.c_.size(); ++j) out[i + j] += c_[i] * rhs.c_[j];
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(cplx s) const {
    std::vector<cplx> out = c_;
    for (cplx& x : out) x *= s;
    return Polynomial(std::move(out));
}

Polynomial Polynomial::compose(const Polynomial& inner) const {
    if (c_.empty()) return Polynomial();
    Polynomial r({c_.back()});
    for (std::size_t k = c_.size() - 1; k-- > 0;) {
        r = r * inner;
        r += Polynomial({c_[k]});
    }
    return r;
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& d) const {
    const long degd = d.degree();
    if (degd < 0) throw dimension_error("divmod: division by the zero polynomial");
    std::vector<cplx> r = c_;
    const long degr = degree();
    if (degr < degd) return {Polynomial(), *this};
    std::vector<cplx> q(static_cast<std::size_t>(degr - degd + 1), cplx{0.0, 0.0});
    for (long k = degr; k >= degd; --k) {
        const std::size_t ku = static_cast<std::size_t>(k);
        if (r[ku] == cplx{0.0, 0.0}) continue;
        const cplx factor = r[ku] / d.c_[static_cast<std::size_t>(degd)];
        q[static_cast<std::size_t>(k - degd)] = factor;
        for (long j = 0; j < degd; ++j) {
            r[static_cast<std::size_t>(k - degd + j)] -= factor * d.c_[static_cast<std::size_t>(j)];
        }
        r[ku] = 0.0;  // leading term cancels by construction
    }
    r.resize(static_cast<std::size_t>(degd > 0 ? degd : 0));
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

double Polynomial::max_abs_coeff() const {
    double m = 0.0;
    for (const cplx& x : c_) m = std::max(m, std::abs(x));
    return m;
}

Polynomial operator+(Polynomial lhs, const Polynomial& rhs) {
    lhs += rhs;
    return lhs;
}

Polynomial operator-(Polynomial lhs, const Polynomial& rhs) {
    lhs -= rhs;
    return lhs;
}

Polynomial minimal_polynomial(const CMatrix& a) {
    const std::size_t n = a.order();
    if (n == 0) return Polynomial({cplx{1.0, 0.0}});
    const double rho = std::max(1.0, max_abs_entry(a));
    CMatrix abar = (cplx{1.0, 0.0} / rho) * a;

    std::vector<std::vector<cplx>> power_vecs;  // vec(abar^k), k = 0, 1, ...
    std::vector<std::vector<cplx>> basis;       // orthonormalized versions
    CMatrix p = CMatrix::identity(n);
    power_vecs.push_back(p.data());
    {
        std::vector<cplx> q0 = p.data();
        const double nq = vec_norm(q0);
        for (cplx& x : q0) x /= nq;
        basis.push_back(std::move(q0));
    }

    for (std::size_t k = 1; k <= n; ++k) {
        p = p * abar;
        const std::vector<cplx>& v = p.data();
        const double nv = vec_norm(v);
        std::vector<cplx> w = v;
        mgs_project(basis, w);
        mgs_project(basis, w);  // one reorthogonalization pass
        const double ratio = nv > 0.0 ? vec_norm(w) / nv : 0.0;
        if (ratio < kDependTol || k == n) {
            if (k < n && ratio >= kCleanDependTol) {
                std::ostringstream msg;
                msg << "minimal_polynomial: dependence at degree " << k
                    << " detected only marginally (remainder ratio " << ratio << ")";
                throw rank_ambiguity_error(msg.str());
            }
            LstsqResult ls = lstsq(power_vecs, v);
            // p_bar(t) = t^k - sum_j c_j t^j; verify it annihilates abar
            double scale = nv;
            CMatrix err = p;
            for (std::size_t j = 0; j < k; ++j) {
                CMatrix pj(n, power_vecs[j]);
                err -= ls.coeffs[j] * pj;
                scale += std::abs(ls.coeffs[j]) * vec_norm(power_vecs[j]);
            }
            if (frobenius_norm(err) > 1e-7 * (1.0 + scale)) {
                throw convergence_error("minimal_polynomial: candidate does not annihilate the matrix");
            }
            std::vector<cplx> coeffs(k + 1, cplx{0.0, 0.0});
            coeffs[k] = 1.0;
            double rescale = 1.0;  // rho^(k-j), built from the top down
            for (std::size_t j = k; j-- > 0;) {
                rescale *= rho;
                coeffs[j] = -ls.coeffs[j] * rescale;
            }
            return Polynomial(std::move(coeffs));
        }
        std::vector<cplx> q = w;
        const double nq = vec_norm(q);
        for (cplx& x : q) x /= nq;
        basis.push_back(std::move(q));
        power_vecs.push_back(v);
    }
    throw convergence_error("minimal_polynomial: no dependence found");  // unreachable
}

Polynomial generator_polynomial(const CMatrix& a, const CMatrix& b, double tol) {
    const std::size_t n = a.order();
    if (b.order() != n) throw dimension_error("generator_polynomial: order mismatch");
    if (n == 0) return Polynomial();
    const double rho = std::max(1.0, max_abs_entry(a));
    const CMatrix abar = (cplx{1.0, 0.0} / rho) * a;

    std::vector<std::vector<cplx>> columns;
    std::vector<double> col_scale;
    CMatrix p = CMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (k > 0) p = p * abar;
        std::vector<cplx> col = p.data();
        double s = vec_norm(col);
        if (s == 0.0) s = 1.0;
        for (cplx& x : col) x /= s;
        col_scale.push_back(s);
        columns.push_back(std::move(col));
    }

    // The power basis is stiff even after the scalings, so one factorization
    // rarely delivers full precision; re-solving against the updated residual
    // recovers the lost digits whenever the target truly lies in the span.
    const std::vector<cplx> rhs = b.data();
    std::vector<cplx> coeffs(n, cplx{0.0, 0.0});
    std::vector<cplx> r = rhs;
    double resid = vec_norm(r);
    for (int pass = 0; pass < 3 && resid > 0.0; ++pass) {
        const LstsqResult ls = lstsq(columns, r);
        for (std::size_t k = 0; k < n; ++k) coeffs[k] += ls.coeffs[k];
        r = rhs;
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t idx = 0; idx < r.size(); ++idx) r[idx] -= coeffs[k] * columns[k][idx];
        }
        const double next = vec_norm(r);
        if (next >= 0.5 * resid) {
            resid = std::min(resid, next);
            break;
        }
        resid = next;
    }

    const double rel = resid / (1.0 + frobenius_norm(b));
    if (rel > tol) {
        std::ostringstream msg;
        msg << "generator_polynomial: target is not a polynomial in the source at this "
               "tolerance (relative residual "
            << rel << ")";
        throw not_in_algebra_error(msg.str());
    }
    double rho_pow = 1.0;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        coeffs[j] /= col_scale[j] * rho_pow;
        rho_pow *= rho;
    }
    return Polynomial(std::move(coeffs));
}

}  // namespace unicell
