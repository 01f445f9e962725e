#pragma once

#include <cstddef>
#include <vector>

#include "unicell/cmatrix.hpp"

namespace unicell {

// Polynomial over the complex numbers, coefficients stored in ascending
// order: coeffs()[k] multiplies t^k.  The zero polynomial has an empty
// coefficient vector and degree -1.
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<cplx> coeffs);

    // t^k
    static Polynomial monomial(std::size_t k, cplx scale = cplx{1.0, 0.0});

    const std::vector<cplx>& coeffs() const { return c_; }

    // Coefficient of t^k, zero beyond the stored degree.
    cplx coeff(std::size_t k) const { return k < c_.size() ? c_[k] : cplx{0.0, 0.0}; }

    // Degree of the stored polynomial, -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }

    cplx eval(cplx t) const;

    // p(A) by Horner's rule: degree-many matrix products.
    CMatrix eval_matrix(const CMatrix& a) const;

    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    Polynomial operator*(const Polynomial& rhs) const;
    Polynomial operator*(cplx s) const;

    // Composition (this o inner)(t) = this(inner(t)).
    Polynomial compose(const Polynomial& inner) const;

    // Euclidean division: *this = q * d + r with deg r < deg d.
    // Throws dimension_error when d is zero.
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const;

    double max_abs_coeff() const;

  private:
    void trim();

    std::vector<cplx> c_;
};

Polynomial operator+(Polynomial lhs, const Polynomial& rhs);
Polynomial operator-(Polynomial lhs, const Polynomial& rhs);

// Monic polynomial of least degree with p(A) = 0, found by testing the
// stacked powers I, A, A^2, ... for linear dependence.  Dependence at step k
// is declared when adding vec(A^k) leaves a relative orthogonal remainder
// below 1e-10; a remainder in the ambiguous band [1e-13, 1e-10) before step n
// raises rank_ambiguity_error rather than guessing.  Step n always succeeds.
Polynomial minimal_polynomial(const CMatrix& a);

// Solves g(A) = B for a polynomial g of degree < A.order() in the least
// squares sense over the stacked entries.  Throws not_in_algebra_error when
// the attained relative residual exceeds tol, i.e. B is not (numerically) a
// polynomial in A of that degree.
Polynomial generator_polynomial(const CMatrix& a, const CMatrix& b, double tol = 1e-7);

}  // namespace unicell
