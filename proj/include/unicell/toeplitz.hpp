#pragma once

#include <cstddef>
#include <vector>

#include "unicell/cmatrix.hpp"

namespace unicell {

// Upper triangular Toeplitz matrix given by its constant diagonals:
// z[0] on the main diagonal, z[1] on the first superdiagonal, and so on.
struct UpperToeplitz {
    std::vector<cplx> z;

    std::size_t order() const { return z.size(); }
    CMatrix to_matrix() const;
};

// Ones on the first superdiagonal, zero elsewhere.  n >= 1.
CMatrix shift_matrix(std::size_t n);

// Ones strictly above the diagonal, zero on and below.  n >= 1.
CMatrix ones_nilpotent(std::size_t n);

// True when the first superdiagonal coefficient is nonzero relative to the
// largest coefficient: such a matrix generates the full upper triangular
// Toeplitz algebra.  Order 1 is trivially a generator.
bool is_generator(const UpperToeplitz& r);

// Truncated alternating power series A - A^2 + A^3 - ... (n-1 terms), which
// equals A(I+A)^{-1} when A is nilpotent.  The sum is accumulated directly
// so the all-integer cases stay exact.  Requires A nilpotent:
// ||A^n|| <= tol * (1 + ||A||)^n, else hypothesis_error.
CMatrix alternating_sum(const CMatrix& a, double tol = kDefaultTol);

// For A strictly upper triangular with unit first superdiagonal: true iff
// ||alternating_sum(A)|| <= 1 + tol in operator norm.  A true verdict forces
// A to be the all-ones nilpotent (asserted by the test suite, not here).
// Shape violations raise hypothesis_error.
bool lemma2_verify(const CMatrix& a, double tol = kDefaultTol);

// The m x m matrix (i/m)(I + 2 ones_nilpotent(m)), a quadrature of the
// integral operator 2i * integral_t^1.
CMatrix volterra_discretization(std::size_t m);

// Operator norm of volterra_discretization(m), computed matrix-free with
// O(m) prefix-sum products so large m stays cheap.  m is capped at 10000.
double volterra_norm_estimate(std::size_t m);

}  // namespace unicell
