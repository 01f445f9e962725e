#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "unicell/cmatrix.hpp"
#include "unicell/rng.hpp"

namespace unicell {

// Unitary matrix together with its measured departure from unitarity.
struct UnitaryWitness {
    CMatrix U;
    double unitarity_residual = 0.0;  // ||U*U - I||_F
};

// Wraps a matrix as a witness, computing the residual.
UnitaryWitness make_witness(CMatrix u);

// Largest singular value, computed as sqrt of the top eigenvalue of A*A by
// power iteration: stop when successive Rayleigh quotients satisfy
// |l_{k+1} - l_k| <= rel_tol * l_{k+1}, at most 10000 iterations, unit start
// vector drawn from the seeded generator.  Throws convergence_error when the
// iteration does not settle.
double spectral_norm(const CMatrix& a, double rel_tol = 1e-14, std::uint64_t seed = 0);

// Same iteration over an abstract linear operator given by matvec callbacks
// (y = Ax and y = A*x); used where forming the matrix is wasteful.
using MatVec = std::function<void(const std::vector<cplx>&, std::vector<cplx>&)>;
double spectral_norm_op(std::size_t n, const MatVec& apply, const MatVec& apply_adj,
                        double rel_tol = 1e-14, std::uint64_t seed = 0);

// Max modulus over the computed eigenvalues.
double spectral_radius(const CMatrix& a);

// All n eigenvalues with multiplicity via Hessenberg reduction plus
// Wilkinson-shifted QR iteration; returned sorted by (Re, Im).
std::vector<cplx> eigenvalues(const CMatrix& a);

// Unitary triangularization A = U T U*.  T's diagonal is sorted by (Re, Im)
// using unitary 2x2 swaps, its strictly lower part is exactly zero, and
// ||U* A U - T||_F is small relative to ||A||_F.
std::pair<UnitaryWitness, CMatrix> schur(const CMatrix& a);

// Least squares min ||sum_j c_j columns[j] - rhs||_2 by Householder QR with
// column pivoting.  Columns whose R-diagonal falls below rank_tol times the
// largest are dropped (their coefficient is zero).
struct LstsqResult {
    std::vector<cplx> coeffs;
    double residual = 0.0;    // attained ||B c - rhs||_2
    double diag_ratio = 0.0;  // min |R_jj| / max |R_jj| over all columns
};
LstsqResult lstsq(const std::vector<std::vector<cplx>>& columns, const std::vector<cplx>& rhs,
                  double rank_tol = 1e-12);

// Unit null vector of a square matrix of numerical rank n-1, from the same
// pivoted factorization.  last_ratio is |R_nn|/|R_11| (should be tiny) and
// next_ratio is |R_{n-1,n-1}|/|R_11| (should not be), so callers can verify
// the rank-deficiency pattern they assumed.
struct NullVectorResult {
    std::vector<cplx> v;
    double last_ratio = 0.0;
    double next_ratio = 0.0;
};
NullVectorResult null_vector(const CMatrix& a);

// Haar-ish random unitary: QR of a complex Gaussian matrix with the
// R-diagonal phases folded into Q.
CMatrix random_unitary(std::size_t n, Rng& rng);

}  // namespace unicell
