#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "unicell/cmatrix.hpp"
#include "unicell/polynomial.hpp"

namespace unicell {

// Access to a hidden matrix A through norms of polynomials in its leading
// submatrices: query(i, f) = ||f(A_i)|| where A_i is the top-left i x i
// corner, i counted from 1.  Implementations answer in do_query; the base
// class validates the index and keeps the running query tally.
class NormOracle {
  public:
    virtual ~NormOracle() = default;

    double query(std::size_t i, const Polynomial& f);
    virtual std::size_t order() const = 0;
    std::size_t query_count() const { return count_; }

  protected:
    virtual double do_query(std::size_t i, const Polynomial& f) = 0;

  private:
    std::size_t count_ = 0;
};

// Oracle backed by an explicit hidden matrix.  The matrix must be upper
// triangular with constant diagonal and superdiagonal entries of modulus
// above 1e-8: the shape the reconstruction theorem covers.
class SimulatedOracle final : public NormOracle {
  public:
    explicit SimulatedOracle(CMatrix hidden);

    std::size_t order() const override { return hidden_.order(); }

  protected:
    double do_query(std::size_t i, const Polynomial& f) override;

  private:
    CMatrix hidden_;
};

SimulatedOracle simulate_oracle(const CMatrix& hidden);

// Everything reconstruct learned: the recovered matrix (upper triangular,
// diagonal lambda, real positive superdiagonal), per-entry solve residuals,
// the worst scaled norm gap of a held-out verification family replayed
// against the recovered matrix, and the total query count.
struct ReconstructionReport {
    CMatrix recovered;
    cplx lambda{0.0, 0.0};
    std::vector<std::vector<double>> residuals;
    double verification_gap = 0.0;
    std::size_t query_count = 0;
};

// The complex number at distances r0, r1, ri from 0, 1, i respectively.
// The three distances are checked a posteriori; inconsistent radii mean the
// values did not come from any single point and raise oracle_error.
cplx trilaterate(double r0, double r1, double ri, double tol = kDefaultTol);

// The common diagonal entry, from the three queries (1, t), (1, t-1),
// (1, t-i): the 1x1 corner turns norms into distances from lambda.
cplx recover_lambda(NormOracle& oracle, double tol = kDefaultTol);

// Base case: the 3x3 strictly upper triangular corner of a hidden matrix
// already translated to zero diagonal.  a12 and a23 come from two norm
// queries; |a13 - w| for w = 0, 1, i comes from inverting the closed-form
// 3x3 norm formula at three tailored polynomials, then trilaterating.
CMatrix recover_base3(NormOracle& oracle, double tol = kDefaultTol);

// Given M = A^p with every entry known except the top-right corner, and
// samples (z, h(z)) with h(z) = ||M + z E_{1n}||, finds the corner value c
// by damped least squares over the complex plane, multistarted from 0 and
// from the large-|z| asymptote.  The entry of m_known at (0, order-1) is
// ignored.  A residual plateau means the samples are inconsistent
// (oracle_error); two distinct consistent minima are flagged as
// rank_ambiguity_error rather than picked between.  rms_out, when given,
// receives the final root-mean-square sample misfit.
cplx recover_power_corner(const CMatrix& m_known,
                          const std::vector<std::pair<cplx, double>>& h_samples,
                          double tol = 1e-10, double* rms_out = nullptr);

// Step i of the column fill-in: with the leading (n-1)-corner of a_partial
// recovered, final-column entries below row n-i known, and the corner value
// of A^(n-i) known, the identity corner = sum_k (A^(n-i-1))_{1k} a_{kn}
// leaves one unknown, a_{n-i,n} (1-based), whose coefficient is a product
// of superdiagonal entries.  Unknown entries of a_partial must be zero.
cplx back_substitute_column(const CMatrix& a_partial, std::size_t i, cplx corner);

// Full reconstruction from the oracle alone: recover lambda, translate all
// later queries by t -> t - lambda, build the 3x3 base, then extend one
// order at a time (one direct superdiagonal query, then corner solve plus
// back substitution per remaining entry).  Ends by replaying verify_samples
// held-out random polynomials against a simulator of the recovered matrix.
ReconstructionReport reconstruct(NormOracle& oracle, double tol = kDefaultTol,
                                 std::size_t verify_samples = 8,
                                 std::uint64_t verify_seed = 0);

}  // namespace unicell
