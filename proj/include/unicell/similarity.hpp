#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unicell/cmatrix.hpp"
#include "unicell/invariants.hpp"
#include "unicell/linalg.hpp"

namespace unicell {

enum class Verdict { similar, not_similar, inconclusive };

const char* verdict_name(Verdict v);

// Outcome of a unitary-similarity decision.  A similar verdict always
// carries a witness U with its replayed residual ||U*AU - B||_F; a
// not_similar verdict always carries an obstruction description.
struct SimilarityReport {
    Verdict verdict = Verdict::inconclusive;
    std::optional<UnitaryWitness> witness;
    std::optional<double> witness_residual;
    std::optional<std::string> obstruction;
    std::string method;
};

// True when A has a single eigenvalue of full Jordan index: writing
// N = (A - lambda I)/||A - lambda I||_F with lambda = trace/n, N^n must be
// negligible while N^(n-1) is not.  The norm test is deliberately used
// instead of eigenvalue clustering: computed eigenvalues of a perturbed
// Jordan block scatter like the n-th root of the perturbation, which would
// reject matrices that are unicellular to working precision.
bool is_unicellular(const CMatrix& a, double tol = kDefaultTol);

// Unique representative of A under diagonal unitary conjugation: a diagonal
// unitary W (first entry 1) making every superdiagonal entry real positive,
// returned with T = W*AW.  The superdiagonal of T is set exactly real, so a
// second application reproduces T bit for bit.
//
// Requires A upper triangular; with triangularize_first set, a non
// triangular input is first brought to triangular form by a unitary built
// from a deflation chain (successive null vectors of compressed copies of
// A - lambda I), which is accurate where the matrix is unicellular.  The
// returned witness then contains the composed unitary.  A superdiagonal
// entry of modulus below 1e-8 aborts: such matrices are outside the class
// this form is canonical for.
std::pair<UnitaryWitness, CMatrix> canonical_form(const CMatrix& a, bool triangularize_first);

// Decision procedure for A ~ U*AU among unicellular matrices: canonicalize
// both sides and compare entrywise.  Inputs that fail the unicellularity or
// constant-diagonal checks yield inconclusive, after consulting the trace
// word test as a falsifier (which may still prove not_similar).  Entry
// agreement only within 10x the tolerance is reported inconclusive rather
// than guessed.
SimilarityReport decide_unitary_similarity(const CMatrix& a, const CMatrix& b,
                                           double tol = kDefaultTol);

// Row i holds norm_profile of the leading (i+1) x (i+1) submatrix, so the
// full matrix is the last row.  Dimensions: order x family size.
std::vector<std::vector<double>> principal_norm_profile(const CMatrix& a,
                                                        const PolynomialFamily& f);

// The 3x3 pair with superdiagonals (alpha, beta) and (beta, alpha):
// ||f(A)|| = ||f(A')|| for every polynomial f, yet the pair is not
// unitarily similar; the 2x2 leading corners already tell them apart,
// which is why the full profile keeps every corner.  Requires
// 0 < alpha < beta.
std::pair<CMatrix, CMatrix> counterexample_pair(double alpha, double beta);

}  // namespace unicell
