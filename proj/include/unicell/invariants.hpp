#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unicell/cmatrix.hpp"
#include "unicell/polynomial.hpp"

namespace unicell {

// Finite surrogate for "all polynomials": an ordered list plus a provenance
// string describing how it was drawn.
struct PolynomialFamily {
    std::vector<Polynomial> polys;
    std::string description;
};

// Deterministic default family of `size` polynomials for matrices of the
// given order: monomials t, t^2, ..., t^max_degree first (they pin the
// nilpotency structure), then seeded random polynomials of degree max_degree
// with coefficients uniform on the complex unit disc.  max_degree = 0 means
// "use the order".
PolynomialFamily default_family(std::size_t order, std::size_t size = 64,
                                std::size_t max_degree = 0, std::uint64_t seed = 0);

// Outcome of an invariant comparison.  worst_gap is the largest scaled
// disagreement |v_A - v_B| / (1 + max(|v_A|, |v_B|)) over all compared
// values, so matched <=> worst_gap <= the tolerance the test ran with.
// queries counts compared value pairs.
struct InvariantReport {
    bool matched = false;
    double worst_gap = 0.0;
    std::optional<Polynomial> witness_poly;   // norms_match: argmax polynomial
    std::optional<std::string> witness_word;  // specht_test: first failing word
    std::optional<std::size_t> witness_sample;  // arveson_test: worst sample index
    std::size_t queries = 0;
};

// [||f(A)|| for f in F], in family order.
std::vector<double> norm_profile(const CMatrix& a, const PolynomialFamily& f);

// Compares ||f(A)|| with ||f(B)|| over the family.  The witness polynomial
// attains the worst scaled gap whether or not the profiles match.
InvariantReport norms_match(const CMatrix& a, const CMatrix& b, const PolynomialFamily& f,
                            double tol = kDefaultTol);

// Trace test over all words w in the letters x, y of length 1..max_len,
// comparing Trace w(A, A*) against Trace w(B, B*).  Words are enumerated
// shortest first, x before y; prefix products are cached so each word costs
// one multiplication.  The witness is the first failing word in that order.
// A pass means only "no obstruction up to this length", never similarity.
// Enumerating more than `budget` words raises budget_error up front.
InvariantReport specht_test(const CMatrix& a, const CMatrix& b, std::size_t max_len,
                            double tol = kDefaultTol, std::size_t budget = std::size_t{1} << 22);

// Tensor test: draws seeded Gaussian pairs (C, D) and compares
// ||A(x)C + I(x)D|| with the same expression in B.  Irreducibility of A, B
// is the caller's lookout.  The witness index is the worst sample.
InvariantReport arveson_test(const CMatrix& a, const CMatrix& b, std::size_t samples = 32,
                             std::uint64_t seed = 0, double tol = kDefaultTol);

// Support function of the numerical range in direction theta: the largest
// eigenvalue of (e^{-i theta} A + (e^{-i theta} A)*) / 2.
double numerical_range_support(const CMatrix& a, double theta);

// The 2x2 compression to coordinates i, i+1 (0-based): rows and columns
// i, i+1 of A.  Requires i + 1 < order.
CMatrix compression_2x2(const CMatrix& a, std::size_t i);

}  // namespace unicell
