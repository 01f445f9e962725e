#include <doctest.h>

#include <cmath>
#include <vector>

#include "support.hpp"
#include "unicell/cmatrix.hpp"
#include "unicell/errors.hpp"
#include "unicell/linalg.hpp"
#include "unicell/polynomial.hpp"
#include "unicell/rng.hpp"
#include "unicell/toeplitz.hpp"

using namespace unicell;
using testsupport::max_gap;

namespace {

Polynomial random_poly(Rng& rng, std::size_t degree) {
    std::vector<cplx> c(degree + 1);
    for (cplx& x : c) x = rng.unit_disc();
    return Polynomial(std::move(c));
}

double coeff_gap(const Polynomial& p, const Polynomial& q) {
    double worst = 0.0;
    const long d = std::max(p.degree(), q.degree());
    for (long k = 0; k <= d; ++k) worst = std::max(worst, std::abs(p.coeff(k) - q.coeff(k)));
    return worst;
}

}  // namespace

TEST_CASE("degree bookkeeping and trimming") {
    CHECK(Polynomial().degree() == -1);
    CHECK(Polynomial({cplx{0.0, 0.0}}).degree() == -1);
    CHECK(Polynomial({cplx{1.0, 0.0}}).degree() == 0);
    CHECK(Polynomial::monomial(3).degree() == 3);
    CHECK(Polynomial::monomial(0).coeff(0) == cplx{1.0, 0.0});
    // trailing zeros vanish
    CHECK(Polynomial({cplx{1.0, 0.0}, cplx{0.0, 0.0}}).degree() == 0);
}

TEST_CASE("scalar evaluation agrees with a direct power sum") {
    Rng rng(21);
    const Polynomial p = random_poly(rng, 6);
    for (int trial = 0; trial < 10; ++trial) {
        const cplx z = 3.0 * rng.unit_disc();
        cplx direct{0.0, 0.0};
        for (long k = 0; k <= p.degree(); ++k)
            direct += p.coeff(k) * std::pow(z, static_cast<double>(k));
        CHECK(std::abs(p.eval(z) - direct) <= 1e-10 * (1.0 + std::abs(direct)));
    }
}

TEST_CASE("matrix evaluation is a ring homomorphism") {
    Rng rng(22);
    for (int trial = 0; trial < 6; ++trial) {
        const std::size_t n = 2 + (trial % 7);
        const CMatrix a = rng.gaussian_matrix(n);
        const Polynomial f = random_poly(rng, 1 + (trial % 6));
        const Polynomial g = random_poly(rng, 6 - (trial % 6));
        const CMatrix lhs = (f * g).eval_matrix(a);
        const CMatrix rhs = f.eval_matrix(a) * g.eval_matrix(a);
        const double scale = frobenius_norm(rhs);
        CHECK(frobenius_norm(lhs - rhs) <= 1e-9 * (1.0 + scale));

        const CMatrix sum = (f + g).eval_matrix(a);
        CHECK(frobenius_norm(sum - f.eval_matrix(a) - g.eval_matrix(a)) <=
              1e-10 * (1.0 + scale));
    }
}

TEST_CASE("matrix evaluation of the constant term uses the identity") {
    const Polynomial c({cplx{2.0, -1.0}});
    const CMatrix v = c.eval_matrix(CMatrix(3) + CMatrix::identity(3));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(v(i, j) == (i == j ? cplx{2.0, -1.0} : cplx{0.0, 0.0}));
}

TEST_CASE("composition matches nested evaluation") {
    Rng rng(23);
    const Polynomial f = random_poly(rng, 4);
    const Polynomial g = random_poly(rng, 3);
    const Polynomial h = f.compose(g);
    for (int trial = 0; trial < 8; ++trial) {
        const cplx z = rng.unit_disc();
        CHECK(std::abs(h.eval(z) - f.eval(g.eval(z))) <= 1e-12);
    }
    // composing with a shift is the translation used by the oracle pipeline
    const Polynomial shift({cplx{-2.0, 1.0}, cplx{1.0, 0.0}});  // t - (2 - i)
    const Polynomial fs = f.compose(shift);
    const cplx at{0.5, 0.5};
    CHECK(std::abs(fs.eval(at) - f.eval(at - cplx{2.0, -1.0})) <= 1e-12);
}

TEST_CASE("division with remainder") {
    Rng rng(24);
    const Polynomial f = random_poly(rng, 7);
    const Polynomial g = random_poly(rng, 3);
    const auto [q, r] = f.divmod(g);
    CHECK(r.degree() < g.degree());
    CHECK(coeff_gap(q * g + r, f) <= 1e-12);
    CHECK_THROWS_AS(f.divmod(Polynomial()), dimension_error);
}

TEST_CASE("minimal polynomial of a diagonal matrix with distinct entries") {
    CMatrix d(3);
    d(0, 0) = cplx{1.0, 0.0};
    d(1, 1) = cplx{-2.0, 0.0};
    d(2, 2) = cplx{0.0, 1.0};
    const Polynomial m = minimal_polynomial(d);
    REQUIRE(m.degree() == 3);
    CHECK(std::abs(m.coeff(3) - cplx{1.0, 0.0}) <= 1e-12);  // monic
    // vanishes on the spectrum
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(m.eval(d(i, i))) <= 1e-10);
}

TEST_CASE("minimal polynomial collapses repeated diagonalizable eigenvalues") {
    CMatrix d(3);
    d(0, 0) = d(1, 1) = cplx{1.0, 0.0};
    d(2, 2) = cplx{2.0, 0.0};
    const Polynomial m = minimal_polynomial(d);
    REQUIRE(m.degree() == 2);  // (t-1)(t-2)
    CHECK(std::abs(m.coeff(0) - cplx{2.0, 0.0}) <= 1e-10);
    CHECK(std::abs(m.coeff(1) - cplx{-3.0, 0.0}) <= 1e-10);
}

TEST_CASE("minimal polynomial of a single nilpotent block is t^n") {
    const CMatrix q = ones_nilpotent(5);
    const Polynomial m = minimal_polynomial(q);
    REQUIRE(m.degree() == 5);
    for (long k = 0; k < 5; ++k) CHECK(std::abs(m.coeff(k)) <= 1e-10);
}

TEST_CASE("minimal polynomial annihilates and divides the characteristic") {
    Rng rng(25);
    for (int trial = 0; trial < 6; ++trial) {
        const std::size_t n = 2 + (trial % 5);
        // unitary conjugate of a diagonal with well separated entries:
        // diagonalizable, eigenvalues known exactly
        CMatrix d(n);
        std::vector<cplx> evs(n);
        for (std::size_t i = 0; i < n; ++i) {
            evs[i] = cplx{static_cast<double>(i) + 0.3 * rng.uniform(),
                          0.7 * rng.uniform()};
            d(i, i) = evs[i];
        }
        const CMatrix u = random_unitary(n, rng);
        const CMatrix a = adjoint(u) * d * u;

        const Polynomial m = minimal_polynomial(a);
        const double ann = frobenius_norm(m.eval_matrix(a));
        CHECK(ann <= 1e-7 * (1.0 + frobenius_norm(a)));

        // characteristic polynomial from the known eigenvalues
        Polynomial chi({cplx{1.0, 0.0}});
        for (const cplx& ev : evs) chi = chi * Polynomial({-ev, cplx{1.0, 0.0}});
        const auto [q, r] = chi.divmod(m);
        (void)q;
        CHECK(r.max_abs_coeff() <= 1e-7 * (1.0 + chi.max_abs_coeff()));
    }
}

TEST_CASE("generator polynomial maps one generator onto another target") {
    Rng rng(26);
    const std::size_t n = 5;
    // R: upper Toeplitz with z1 well away from zero
    UpperToeplitz r{std::vector<cplx>(n)};
    r.z[0] = cplx{0.4, -0.2};
    r.z[1] = cplx{1.0, 0.5};
    for (std::size_t k = 2; k < n; ++k) r.z[k] = rng.unit_disc();
    const CMatrix rm = r.to_matrix();
    const CMatrix target = ones_nilpotent(n);

    const Polynomial g = generator_polynomial(rm, target);
    CHECK(frobenius_norm(g.eval_matrix(rm) - target) <= 1e-7 * (1.0 + frobenius_norm(target)));
}

TEST_CASE("generator polynomial rejects targets outside the algebra") {
    const CMatrix s = shift_matrix(3);
    CMatrix outside(3);
    outside(0, 2) = 1.0;
    outside(1, 0) = 1.0;  // below the diagonal: not a polynomial in S
    CHECK_THROWS_AS(generator_polynomial(s, outside), not_in_algebra_error);

    // non-Toeplitz upper triangular is outside Alg S as well
    CMatrix nt(3);
    nt(0, 1) = 1.0;
    nt(1, 2) = 2.0;
    CHECK_THROWS_AS(generator_polynomial(s, nt), not_in_algebra_error);
}

TEST_CASE("polynomial arithmetic edge cases") {
    const Polynomial z;
    const Polynomial one({cplx{1.0, 0.0}});
    CHECK((z * one).degree() == -1);
    CHECK((z + one).degree() == 0);
    CHECK((one - one).degree() == -1);
    CHECK(z.eval(cplx{5.0, 5.0}) == cplx{0.0, 0.0});
    CHECK(z.eval_matrix(CMatrix::identity(2)).order() == 2);
    CHECK(frobenius_norm(z.eval_matrix(CMatrix::identity(2))) == 0.0);
}
