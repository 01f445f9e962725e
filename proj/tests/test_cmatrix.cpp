#include <doctest.h>

#include <limits>

#include "support.hpp"
#include "unicell/cmatrix.hpp"
#include "unicell/errors.hpp"
#include "unicell/rng.hpp"

using namespace unicell;
using testsupport::max_gap;

TEST_CASE("construction and element access") {
    CMatrix a(3);
    CHECK(a.order() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(a(i, j) == cplx{0.0, 0.0});

    a(0, 2) = cplx{1.5, -2.0};
    CHECK(a(0, 2) == cplx{1.5, -2.0});

    const CMatrix id = CMatrix::identity(4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(id(i, j) == (i == j ? cplx{1.0, 0.0} : cplx{0.0, 0.0}));

    CHECK_THROWS_AS(CMatrix(2, {cplx{1.0, 0.0}}), dimension_error);
}

TEST_CASE("arithmetic dimension checks") {
    CMatrix a(2), b(3);
    CHECK_THROWS_AS(a + b, dimension_error);
    CHECK_THROWS_AS(a - b, dimension_error);
    CHECK_THROWS_AS(mat_mul(a, b), dimension_error);
}

TEST_CASE("product against a hand computation") {
    CMatrix a(2, {cplx{1, 0}, cplx{0, 1}, cplx{2, 0}, cplx{0, 0}});
    CMatrix b(2, {cplx{0, 0}, cplx{1, 0}, cplx{1, 0}, cplx{0, 0}});
    const CMatrix c = a * b;
    CHECK(c(0, 0) == cplx{0, 1});
    CHECK(c(0, 1) == cplx{1, 0});
    CHECK(c(1, 0) == cplx{0, 0});
    CHECK(c(1, 1) == cplx{2, 0});
}

TEST_CASE("adjoint and transpose") {
    Rng rng(1);
    const CMatrix a = rng.gaussian_matrix(4);
    const CMatrix b = rng.gaussian_matrix(4);

    CHECK(testsupport::exactly_equal(adjoint(adjoint(a)), a));
    CHECK(testsupport::exactly_equal(transpose(transpose(a)), a));
    CHECK(max_gap(adjoint(a * b), adjoint(b) * adjoint(a)) < 1e-14);

    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(adjoint(a)(i, j) == std::conj(a(j, i)));
            CHECK(transpose(a)(i, j) == a(j, i));
        }
}

TEST_CASE("kron dimensions and block structure") {
    CMatrix a(2, {cplx{1, 0}, cplx{2, 0}, cplx{0, 0}, cplx{3, 0}});
    CMatrix b(2, {cplx{0, 1}, cplx{0, 0}, cplx{1, 0}, cplx{1, 0}});
    const CMatrix k = kron(a, b);
    REQUIRE(k.order() == 4);
    // block (i,j) equals a(i,j) * b
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t p = 0; p < 2; ++p)
                for (std::size_t q = 0; q < 2; ++q)
                    CHECK(k(2 * i + p, 2 * j + q) == a(i, j) * b(p, q));
}

TEST_CASE("trace identities") {
    Rng rng(2);
    const CMatrix a = rng.gaussian_matrix(5);
    const CMatrix b = rng.gaussian_matrix(5);
    CHECK(std::abs(trace(a * b) - trace(b * a)) < 1e-12);
    CHECK(std::abs(trace(a + b) - trace(a) - trace(b)) < 1e-14);
}

TEST_CASE("leading submatrix") {
    Rng rng(3);
    const CMatrix a = rng.gaussian_matrix(5);
    const CMatrix l = leading_submatrix(a, 3);
    REQUIRE(l.order() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(l(i, j) == a(i, j));
    CHECK(leading_submatrix(a, 5).order() == 5);
    CHECK_THROWS_AS(leading_submatrix(a, 6), dimension_error);
    CHECK_THROWS_AS(leading_submatrix(a, 0), dimension_error);
}

TEST_CASE("frobenius norm and max entry") {
    CMatrix a(2, {cplx{3, 0}, cplx{0, 0}, cplx{0, 4}, cplx{0, 0}});
    CHECK(frobenius_norm(a) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(max_abs_entry(a) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(frobenius_norm(CMatrix(3)) == 0.0);
}

TEST_CASE("matrix powers") {
    Rng rng(4);
    const CMatrix a = rng.gaussian_matrix(4);
    CHECK(testsupport::exactly_equal(matrix_power(a, 0), CMatrix::identity(4)));
    CHECK(testsupport::exactly_equal(matrix_power(a, 1), a));
    CHECK(max_gap(matrix_power(a, 3), a * a * a) < 1e-12);
}

TEST_CASE("nilpotent power vanishes exactly") {
    CMatrix j(3);
    j(0, 1) = 2.0;
    j(1, 2) = -1.5;
    const CMatrix j3 = matrix_power(j, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < 3; ++k) CHECK(j3(i, k) == cplx{0.0, 0.0});
}

TEST_CASE("entrywise comparison") {
    CMatrix a(2), b(2);
    b(1, 1) = 1e-12;
    CHECK(entrywise_close(a, b, 1e-11));
    CHECK_FALSE(entrywise_close(a, b, 1e-13));
    CHECK(entrywise_close(a, a, 0.0));
    CHECK_FALSE(entrywise_close(a, CMatrix(3), 1.0));
}

TEST_CASE("scalar operations") {
    Rng rng(5);
    const CMatrix a = rng.gaussian_matrix(3);
    const CMatrix s = cplx{0, 2} * a;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(s(i, j) == cplx{0, 2} * a(i, j));
    CHECK(max_gap(a + a, 2.0 * a) == 0.0);
    const CMatrix z = a - a;
    CHECK(frobenius_norm(z) == 0.0);
}

TEST_CASE("is_finite flags bad entries") {
    CMatrix a(2);
    CHECK(a.is_finite());
    a(0, 1) = cplx{std::numeric_limits<double>::infinity(), 0.0};
    CHECK_FALSE(a.is_finite());
}
