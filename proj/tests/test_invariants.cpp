#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "support.hpp"
#include "unicell/cmatrix.hpp"
#include "unicell/errors.hpp"
#include "unicell/invariants.hpp"
#include "unicell/linalg.hpp"
#include "unicell/polynomial.hpp"
#include "unicell/rng.hpp"
#include "unicell/similarity.hpp"
#include "unicell/toeplitz.hpp"

using namespace unicell;

namespace {

// Independent word evaluator: product over letters, x -> M, y -> M*.
cplx word_trace(const std::string& w, const CMatrix& m) {
    CMatrix p = CMatrix::identity(m.order());
    const CMatrix ms = adjoint(m);
    for (char ch : w) p = p * (ch == 'x' ? m : ms);
    return trace(p);
}

void all_words(std::size_t max_len, std::string& cur, std::vector<std::string>& out) {
    if (!cur.empty()) out.push_back(cur);
    if (cur.size() == max_len) return;
    for (char ch : {'x', 'y'}) {
        cur.push_back(ch);
        all_words(max_len, cur, out);
        cur.pop_back();
    }
}

bool cyclic_rotations_contain(const std::string& base, const std::string& w) {
    if (base.size() != w.size()) return false;
    const std::string doubled = base + base;
    return doubled.find(w) != std::string::npos;
}

}  // namespace

TEST_CASE("default family layout and determinism") {
    const PolynomialFamily f = default_family(4, 10, 0, 7);
    REQUIRE(f.polys.size() == 10);
    // monomials t..t^4 first (max_degree = 0 means "use the order")
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(f.polys[k].degree() == static_cast<long>(k + 1));
        CHECK(std::abs(f.polys[k].coeff(k + 1) - cplx{1.0, 0.0}) == 0.0);
    }
    for (std::size_t k = 4; k < 10; ++k) CHECK(f.polys[k].degree() <= 4);
    CHECK_FALSE(f.description.empty());

    const PolynomialFamily g = default_family(4, 10, 0, 7);
    for (std::size_t k = 0; k < 10; ++k) {
        CHECK(f.polys[k].coeffs() == g.polys[k].coeffs());
    }
    const PolynomialFamily h = default_family(4, 10, 0, 8);
    bool any_diff = false;
    for (std::size_t k = 4; k < 10; ++k)
        if (h.polys[k].coeffs() != f.polys[k].coeffs()) any_diff = true;
    CHECK(any_diff);
}

TEST_CASE("norm profile values on a known matrix") {
    PolynomialFamily fam;
    fam.polys = {Polynomial::monomial(1), Polynomial::monomial(2)};
    const std::vector<double> prof = norm_profile(ones_nilpotent(3), fam);
    REQUIRE(prof.size() == 2);
    CHECK(prof[0] == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-11));
    CHECK(prof[1] == doctest::Approx(1.0).epsilon(1e-11));  // Q^2 has a single 1
}

TEST_CASE("polynomial norms are blind to unitary conjugation") {
    Rng rng(41);
    for (std::size_t n : {3u, 5u, 7u}) {
        const CMatrix a = rng.gaussian_matrix(n);
        const CMatrix u = random_unitary(n, rng);
        const CMatrix b = adjoint(u) * a * u;
        const PolynomialFamily fam = default_family(n, 24, 4, 5);
        const InvariantReport rep = norms_match(a, b, fam, 1e-9);
        CHECK(rep.matched);
        CHECK(rep.queries == 24);
        CHECK(rep.witness_poly.has_value());
    }
}

TEST_CASE("polynomial norms separate an obvious rescaling") {
    PolynomialFamily fam;
    fam.polys = {Polynomial::monomial(1)};
    const CMatrix a = ones_nilpotent(3);
    const InvariantReport rep = norms_match(a, 2.0 * a, fam, 1e-9);
    CHECK_FALSE(rep.matched);
    CHECK(rep.worst_gap > 0.3);
    CHECK(rep.witness_poly.has_value());
}

TEST_CASE("trace word test is symmetric in its arguments") {
    Rng rng(42);
    for (int trial = 0; trial < 4; ++trial) {
        const std::size_t n = 2 + (trial % 4);
        const CMatrix a = rng.gaussian_matrix(n);
        const CMatrix b = rng.gaussian_matrix(n);
        const InvariantReport ab = specht_test(a, b, 6);
        const InvariantReport ba = specht_test(b, a, 6);
        CHECK(ab.matched == ba.matched);
        CHECK(ab.queries == ba.queries);
    }
}

TEST_CASE("word traces are unitary similarity invariants") {
    Rng rng(43);
    const CMatrix a = rng.gaussian_matrix(4);
    const CMatrix u = random_unitary(4, rng);
    const CMatrix b = adjoint(u) * a * u;

    std::vector<std::string> words;
    std::string cur;
    all_words(5, cur, words);
    for (const std::string& w : words) {
        const cplx ta = word_trace(w, a);
        const cplx tb = word_trace(w, b);
        CHECK(std::abs(ta - tb) <= 1e-9 * (1.0 + std::abs(ta)));
    }
    CHECK(specht_test(a, b, 6).matched);
}

TEST_CASE("trace word test agrees with the independent evaluator on a failure") {
    const auto [a, ap] = counterexample_pair(1.0, 2.0);
    const InvariantReport rep = specht_test(a, ap, 6);
    CHECK_FALSE(rep.matched);
    REQUIRE(rep.witness_word.has_value());

    // the witness lies in the cyclic class of x y y x x y, first hit in
    // enumeration order being x x y x y y
    CHECK(*rep.witness_word == "xxyxyy");
    CHECK(cyclic_rotations_contain("xyyxxy", *rep.witness_word));

    const cplx ta = word_trace(*rep.witness_word, a);
    const cplx tb = word_trace(*rep.witness_word, ap);
    const double gap = std::abs(ta - tb) / (1.0 + std::max(std::abs(ta), std::abs(tb)));
    CHECK(gap > 1e-9);
    CHECK(rep.worst_gap >= gap - 1e-12);

    // no shorter obstruction exists for this pair
    CHECK(specht_test(a, ap, 5).matched);
}

TEST_CASE("trace word test declines oversized enumerations up front") {
    const CMatrix a = ones_nilpotent(2);
    CHECK_THROWS_AS(specht_test(a, a, 25), budget_error);
    CHECK_THROWS_AS(specht_test(a, a, 70), budget_error);
}

TEST_CASE("tensor norm test passes on unitarily similar pairs") {
    Rng rng(44);
    const CMatrix a = rng.gaussian_matrix(4);
    const CMatrix u = random_unitary(4, rng);
    const InvariantReport rep = arveson_test(a, adjoint(u) * a * u, 16, 3, 1e-9);
    CHECK(rep.matched);
    CHECK(rep.queries == 16);
}

TEST_CASE("tensor norm test separates the counterexample pair") {
    const auto [a, ap] = counterexample_pair(1.0, 2.0);
    const InvariantReport rep = arveson_test(a, ap, 32, 0, 1e-9);
    CHECK_FALSE(rep.matched);
    CHECK(rep.worst_gap > 1e-3);
    CHECK(rep.witness_sample.has_value());
}

TEST_CASE("numerical range support of the all-ones nilpotent") {
    for (std::size_t n = 3; n <= 6; ++n) {
        const CMatrix q = ones_nilpotent(n);
        const double at_pi = numerical_range_support(q, 3.14159265358979323846);
        const double at_zero = numerical_range_support(q, 0.0);
        CHECK(std::abs(at_pi - 0.5) <= 1e-9);
        CHECK(std::abs(at_zero - (n - 1) / 2.0) <= 1e-9);
    }
}

TEST_CASE("numerical range support of normal matrices") {
    CMatrix d(2);
    d(0, 0) = cplx{1.0, 0.0};
    d(1, 1) = cplx{0.0, 1.0};
    CHECK(numerical_range_support(d, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    // direction pi/2 picks out the imaginary part
    CHECK(numerical_range_support(d, 1.5707963267948966) ==
          doctest::Approx(1.0).epsilon(1e-12));

    // translating by c I shifts the support by Re(e^{-i theta} c)
    Rng rng(45);
    const CMatrix a = rng.gaussian_matrix(3);
    const cplx c{0.7, -0.3};
    const double theta = 0.9;
    const CMatrix shifted = a + c * CMatrix::identity(3);
    const cplx rot = std::exp(cplx{0.0, -theta}) * c;
    CHECK(std::abs(numerical_range_support(shifted, theta) -
                   numerical_range_support(a, theta) - rot.real()) <= 1e-10);
}

TEST_CASE("two by two compressions shrink the numerical range") {
    Rng rng(46);
    const CMatrix a = rng.gaussian_matrix(6);
    for (std::size_t i = 0; i + 1 < 6; ++i) {
        const CMatrix c = compression_2x2(a, i);
        REQUIRE(c.order() == 2);
        CHECK(c(0, 0) == a(i, i));
        CHECK(c(0, 1) == a(i, i + 1));
        CHECK(c(1, 0) == a(i + 1, i));
        CHECK(c(1, 1) == a(i + 1, i + 1));
        for (int k = 0; k < 8; ++k) {
            const double theta = 2.0 * 3.14159265358979323846 * k / 8.0;
            CHECK(numerical_range_support(c, theta) <=
                  numerical_range_support(a, theta) + 1e-9);
        }
    }
    CHECK_THROWS_AS(compression_2x2(a, 5), dimension_error);
}

TEST_CASE("trace word agreement travels with norm profile agreement") {
    Rng rng(47);
    for (int trial = 0; trial < 3; ++trial) {
        const std::size_t n = 3 + trial;
        const CMatrix a = rng.gaussian_matrix(n);
        const CMatrix u = random_unitary(n, rng);
        const CMatrix b = adjoint(u) * a * u;
        CHECK(specht_test(a, b, 6).matched);
        CHECK(norms_match(a, b, default_family(n, 32, 4, trial), 1e-9).matched);
    }
}
