#include "unicell/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "unicell/errors.hpp"
#include "unicell/linalg.hpp"
#include "unicell/rng.hpp"

namespace unicell {

namespace {

double scaled_gap(double va, double vb) {
    return std::abs(va - vb) / (1.0 + std::max(std::abs(va), std::abs(vb)));
}

// Depth-first word walk sharing prefix products: one multiplication per word.
struct SpechtWalk {
    const CMatrix *ax, *ay, *bx, *by;
    std::size_t max_len;
    double tol;

    std::string word;
    std::vector<CMatrix> prod_a, prod_b;
    double worst_gap = 0.0;
    std::string first_fail;  // smallest (length, lexicographic) failing word
    std::size_t count = 0;

    void visit() {
        const cplx ta = trace(prod_a.back());
        const cplx tb = trace(prod_b.back());
        const double g = std::abs(ta - tb) / (1.0 + std::max(std::abs(ta), std::abs(tb)));
        worst_gap = std::max(worst_gap, g);
        ++count;
        if (g > tol) {
            if (first_fail.empty() || word.size() < first_fail.size() ||
                (word.size() == first_fail.size() && word < first_fail)) {
                first_fail = word;
            }
        }
    }

    void descend() {
        if (word.size() >= max_len) return;
        for (int letter = 0; letter < 2; ++letter) {
            const CMatrix& la = letter == 0 ? *ax : *ay;
            const CMatrix& lb = letter == 0 ? *bx : *by;
            prod_a.push_back(prod_a.back() * la);
            prod_b.push_back(prod_b.back() * lb);
            word.push_back(letter == 0 ? 'x' : 'y');
            visit();
            descend();
            word.pop_back();
            prod_a.pop_back();
            prod_b.pop_back();
        }
    }
};

}  // namespace

PolynomialFamily default_family(std::size_t order, std::size_t size, std::size_t max_degree,
                                std::uint64_t seed) {
    if (size == 0) throw dimension_error("default_family: size must be positive");
    if (max_degree == 0) max_degree = std::max<std::size_t>(order, 1);
    PolynomialFamily fam;
    for (std::size_t k = 1; k <= max_degree && fam.polys.size() < size; ++k) {
        fam.polys.push_back(Polynomial::monomial(k));
    }
    Rng rng(seed);
    while (fam.polys.size() < size) {
        std::vector<cplx> c(max_degree + 1);
        for (cplx& x : c) x = rng.unit_disc();
        fam.polys.emplace_back(std::move(c));
    }
    std::ostringstream desc;
    desc << "monomials + seeded random, degree <= " << max_degree << ", size " << size
         << ", seed " << seed;
    fam.description = desc.str();
    return fam;
}

std::vector<double> norm_profile(const CMatrix& a, const PolynomialFamily& f) {
    std::vector<double> out;
    out.reserve(f.polys.size());
    for (const Polynomial& p : f.polys) out.push_back(spectral_norm(p.eval_matrix(a)));
    return out;
}

InvariantReport norms_match(const CMatrix& a, const CMatrix& b, const PolynomialFamily& f,
                            double tol) {
    if (a.order() != b.order()) throw dimension_error("norms_match: order mismatch");
    if (f.polys.empty()) throw dimension_error("norms_match: empty family");
    InvariantReport rep;
    std::size_t worst_idx = 0;
    for (std::size_t i = 0; i < f.polys.size(); ++i) {
        const double na = spectral_norm(f.polys[i].eval_matrix(a));
        const double nb = spectral_norm(f.polys[i].eval_matrix(b));
        const double g = scaled_gap(na, nb);
        if (g > rep.worst_gap || i == 0) {
            rep.worst_gap = g;
            worst_idx = i;
        }
        ++rep.queries;
    }
    rep.matched = rep.worst_gap <= tol;
    rep.witness_poly = f.polys[worst_idx];
    return rep;
}

InvariantReport specht_test(const CMatrix& a, const CMatrix& b, std::size_t max_len, double tol,
                            std::size_t budget) {
    if (a.order() != b.order()) throw dimension_error("specht_test: order mismatch");
    if (max_len == 0) throw dimension_error("specht_test: max_len must be positive");
    if (max_len >= 8 * sizeof(std::size_t) - 1 ||
        (std::size_t{2} << max_len) - 2 > budget) {
        std::ostringstream msg;
        msg << "specht_test: enumerating words up to length " << max_len
            << " exceeds the word budget of " << budget;
        throw budget_error(msg.str());
    }
    SpechtWalk walk;
    const CMatrix as = adjoint(a), bs = adjoint(b);
    walk.ax = &a;
    walk.ay = &as;
    walk.bx = &b;
    walk.by = &bs;
    walk.max_len = max_len;
    walk.tol = tol;
    walk.prod_a.push_back(CMatrix::identity(a.order()));
    walk.prod_b.push_back(CMatrix::identity(b.order()));
    walk.descend();

    InvariantReport rep;
    rep.matched = walk.worst_gap <= tol;
    rep.worst_gap = walk.worst_gap;
    if (!walk.first_fail.empty()) rep.witness_word = walk.first_fail;
    rep.queries = walk.count;
    return rep;
}

InvariantReport arveson_test(const CMatrix& a, const CMatrix& b, std::size_t samples,
                             std::uint64_t seed, double tol) {
    if (a.order() != b.order()) throw dimension_error("arveson_test: order mismatch");
    if (samples == 0) throw dimension_error("arveson_test: samples must be positive");
    const std::size_t n = a.order();
    const CMatrix eye = CMatrix::identity(n);
    Rng rng(seed);
    InvariantReport rep;
    std::size_t worst_idx = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        const CMatrix c = rng.gaussian_matrix(n);
        const CMatrix d = rng.gaussian_matrix(n);
        const CMatrix id = kron(eye, d);
        const double na = spectral_norm(kron(a, c) + id);
        const double nb = spectral_norm(kron(b, c) + id);
        const double g = scaled_gap(na, nb);
        if (g > rep.worst_gap || s == 0) {
            rep.worst_gap = g;
            worst_idx = s;
        }
        ++rep.queries;
    }
    rep.matched = rep.worst_gap <= tol;
    rep.witness_sample = worst_idx;
    return rep;
}

double numerical_range_support(const CMatrix& a, double theta) {
    const std::size_t n = a.order();
    if (n == 0) return 0.0;
    const cplx rot = std::exp(cplx{0.0, -theta});
    const CMatrix ra = rot * a;
    const CMatrix h = 0.5 * (ra + adjoint(ra));
    double best = 0.0;
    bool first = true;
    for (const cplx& ev : eigenvalues(h)) {
        if (first || ev.real() > best) best = ev.real();
        first = false;
    }
    return best;
}

CMatrix compression_2x2(const CMatrix& a, std::size_t i) {
    if (i + 1 >= a.order()) throw dimension_error("compression_2x2: index out of range");
    CMatrix c(2);
    c(0, 0) = a(i, i);
    c(0, 1) = a(i, i + 1);
    c(1, 0) = a(i + 1, i);
    c(1, 1) = a(i + 1, i + 1);
    return c;
}

}  // namespace unicell
