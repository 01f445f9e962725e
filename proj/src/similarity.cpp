#include "unicell/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "unicell/errors.hpp"

namespace unicell {

namespace {

constexpr double kSuperdiagFloor = 1e-8;  // below this the class hypothesis is void

cplx phase_of(cplx z) {
    const double m = std::abs(z);
    return m > 0.0 ? z / m : cplx{1.0, 0.0};
}

double subdiagonal_max(const CMatrix& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.order(); ++i)
        for (std::size_t j = 0; j < i; ++j) m = std::max(m, std::abs(a(i, j)));
    return m;
}

// Diagonal-unitary canonicalization of an upper triangular matrix.  t is
// modified in place: strictly lower entries are zeroed, the superdiagonal
// becomes exactly real positive, and w receives the diagonal phases.
void apply_phase_canonicalization(CMatrix& t, std::vector<cplx>& w) {
    const std::size_t n = t.order();
    w.assign(n, cplx{1.0, 0.0});
    for (std::size_t l = 0; l + 1 < n; ++l) {
        const double mag = std::abs(t(l, l + 1));
        if (mag < kSuperdiagFloor) {
            throw hypothesis_error(
                "canonical_form: superdiagonal entry below threshold, not in the "
                "constant-diagonal nonvanishing-superdiagonal class");
        }
        w[l + 1] = w[l] * std::conj(t(l, l + 1)) / mag;
    }
    CMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out(i, i) = t(i, i);
        for (std::size_t j = i + 1; j < n; ++j) out(i, j) = std::conj(w[i]) * t(i, j) * w[j];
        if (i + 1 < n) out(i, i + 1) = std::abs(t(i, i + 1));  // exactly real
    }
    t = std::move(out);
}

// Unitary triangularization adapted to single-eigenvalue matrices: peel off
// null vectors of compressed copies of N = A - (trace/n) I.  Each step takes
// the null vector of basis* N basis, lifts it, and shrinks the basis to its
// orthogonal complement via a Householder reflection.  For a unicellular A
// this loses only a modest factor over machine precision, where a general
// Schur factorization scatters the Jordan structure by the n-th root of the
// rounding error.
CMatrix deflation_triangularizer(const CMatrix& a) {
    const std::size_t n = a.order();
    const cplx lambda = trace(a) / static_cast<double>(n);
    CMatrix nm = a;
    for (std::size_t i = 0; i < n; ++i) nm(i, i) -= lambda;

    // basis columns: orthonormal, spanning the not-yet-deflated subspace
    std::vector<std::vector<cplx>> basis(n, std::vector<cplx>(n, cplx{0.0, 0.0}));
    for (std::size_t j = 0; j < n; ++j) basis[j][j] = 1.0;

    CMatrix v(n);  // accumulated unitary, columns are the deflated vectors
    for (std::size_t step = 0; step < n; ++step) {
        const std::size_t m = n - step;
        // compressed = basis* N basis
        CMatrix compressed(m);
        std::vector<cplx> tmp(n);
        for (std::size_t c = 0; c < m; ++c) {
            for (std::size_t i = 0; i < n; ++i) {
                cplx s{0.0, 0.0};
                for (std::size_t j = 0; j < n; ++j) s += nm(i, j) * basis[c][j];
                tmp[i] = s;
            }
            for (std::size_t r = 0; r < m; ++r) {
                cplx s{0.0, 0.0};
                for (std::size_t i = 0; i < n; ++i) s += std::conj(basis[r][i]) * tmp[i];
                compressed(r, c) = s;
            }
        }
        const NullVectorResult nv = null_vector(compressed);
        // lift to full coordinates
        std::vector<cplx> u(n, cplx{0.0, 0.0});
        for (std::size_t c = 0; c < m; ++c)
            for (std::size_t i = 0; i < n; ++i) u[i] += basis[c][i] * nv.v[c];
        double nu = 0.0;
        for (const cplx& x : u) nu += std::norm(x);
        nu = std::sqrt(nu);
        if (nu == 0.0) {
            throw hypothesis_error("canonical_form: deflation produced a zero vector");
        }
        for (std::size_t i = 0; i < n; ++i) v(i, step) = u[i] / nu;

        if (m == 1) break;
        // Householder complement of nv.v inside the current subspace:
        // reflect e1 onto nv.v, keep images of e2..em as the new basis.
        std::vector<cplx> hv = nv.v;
        const cplx ph = phase_of(hv[0]);
        hv[0] += ph;  // reflector mapping -ph*e1 to nv.v
        double nh2 = 0.0;
        for (const cplx& x : hv) nh2 += std::norm(x);
        std::vector<std::vector<cplx>> next(m - 1, std::vector<cplx>(n));
        for (std::size_t c = 1; c < m; ++c) {
            // column c of (I - 2 hv hv*/||hv||^2), then lift through basis
            std::vector<cplx> e(m, cplx{0.0, 0.0});
            e[c] = 1.0;
            cplx dot = std::conj(hv[c]);
            for (std::size_t i = 0; i < m; ++i) e[i] -= 2.0 * dot / nh2 * hv[i];
            for (std::size_t i = 0; i < n; ++i) {
                cplx s{0.0, 0.0};
                for (std::size_t cc = 0; cc < m; ++cc) s += basis[cc][i] * e[cc];
                next[c - 1][i] = s;
            }
        }
        basis = std::move(next);
    }
    return v;
}

}  // namespace

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::similar:
            return "similar";
        case Verdict::not_similar:
            return "not_similar";
        default:
            return "inconclusive";
    }
}

bool is_unicellular(const CMatrix& a, double tol) {
    const std::size_t n = a.order();
    if (n == 0) throw dimension_error("is_unicellular: empty matrix");
    if (n == 1) return true;
    const cplx lambda = trace(a) / static_cast<double>(n);
    CMatrix nm = a;
    for (std::size_t i = 0; i < n; ++i) nm(i, i) -= lambda;
    const double s = frobenius_norm(nm);
    if (s == 0.0) return false;  // scalar matrix, decomposes
    nm *= cplx{1.0 / s, 0.0};
    const CMatrix pow_n1 = matrix_power(nm, n - 1);
    const CMatrix pow_n = pow_n1 * nm;
    if (frobenius_norm(pow_n) > tol) return false;         // eigenvalues do not cluster
    return frobenius_norm(pow_n1) > tol * 1e-3;            // full Jordan index
}

std::pair<UnitaryWitness, CMatrix> canonical_form(const CMatrix& a, bool triangularize_first) {
    const std::size_t n = a.order();
    if (n == 0) throw dimension_error("canonical_form: empty matrix");
    const double scale = 1.0 + max_abs_entry(a);
    const bool triangular = subdiagonal_max(a) <= kDefaultTol * scale;

    if (triangular) {
        CMatrix t = a;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) t(i, j) = 0.0;
        std::vector<cplx> w;
        apply_phase_canonicalization(t, w);
        CMatrix wm(n);
        for (std::size_t i = 0; i < n; ++i) wm(i, i) = w[i];
        return {make_witness(std::move(wm)), std::move(t)};
    }
    if (!triangularize_first) {
        throw hypothesis_error("canonical_form: matrix is not upper triangular");
    }

    const CMatrix v = deflation_triangularizer(a);
    CMatrix t = adjoint(v) * a * v;
    if (subdiagonal_max(t) > 1e-6 * scale) {
        throw hypothesis_error(
            "canonical_form: deflation chain did not triangularize the matrix; input is "
            "not unicellular to working accuracy");
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) t(i, j) = 0.0;
    std::vector<cplx> w;
    apply_phase_canonicalization(t, w);
    CMatrix u = v;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) u(i, j) *= w[j];
    return {make_witness(std::move(u)), std::move(t)};
}

SimilarityReport decide_unitary_similarity(const CMatrix& a, const CMatrix& b, double tol) {
    SimilarityReport rep;
    if (a.order() != b.order()) {
        std::ostringstream msg;
        msg << "order mismatch: " << a.order() << " vs " << b.order();
        rep.verdict = Verdict::not_similar;
        rep.obstruction = msg.str();
        rep.method = "dimension check";
        return rep;
    }
    const std::size_t n = a.order();
    if (n == 0) {
        rep.verdict = Verdict::similar;
        rep.witness = make_witness(CMatrix::identity(0));
        rep.witness_residual = 0.0;
        rep.method = "empty matrices";
        return rep;
    }
    if (entrywise_close(a, b, 0.0)) {
        rep.verdict = Verdict::similar;
        rep.witness = make_witness(CMatrix::identity(n));
        rep.witness_residual = 0.0;
        rep.method = "exact equality";
        return rep;
    }

    const std::size_t fallback_len = std::min<std::size_t>(2 * n, 10);
    auto fallback = [&](const std::string& reason) {
        const InvariantReport specht = specht_test(a, b, fallback_len, tol);
        if (!specht.matched) {
            rep.verdict = Verdict::not_similar;
            std::ostringstream obs;
            obs << "trace of word " << specht.witness_word.value_or("?")
                << " differs (scaled gap " << specht.worst_gap << ")";
            rep.obstruction = obs.str();
            rep.method = reason + "; trace-word falsifier";
            return rep;
        }
        rep.verdict = Verdict::inconclusive;
        std::ostringstream m;
        m << reason << "; no trace-word obstruction up to length " << fallback_len;
        rep.method = m.str();
        return rep;
    };

    if (!is_unicellular(a, tol) || !is_unicellular(b, tol)) {
        return fallback("outside unicellular class");
    }

    std::pair<UnitaryWitness, CMatrix> ca, cb;
    try {
        ca = canonical_form(a, true);
        cb = canonical_form(b, true);
    } catch (const hypothesis_error& e) {
        return fallback(std::string("canonicalization failed (") + e.what() + ")");
    }

    // constant-diagonal band: the theorem's hypothesis (a)
    for (const auto* c : {&ca, &cb}) {
        const CMatrix& t = c->second;
        cplx mean{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) mean += t(i, i);
        mean /= static_cast<double>(n);
        const double band = 1e-7 * (1.0 + frobenius_norm(t));
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(t(i, i) - mean) > band) {
                return fallback("diagonal is not constant within the cluster band");
            }
        }
    }

    const double scale = 1.0 + std::max(max_abs_entry(ca.second), max_abs_entry(cb.second));
    const CMatrix diff = ca.second - cb.second;
    const double d = max_abs_entry(diff);
    if (d <= tol * scale) {
        CMatrix u = ca.first.U * adjoint(cb.first.U);
        const double resid = frobenius_norm(adjoint(u) * a * u - b);
        rep.verdict = Verdict::similar;
        rep.witness = make_witness(std::move(u));
        rep.witness_residual = resid;
        rep.method = "canonical form comparison";
        return rep;
    }
    if (d > 10.0 * tol * scale) {
        std::size_t bi = 0, bj = 0;
        bool found = false;
        for (std::size_t i = 0; i < n && !found; ++i) {
            for (std::size_t j = 0; j < n && !found; ++j) {
                if (std::abs(diff(i, j)) > tol * scale) {
                    bi = i;
                    bj = j;
                    found = true;
                }
            }
        }
        std::ostringstream obs;
        obs << "canonical forms differ at entry (" << bi << ", " << bj << ") by "
            << std::abs(diff(bi, bj)) << " (max difference " << d << ")";
        rep.verdict = Verdict::not_similar;
        rep.obstruction = obs.str();
        rep.method = "canonical form comparison";
        return rep;
    }
    rep.verdict = Verdict::inconclusive;
    std::ostringstream m;
    m << "canonical forms agree only within the ambiguity band (max difference " << d << ")";
    rep.method = m.str();
    return rep;
}

std::vector<std::vector<double>> principal_norm_profile(const CMatrix& a,
                                                        const PolynomialFamily& f) {
    std::vector<std::vector<double>> rows;
    rows.reserve(a.order());
    for (std::size_t k = 1; k <= a.order(); ++k) {
        rows.push_back(norm_profile(leading_submatrix(a, k), f));
    }
    return rows;
}

std::pair<CMatrix, CMatrix> counterexample_pair(double alpha, double beta) {
    if (!(0.0 < alpha && alpha < beta)) {
        throw hypothesis_error("counterexample_pair: parameters must satisfy 0 < alpha < beta");
    }
    CMatrix a(3), ap(3);
    a(0, 1) = alpha;
    a(1, 2) = beta;
    ap(0, 1) = beta;
    ap(1, 2) = alpha;
    return {std::move(a), std::move(ap)};
}

}  // namespace unicell
