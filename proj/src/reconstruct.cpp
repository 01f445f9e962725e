#include "unicell/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "unicell/errors.hpp"
#include "unicell/linalg.hpp"
#include "unicell/rng.hpp"

namespace unicell {

namespace {

constexpr double kSuperdiagFloor = 1e-8;

// View of an oracle whose hidden matrix is translated by -lambda: every
// incoming polynomial is composed with (t - lambda) before the real query.
class ShiftedOracle final : public NormOracle {
  public:
    ShiftedOracle(NormOracle& base, cplx lambda)
        : base_(base), shift_(Polynomial({-lambda, cplx{1.0, 0.0}})) {}

    std::size_t order() const override { return base_.order(); }

  protected:
    double do_query(std::size_t i, const Polynomial& f) override {
        return base_.query(i, f.compose(shift_));
    }

  private:
    NormOracle& base_;
    Polynomial shift_;
};

}  // namespace

double NormOracle::query(std::size_t i, const Polynomial& f) {
    if (i < 1 || i > order()) {
        throw dimension_error("NormOracle::query: index outside 1..order");
    }
    ++count_;
    const double v = do_query(i, f);
    if (!std::isfinite(v) || v < 0.0) {
        throw oracle_error("NormOracle::query: oracle returned a non-finite or negative value");
    }
    return v;
}

SimulatedOracle::SimulatedOracle(CMatrix hidden) : hidden_(std::move(hidden)) {
    const std::size_t n = hidden_.order();
    if (n == 0) throw dimension_error("simulate_oracle: empty hidden matrix");
    const double band = kDefaultTol * (1.0 + max_abs_entry(hidden_));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (std::abs(hidden_(i, j)) > band) {
                throw hypothesis_error("simulate_oracle: hidden matrix is not upper triangular");
            }
        }
        if (std::abs(hidden_(i, i) - hidden_(0, 0)) > band) {
            throw hypothesis_error("simulate_oracle: hidden matrix diagonal is not constant");
        }
        if (i + 1 < n && std::abs(hidden_(i, i + 1)) <= kSuperdiagFloor) {
            throw hypothesis_error(
                "simulate_oracle: hypothesis (b) violated, vanishing superdiagonal entry");
        }
    }
}

double SimulatedOracle::do_query(std::size_t i, const Polynomial& f) {
    return spectral_norm(f.eval_matrix(leading_submatrix(hidden_, i)));
}

SimulatedOracle simulate_oracle(const CMatrix& hidden) { return SimulatedOracle(hidden); }

cplx trilaterate(double r0, double r1, double ri, double tol) {
    const cplx c{(r0 * r0 + 1.0 - r1 * r1) / 2.0, (r0 * r0 + 1.0 - ri * ri) / 2.0};
    // Consistency is checked on squared distances: the radii may carry a
    // square-root-damped error when they are near zero, the squares do not.
    const double scale = 1.0 + r0 * r0 + r1 * r1 + ri * ri;
    const double d0 = std::abs(std::norm(c) - r0 * r0);
    const double d1 = std::abs(std::norm(c - cplx{1.0, 0.0}) - r1 * r1);
    const double di = std::abs(std::norm(c - cplx{0.0, 1.0}) - ri * ri);
    if (std::max({d0, d1, di}) > tol * scale) {
        std::ostringstream msg;
        msg << "trilaterate: radii (" << r0 << ", " << r1 << ", " << ri
            << ") are not consistent with any single point (worst squared deviation "
            << std::max({d0, d1, di}) << ")";
        throw oracle_error(msg.str());
    }
    return c;
}

cplx recover_lambda(NormOracle& oracle, double tol) {
    const double r0 = oracle.query(1, Polynomial::monomial(1));
    const double r1 = oracle.query(1, Polynomial({cplx{-1.0, 0.0}, cplx{1.0, 0.0}}));
    const double ri = oracle.query(1, Polynomial({cplx{0.0, -1.0}, cplx{1.0, 0.0}}));
    return trilaterate(r0, r1, ri, tol);
}

CMatrix recover_base3(NormOracle& oracle, double tol) {
    if (oracle.order() < 3) throw dimension_error("recover_base3: oracle order below 3");
    const double a12 = oracle.query(2, Polynomial::monomial(1));
    if (a12 <= kSuperdiagFloor) {
        throw hypothesis_error("recover_base3: hypothesis (b) violated, a12 vanishes");
    }
    const double prod = oracle.query(3, Polynomial::monomial(2));  // a12 * a23
    const double a23 = prod / a12;
    if (a23 <= kSuperdiagFloor) {
        throw hypothesis_error("recover_base3: hypothesis (b) violated, a23 vanishes");
    }

    // One query per reference point w: f_w = t - (w/prod) t^2 turns the
    // hidden corner entry c into c - w while keeping the rest of the 3x3
    // shape, and the closed-form norm of that shape is invertible for
    // |c - w|.
    auto radius = [&](cplx w) {
        const Polynomial f({cplx{0.0, 0.0}, cplx{1.0, 0.0}, -w / prod});
        const double nrm = oracle.query(3, f);
        if (nrm <= 0.0) throw oracle_error("recover_base3: zero norm from a nonzero matrix");
        const double q = a12 * a23 / nrm;
        double rad = nrm * nrm + q * q - a12 * a12 - a23 * a23;
        if (rad < 0.0) {
            if (rad < -tol * (1.0 + nrm * nrm)) {
                throw oracle_error("recover_base3: negative radicand, oracle values inconsistent");
            }
            rad = 0.0;
        }
        return std::sqrt(rad);
    };
    const double r0 = radius(cplx{0.0, 0.0});
    const double r1 = radius(cplx{1.0, 0.0});
    const double ri = radius(cplx{0.0, 1.0});
    const cplx a13 = trilaterate(r0, r1, ri, tol);

    CMatrix b(3);
    b(0, 1) = a12;
    b(1, 2) = a23;
    b(0, 2) = a13;
    return b;
}

cplx recover_power_corner(const CMatrix& m_known,
                          const std::vector<std::pair<cplx, double>>& h_samples, double tol,
                          double* rms_out) {
    const std::size_t n = m_known.order();
    if (n < 2) throw dimension_error("recover_power_corner: order below 2");
    if (h_samples.size() < 3) {
        throw dimension_error("recover_power_corner: at least 3 samples required");
    }

    CMatrix work = m_known;
    auto f_of = [&](cplx c, cplx z) {
        work(0, n - 1) = c + z;
        return spectral_norm(work);
    };
    auto objective = [&](cplx c) {
        double s = 0.0;
        for (const auto& [z, h] : h_samples) {
            const double d = f_of(c, z) - h;
            s += d * d;
        }
        return s;
    };

    double hmax = 0.0;
    for (const auto& [z, h] : h_samples) hmax = std::max(hmax, h);

    // Any consistent corner obeys |c| <= ||M + zE|| + |z| for every sample,
    // so the search never needs to leave this disc; stepping outside it means
    // the data is bad, not that the minimum is far away.
    double bound = std::numeric_limits<double>::infinity();
    for (const auto& [z, h] : h_samples) bound = std::min(bound, h + std::abs(z));
    bound = 2.0 * bound + 10.0;

    // Large-|z| asymptote from opposite sample pairs on the two axes:
    // h(z)^2 - h(-z)^2 -> 4 Re(conj(z) c) as |z| grows.
    std::optional<cplx> asym;
    {
        double re_est = 0.0, im_est = 0.0, re_s = 0.0, im_s = 0.0;
        for (const auto& [z, h] : h_samples) {
            for (const auto& [z2, h2] : h_samples) {
                if (std::abs(z + z2) > 1e-12 * (1.0 + std::abs(z))) continue;
                if (std::abs(z.imag()) <= 1e-12 && z.real() > re_s) {
                    re_s = z.real();
                    re_est = (h * h - h2 * h2) / (4.0 * z.real());
                }
                if (std::abs(z.real()) <= 1e-12 && z.imag() > im_s) {
                    im_s = z.imag();
                    im_est = (h * h - h2 * h2) / (4.0 * z.imag());
                }
            }
        }
        if (re_s > 0.0 && im_s > 0.0) asym = cplx{re_est, im_est};
    }

    // Damped least squares with forward-difference gradients.
    auto descend = [&](cplx c0) {
        cplx c = std::abs(c0) <= bound ? c0 : c0 * (bound / std::abs(c0));
        double obj = objective(c);
        double mu = 1e-3;
        for (int iter = 0; iter < 200; ++iter) {
            const double step = 1e-6 * (1.0 + std::abs(c));
            double j11 = 0.0, j12 = 0.0, j22 = 0.0, g1 = 0.0, g2 = 0.0;
            for (const auto& [z, h] : h_samples) {
                const double f0 = f_of(c, z);
                const double dre = (f_of(c + cplx{step, 0.0}, z) - f0) / step;
                const double dim = (f_of(c + cplx{0.0, step}, z) - f0) / step;
                const double r = f0 - h;
                j11 += dre * dre;
                j12 += dre * dim;
                j22 += dim * dim;
                g1 += dre * r;
                g2 += dim * r;
            }
            const double d1 = j11 + mu * (j11 > 0.0 ? j11 : 1.0);
            const double d2 = j22 + mu * (j22 > 0.0 ? j22 : 1.0);
            const double det = d1 * d2 - j12 * j12;
            if (det == 0.0) break;
            const cplx delta{(-g1 * d2 + g2 * j12) / det, (-g2 * d1 + g1 * j12) / det};
            const cplx trial = c + delta;
            if (!(std::abs(trial) <= bound)) {  // also catches NaN steps
                mu *= 10.0;
                if (mu > 1e12) break;
                continue;
            }
            const double tobj = objective(trial);
            if (tobj < obj) {
                c = trial;
                obj = tobj;
                mu = std::max(mu * 0.3, 1e-12);
                if (std::abs(delta) <= tol * (1.0 + std::abs(c)) || obj <= 1e-28) break;
            } else {
                mu *= 10.0;
                if (mu > 1e12) break;
            }
        }
        return std::make_pair(c, obj);
    };

    std::vector<std::pair<cplx, double>> minima;
    minima.push_back(descend(cplx{0.0, 0.0}));
    if (asym) minima.push_back(descend(*asym));

    const auto best = *std::min_element(
        minima.begin(), minima.end(),
        [](const auto& a, const auto& b) { return a.second < b.second; });
    const double resid_tol = 1e-6 * (1.0 + hmax);
    const double best_rms = std::sqrt(best.second / static_cast<double>(h_samples.size()));

    for (const auto& [c, obj] : minima) {
        const double rms = std::sqrt(obj / static_cast<double>(h_samples.size()));
        if (rms <= resid_tol && std::abs(c - best.first) > 1e-5 * (1.0 + std::abs(best.first))) {
            throw rank_ambiguity_error(
                "recover_power_corner: two distinct corner values fit the samples");
        }
    }
    if (best_rms > resid_tol) {
        std::ostringstream msg;
        msg << "recover_power_corner: no corner value fits the samples (rms misfit " << best_rms
            << ")";
        throw oracle_error(msg.str());
    }
    if (rms_out) *rms_out = best_rms;
    return best.first;
}

cplx back_substitute_column(const CMatrix& a_partial, std::size_t i, cplx corner) {
    const std::size_t n = a_partial.order();
    if (n < 2 || i < 1 || i >= n) {
        throw dimension_error("back_substitute_column: step index outside 1..n-1");
    }
    const std::size_t ru = n - i - 1;  // row of the unknown, 0-based
    const CMatrix p = matrix_power(a_partial, n - i - 1);
    cplx known{0.0, 0.0};
    for (std::size_t m = ru + 1; m + 1 < n; ++m) known += p(0, m) * a_partial(m, n - 1);
    const cplx coef = p(0, ru);
    if (std::abs(coef) < 1e-12) {
        throw hypothesis_error(
            "back_substitute_column: superdiagonal product coefficient vanished");
    }
    return (corner - known) / coef;
}

namespace {

// Extends the recovered strictly upper matrix from order k-1 to order k:
// one direct query for the new superdiagonal entry, then one corner solve
// plus back substitution per remaining entry of column k, top to bottom.
void extend_level(NormOracle& shifted, CMatrix& b, std::size_t k,
                  std::vector<std::vector<double>>& residuals) {
    double pi_prev = 1.0;  // product of the first k-2 superdiagonal entries
    for (std::size_t l = 0; l + 2 < k; ++l) pi_prev *= b(l, l + 1).real();
    const double top_norm = shifted.query(k, Polynomial::monomial(k - 1));
    const double a_new = top_norm / pi_prev;
    if (a_new <= kSuperdiagFloor) {
        std::ostringstream msg;
        msg << "reconstruct: hypothesis (b) violated, superdiagonal entry " << (k - 1)
            << "," << k << " vanishes";
        throw hypothesis_error(msg.str());
    }
    b(k - 2, k - 1) = a_new;
    const double pi_full = pi_prev * a_new;  // corner of A^(k-1)

    for (std::size_t i = 2; i + 1 <= k; ++i) {
        const std::size_t p = k - i;
        auto g_of = [&](cplx z) {
            std::vector<cplx> cfs(k, cplx{0.0, 0.0});
            cfs[p] = 1.0;
            cfs[k - 1] = z / pi_full;
            return Polynomial(std::move(cfs));
        };
        const double h0 = shifted.query(k, g_of(cplx{0.0, 0.0}));
        const double s = 1.0 + h0;
        std::vector<std::pair<cplx, double>> samples;
        samples.emplace_back(cplx{0.0, 0.0}, h0);
        for (const cplx z : {cplx{s, 0.0}, cplx{-s, 0.0}, cplx{0.0, s}, cplx{0.0, -s},
                             cplx{2.0 * s, 0.0}}) {
            samples.emplace_back(z, shifted.query(k, g_of(z)));
        }
        if (h0 < 1.0) {
            // matching the sample scale to the corner magnitude keeps the
            // solve conditioned when the power's entries are all small
            const double s2 = std::max(h0, 1e-8);
            for (const cplx z :
                 {cplx{s2, 0.0}, cplx{-s2, 0.0}, cplx{0.0, s2}, cplx{0.0, -s2}}) {
                samples.emplace_back(z, shifted.query(k, g_of(z)));
            }
        }
        const CMatrix bk = leading_submatrix(b, k);
        CMatrix m = matrix_power(bk, p);
        m(0, k - 1) = 0.0;
        double rms = 0.0;
        cplx corner;
        try {
            corner = recover_power_corner(m, samples, 1e-10, &rms);
        } catch (const std::runtime_error& e) {
            std::ostringstream msg;
            msg << "reconstruct: level " << k << " step " << i << ": " << e.what();
            throw oracle_error(msg.str());
        }
        b(k - i - 1, k - 1) = back_substitute_column(bk, i, corner);
        residuals[k - i - 1][k - 1] = rms;
    }
}

}  // namespace

ReconstructionReport reconstruct(NormOracle& oracle, double tol,
                                 std::size_t verify_samples, std::uint64_t verify_seed) {
    const std::size_t n = oracle.order();
    if (n == 0) throw dimension_error("reconstruct: oracle order is zero");
    ReconstructionReport rep;
    rep.residuals.assign(n, std::vector<double>(n, 0.0));

    rep.lambda = recover_lambda(oracle, tol);
    ShiftedOracle shifted(oracle, rep.lambda);

    CMatrix b(n);
    if (n == 2) {
        const double a01 = shifted.query(2, Polynomial::monomial(1));
        if (a01 <= kSuperdiagFloor) {
            throw hypothesis_error("reconstruct: hypothesis (b) violated, a12 vanishes");
        }
        b(0, 1) = a01;
    } else if (n >= 3) {
        const CMatrix base = recover_base3(shifted, tol);
        b(0, 1) = base(0, 1);
        b(1, 2) = base(1, 2);
        b(0, 2) = base(0, 2);
        for (std::size_t k = 4; k <= n; ++k) extend_level(shifted, b, k, rep.residuals);
    }

    rep.recovered = b;
    for (std::size_t i = 0; i < n; ++i) rep.recovered(i, i) = rep.lambda;

    // Held-out verification: random polynomials none of the steps used,
    // replayed against a simulator of the recovered matrix.
    {
        SimulatedOracle sim(rep.recovered);
        Rng rng(verify_seed);
        double worst = 0.0;
        for (std::size_t trial = 0; trial < verify_samples; ++trial) {
            std::vector<cplx> cfs(n + 1);
            for (cplx& x : cfs) x = rng.unit_disc();
            const Polynomial f(std::move(cfs));
            for (std::size_t i = 1; i <= n; ++i) {
                const double va = oracle.query(i, f);
                const double vb = sim.query(i, f);
                const double gap = std::abs(va - vb) / (1.0 + std::max(va, vb));
                worst = std::max(worst, gap);
            }
        }
        rep.verification_gap = worst;
    }
    rep.query_count = oracle.query_count();
    return rep;
}

}  // namespace unicell
