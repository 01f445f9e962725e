// Shared helpers for the test suite: seeded random matrix generators, gap
// measures, a query-recording oracle, and a tiny process runner for the CLI
// integration tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "unicell/cmatrix.hpp"
#include "unicell/polynomial.hpp"
#include "unicell/reconstruct.hpp"
#include "unicell/rng.hpp"

namespace testsupport {

using unicell::CMatrix;
using unicell::cplx;
using unicell::Polynomial;
using unicell::Rng;

inline double max_gap(const CMatrix& a, const CMatrix& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.order(); ++i) {
        for (std::size_t j = 0; j < a.order(); ++j) {
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
        }
    }
    return worst;
}

inline bool exactly_equal(const CMatrix& a, const CMatrix& b) {
    if (a.order() != b.order()) return false;
    for (std::size_t i = 0; i < a.order(); ++i) {
        for (std::size_t j = 0; j < a.order(); ++j) {
            if (a(i, j) != b(i, j)) return false;
        }
    }
    return true;
}

// Upper triangular, constant diagonal lambda, superdiagonal moduli in
// [lo, hi] with random phases, strictly-above-superdiagonal entries complex
// of modulus at most fill.  This is the class the reconstruction theorem
// covers, before phase canonicalization.
inline CMatrix random_unicellular(std::size_t n, Rng& rng, cplx lambda, double lo,
                                  double hi, double fill) {
    CMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) a(i, i) = lambda;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double r = lo + (hi - lo) * rng.uniform();
        const double ph = 2.0 * 3.14159265358979323846 * rng.uniform();
        a(i, i + 1) = r * cplx{std::cos(ph), std::sin(ph)};
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 2; j < n; ++j) a(i, j) = fill * rng.unit_disc();
    }
    return a;
}

// Log of every (index, polynomial, answer) another oracle produced, so a
// test can replay one run's queries against a second matrix.
struct LoggedQuery {
    std::size_t i;
    Polynomial f;
    double value;
};

class RecordingOracle final : public unicell::NormOracle {
  public:
    explicit RecordingOracle(unicell::NormOracle& inner) : inner_(inner) {}

    std::size_t order() const override { return inner_.order(); }
    const std::vector<LoggedQuery>& log() const { return log_; }

  protected:
    double do_query(std::size_t i, const Polynomial& f) override {
        const double v = inner_.query(i, f);
        log_.push_back({i, f, v});
        return v;
    }

  private:
    unicell::NormOracle& inner_;
    std::vector<LoggedQuery> log_;
};

struct CliResult {
    int exit_code;
    std::string out;
};

// Runs `cmd` through the shell, capturing stdout; stderr goes to the test
// log.  The exit code is the command's own (127 for exec failures).
inline CliResult run_command(const std::string& cmd) {
    CliResult res{-1, {}};
    std::FILE* p = popen(cmd.c_str(), "r");
    if (!p) return res;
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, p)) > 0) res.out.append(buf, got);
    const int status = pclose(p);
    if (WIFEXITED(status)) res.exit_code = WEXITSTATUS(status);
    return res;
}

inline std::string cli_path() {
    const char* p = std::getenv("UNICELL_CLI");
    return p ? std::string(p) : std::string();
}

inline std::string oracle_path() {
    const char* p = std::getenv("UNICELL_ORACLE");
    return p ? std::string(p) : std::string();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (f) {
        std::fwrite(text.data(), 1, text.size(), f);
        std::fclose(f);
    }
}

}  // namespace testsupport
