#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "unicell/cmatrix.hpp"

namespace unicell {

// Seeded random source for every randomized routine in the library.
// The same seed always yields the same stream.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double normal() { return normal_(gen_); }

    double uniform() { return uniform_(gen_); }

    // Standard complex Gaussian: real and imaginary parts N(0, 1/2),
    // so E|z|^2 = 1.
    cplx complex_gaussian() {
        constexpr double inv_sqrt2 = 0.70710678118654752440;
        return {normal() * inv_sqrt2, normal() * inv_sqrt2};
    }

    // Uniform on the closed complex unit disc.
    cplx unit_disc() {
        const double r = std::sqrt(uniform());
        const double th = 2.0 * 3.14159265358979323846 * uniform();
        return {r * std::cos(th), r * std::sin(th)};
    }

    // Entrywise standard complex Gaussian matrix.
    CMatrix gaussian_matrix(std::size_t n) {
        CMatrix m(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = complex_gaussian();
        return m;
    }

  private:
    std::mt19937_64 gen_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace unicell
