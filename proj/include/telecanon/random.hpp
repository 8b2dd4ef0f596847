#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "telecanon/qmath.hpp"

namespace telecanon {

/// Seedable deterministic generator. Same seed gives the same draw sequence
/// within one build; bit-stability across compilers is not promised.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller.
    double normal() {
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    cplx complex_normal() { return cplx(normal(), normal()); }

private:
    std::mt19937_64 eng_;
};

/// Haar-uniform single-qubit state: two complex normals, normalized.
inline PureState haar_qubit(Qubit label, Rng& rng) {
    cplx alpha = rng.complex_normal();
    cplx beta = rng.complex_normal();
    const double n = std::sqrt(std::norm(alpha) + std::norm(beta));
    return PureState{{label}, {alpha / n, beta / n}};
}

/// Haar-uniform 2x2 unitary: Gram-Schmidt on two Gaussian columns.
inline Matrix2 haar_unitary(Rng& rng) {
    std::array<cplx, 2> u{rng.complex_normal(), rng.complex_normal()};
    std::array<cplx, 2> w{rng.complex_normal(), rng.complex_normal()};
    double un = std::sqrt(std::norm(u[0]) + std::norm(u[1]));
    u = {u[0] / un, u[1] / un};
    const cplx overlap = std::conj(u[0]) * w[0] + std::conj(u[1]) * w[1];
    w = {w[0] - overlap * u[0], w[1] - overlap * u[1]};
    double wn = std::sqrt(std::norm(w[0]) + std::norm(w[1]));
    w = {w[0] / wn, w[1] / wn};
    Matrix2 m;
    m(0, 0) = u[0];
    m(1, 0) = u[1];
    m(0, 1) = w[0];
    m(1, 1) = w[1];
    return m;
}

}  // namespace telecanon
