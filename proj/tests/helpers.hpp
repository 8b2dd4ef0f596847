// Shared test utilities: independent oracles and random generators.
// Everything here stays off the library's implementation paths so the
// checks stay meaningful.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>
#include <vector>

#include "telecanon/telecanon.hpp"

namespace tc_test {

using namespace telecanon;

// --- independent numeric oracles ---------------------------------------

/// Plain index-sum inner product, written out independently.
inline cplx brute_inner(const PureState& bra, const PureState& ket) {
    cplx acc(0);
    for (std::size_t k = 0; k < bra.amps.size(); ++k)
        acc += std::conj(bra.amps[k]) * ket.amps[k];
    return acc;
}

/// Closed-form eigenvalues of a Hermitian 2x2 [[p, w], [conj(w), q]].
inline std::pair<double, double> herm2_eigenvalues(double p, double q, cplx w) {
    const double mid = 0.5 * (p + q);
    const double rad = std::sqrt(0.25 * (p - q) * (p - q) + std::norm(w));
    return {mid - rad, mid + rad};
}

/// Squared Schmidt coefficients of the (12|3) split: reshape the 8
/// amplitudes into a 4x2 matrix M and take the eigenvalues of M^† M.
inline std::pair<double, double> schmidt_squares_12_3(const PureState& s) {
    double g00 = 0.0, g11 = 0.0;
    cplx g01(0);
    for (std::size_t row = 0; row < 4; ++row) {
        const cplx m0 = s.amps[2 * row];
        const cplx m1 = s.amps[2 * row + 1];
        g00 += std::norm(m0);
        g11 += std::norm(m1);
        g01 += std::conj(m0) * m1;
    }
    return herm2_eigenvalues(g00, g11, g01);
}

/// Binary entropy of a two-outcome spectrum, the direct eigenvalue formula.
inline double entropy_of_pair(double l1, double l2) {
    double h = 0.0;
    if (l1 > 0) h -= l1 * std::log2(l1);
    if (l2 > 0) h -= l2 * std::log2(l2);
    return h;
}

/// Apply a single-qubit operator to one labeled qubit of a state.
inline PureState apply_single_qubit(const PureState& s, Qubit label, const Matrix2& u) {
    const std::size_t n = s.num_qubits();
    std::size_t pos = 0;
    while (pos < n && s.qubits[pos] != label) ++pos;
    const std::size_t shift = n - 1 - pos;
    std::vector<cplx> out(s.amps.size(), cplx(0));
    for (std::size_t k = 0; k < s.amps.size(); ++k) {
        const std::size_t bit = (k >> shift) & 1u;
        const std::size_t k0 = k & ~(std::size_t{1} << shift);
        const std::size_t k1 = k0 | (std::size_t{1} << shift);
        out[k] = u(static_cast<int>(bit), 0) * s.amps[k0] + u(static_cast<int>(bit), 1) * s.amps[k1];
    }
    return PureState{s.qubits, std::move(out)};
}

/// (1/2) sum_i |phi_i> (x) sigma_i|chi>, assembled on (1,2,a,3) and
/// reordered to (1,2,3,a). Equality with channel (x) input is the
/// decomposition identity.
inline PureState reassemble(const MeasurementBasis& basis, const ExtractionResult& extraction,
                            const PureState& input) {
    const std::array<cplx, 2> chi{input.amps[0], input.amps[1]};
    std::vector<cplx> acc(16, cplx(0));
    for (std::size_t i = 0; i < 8; ++i) {
        const auto bob = extraction.sigmas[i].apply(chi);
        for (std::size_t k = 0; k < 8; ++k) {
            acc[2 * k] += 0.5 * basis.elements[i].amps[k] * bob[0];
            acc[2 * k + 1] += 0.5 * basis.elements[i].amps[k] * bob[1];
        }
    }
    const PureState on_12a3{{Qubit::one, Qubit::two, Qubit::a, Qubit::three}, std::move(acc)};
    return reordered(on_12a3, {Qubit::one, Qubit::two, Qubit::three, Qubit::a});
}

// --- random generators ---------------------------------------------------

inline PureState random_state(std::vector<Qubit> labels, Rng& rng) {
    std::vector<cplx> amps(std::size_t{1} << labels.size());
    double n2 = 0.0;
    for (cplx& a : amps) {
        a = rng.complex_normal();
        n2 += std::norm(a);
    }
    const double n = std::sqrt(n2);
    for (cplx& a : amps) a /= n;
    return PureState{std::move(labels), std::move(amps)};
}

/// Haar-ish random orthonormal basis on (1,2,a) by Gram-Schmidt.
inline MeasurementBasis random_basis_12a(Rng& rng) {
    MeasurementBasis basis;
    while (basis.elements.size() < 8) {
        PureState cand = random_state({Qubit::one, Qubit::two, Qubit::a}, rng);
        for (const PureState& prev : basis.elements) {
            const cplx overlap = brute_inner(prev, cand);
            for (std::size_t k = 0; k < 8; ++k) cand.amps[k] -= overlap * prev.amps[k];
        }
        const double n = norm(cand);
        if (n < 1e-6) continue;  // resample a near-dependent draw
        for (cplx& a : cand.amps) a /= n;
        basis.elements.push_back(std::move(cand));
    }
    return basis;
}

inline CanonicalParams1 random_params1(Rng& rng, bool random_phases = true) {
    double a = 0.0, b = 0.0;
    const double limit = std::sqrt(0.5);
    do {
        a = (2.0 * rng.uniform() - 1.0) * limit;
        b = (2.0 * rng.uniform() - 1.0) * limit;
    } while (a * a + b * b > 0.5);
    CanonicalParams1 p{a, b, 0.0, 0.0, 0.0};
    if (random_phases) {
        p.delta = 2.0 * std::numbers::pi * rng.uniform();
        p.lambda = 2.0 * std::numbers::pi * rng.uniform();
        p.gamma = 2.0 * std::numbers::pi * rng.uniform();
    }
    return p;
}

inline CanonicalParams2 random_params2(Rng& rng, bool random_phases = true) {
    const double limit = std::sqrt(0.5);
    CanonicalParams2 p{(2.0 * rng.uniform() - 1.0) * limit,
                       (2.0 * rng.uniform() - 1.0) * limit, 0.0, 0.0, 0.0};
    if (random_phases) {
        p.delta = 2.0 * std::numbers::pi * rng.uniform();
        p.lambda = 2.0 * std::numbers::pi * rng.uniform();
        p.gamma = 2.0 * std::numbers::pi * rng.uniform();
    }
    return p;
}

// --- comparison helpers ----------------------------------------------------

inline double max_amp_deviation(const PureState& x, const PureState& y) {
    double dev = 0.0;
    for (std::size_t k = 0; k < x.amps.size(); ++k)
        dev = std::max(dev, std::abs(x.amps[k] - y.amps[k]));
    return dev;
}

/// Max amplitude deviation after aligning the global phase of x onto y.
inline double phase_aligned_deviation(const PureState& x, const PureState& y) {
    const cplx overlap = brute_inner(y, x);
    const double mag = std::abs(overlap);
    const cplx phase = mag > 0 ? overlap / mag : cplx(1);
    double dev = 0.0;
    for (std::size_t k = 0; k < x.amps.size(); ++k)
        dev = std::max(dev, std::abs(x.amps[k] / phase - y.amps[k]));
    return dev;
}

inline double matrix_deviation(const Matrix2& x, const Matrix2& y) { return max_abs(x - y); }

}  // namespace tc_test
