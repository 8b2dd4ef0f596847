#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <vector>

#include "telecanon/bases.hpp"
#include "telecanon/qmath.hpp"

namespace telecanon {

enum class OperatorTag { unitary, zero, other };

struct OperatorClassification {
    OperatorTag tag = OperatorTag::other;
    double unitary_residual = 0.0;  // max-abs entry of (m^† m - I)
    double zero_residual = 0.0;     // max-abs entry of m
};

/// The eight 2x2 operators mapping the input qubit to Bob's collapsed state,
/// one per measurement outcome, with sum_i sigma_i^† sigma_i = 4 I.
struct ExtractionResult {
    std::array<Matrix2, 8> sigmas{};
    std::array<OperatorClassification, 8> tags{};
};

struct PerfectVerdict {
    bool perfect = false;
    std::vector<int> unitary_indices;       // 1-based outcome indices
    std::vector<int> zero_indices;          // 1-based outcome indices
    std::map<int, Matrix2> corrections;     // (U^i)^{-1} = sigma_i^† per unitary index
};

namespace detail {

inline OperatorClassification classify_operator(const Matrix2& m, double tol) {
    OperatorClassification c;
    c.unitary_residual = is_unitary(m, tol).residual;
    c.zero_residual = is_zero(m, tol).residual;
    if (c.unitary_residual <= tol)
        c.tag = OperatorTag::unitary;
    else if (c.zero_residual <= tol)
        c.tag = OperatorTag::zero;
    else
        c.tag = OperatorTag::other;
    return c;
}

}  // namespace detail

/// Decompose channel (x) input into per-outcome operators on Bob's qubit:
///
///   sigma_i[j][k] = 2 sum_{q1,q2} conj(phi_i[q1,q2,k]) channel[q1,q2,j]
///
/// so that channel (x) input = (1/2) sum_i |phi_i> (x) sigma_i|chi>, the
/// unique input-independent decomposition over a complete orthonormal basis.
inline ExtractionResult extract_operators(const PureState& channel,
                                          const MeasurementBasis& basis,
                                          double tol = kPredicateTol) {
    const std::vector<Qubit> channel_labels{Qubit::one, Qubit::two, Qubit::three};
    const std::vector<Qubit> basis_labels{Qubit::one, Qubit::two, Qubit::a};
    if (channel.qubits != channel_labels)
        throw LabelMismatch("channel must live on qubits (1,2,3)");
    if (!is_normalized(channel)) throw NotNormalized("channel must be normalized");
    if (basis.elements.size() != 8) throw MalformedBasis("basis must have 8 elements");
    for (const PureState& e : basis.elements)
        if (e.qubits != basis_labels)
            throw MalformedBasis("basis elements must live on qubits (1,2,a)");

    ExtractionResult result;
    for (std::size_t i = 0; i < 8; ++i) {
        const PureState& phi = basis.elements[i];
        Matrix2 sigma;
        for (int j = 0; j < 2; ++j) {
            for (int k = 0; k < 2; ++k) {
                cplx acc(0);
                for (int q1 = 0; q1 < 2; ++q1)
                    for (int q2 = 0; q2 < 2; ++q2)
                        acc += std::conj(phi.amps[static_cast<std::size_t>(4 * q1 + 2 * q2 + k)]) *
                               channel.amps[static_cast<std::size_t>(4 * q1 + 2 * q2 + j)];
                sigma(j, k) = 2.0 * acc;
            }
        }
        result.sigmas[i] = sigma;
        result.tags[i] = detail::classify_operator(sigma, tol);
    }
    return result;
}

/// Max-abs deviation of sum_i sigma_i^† sigma_i from 4 I.
inline double sigma_completeness_residual(const ExtractionResult& result) {
    Matrix2 acc;
    for (const Matrix2& s : result.sigmas) {
        const Matrix2 g = s.adjoint() * s;
        for (std::size_t k = 0; k < 4; ++k) acc.e[k] += g.e[k];
    }
    return max_abs(acc - cplx(4.0) * Matrix2::identity());
}

/// Perfect teleportation resource: exactly four operators unitary and four
/// zero. An operator cannot be both for tol < 0.5, so the partition is
/// unambiguous.
inline PerfectVerdict classify(const ExtractionResult& result, double tol = kPredicateTol) {
    PerfectVerdict verdict;
    for (int i = 1; i <= 8; ++i) {
        const Matrix2& sigma = result.sigmas[static_cast<std::size_t>(i - 1)];
        if (is_unitary(sigma, tol)) {
            verdict.unitary_indices.push_back(i);
            verdict.corrections.emplace(i, sigma.adjoint());
        } else if (is_zero(sigma, tol)) {
            verdict.zero_indices.push_back(i);
        }
    }
    verdict.perfect =
        verdict.unitary_indices.size() == 4 && verdict.zero_indices.size() == 4;
    return verdict;
}

namespace detail {

/// The correction set shared by both channel families:
/// identity, diag(1,-1), bit flip, and the real rotation [[0,-1],[1,0]].
inline std::array<Matrix2, 4> canonical_correction_set() {
    Matrix2 u2;
    u2(0, 0) = 1;
    u2(1, 1) = -1;
    Matrix2 u3;
    u3(0, 1) = 1;
    u3(1, 0) = 1;
    Matrix2 u4;
    u4(0, 1) = -1;
    u4(1, 0) = 1;
    return {Matrix2::identity(), u2, u3, u4};
}

/// Max-abs deviation of m from target after aligning the global phase,
/// using the Hilbert-Schmidt overlap to pick the phase.
inline double phase_aligned_deviation(const Matrix2& m, const Matrix2& target) {
    cplx overlap(0);
    for (std::size_t k = 0; k < 4; ++k) overlap += std::conj(target.e[k]) * m.e[k];
    const double mag = std::abs(overlap);
    const cplx phase = mag > 0 ? overlap / mag : cplx(1);
    return max_abs(std::conj(phase) * m - target);
}

}  // namespace detail

/// Smallest per-operator deviation achievable by matching the four unitary
/// operators one-to-one (up to global phase) against the canonical set;
/// returns the max over operators of that deviation.
inline double canonical_corrections_residual(const PerfectVerdict& verdict) {
    if (!verdict.perfect) throw NotPerfect("verdict is not a perfect-channel verdict");
    const auto targets = detail::canonical_correction_set();
    std::array<bool, 4> used{};
    double worst = 0.0;
    for (int idx : verdict.unitary_indices) {
        const Matrix2 sigma = verdict.corrections.at(idx).adjoint();
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_t = 0;
        for (std::size_t t = 0; t < 4; ++t) {
            if (used[t]) continue;
            const double dev = detail::phase_aligned_deviation(sigma, targets[t]);
            if (dev < best) {
                best = dev;
                best_t = t;
            }
        }
        used[best_t] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

/// True iff the four unitary operators are, up to a global phase each,
/// exactly the canonical correction set.
inline bool check_canonical_corrections(const PerfectVerdict& verdict,
                                        double tol = kPredicateTol) {
    return canonical_corrections_residual(verdict) <= tol;
}

}  // namespace telecanon
