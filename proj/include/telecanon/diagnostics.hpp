#pragma once

#include <cmath>
#include <optional>

#include "telecanon/bases.hpp"
#include "telecanon/channels.hpp"
#include "telecanon/extractor.hpp"
#include "telecanon/protocol.hpp"
#include "telecanon/qmath.hpp"

namespace telecanon {

/// Bob's reduced density matrix: trace out Alice's qubits 1 and 2.
inline DensityMatrix bob_reduced_state(const PureState& channel) {
    if (channel.num_qubits() != 3) throw LabelMismatch("channel must be a 3-qubit state");
    if (!is_normalized(channel)) throw NotNormalized("channel must be normalized");
    return partial_trace(channel, {Qubit::three});
}

inline double max_deviation_from_half_identity(const DensityMatrix& rho) {
    double dev = 0.0;
    for (std::size_t r = 0; r < rho.dim; ++r)
        for (std::size_t c = 0; c < rho.dim; ++c) {
            const cplx expected = (r == c) ? cplx(0.5) : cplx(0);
            dev = std::max(dev, std::abs(rho.at(r, c) - expected));
        }
    return dev;
}

/// Three-tangle tau = 4 |Det(a)|, Det being the 2x2x2 hyperdeterminant of the
/// amplitude tensor. Invariant under local unitaries; 1 on GHZ, 0 on W-class
/// and product states, so it separates the two entanglement classes.
inline double three_tangle(const PureState& channel) {
    if (channel.num_qubits() != 3) throw LabelMismatch("three_tangle needs a 3-qubit state");
    const auto& a = channel.amps;
    const cplx d1 = a[0] * a[0] * a[7] * a[7] + a[1] * a[1] * a[6] * a[6] +
                    a[2] * a[2] * a[5] * a[5] + a[4] * a[4] * a[3] * a[3];
    const cplx d2 = a[0] * a[7] * a[3] * a[4] + a[0] * a[7] * a[5] * a[2] +
                    a[0] * a[7] * a[6] * a[1] + a[3] * a[4] * a[5] * a[2] +
                    a[3] * a[4] * a[6] * a[1] + a[5] * a[2] * a[6] * a[1];
    const cplx d3 = a[0] * a[6] * a[5] * a[3] + a[7] * a[1] * a[2] * a[4];
    return 4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3);
}

/// Everything the CLI reports about one channel/basis pair.
struct ChannelReport {
    ChannelSpec spec;
    PureState channel;
    BasisReport basis;
    ExtractionResult extraction;
    PerfectVerdict verdict;
    bool canonical_corrections = false;
    double canonical_residual = 0.0;
    DensityMatrix rho3;
    double max_rho3_deviation_from_half_identity = 0.0;
    double entropy_bits = 0.0;
    double three_tangle = 0.0;
    std::optional<FidelityStats> fidelity;
};

inline ChannelReport build_report(const ChannelSpec& spec, const PureState& channel,
                                  const MeasurementBasis& basis,
                                  const ExtractionResult& extraction,
                                  const PerfectVerdict& verdict,
                                  std::optional<FidelityStats> fidelity = std::nullopt,
                                  double tol = kPredicateTol) {
    ChannelReport report;
    report.spec = spec;
    report.channel = channel;
    report.basis = verify_basis(basis, tol);
    report.extraction = extraction;
    report.verdict = verdict;
    if (verdict.perfect) {
        report.canonical_residual = canonical_corrections_residual(verdict);
        report.canonical_corrections = report.canonical_residual <= tol;
    }
    report.rho3 = bob_reduced_state(channel);
    report.max_rho3_deviation_from_half_identity =
        max_deviation_from_half_identity(report.rho3);
    report.entropy_bits = von_neumann_entropy(report.rho3);
    report.three_tangle = three_tangle(channel);
    report.fidelity = fidelity;
    return report;
}

}  // namespace telecanon
