#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "telecanon/extractor.hpp"
#include "telecanon/qmath.hpp"
#include "telecanon/random.hpp"

namespace telecanon {

/// Outcomes with probability below this never enter the sampling support.
inline constexpr double kZeroOutcomeFloor = 1e-15;

/// Alice's classical message. Perfect channels need two bits (only the four
/// unitary outcomes can occur); otherwise the raw 3-bit outcome index is sent.
struct ClassicalMessage {
    int outcome_index = 0;  // 1..8
    unsigned bits = 0;
    int bit_width = 0;      // 2 or 3
};

inline ClassicalMessage encode_message(int outcome_index, const PerfectVerdict& verdict) {
    ClassicalMessage msg;
    msg.outcome_index = outcome_index;
    const auto& uni = verdict.unitary_indices;
    const auto it = std::find(uni.begin(), uni.end(), outcome_index);
    if (verdict.perfect && it != uni.end()) {
        msg.bits = static_cast<unsigned>(it - uni.begin());
        msg.bit_width = 2;
    } else {
        msg.bits = static_cast<unsigned>(outcome_index - 1);
        msg.bit_width = 3;
    }
    return msg;
}

inline int decode_message(const ClassicalMessage& msg, const PerfectVerdict& verdict) {
    if (msg.bit_width == 2) return verdict.unitary_indices.at(msg.bits);
    return static_cast<int>(msg.bits) + 1;
}

/// One protocol run end to end.
struct TeleportTrace {
    PureState input;                       // on (a)
    ClassicalMessage outcome;
    double probability = 0.0;              // Born probability of the outcome
    std::array<cplx, 2> bob_premeasure{};  // unnormalized (1/2) sigma_i |chi>
    Matrix2 correction;
    PureState final_state;                 // on (3)
    double fidelity = 0.0;
};

struct FidelityStats {
    double min_fidelity = 0.0;
    double mean_fidelity = 0.0;
    int n_inputs = 0;
};

namespace detail {

inline void require_input_qubit(const PureState& input) {
    if (input.qubits != std::vector<Qubit>{Qubit::a})
        throw LabelMismatch("input must be a single qubit labeled 'a'");
    if (!is_normalized(input)) throw NotNormalized("input state must be normalized");
}

inline std::array<double, 8> distribution_from(const ExtractionResult& extraction,
                                               const PureState& input) {
    std::array<double, 8> probs{};
    const std::array<cplx, 2> chi{input.amps[0], input.amps[1]};
    for (std::size_t i = 0; i < 8; ++i) {
        const auto out = extraction.sigmas[i].apply(chi);
        probs[i] = 0.25 * (std::norm(out[0]) + std::norm(out[1]));
    }
    return probs;
}

/// Inverse-CDF draw over outcomes with probability above the floor.
inline int sample_outcome(const std::array<double, 8>& probs, Rng& rng) {
    double live_total = 0.0;
    for (double p : probs)
        if (p >= kZeroOutcomeFloor) live_total += p;
    if (live_total <= 0.0) throw SampledZeroOutcome("no outcome has nonzero probability");
    double u = rng.uniform() * live_total;
    int last_live = 0;
    for (int i = 0; i < 8; ++i) {
        const double p = probs[static_cast<std::size_t>(i)];
        if (p < kZeroOutcomeFloor) continue;
        last_live = i + 1;
        u -= p;
        if (u <= 0.0) return i + 1;
    }
    return last_live;  // rounding spill lands on the last live outcome
}

}  // namespace detail

/// Born probabilities p_i = (1/4) |sigma_i chi|^2; they sum to one.
inline std::array<double, 8> outcome_distribution(const PureState& channel,
                                                  const MeasurementBasis& basis,
                                                  const PureState& input) {
    detail::require_input_qubit(input);
    return detail::distribution_from(extract_operators(channel, basis), input);
}

/// One teleportation session: sample Alice's outcome, apply Bob's inverse
/// correction, and score the transfer. Deterministic for a given seed.
inline TeleportTrace run_session(const PureState& channel, const MeasurementBasis& basis,
                                 const PerfectVerdict& verdict, const PureState& input,
                                 std::uint64_t rng_seed) {
    detail::require_input_qubit(input);
    const ExtractionResult extraction = extract_operators(channel, basis);
    const auto probs = detail::distribution_from(extraction, input);

    Rng rng(rng_seed);
    const int outcome = detail::sample_outcome(probs, rng);
    const auto& uni = verdict.unitary_indices;
    if (std::find(uni.begin(), uni.end(), outcome) == uni.end())
        throw NotPerfect("sampled outcome has no unitary correction");

    TeleportTrace trace;
    trace.input = input;
    trace.outcome = encode_message(outcome, verdict);
    trace.probability = probs[static_cast<std::size_t>(outcome - 1)];

    const std::array<cplx, 2> chi{input.amps[0], input.amps[1]};
    const auto premeasure = extraction.sigmas[static_cast<std::size_t>(outcome - 1)].apply(chi);
    trace.bob_premeasure = {0.5 * premeasure[0], 0.5 * premeasure[1]};

    trace.correction = verdict.corrections.at(outcome);
    auto corrected = trace.correction.apply(premeasure);
    const double n = std::sqrt(std::norm(corrected[0]) + std::norm(corrected[1]));
    trace.final_state = PureState{{Qubit::three}, {corrected[0] / n, corrected[1] / n}};
    trace.fidelity = fidelity_pure(relabeled(input, {Qubit::three}), trace.final_state);
    return trace;
}

/// Teleport n_inputs Haar-random states and report min/mean fidelity.
/// Inputs come from a master stream seeded with `rng_seed`; session k
/// (k = 1..n) samples its outcome with seed rng_seed + k.
inline FidelityStats batch_fidelity(const PureState& channel, const MeasurementBasis& basis,
                                    const PerfectVerdict& verdict, int n_inputs,
                                    std::uint64_t rng_seed) {
    if (!verdict.perfect) throw NotPerfect("batch_fidelity needs a perfect channel");
    if (n_inputs <= 0) throw EmptyBatch("n_inputs must be positive");
    Rng input_stream(rng_seed);
    FidelityStats stats;
    stats.n_inputs = n_inputs;
    stats.min_fidelity = 1.0;
    double sum = 0.0;
    for (int k = 1; k <= n_inputs; ++k) {
        const PureState input = haar_qubit(Qubit::a, input_stream);
        const TeleportTrace trace =
            run_session(channel, basis, verdict, input, rng_seed + static_cast<std::uint64_t>(k));
        stats.min_fidelity = std::min(stats.min_fidelity, trace.fidelity);
        sum += trace.fidelity;
    }
    stats.mean_fidelity = sum / n_inputs;
    return stats;
}

}  // namespace telecanon
