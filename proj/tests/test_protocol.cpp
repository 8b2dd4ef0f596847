#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "telecanon/telecanon.hpp"

using namespace telecanon;
using Catch::Matchers::WithinAbs;

namespace {

constexpr double kHalfSqrt2 = std::numbers::sqrt2 / 2.0;

struct Setup {
    PureState channel;
    MeasurementBasis basis;
    PerfectVerdict verdict;
};

Setup ghz_setup(double gamma = 0.0) {
    const CanonicalParams1 p{kHalfSqrt2, 0.0, 0.0, 0.0, gamma};
    Setup s{build_form1(p), build_basis_form1(p), {}};
    s.verdict = classify(extract_operators(s.channel, s.basis));
    return s;
}

Setup w1_setup() {
    const CanonicalParams2 p{kHalfSqrt2, 0.5, 0.0, 0.0, 0.0};
    Setup s{build_form2(p), build_basis_form2(p), {}};
    s.verdict = classify(extract_operators(s.channel, s.basis));
    return s;
}

}  // namespace

TEST_CASE("perfect channels give the flat two-bit distribution", "[protocol]") {
    Rng rng(51);
    const Setup s = ghz_setup(1.1);
    for (int trial = 0; trial < 10; ++trial) {
        const PureState input = haar_qubit(Qubit::a, rng);
        const auto probs = outcome_distribution(s.channel, s.basis, input);
        for (std::size_t i = 0; i < 4; ++i) CHECK_THAT(probs[i], WithinAbs(0.25, 1e-12));
        for (std::size_t i = 4; i < 8; ++i) CHECK(probs[i] <= 1e-15);
    }
}

TEST_CASE("product channel measurement is deterministic", "[protocol]") {
    std::array<cplx, 8> amps{};
    amps[0] = 1.0;
    const PureState channel = build_general(amps);
    const PureState input = basis_state({Qubit::a}, 0);
    const auto probs = outcome_distribution(channel, computational_basis_12a(), input);
    CHECK_THAT(probs[0], WithinAbs(1.0, 1e-12));
    for (std::size_t i = 1; i < 8; ++i) CHECK_THAT(probs[i], WithinAbs(0.0, 1e-12));
}

TEST_CASE("outcome probabilities sum to one", "[protocol][property]") {
    Rng rng(52);
    for (int trial = 0; trial < 100; ++trial) {
        const PureState channel =
            relabeled(tc_test::random_state({Qubit::one, Qubit::two, Qubit::a}, rng),
                      {Qubit::one, Qubit::two, Qubit::three});
        const MeasurementBasis basis = tc_test::random_basis_12a(rng);
        const PureState input = haar_qubit(Qubit::a, rng);
        const auto probs = outcome_distribution(channel, basis, input);
        double total = 0.0;
        for (double p : probs) total += p;
        CHECK_THAT(total, WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("run_session teleports exactly on the GHZ channel", "[protocol]") {
    const Setup s = ghz_setup();
    const PureState input = qubit_state(Qubit::a, 0.6, 0.8);
    for (std::uint64_t seed : {1ull, 7ull, 12345ull}) {
        const TeleportTrace trace = run_session(s.channel, s.basis, s.verdict, input, seed);
        CHECK_THAT(trace.fidelity, WithinAbs(1.0, 1e-12));
        CHECK(trace.outcome.bit_width == 2);
        CHECK(decode_message(trace.outcome, s.verdict) == trace.outcome.outcome_index);
        CHECK_THAT(trace.probability, WithinAbs(0.25, 1e-12));
    }
}

TEST_CASE("basis input arrives as the same basis ket", "[protocol]") {
    const Setup s = w1_setup();
    const PureState input = basis_state({Qubit::a}, 0);
    const TeleportTrace trace = run_session(s.channel, s.basis, s.verdict, input, 99);
    CHECK_THAT(trace.fidelity, WithinAbs(1.0, 1e-12));
    // final state is |0> up to a global phase
    CHECK_THAT(std::abs(trace.final_state.amps[0]), WithinAbs(1.0, 1e-12));
    CHECK_THAT(std::abs(trace.final_state.amps[1]), WithinAbs(0.0, 1e-12));
}

TEST_CASE("run_session is deterministic per seed", "[protocol]") {
    const Setup s = w1_setup();
    const PureState input = qubit_state(Qubit::a, cplx(0.48, 0.36), cplx(0.48, -0.64));
    const TeleportTrace t1 = run_session(s.channel, s.basis, s.verdict, input, 4242);
    const TeleportTrace t2 = run_session(s.channel, s.basis, s.verdict, input, 4242);
    CHECK(t1.outcome.outcome_index == t2.outcome.outcome_index);
    CHECK(t1.outcome.bits == t2.outcome.bits);
    CHECK(t1.probability == t2.probability);
    CHECK(t1.fidelity == t2.fidelity);
    CHECK(t1.bob_premeasure == t2.bob_premeasure);
}

TEST_CASE("W1 Born statistics over 1e5 seeded shots", "[protocol][statistics]") {
    const Setup s = w1_setup();
    const PureState input = qubit_state(Qubit::a, cplx(0.6, 0.0), cplx(0.0, 0.8));
    std::array<int, 8> counts{};
    const int shots = 100000;
    for (int k = 0; k < shots; ++k) {
        const TeleportTrace trace =
            run_session(s.channel, s.basis, s.verdict, input, 1000 + static_cast<std::uint64_t>(k));
        counts[static_cast<std::size_t>(trace.outcome.outcome_index - 1)]++;
        REQUIRE(trace.fidelity >= 1.0 - 1e-10);
    }
    for (std::size_t i = 0; i < 4; ++i)
        CHECK_THAT(static_cast<double>(counts[i]) / shots, WithinAbs(0.25, 0.01));
    for (std::size_t i = 4; i < 8; ++i) CHECK(counts[i] == 0);
}

TEST_CASE("message encoding round-trips in both widths", "[protocol]") {
    const Setup s = ghz_setup();
    for (int idx : {1, 2, 3, 4}) {
        const ClassicalMessage msg = encode_message(idx, s.verdict);
        CHECK(msg.bit_width == 2);
        CHECK(decode_message(msg, s.verdict) == idx);
    }
    PerfectVerdict imperfect;  // nothing unitary: 3-bit escape encoding
    for (int idx = 1; idx <= 8; ++idx) {
        const ClassicalMessage msg = encode_message(idx, imperfect);
        CHECK(msg.bit_width == 3);
        CHECK(decode_message(msg, imperfect) == idx);
    }
}

TEST_CASE("batch_fidelity reaches unit fidelity on both families",
          "[protocol][property]") {
    Rng rng(53);
    const CanonicalParams1 p1 = tc_test::random_params1(rng);
    const PureState c1 = build_form1(p1);
    const MeasurementBasis b1 = build_basis_form1(p1);
    const PerfectVerdict v1 = classify(extract_operators(c1, b1));
    const FidelityStats s1 = batch_fidelity(c1, b1, v1, 1000, 7);
    CHECK(s1.min_fidelity >= 1.0 - 1e-10);
    CHECK(s1.mean_fidelity >= 1.0 - 1e-10);
    CHECK(s1.n_inputs == 1000);

    const CanonicalParams2 p2 = tc_test::random_params2(rng);
    const PureState c2 = build_form2(p2);
    const MeasurementBasis b2 = build_basis_form2(p2);
    const PerfectVerdict v2 = classify(extract_operators(c2, b2));
    const FidelityStats s2 = batch_fidelity(c2, b2, v2, 1000, 7);
    CHECK(s2.min_fidelity >= 1.0 - 1e-10);
}

TEST_CASE("batch_fidelity rejects degenerate requests", "[protocol][errors]") {
    const Setup s = ghz_setup();
    REQUIRE_THROWS_AS(batch_fidelity(s.channel, s.basis, s.verdict, 0, 1), EmptyBatch);

    PerfectVerdict imperfect;
    REQUIRE_THROWS_AS(batch_fidelity(s.channel, s.basis, imperfect, 10, 1), NotPerfect);
}

TEST_CASE("run_session refuses outcomes without a correction", "[protocol][errors]") {
    std::array<cplx, 8> amps{};
    amps[0] = 1.0;
    const PureState channel = build_general(amps);
    const MeasurementBasis basis = computational_basis_12a();
    const PerfectVerdict verdict = classify(extract_operators(channel, basis));
    REQUIRE_FALSE(verdict.perfect);
    const PureState input = basis_state({Qubit::a}, 0);
    REQUIRE_THROWS_AS(run_session(channel, basis, verdict, input, 5), NotPerfect);
}

TEST_CASE("sampling with no live outcome is an error", "[protocol][errors]") {
    Rng rng(54);
    std::array<double, 8> dead{};
    REQUIRE_THROWS_AS(detail::sample_outcome(dead, rng), SampledZeroOutcome);
}
