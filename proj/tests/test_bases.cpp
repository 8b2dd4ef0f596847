#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "telecanon/telecanon.hpp"

using namespace telecanon;
using Catch::Matchers::WithinAbs;

namespace {

constexpr double kHalfSqrt2 = std::numbers::sqrt2 / 2.0;

double basis_gram_deviation(const MeasurementBasis& basis) {
    return verify_basis(basis).max_gram_deviation;
}

}  // namespace

TEST_CASE("form-1 basis at the GHZ point reduces to Bell-like plus computational",
          "[bases]") {
    const double gamma = 0.9;
    const CanonicalParams1 p{kHalfSqrt2, 0.0, 0.0, 0.0, gamma};
    const MeasurementBasis basis = build_basis_form1(p);
    REQUIRE(basis.elements.size() == 8);

    const cplx eg = std::polar(1.0, gamma);
    auto expect_pair = [&](const PureState& elem, std::size_t lo, std::size_t hi, double sign) {
        CHECK_THAT(std::abs(elem.amps[lo] - cplx(kHalfSqrt2)), WithinAbs(0.0, 1e-15));
        CHECK_THAT(std::abs(elem.amps[hi] - sign * kHalfSqrt2 * eg), WithinAbs(0.0, 1e-15));
    };
    expect_pair(basis.elements[0], 0b000, 0b111, +1.0);
    expect_pair(basis.elements[1], 0b000, 0b111, -1.0);
    expect_pair(basis.elements[2], 0b001, 0b110, +1.0);
    expect_pair(basis.elements[3], 0b001, 0b110, -1.0);

    // The four completion elements are the computational states
    // {|010>, |100>, |011>, |101>} in the documented completion order.
    const std::array<std::size_t, 4> expected_kets{0b010, 0b100, 0b011, 0b101};
    for (std::size_t i = 0; i < 4; ++i) {
        const PureState& elem = basis.elements[4 + i];
        CHECK_THAT(std::abs(elem.amps[expected_kets[i]]) - 1.0, WithinAbs(0.0, 1e-15));
        CHECK_THAT(norm(elem), WithinAbs(1.0, 1e-15));
    }
    CHECK(basis_gram_deviation(basis) <= 1e-14);
}

TEST_CASE("form-1 GHZ-point basis relabels to the standard a12 measurement states",
          "[bases]") {
    const CanonicalParams1 p{kHalfSqrt2, 0.0, 0.0, 0.0, 0.0};
    const MeasurementBasis basis = build_basis_form1(p);
    const std::vector<Qubit> a12{Qubit::a, Qubit::one, Qubit::two};

    const PureState psi1_plus = reordered(basis.elements[0], a12);
    CHECK_THAT(std::abs(psi1_plus.amps[0b000] - cplx(kHalfSqrt2)), WithinAbs(0.0, 1e-15));
    CHECK_THAT(std::abs(psi1_plus.amps[0b111] - cplx(kHalfSqrt2)), WithinAbs(0.0, 1e-15));

    const PureState psi2_plus = reordered(basis.elements[2], a12);
    CHECK_THAT(std::abs(psi2_plus.amps[0b100] - cplx(kHalfSqrt2)), WithinAbs(0.0, 1e-15));
    CHECK_THAT(std::abs(psi2_plus.amps[0b011] - cplx(kHalfSqrt2)), WithinAbs(0.0, 1e-15));
}

TEST_CASE("form-1 completion elements are orthogonal to the channel row", "[bases]") {
    const CanonicalParams1 p{0.3, 0.4, 0.0, 0.0, 0.0};
    const MeasurementBasis basis = build_basis_form1(p);
    const cplx overlap = inner_product(basis.elements[0], basis.elements[4]);
    CHECK_THAT(std::abs(overlap), WithinAbs(0.0, 1e-15));

    const CompletionCoefficients cc = completion_for_form1(p);
    CHECK_THAT(0.3 * cc.c[0] + 0.4 * cc.c[1] + 0.5 * cc.c[2], WithinAbs(0.0, 1e-14));
    CHECK_THAT(0.3 * cc.d[0] + 0.4 * cc.d[1] + 0.5 * cc.d[2], WithinAbs(0.0, 1e-14));
}

TEST_CASE("form-1 phase rider keeps cross terms cancelled at random phases",
          "[bases][property]") {
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const CanonicalParams1 p = tc_test::random_params1(rng);
        const MeasurementBasis basis = build_basis_form1(p);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 4; j < 8; ++j)
                CHECK(std::abs(inner_product(basis.elements[i], basis.elements[j])) <= 1e-14);
    }
}

TEST_CASE("form-1 basis is orthonormal and complete over the family", "[bases][property]") {
    Rng rng(32);
    auto check_params = [](const CanonicalParams1& p) {
        const BasisReport report = verify_basis(build_basis_form1(p), 1e-10);
        CHECK(report.ok);
        CHECK(report.max_gram_deviation <= 1e-12);
        CHECK(report.max_completeness_deviation <= 1e-12);
    };
    for (int trial = 0; trial < 100; ++trial) check_params(tc_test::random_params1(rng));
    check_params({0.5, 0.5, 1.1, 2.2, 3.3});          // a^2 + b^2 = 1/2 boundary
    check_params({0.0, 0.0, 0.0, 0.0, 0.0});          // all-zero parameters
    check_params({kHalfSqrt2, 0.0, 0.4, 0.5, 0.6});   // a^2 = 1/2 boundary
    check_params({0.0, kHalfSqrt2, 0.4, 0.5, 0.6});   // b^2 = 1/2 boundary
}

TEST_CASE("form-2 basis matches the printed reduction at a = sqrt(2)/2", "[bases]") {
    const double b = 0.31, delta = 0.7, lambda = 1.9;
    const CanonicalParams2 p{kHalfSqrt2, b, delta, lambda, 0.0};
    const MeasurementBasis basis = build_basis_form2(p);

    // phi5 and phi7 collapse onto single kets |111> and |110> up to sign.
    CHECK_THAT(std::abs(basis.elements[4].amps[0b111]) - 1.0, WithinAbs(0.0, 1e-12));
    CHECK_THAT(std::abs(basis.elements[6].amps[0b110]) - 1.0, WithinAbs(0.0, 1e-12));

    const double rb = std::sqrt(0.5 - b * b);
    const PureState& phi6 = basis.elements[5];
    CHECK_THAT(std::abs(phi6.amps[0b010] - std::numbers::sqrt2 * rb * std::polar(1.0, delta)),
               WithinAbs(0.0, 1e-14));
    CHECK_THAT(std::abs(phi6.amps[0b100] + std::numbers::sqrt2 * b * std::polar(1.0, lambda)),
               WithinAbs(0.0, 1e-14));
}

TEST_CASE("form-2 basis element six at the W1 point", "[bases]") {
    const MeasurementBasis basis = build_basis_form2({kHalfSqrt2, 0.5, 0.0, 0.0, 0.0});
    const PureState& phi6 = basis.elements[5];
    CHECK_THAT(std::abs(phi6.amps[0b010] - cplx(kHalfSqrt2)), WithinAbs(0.0, 1e-15));
    CHECK_THAT(std::abs(phi6.amps[0b100] + cplx(kHalfSqrt2)), WithinAbs(0.0, 1e-15));
}

TEST_CASE("form-2 basis is orthonormal and complete over the family", "[bases][property]") {
    Rng rng(33);
    auto check_params = [](const CanonicalParams2& p) {
        const BasisReport report = verify_basis(build_basis_form2(p), 1e-10);
        CHECK(report.ok);
        CHECK(report.max_gram_deviation <= 1e-12);
        CHECK(report.max_completeness_deviation <= 1e-12);
    };
    for (int trial = 0; trial < 100; ++trial) check_params(tc_test::random_params2(rng));
    check_params({kHalfSqrt2, 0.2, 0.1, 0.2, 0.3});        // a^2 = 1/2 boundary
    check_params({0.2, kHalfSqrt2, 0.1, 0.2, 0.3});        // b^2 = 1/2 boundary
    check_params({kHalfSqrt2, kHalfSqrt2, 0.0, 0.0, 0.0}); // both boundaries
    check_params({0.0, 0.0, 0.0, 0.0, 0.0});
}

TEST_CASE("verify_basis on the computational basis", "[bases]") {
    const BasisReport report = verify_basis(computational_basis_12a());
    CHECK(report.ok);
    CHECK(report.max_gram_deviation == 0.0);
    CHECK(report.max_completeness_deviation == 0.0);
}

TEST_CASE("verify_basis flags a duplicated element", "[bases]") {
    MeasurementBasis basis = build_basis_form1({kHalfSqrt2, 0.0, 0.0, 0.0, 0.0});
    basis.elements[1] = basis.elements[0];
    const BasisReport report = verify_basis(basis);
    CHECK_FALSE(report.ok);
    CHECK_THAT(report.max_gram_deviation, WithinAbs(1.0, 1e-12));
}

TEST_CASE("verify_basis rejects malformed input", "[bases][errors]") {
    MeasurementBasis short_basis = computational_basis_12a();
    short_basis.elements.pop_back();
    REQUIRE_THROWS_AS(verify_basis(short_basis), MalformedBasis);

    MeasurementBasis mixed = computational_basis_12a();
    mixed.elements[3] = basis_state({Qubit::one, Qubit::two, Qubit::three}, 3);
    REQUIRE_THROWS_AS(verify_basis(mixed), MalformedBasis);
}
