#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "telecanon/channels.hpp"
#include "telecanon/qmath.hpp"

namespace telecanon {

/// Eight projective-measurement states on Alice's qubits (1, 2, a).
struct MeasurementBasis {
    std::vector<PureState> elements;  // indexed i = 1..8 as elements[i-1]
};

/// The free coefficients completing a form-1 basis: c, d are unit 3-vectors
/// orthogonal to (a, b, sqrt(1/2 - a^2 - b^2)) and to each other. The same
/// pair serves both the {|000>,|010>,|100>} and {|001>,|011>,|101>} blocks.
struct CompletionCoefficients {
    Vec3 c{};
    Vec3 d{};
};

inline CompletionCoefficients completion_for_form1(const CanonicalParams1& p) {
    const double rest2 = 0.5 - (p.a * p.a + p.b * p.b);
    if (rest2 < -kParamTol) throw InvalidParams("form 1 requires a^2 + b^2 <= 1/2");
    const Vec3 v{p.a, p.b, detail::sqrt_clamped(rest2)};
    auto [c, d] = orthonormal_complement(v, 1e-9);
    return CompletionCoefficients{c, d};
}

namespace detail {

inline PureState state_12a(std::vector<cplx> amps) {
    return PureState{{Qubit::one, Qubit::two, Qubit::a}, std::move(amps)};
}

}  // namespace detail

/// The eight measurement states paired with the first channel family.
///
/// Elements 1-4 mirror the channel's amplitude pattern with sign flips on the
/// sqrt(2)/2 term; elements 5-8 are spanned by the completion coefficients.
/// The phase e^{i lambda} rides on the third component of every element so
/// that cross terms cancel for any angles.
inline MeasurementBasis build_basis_form1(const CanonicalParams1& p) {
    const double rest2 = 0.5 - (p.a * p.a + p.b * p.b);
    if (rest2 < -kParamTol) throw InvalidParams("form 1 requires a^2 + b^2 <= 1/2");
    const double rest = detail::sqrt_clamped(rest2);
    const cplx ed = detail::polar1(p.delta);
    const cplx el = detail::polar1(p.lambda);
    const cplx eg = detail::polar1(p.gamma);
    const double half_sqrt2 = std::numbers::sqrt2 / 2.0;
    const auto [c, d] = completion_for_form1(p);

    MeasurementBasis basis;
    basis.elements.reserve(8);
    for (double sign : {1.0, -1.0}) {
        std::vector<cplx> amps(8, cplx(0));
        amps[0b000] = p.a;
        amps[0b010] = p.b * ed;
        amps[0b100] = rest * el;
        amps[0b111] = sign * half_sqrt2 * eg;
        basis.elements.push_back(detail::state_12a(std::move(amps)));
    }
    for (double sign : {1.0, -1.0}) {
        std::vector<cplx> amps(8, cplx(0));
        amps[0b001] = p.a;
        amps[0b011] = p.b * ed;
        amps[0b101] = rest * el;
        amps[0b110] = sign * half_sqrt2 * eg;
        basis.elements.push_back(detail::state_12a(std::move(amps)));
    }
    for (const Vec3& coeff : {c, d}) {
        std::vector<cplx> amps(8, cplx(0));
        amps[0b000] = coeff[0];
        amps[0b010] = coeff[1] * ed;
        amps[0b100] = coeff[2] * el;
        basis.elements.push_back(detail::state_12a(std::move(amps)));
    }
    for (const Vec3& coeff : {c, d}) {
        std::vector<cplx> amps(8, cplx(0));
        amps[0b001] = coeff[0];
        amps[0b011] = coeff[1] * ed;
        amps[0b101] = coeff[2] * el;
        basis.elements.push_back(detail::state_12a(std::move(amps)));
    }
    return basis;
}

/// The eight measurement states paired with the second channel family.
inline MeasurementBasis build_basis_form2(const CanonicalParams2& p) {
    if (p.a * p.a > 0.5 + kParamTol) throw InvalidParams("form 2 requires a^2 <= 1/2");
    if (p.b * p.b > 0.5 + kParamTol) throw InvalidParams("form 2 requires b^2 <= 1/2");
    const double ra = detail::sqrt_clamped(0.5 - p.a * p.a);
    const double rb = detail::sqrt_clamped(0.5 - p.b * p.b);
    const cplx ed = detail::polar1(p.delta);
    const cplx el = detail::polar1(p.lambda);
    const cplx eg = detail::polar1(p.gamma);
    const double s2 = std::numbers::sqrt2;

    MeasurementBasis basis;
    basis.elements.reserve(8);
    for (double sign : {1.0, -1.0}) {
        std::vector<cplx> amps(8, cplx(0));
        amps[0b001] = sign * p.a;
        amps[0b010] = p.b * ed;
        amps[0b100] = rb * el;
        amps[0b111] = sign * ra * eg;
        basis.elements.push_back(detail::state_12a(std::move(amps)));
    }
    for (double sign : {1.0, -1.0}) {
        std::vector<cplx> amps(8, cplx(0));
        amps[0b000] = sign * p.a;
        amps[0b011] = p.b * ed;
        amps[0b101] = rb * el;
        amps[0b110] = sign * ra * eg;
        basis.elements.push_back(detail::state_12a(std::move(amps)));
    }
    {
        std::vector<cplx> amps(8, cplx(0));
        amps[0b001] = s2 * ra;
        amps[0b111] = -s2 * p.a * eg;
        basis.elements.push_back(detail::state_12a(std::move(amps)));
    }
    {
        std::vector<cplx> amps(8, cplx(0));
        amps[0b010] = s2 * rb * ed;
        amps[0b100] = -s2 * p.b * el;
        basis.elements.push_back(detail::state_12a(std::move(amps)));
    }
    {
        std::vector<cplx> amps(8, cplx(0));
        amps[0b000] = s2 * ra;
        amps[0b110] = -s2 * p.a * eg;
        basis.elements.push_back(detail::state_12a(std::move(amps)));
    }
    {
        std::vector<cplx> amps(8, cplx(0));
        amps[0b011] = s2 * rb * ed;
        amps[0b101] = -s2 * p.b * el;
        basis.elements.push_back(detail::state_12a(std::move(amps)));
    }
    return basis;
}

/// Computational basis {|000>, ..., |111>} on (1, 2, a).
inline MeasurementBasis computational_basis_12a() {
    MeasurementBasis basis;
    for (std::size_t k = 0; k < 8; ++k)
        basis.elements.push_back(basis_state({Qubit::one, Qubit::two, Qubit::a}, k));
    return basis;
}

/// The measurement basis paired with a channel spec: each family gets its own
/// construction, the named channels reuse their family's at the pinned
/// parameters, and general channels get the computational reference basis.
inline MeasurementBasis basis_for(const ChannelSpec& spec) {
    return std::visit(
        [](const auto& v) -> MeasurementBasis {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, CanonicalParams1>)
                return build_basis_form1(v);
            else if constexpr (std::is_same_v<T, CanonicalParams2>)
                return build_basis_form2(v);
            else if constexpr (std::is_same_v<T, GhzSpec>)
                return build_basis_form1({std::numbers::sqrt2 / 2.0, 0.0, 0.0, 0.0, v.gamma});
            else if constexpr (std::is_same_v<T, W1Spec>)
                return build_basis_form2({std::numbers::sqrt2 / 2.0, 0.5, 0.0, 0.0, 0.0});
            else if constexpr (std::is_same_v<T, BellEmbeddedSpec>)
                return build_basis_form2({std::numbers::sqrt2 / 2.0, 0.0, 0.0, 0.0, 0.0});
            else
                return computational_basis_12a();
        },
        spec.variant);
}

struct BasisReport {
    double max_gram_deviation = 0.0;
    double max_completeness_deviation = 0.0;
    bool ok = false;
};

/// Max-abs deviation of the Gram matrix from I8 and of sum |phi><phi| from I8.
inline BasisReport verify_basis(const MeasurementBasis& basis, double tol = kPredicateTol) {
    if (basis.elements.size() != 8) throw MalformedBasis("basis must have 8 elements");
    const auto& labels = basis.elements.front().qubits;
    for (const PureState& e : basis.elements) {
        if (e.qubits != labels || e.dim() != 8)
            throw MalformedBasis("basis elements must share one 3-qubit label list");
    }
    BasisReport report;
    for (std::size_t i = 0; i < 8; ++i) {
        for (std::size_t j = 0; j < 8; ++j) {
            const cplx g = inner_product(basis.elements[i], basis.elements[j]);
            const cplx expected = (i == j) ? cplx(1) : cplx(0);
            report.max_gram_deviation =
                std::max(report.max_gram_deviation, std::abs(g - expected));
        }
    }
    for (std::size_t r = 0; r < 8; ++r) {
        for (std::size_t c = 0; c < 8; ++c) {
            cplx acc(0);
            for (const PureState& e : basis.elements) acc += e.amps[r] * std::conj(e.amps[c]);
            const cplx expected = (r == c) ? cplx(1) : cplx(0);
            report.max_completeness_deviation =
                std::max(report.max_completeness_deviation, std::abs(acc - expected));
        }
    }
    report.ok = report.max_gram_deviation <= tol && report.max_completeness_deviation <= tol;
    return report;
}

}  // namespace telecanon
