#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <variant>

#include "telecanon/qmath.hpp"

namespace telecanon {

inline constexpr double kParamTol = 1e-12;  // slack on squared-parameter constraints

/// Parameters of the first channel family:
///   a|000> + b e^{i delta}|010> + sqrt(1/2 - a^2 - b^2) e^{i lambda}|100>
///   + (sqrt(2)/2) e^{i gamma}|111>
/// a, b are any reals with a^2 + b^2 <= 1/2; angles are radians.
struct CanonicalParams1 {
    double a = 0.0;
    double b = 0.0;
    double delta = 0.0;
    double lambda = 0.0;
    double gamma = 0.0;
};

/// Parameters of the second channel family:
///   a|001> + b e^{i delta}|010> + sqrt(1/2 - b^2) e^{i lambda}|100>
///   + sqrt(1/2 - a^2) e^{i gamma}|111>
/// with a^2 <= 1/2 and b^2 <= 1/2.
struct CanonicalParams2 {
    double a = 0.0;
    double b = 0.0;
    double delta = 0.0;
    double lambda = 0.0;
    double gamma = 0.0;
};

struct GeneralSpec {
    std::array<cplx, 8> amps{};
};

struct GhzSpec {
    double gamma = 0.0;
};
struct W1Spec {};
struct BellEmbeddedSpec {};

/// Parametric description of a channel; realize() yields the state on (1,2,3).
struct ChannelSpec {
    std::variant<GeneralSpec, CanonicalParams1, CanonicalParams2, GhzSpec, W1Spec,
                 BellEmbeddedSpec>
        variant;
};

namespace detail {
inline double sqrt_clamped(double x) { return std::sqrt(std::max(x, 0.0)); }
inline cplx polar1(double angle) { return std::polar(1.0, angle); }
}  // namespace detail

/// Arbitrary three-qubit channel from its 8 amplitudes, index k = 4q1 + 2q2 + q3.
inline PureState build_general(const std::array<cplx, 8>& amps) {
    PureState s{{Qubit::one, Qubit::two, Qubit::three}, {amps.begin(), amps.end()}};
    if (!all_finite(s)) throw NotNormalized("non-finite amplitude");
    if (!is_normalized(s)) throw NotNormalized("channel amplitudes must have unit norm");
    return s;
}

inline PureState build_form1(const CanonicalParams1& p) {
    const double rest2 = 0.5 - (p.a * p.a + p.b * p.b);
    if (rest2 < -kParamTol) throw InvalidParams("form 1 requires a^2 + b^2 <= 1/2");
    const double rest = detail::sqrt_clamped(rest2);
    std::vector<cplx> amps(8, cplx(0));
    amps[0b000] = p.a;
    amps[0b010] = p.b * detail::polar1(p.delta);
    amps[0b100] = rest * detail::polar1(p.lambda);
    amps[0b111] = (std::numbers::sqrt2 / 2.0) * detail::polar1(p.gamma);
    return PureState{{Qubit::one, Qubit::two, Qubit::three}, std::move(amps)};
}

inline PureState build_form2(const CanonicalParams2& p) {
    if (p.a * p.a > 0.5 + kParamTol) throw InvalidParams("form 2 requires a^2 <= 1/2");
    if (p.b * p.b > 0.5 + kParamTol) throw InvalidParams("form 2 requires b^2 <= 1/2");
    const double ra = detail::sqrt_clamped(0.5 - p.a * p.a);
    const double rb = detail::sqrt_clamped(0.5 - p.b * p.b);
    std::vector<cplx> amps(8, cplx(0));
    amps[0b001] = p.a;
    amps[0b010] = p.b * detail::polar1(p.delta);
    amps[0b100] = rb * detail::polar1(p.lambda);
    amps[0b111] = ra * detail::polar1(p.gamma);
    return PureState{{Qubit::one, Qubit::two, Qubit::three}, std::move(amps)};
}

inline PureState build_named(const GhzSpec& g) {
    return build_form1({std::numbers::sqrt2 / 2.0, 0.0, 0.0, 0.0, g.gamma});
}

inline PureState build_named(const W1Spec&) {
    return build_form2({std::numbers::sqrt2 / 2.0, 0.5, 0.0, 0.0, 0.0});
}

inline PureState build_named(const BellEmbeddedSpec&) {
    return build_form2({std::numbers::sqrt2 / 2.0, 0.0, 0.0, 0.0, 0.0});
}

inline PureState realize(const ChannelSpec& spec) {
    return std::visit(
        [](const auto& v) -> PureState {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, GeneralSpec>)
                return build_general(v.amps);
            else if constexpr (std::is_same_v<T, CanonicalParams1>)
                return build_form1(v);
            else if constexpr (std::is_same_v<T, CanonicalParams2>)
                return build_form2(v);
            else
                return build_named(v);
        },
        spec.variant);
}

inline std::string variant_name(const ChannelSpec& spec) {
    struct Namer {
        std::string operator()(const GeneralSpec&) const { return "general"; }
        std::string operator()(const CanonicalParams1&) const { return "form1"; }
        std::string operator()(const CanonicalParams2&) const { return "form2"; }
        std::string operator()(const GhzSpec&) const { return "ghz"; }
        std::string operator()(const W1Spec&) const { return "w1"; }
        std::string operator()(const BellEmbeddedSpec&) const { return "bell"; }
    };
    return std::visit(Namer{}, spec.variant);
}

}  // namespace telecanon
