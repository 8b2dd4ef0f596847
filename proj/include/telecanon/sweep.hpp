#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "telecanon/bases.hpp"
#include "telecanon/channels.hpp"
#include "telecanon/extractor.hpp"
#include "telecanon/random.hpp"

namespace telecanon {

struct SweepOptions {
    int form = 1;               // 1 or 2
    int grid_n = 20;            // points per axis, >= 2
    bool random_phases = false; // zero phases unless set
    std::uint64_t seed = 0;     // phase stream seed
    double tol = kPredicateTol;
};

struct SweepPoint {
    double a = 0.0, b = 0.0, delta = 0.0, lambda = 0.0, gamma = 0.0;
    bool perfect = false;
    double max_unitary_residual = 0.0;
    double max_zero_residual = 0.0;
    double gram_deviation = 0.0;
    double completeness_deviation = 0.0;
    double sigma_completeness_residual = 0.0;
    double canonical_residual = 0.0;
};

/// Evaluate one (a, b, phases) point of either family.
inline SweepPoint evaluate_point(int form, double a, double b, double delta, double lambda,
                                 double gamma, double tol = kPredicateTol) {
    SweepPoint pt;
    pt.a = a;
    pt.b = b;
    pt.delta = delta;
    pt.lambda = lambda;
    pt.gamma = gamma;

    PureState channel;
    MeasurementBasis basis;
    if (form == 1) {
        const CanonicalParams1 p{a, b, delta, lambda, gamma};
        channel = build_form1(p);
        basis = build_basis_form1(p);
    } else if (form == 2) {
        const CanonicalParams2 p{a, b, delta, lambda, gamma};
        channel = build_form2(p);
        basis = build_basis_form2(p);
    } else {
        throw InvalidParams("form must be 1 or 2");
    }

    const BasisReport br = verify_basis(basis, tol);
    pt.gram_deviation = br.max_gram_deviation;
    pt.completeness_deviation = br.max_completeness_deviation;

    const ExtractionResult extraction = extract_operators(channel, basis, tol);
    pt.sigma_completeness_residual = sigma_completeness_residual(extraction);
    const PerfectVerdict verdict = classify(extraction, tol);
    pt.perfect = verdict.perfect;
    for (int idx : verdict.unitary_indices)
        pt.max_unitary_residual = std::max(
            pt.max_unitary_residual,
            extraction.tags[static_cast<std::size_t>(idx - 1)].unitary_residual);
    for (int idx : verdict.zero_indices)
        pt.max_zero_residual = std::max(
            pt.max_zero_residual, extraction.tags[static_cast<std::size_t>(idx - 1)].zero_residual);
    if (verdict.perfect) pt.canonical_residual = canonical_corrections_residual(verdict);
    return pt;
}

/// Uniform grid over the valid (a, b) region of the chosen family, with a
/// 1e-9 margin off the constraint boundary to keep the square roots clean.
inline std::vector<SweepPoint> run_sweep(const SweepOptions& opt) {
    if (opt.form != 1 && opt.form != 2) throw InvalidParams("form must be 1 or 2");
    if (opt.grid_n < 2) throw InvalidParams("grid size must be at least 2");

    constexpr double kMargin = 1e-9;
    const double limit = std::sqrt(0.5) - kMargin;
    Rng phase_stream(opt.seed);
    std::vector<SweepPoint> points;
    for (int i = 0; i < opt.grid_n; ++i) {
        for (int j = 0; j < opt.grid_n; ++j) {
            const double a = -limit + 2.0 * limit * i / (opt.grid_n - 1);
            const double b = -limit + 2.0 * limit * j / (opt.grid_n - 1);
            if (opt.form == 1 && a * a + b * b > 0.5 - kMargin) continue;
            double delta = 0.0, lambda = 0.0, gamma = 0.0;
            if (opt.random_phases) {
                delta = 2.0 * std::numbers::pi * phase_stream.uniform();
                lambda = 2.0 * std::numbers::pi * phase_stream.uniform();
                gamma = 2.0 * std::numbers::pi * phase_stream.uniform();
            }
            points.push_back(evaluate_point(opt.form, a, b, delta, lambda, gamma, opt.tol));
        }
    }
    return points;
}

}  // namespace telecanon
