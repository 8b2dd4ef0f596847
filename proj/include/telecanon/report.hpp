#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "telecanon/diagnostics.hpp"
#include "telecanon/protocol.hpp"

namespace telecanon {

using json = nlohmann::json;

inline json to_json(const cplx& z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

inline cplx cplx_from_json(const json& j) {
    return cplx(j.at("re").get<double>(), j.at("im").get<double>());
}

inline json to_json(const Matrix2& m) {
    return json::array({json::array({to_json(m(0, 0)), to_json(m(0, 1))}),
                        json::array({to_json(m(1, 0)), to_json(m(1, 1))})});
}

inline json amplitudes_to_json(const PureState& s) {
    json arr = json::array();
    for (const cplx& a : s.amps) arr.push_back(to_json(a));
    return arr;
}

inline json spec_params_to_json(const ChannelSpec& spec) {
    json params = json::object();
    if (const auto* p1 = std::get_if<CanonicalParams1>(&spec.variant)) {
        params = {{"a", p1->a}, {"b", p1->b}, {"delta", p1->delta},
                  {"lambda", p1->lambda}, {"gamma", p1->gamma}};
    } else if (const auto* p2 = std::get_if<CanonicalParams2>(&spec.variant)) {
        params = {{"a", p2->a}, {"b", p2->b}, {"delta", p2->delta},
                  {"lambda", p2->lambda}, {"gamma", p2->gamma}};
    } else if (const auto* g = std::get_if<GhzSpec>(&spec.variant)) {
        params = {{"gamma", g->gamma}};
    }
    return params;
}

/// ChannelSpec <-> the CLI's structured-config fields.
inline json channel_spec_to_config(const ChannelSpec& spec) {
    json cfg = spec_params_to_json(spec);
    std::string form = variant_name(spec);
    if (form == "form1") form = "1";
    if (form == "form2") form = "2";
    cfg["form"] = form;
    if (const auto* g = std::get_if<GeneralSpec>(&spec.variant)) {
        json amps = json::array();
        for (const cplx& a : g->amps) amps.push_back(to_json(a));
        cfg["amps"] = amps;
    }
    return cfg;
}

inline ChannelSpec channel_spec_from_config(const json& cfg) {
    const json& f = cfg.at("form");
    const std::string form = f.is_number() ? std::to_string(f.get<int>()) : f.get<std::string>();
    auto field = [&](const char* key) {
        return cfg.contains(key) ? cfg.at(key).get<double>() : 0.0;
    };
    if (form == "1" || form == "form1")
        return ChannelSpec{CanonicalParams1{field("a"), field("b"), field("delta"),
                                            field("lambda"), field("gamma")}};
    if (form == "2" || form == "form2")
        return ChannelSpec{CanonicalParams2{field("a"), field("b"), field("delta"),
                                            field("lambda"), field("gamma")}};
    if (form == "ghz") return ChannelSpec{GhzSpec{field("gamma")}};
    if (form == "w1") return ChannelSpec{W1Spec{}};
    if (form == "bell") return ChannelSpec{BellEmbeddedSpec{}};
    if (form == "general") {
        const json& amps = cfg.at("amps");
        if (amps.size() != 8)
            throw InvalidParams("general channel needs 8 complex amplitudes");
        GeneralSpec g;
        for (std::size_t k = 0; k < 8; ++k) g.amps[k] = cplx_from_json(amps[k]);
        return ChannelSpec{g};
    }
    throw InvalidParams("form must be 1, 2, ghz, w1, bell, or general");
}

inline const char* tag_name(OperatorTag tag) {
    switch (tag) {
        case OperatorTag::unitary: return "unitary";
        case OperatorTag::zero: return "zero";
        default: return "other";
    }
}

inline json trace_to_json(const TeleportTrace& trace) {
    return json{{"outcome_index", trace.outcome.outcome_index},
                {"bits", trace.outcome.bits},
                {"bit_width", trace.outcome.bit_width},
                {"probability", trace.probability},
                {"fidelity", trace.fidelity}};
}

/// Machine-readable report. Top-level keys are fixed: channel,
/// basis_deviations, operators, verdict, rho3, entropy_bits, three_tangle,
/// fidelity. Optional detail (basis elements, traces) nests below them.
inline json report_to_json(const ChannelReport& report, bool dump_basis = false,
                           const MeasurementBasis* basis = nullptr,
                           const std::vector<TeleportTrace>* traces = nullptr) {
    json channel{{"variant", variant_name(report.spec)},
                 {"labels", json::array({"1", "2", "3"})},
                 {"params", spec_params_to_json(report.spec)},
                 {"amplitudes", amplitudes_to_json(report.channel)}};

    json basis_dev{{"max_gram_deviation", report.basis.max_gram_deviation},
                   {"max_completeness_deviation", report.basis.max_completeness_deviation},
                   {"ok", report.basis.ok}};
    if (dump_basis && basis != nullptr) {
        json elems = json::array();
        for (std::size_t i = 0; i < basis->elements.size(); ++i)
            elems.push_back(json{{"index", i + 1},
                                 {"amplitudes", amplitudes_to_json(basis->elements[i])}});
        basis_dev["elements"] = elems;
    }

    json operators = json::array();
    for (std::size_t i = 0; i < 8; ++i) {
        const auto& tag = report.extraction.tags[i];
        operators.push_back(json{{"index", i + 1},
                                 {"matrix", to_json(report.extraction.sigmas[i])},
                                 {"tag", tag_name(tag.tag)},
                                 {"unitary_residual", tag.unitary_residual},
                                 {"zero_residual", tag.zero_residual}});
    }

    json corrections = json::object();
    for (const auto& [idx, m] : report.verdict.corrections)
        corrections[std::to_string(idx)] = to_json(m);
    json verdict{{"perfect", report.verdict.perfect},
                 {"unitary_indices", report.verdict.unitary_indices},
                 {"zero_indices", report.verdict.zero_indices},
                 {"corrections", corrections},
                 {"canonical_corrections", report.canonical_corrections},
                 {"canonical_residual", report.canonical_residual}};

    json rho_rows = json::array();
    for (std::size_t r = 0; r < report.rho3.dim; ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < report.rho3.dim; ++c)
            row.push_back(to_json(report.rho3.at(r, c)));
        rho_rows.push_back(row);
    }
    json rho3{{"matrix", rho_rows},
              {"max_deviation_from_half_identity",
               report.max_rho3_deviation_from_half_identity}};

    json fidelity;
    if (report.fidelity.has_value()) {
        fidelity = json{{"min", report.fidelity->min_fidelity},
                        {"mean", report.fidelity->mean_fidelity},
                        {"shots", report.fidelity->n_inputs}};
        if (traces != nullptr) {
            json tr = json::array();
            for (const TeleportTrace& t : *traces) tr.push_back(trace_to_json(t));
            fidelity["traces"] = tr;
        }
    } else {
        fidelity = nullptr;
    }

    return json{{"channel", channel},
                {"basis_deviations", basis_dev},
                {"operators", operators},
                {"verdict", verdict},
                {"rho3", rho3},
                {"entropy_bits", report.entropy_bits},
                {"three_tangle", report.three_tangle},
                {"fidelity", fidelity}};
}

namespace detail {

inline std::string format_cplx(const json& z) {
    std::ostringstream os;
    const double re = z.at("re").get<double>();
    const double im = z.at("im").get<double>();
    os << re;
    if (im != 0.0) os << (im < 0 ? " - " : " + ") << std::abs(im) << "i";
    return os.str();
}

inline std::string format_matrix(const json& m) {
    std::ostringstream os;
    os << "[[" << format_cplx(m[0][0]) << ", " << format_cplx(m[0][1]) << "], ["
       << format_cplx(m[1][0]) << ", " << format_cplx(m[1][1]) << "]]";
    return os.str();
}

}  // namespace detail

/// Human-readable rendering of the JSON report; same numbers, no extras.
inline std::string report_to_text(const json& r) {
    std::ostringstream os;
    const json& ch = r.at("channel");
    os << "channel: " << ch.at("variant").get<std::string>();
    if (!ch.at("params").empty()) {
        os << " (";
        bool first = true;
        for (auto it = ch.at("params").begin(); it != ch.at("params").end(); ++it) {
            if (!first) os << ", ";
            os << it.key() << "=" << it.value().get<double>();
            first = false;
        }
        os << ")";
    }
    os << "\n";
    os << "amplitudes (index: value):";
    const json& amps = ch.at("amplitudes");
    for (std::size_t k = 0; k < amps.size(); ++k) {
        const double re = amps[k].at("re").get<double>();
        const double im = amps[k].at("im").get<double>();
        if (re == 0.0 && im == 0.0) continue;
        os << "  " << k << ": " << detail::format_cplx(amps[k]);
    }
    os << "\n";

    const json& bd = r.at("basis_deviations");
    os << "basis: gram deviation " << bd.at("max_gram_deviation").get<double>()
       << ", completeness deviation " << bd.at("max_completeness_deviation").get<double>()
       << (bd.at("ok").get<bool>() ? " (ok)" : " (NOT ok)") << "\n";

    os << "operators:\n";
    for (const json& op : r.at("operators")) {
        os << "  sigma " << op.at("index").get<int>() << ": "
           << detail::format_matrix(op.at("matrix")) << "  "
           << op.at("tag").get<std::string>() << "\n";
    }

    const json& v = r.at("verdict");
    os << "verdict: " << (v.at("perfect").get<bool>() ? "perfect" : "not perfect");
    os << "  unitary=" << v.at("unitary_indices").dump()
       << " zero=" << v.at("zero_indices").dump() << "\n";
    os << "canonical corrections: "
       << (v.at("canonical_corrections").get<bool>() ? "yes" : "no") << " (residual "
       << v.at("canonical_residual").get<double>() << ")\n";

    os << "rho3: " << detail::format_matrix(r.at("rho3").at("matrix"))
       << "  max deviation from I/2: "
       << r.at("rho3").at("max_deviation_from_half_identity").get<double>() << "\n";
    os << "entropy: " << r.at("entropy_bits").get<double>() << " bits\n";
    os << "three-tangle: " << r.at("three_tangle").get<double>() << "\n";

    if (!r.at("fidelity").is_null()) {
        const json& f = r.at("fidelity");
        os << "fidelity: min " << f.at("min").get<double>() << ", mean "
           << f.at("mean").get<double>() << " over " << f.at("shots").get<int>()
           << " sessions\n";
        if (f.contains("traces")) {
            for (const json& t : f.at("traces")) {
                os << "  outcome " << t.at("outcome_index").get<int>() << " (bits "
                   << t.at("bits").get<unsigned>() << "/" << t.at("bit_width").get<int>()
                   << "-bit), p=" << t.at("probability").get<double>()
                   << ", fidelity=" << t.at("fidelity").get<double>() << "\n";
            }
        }
    } else {
        os << "fidelity: not run\n";
    }
    return os.str();
}

}  // namespace telecanon
