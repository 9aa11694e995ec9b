#pragma once

// Input parsing and report assembly.
//
// Fibration files are JSON objects with keys
//   genus        positive integer (required)
//   cycles       array of integer arrays, each of length 2*genus (required)
//   signature    integer (optional)
//   base_points  nonnegative integer (optional)
//   level        positive integer (optional)
//
// Reports are built as ordered JSON documents so that serialization is
// byte-identical run to run; the text renderer walks the same document.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "bundle.hpp"
#include "errors.hpp"
#include "fibration.hpp"
#include "fusion.hpp"
#include "monodromy.hpp"
#include "rep_analysis.hpp"
#include "theta.hpp"

namespace lefschetz {

using ordered_json = nlohmann::ordered_json;

// Formula notes attached to reports.  Each states the quantity purely
// mathematically.
inline constexpr const char* kFormulaRank =
    "rank = ((k+2)/2)^(g-1) * sum over j = 1..k+1 of sin(j*pi/(k+2))^(2-2g), rounded with "
    "certified residual; cross-checked in integers via the handle operator H = sum_a N_a N_a";
inline constexpr const char* kFormulaDegree = "degree = (3k/(k+2)) * rank * lambda";
inline constexpr const char* kFormulaLambda = "lambda = (signature + cycle count) / 4";
inline constexpr const char* kFormulaTheta =
    "theta(l, tau; R) = sum over n in Z^g + l with |n|_inf <= R of exp((i*pi/k) n^T tau n)";
inline constexpr const char* kFormulaIntertwiner =
    "W U_h = mu(h) U_(Ah) W solved over the 2g standard Heisenberg generators";
inline constexpr const char* kFormulaHomPlus =
    "dim = r * (n^2 - sum_i m_i^2) - 2 * (n^2 - 1)";
inline constexpr const char* kFormulaChi = "chi = rank + degree";

// ---------------------------------------------------------------------
// Parsing.

inline Fibration fibration_from_json(const ordered_json& j, const std::string& source) {
    if (!j.is_object()) throw parse_error(source + ": top level must be a JSON object");

    auto require_int = [&](const ordered_json& v, const std::string& what) -> Int {
        if (!v.is_number_integer())
            throw parse_error(source + ": " + what + " must be an integer");
        return v.get<Int>();
    };

    if (!j.contains("genus")) throw parse_error(source + ": missing required key 'genus'");
    if (!j.contains("cycles")) throw parse_error(source + ": missing required key 'cycles'");

    Fibration f;
    Int genus = require_int(j.at("genus"), "'genus'");
    if (genus < 1 || genus > 64) throw parse_error(source + ": 'genus' out of range [1, 64]");
    f.genus = static_cast<int>(genus);

    const ordered_json& cycles = j.at("cycles");
    if (!cycles.is_array()) throw parse_error(source + ": 'cycles' must be an array");
    for (size_t i = 0; i < cycles.size(); ++i) {
        const ordered_json& c = cycles[i];
        std::ostringstream what;
        what << "cycle " << i;
        if (!c.is_array())
            throw parse_error(source + ": " + what.str() + " must be an integer array");
        Vec v;
        for (const auto& e : c) v.push_back(require_int(e, what.str() + " entry"));
        f.cycles.push_back(std::move(v));
    }

    if (j.contains("signature")) f.signature = require_int(j.at("signature"), "'signature'");
    if (j.contains("base_points")) f.base_points = require_int(j.at("base_points"), "'base_points'");
    if (j.contains("level")) f.level = require_int(j.at("level"), "'level'");

    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        if (key != "genus" && key != "cycles" && key != "signature" && key != "base_points" &&
            key != "level")
            throw parse_error(source + ": unknown key '" + key + "'");
    }
    return f;
}

inline Fibration parse_fibration(const std::string& text, const std::string& source = "input") {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // The library message carries line and column information.
        throw parse_error(source + ": " + e.what());
    }
    return fibration_from_json(j, source);
}

inline Fibration load_fibration_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open fibration file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_fibration(buf.str(), path);
}

// ---------------------------------------------------------------------
// Report pieces.

inline ordered_json fibration_summary_json(const Fibration& f) {
    ordered_json j;
    j["genus"] = f.genus;
    j["cycle_count"] = f.cycles.size();
    if (f.signature) j["signature"] = *f.signature;
    if (f.base_points) j["base_points"] = *f.base_points;
    if (f.level) j["level"] = *f.level;
    return j;
}

inline ordered_json complex_json(const std::complex<double>& z) {
    ordered_json j;
    j["re"] = z.real();
    j["im"] = z.imag();
    return j;
}

inline ordered_json verlinde_report(Int genus, Int level) {
    VerlindeRank v = verlinde_rank(genus, level);
    ordered_json j;
    j["command"] = "verlinde";
    j["genus"] = genus;
    j["level"] = level;
    j["rank"] = v.rank;
    j["rounding_residual"] = v.rounding_residual;
    j["integer_cross_check"] = v.integer_checked;
    j["s_unitarity_residual"] = s_matrix_unitarity_residual(level);
    if (level == 1) j["rank_level_duality_2^g"] = (v.rank == (1LL << genus));
    j["formula"] = kFormulaRank;
    return j;
}

inline ordered_json spin_report(const Fibration& f) {
    SpinReport spin = spin_structure_analysis(f);
    Mod2ImageReport image = classify_mod2_image(f);
    ordered_json j;
    j["command"] = "spin";
    j["fibration"] = fibration_summary_json(f);
    j["admits_invariant_form"] = spin.admits_invariant_form;
    j["invariant_form_count"] = spin.forms.size();
    j["even_count"] = spin.even_count;
    j["odd_count"] = spin.odd_count;
    ordered_json forms = ordered_json::array();
    for (const auto& q : spin.forms) {
        ordered_json fj;
        ordered_json vals = ordered_json::array();
        for (int i = 0; i < 2 * q.genus; ++i) vals.push_back((q.basis_values >> i) & 1u);
        fj["basis_values"] = vals;
        fj["arf"] = arf_invariant(q);
        forms.push_back(fj);
    }
    j["invariant_forms"] = forms;
    j["mod2_image"] = to_string(image.classification);
    if (image.image_order) j["mod2_image_order"] = *image.image_order;
    else j["mod2_image_order"] = "not enumerated (genus > 3)";
    if (image.full_group_order != 0) j["full_group_order"] = image.full_group_order;
    return j;
}

inline ordered_json reducibility_report_json(const ReducibilityReport& r) {
    ordered_json j;
    j["command"] = "reducibility";
    j["genus"] = r.rep.genus;
    j["level"] = r.rep.level;
    j["fiber_dim"] = r.rep.fiber_dim;
    j["operator_count"] = r.rep.operators.size();
    j["commutant_dimension"] = r.commutant.dimension;
    j["inconclusive"] = r.commutant.inconclusive;
    j["cutoff_used"] = r.commutant.cutoff_used;
    const auto& sv = r.commutant.singular_values;
    ordered_json small = ordered_json::array();
    for (Eigen::Index i = 0; i < sv.size() && i < 8; ++i) small.push_back(sv(i));
    j["smallest_singular_values"] = small;
    j["largest_singular_value"] = sv.size() ? sv(sv.size() - 1) : 0.0;
    j["verdict"] = to_string(r.verdict);
    if (r.projector) {
        ordered_json p;
        p["rank"] = r.projector->rank;
        p["idempotency_residual"] = r.projector->idempotency_residual;
        p["commutation_residual"] = r.projector->commutation_residual;
        j["invariant_projector"] = p;
    }
    j["formula"] = kFormulaIntertwiner;
    return j;
}

inline ordered_json bundle_report(Int genus, Int level, Int lambda,
                                  std::optional<Int> signature = std::nullopt,
                                  std::optional<Int> cycle_count = std::nullopt) {
    BrillNoetherReport bn = brill_noether(genus, level, lambda);
    const BundleData& b = bn.bundle;
    ordered_json j;
    j["command"] = "bundle";
    j["genus"] = genus;
    j["level"] = level;
    j["lambda"] = lambda;
    if (signature && cycle_count) {
        ordered_json lj;
        lj["signature"] = *signature;
        lj["cycle_count"] = *cycle_count;
        lj["formula"] = kFormulaLambda;
        j["lambda_source"] = lj;
    }
    j["rank"] = to_string(b.rank);
    j["degree"] = to_string(b.degree);
    j["degree_is_integral"] = b.integral_degree;
    j["slope"] = to_string(b.slope);
    j["chi"] = to_string(Rational(b.rank) + b.degree);
    j["flatness_defect"] = to_string(flatness_defect(b));
    ordered_json chern = ordered_json::array();
    for (Int i = 1; i <= 3 && BigInt(i) <= b.rank; ++i)
        chern.push_back(to_string(higher_chern(b, i)));
    j["higher_chern"] = chern;
    ordered_json dual;
    dual["degree"] = to_string(bn.dual_degree);
    dual["integral"] = bn.dual_integral;
    if (bn.dual_integral) {
        dual["chi"] = to_string(bn.dual_chi);
        ordered_json split;
        split["low_value"] = to_string(bn.dual_splitting.low_value);
        split["low_count"] = to_string(bn.dual_splitting.low_count);
        split["high_count"] = to_string(bn.dual_splitting.high_count);
        if (bn.dual_splitting.rank() <= 24) {
            ordered_json list = ordered_json::array();
            for (const BigInt& d : splitting_summands(bn.dual_splitting))
                list.push_back(to_string(d));
            split["summands"] = list;
        }
        dual["balanced_splitting"] = split;
        dual["generic_h0"] = to_string(bn.generic_h0);
    }
    dual["verdict"] = bn.verdict;
    j["dual_bundle"] = dual;
    j["formulas"] = ordered_json::array({kFormulaDegree, kFormulaChi});
    return j;
}

inline ordered_json theta_report(Int genus, Int level, Int radius) {
    ThetaLabel label = make_theta_label(level, std::vector<Int>(static_cast<size_t>(genus), 0));
    SiegelPoint tau = standard_siegel_point(static_cast<int>(genus));
    ThetaValue v = theta_series(label, tau, radius);
    ordered_json j;
    j["command"] = "theta-check";
    j["genus"] = genus;
    j["level"] = level;
    j["radius"] = radius;
    j["tau"] = "i * identity";
    j["label"] = "zero characteristic";
    j["value"] = complex_json(v.value);
    j["terms_summed"] = v.terms;
    j["truncation_tail_bound"] = v.tail_bound;
    if (genus >= 2) {
        ThetaLabel l1 = make_theta_label(level, std::vector<Int>(1, 0));
        ThetaLabel l2 =
            make_theta_label(level, std::vector<Int>(static_cast<size_t>(genus - 1), 0));
        double res = theta_factorization_residual(l1, standard_siegel_point(1), l2,
                                                  standard_siegel_point(static_cast<int>(genus) - 1),
                                                  radius);
        j["block_factorization_residual"] = res;
    }
    j["formula"] = kFormulaTheta;
    return j;
}

inline ordered_json homplus_report(Int fiber_dim, const std::vector<Int>& mults, Int ops) {
    HomPlusReport r = homplus_dimension(fiber_dim, mults, ops);
    ordered_json j;
    j["command"] = "homplus";
    j["fiber_dim"] = fiber_dim;
    j["multiplicities"] = mults;
    j["operator_count"] = ops;
    j["commutant_codim"] = r.commutant_codim;
    j["dimension"] = r.dimension;
    j["empty_or_obstructed"] = r.empty_or_obstructed;
    j["formula"] = kFormulaHomPlus;
    return j;
}

// ---------------------------------------------------------------------
// Text rendering: a stable key/value walk of the report document.

inline void render_text_into(const ordered_json& j, std::ostream& os, int indent) {
    std::string pad(static_cast<size_t>(indent) * 2, ' ');
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it.value().is_object() || (it.value().is_array() && !it.value().empty() &&
                                           (it.value()[0].is_object() || it.value()[0].is_array()))) {
                os << pad << it.key() << ":\n";
                render_text_into(it.value(), os, indent + 1);
            } else {
                os << pad << it.key() << ": " << it.value().dump() << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& e : j) {
            if (e.is_object() || e.is_array()) {
                os << pad << "-\n";
                render_text_into(e, os, indent + 1);
            } else {
                os << pad << "- " << e.dump() << "\n";
            }
        }
    } else {
        os << pad << j.dump() << "\n";
    }
}

inline std::string render_text(const ordered_json& j) {
    std::ostringstream os;
    render_text_into(j, os, 0);
    return os.str();
}

} // namespace lefschetz
