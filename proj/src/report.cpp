/*
 * report.cpp: envelope assembly and the tolerance table echo.
 *
 * The table lists every tolerance in tolerances.hpp, not just the ones a
 * given command consulted: a report is a complete statement of the numeric
 * regime it ran under.
 */
#include "cphi/report.hpp"

namespace cphi {

ordered_json json_complex(cplx v) {
    const double re = v.real() == 0.0 ? 0.0 : v.real();
    const double im = v.imag() == 0.0 ? 0.0 : v.imag();
    return ordered_json{{"re", re}, {"im", im}};
}

tol::Table full_tolerance_table() {
    return {
        {"self_map_boundary", tol::self_map_boundary},
        {"self_map_samples", double(tol::self_map_samples)},
        {"degenerate_det", tol::degenerate_det},
        {"pole_guard", tol::pole_guard},
        {"root_merge", tol::root_merge},
        {"boundary_membership", tol::boundary_membership},
        {"identity_proportionality", tol::identity_proportionality},
        {"conjugacy_check", tol::conjugacy_check},
        {"atom_coincidence", tol::atom_coincidence},
        {"zero_merge", tol::zero_merge},
        {"zero_coincidence", tol::zero_coincidence},
        {"interior_exclusion", tol::interior_exclusion},
        {"root_cluster", tol::root_cluster},
        {"riesz_grid", tol::riesz_grid},
        {"riesz_norm", tol::riesz_norm},
        {"boundary_norm_samples", double(tol::boundary_norm_samples)},
        {"oracle_N", double(tol::oracle_N)},
        {"kernel_N", double(tol::kernel_N)},
        {"oracle_member", tol::oracle_member},
        {"oracle_nonmember", tol::oracle_nonmember},
        {"littlewood_slack", tol::littlewood_slack},
        {"kernel_residual", tol::kernel_residual},
        {"gram_ridge", tol::gram_ridge},
        {"gram_condition", tol::gram_condition},
        {"kernel_norm_slack", tol::kernel_norm_slack},
        {"projector_rank", tol::projector_rank},
        {"schur_margin", tol::schur_margin},
        {"constancy", tol::constancy},
        {"grid_identity", tol::grid_identity},
        {"zero_skip_radius", tol::zero_skip_radius},
        {"sample_seed", double(tol::sample_seed)},
        {"decay_agreement", tol::decay_agreement},
        {"slope_lo", tol::slope_lo},
        {"slope_hi", tol::slope_hi},
        {"forward_invariance", tol::forward_invariance},
        {"trend_slack", tol::trend_slack},
    };
}

ordered_json report_envelope(const std::string& command, ordered_json inputs,
                             ordered_json result) {
    ordered_json table = ordered_json::object();
    for (const auto& [name, value] : full_tolerance_table()) table[name] = value;
    return ordered_json{{"command", command},
                        {"inputs", std::move(inputs)},
                        {"result", std::move(result)},
                        {"toleranceTable", std::move(table)},
                        {"version", kArtifactVersion}};
}

std::string render_report(const ordered_json& envelope) { return envelope.dump(2) + "\n"; }

}  // namespace cphi
