/*
 * tolerances.hpp: single source of truth for every numeric threshold.
 *
 * Values are referenced by name from the code and echoed verbatim into the
 * CLI report envelopes, so a report always states the tolerances that were
 * actually in force.
 */
#pragma once

#include <string>
#include <utility>
#include <vector>

namespace cphi::tol {

// maps
inline constexpr double self_map_boundary = 1e-10;   // |phi(e^it)| <= 1 + this
inline constexpr int self_map_samples = 4096;
inline constexpr double degenerate_det = 1e-12;      // |ad-bc| below => degenerate
inline constexpr double pole_guard = 1e-14;          // |cz+d| below => PoleAtPoint
inline constexpr double root_merge = 1e-9;           // fixed-point multiplicity merge
inline constexpr double boundary_membership = 1e-9;  // ||w|-1| below => boundary
inline constexpr double identity_proportionality = 1e-12;
inline constexpr double conjugacy_check = 1e-12;     // half-plane 3-point verification

// inner
inline constexpr double atom_coincidence = 1e-12;    // merge singular atoms
inline constexpr double zero_merge = 1e-12;          // merge Blaschke zeros on construction
inline constexpr double zero_coincidence = 1e-9;     // zero/multiplicity lookup
inline constexpr double interior_exclusion = 1e-10;  // |z| >= 1 - this => not interior
inline constexpr double root_cluster = 1e-8;         // companion-matrix root clustering
inline constexpr double riesz_grid = 1e-10;          // |f - B g| on the check grid
inline constexpr double riesz_norm = 1e-8;           // | ||f|| - ||g|| | on the boundary
inline constexpr int boundary_norm_samples = 4096;

// series
inline constexpr int oracle_N = 64;                  // default truncation order
inline constexpr int kernel_N = 128;                 // kernel-identity truncation order
inline constexpr double oracle_member = 1e-8;        // residual below => invariant evidence
inline constexpr double oracle_nonmember = 1e-2;     // residual above => non-invariant
inline constexpr double littlewood_slack = 1e-8;
inline constexpr double kernel_residual = 1e-8;
inline constexpr double gram_ridge = 1e-12;
inline constexpr double gram_condition = 1e14;
inline constexpr double kernel_norm_slack = 1e-6;
inline constexpr double projector_rank = 1e-8;       // QR pivot cutoff, caps quotient growth

// certify
inline constexpr double schur_margin = 1e-6;         // default sampling margin
inline constexpr double constancy = 1e-10;           // elliptic quotient constancy
inline constexpr double grid_identity = 1e-10;       // theta(phi(z)) == theta(z) grid test
inline constexpr double zero_skip_radius = 1e-3;     // skip samples near remaining zeros
inline constexpr unsigned long long sample_seed = 0x5EED;

// orbits
inline constexpr double decay_agreement = 1e-10;     // direct vs closed-form decay
inline constexpr double slope_lo = -2.05;
inline constexpr double slope_hi = -1.95;
inline constexpr double forward_invariance = 1e-12;  // |phi(p_m) - p_{m+1}|
inline constexpr double trend_slack = 0.10;          // allowed residual-trend wobble

// one (name, value) pair per tolerance a given command relied on
using Table = std::vector<std::pair<std::string, double>>;

}  // namespace cphi::tol
