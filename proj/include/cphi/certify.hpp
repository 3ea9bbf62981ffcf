/*
 * certify.hpp: the invariance decision engine.
 *
 * Decides whether theta H^2 is invariant under C_phi. Exact analytic routes
 * (zero-multiplicity transport, atom at the Denjoy-Wolff point, elliptic
 * eigenfunction transport, interior-fixed-point rigidity) produce Certified
 * verdicts; everything else falls back to Schur-class sampling of the
 * quotient f = (theta . phi) / theta. Every verdict is cross-checked against
 * the finite-section oracle when that oracle is decisive, and the report
 * records whether the two agree.
 */
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cphi/complex_util.hpp"
#include "cphi/errors.hpp"
#include "cphi/inner.hpp"
#include "cphi/maps.hpp"
#include "cphi/tolerances.hpp"

namespace cphi {

enum class SchurStatus {
    CertifiedMember,
    CertifiedNonMember,
    NumericallyConsistent,
    NumericallyViolated,
    Indeterminate,
};

enum class Route {
    MultiplicityTest,
    AtomDenjoyWolff,
    EllipticConstant,
    InteriorFixedPointIdentity,
    NonAutomorphicRigidity,
    NumericFallback,
};

std::string status_name(SchurStatus status);
std::string route_name(Route route);

struct SchurWitness {
    cplx point;      // interior point with |f(point)| > 1 + margin
    double modulus;  // |f(point)|, conclusive by the maximum modulus principle
};

struct SchurVerdict {
    SchurStatus status = SchurStatus::Indeterminate;
    std::optional<SchurWitness> witness;  // present on violations
    double sup_estimate = 0.0;            // max sampled |f| (1.0 on exact member routes)
    std::string route;                    // provenance string for reports
};

struct InvarianceReport {
    SchurVerdict verdict;
    Route route = Route::NumericFallback;
    std::optional<double> oracle_residual;  // only when the oracle run was decisive
    std::optional<cplx> quotient_constant;  // elliptic and identity routes
    bool agreement = true;                  // analytic verdict vs oracle evidence
};

struct QuotientSamples {
    std::vector<std::pair<cplx, cplx>> values;  // (grid point, f value)
    std::vector<cplx> skipped;                  // points within the zero skip radius
};

// f = (theta . phi) / theta at one point, with Blaschke factors whose zeros
// transport into the zero set cancelled in closed form; throws ZeroDivision
// within tol::zero_skip_radius of a surviving zero of theta
cplx quotient_value(const InnerFunction& theta, const LinearFractionalMap& phi, cplx z);

// f on circles of the given radii, anglesPerRadius points each, plus one
// angular refinement pass around the running maximum
QuotientSamples quotient_samples(const InnerFunction& theta, const LinearFractionalMap& phi,
                                 const std::vector<double>& radii = {0.5, 0.9, 0.99},
                                 int angles_per_radius = 2048);

// NumericallyViolated with a witness when any sample exceeds 1 + margin,
// otherwise NumericallyConsistent; sampling alone never certifies
SchurVerdict schur_membership(const QuotientSamples& samples,
                              double margin = tol::schur_margin);

InvarianceReport certify_invariance(const InnerFunction& theta,
                                    const LinearFractionalMap& phi);

// a proper nontrivial invariant subspace for any non-identity map: the
// Blaschke factor at an interior fixed point, or the atom of weight alpha at
// the boundary Denjoy-Wolff point
InnerFunction construct_invariant_inner(const LinearFractionalMap& phi, double alpha);

// the constant value of (theta . phi)/theta for a certified member under an
// elliptic automorphism: (phi'(w))^mult at a fixed-point zero, 1 otherwise
cplx elliptic_constant(const InnerFunction& theta, const LinearFractionalMap& phi);

}  // namespace cphi
