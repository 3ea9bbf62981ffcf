/*
 * orbits.hpp: parabolic orbit decay and orbit Blaschke products.
 *
 * A parabolic disk automorphism conjugates to s -> s + ib on the right half
 * plane via omega(z) = (1 + z)/(1 - z), after rotating its fixed point to 1.
 * Writing omega of the rotated start point as u + iv, the iterates satisfy
 * 1 - |phi_m(z)|^2 = 4u / ((mb + v)^2 + (1 + u)^2) exactly, so every orbit
 * sums a convergent Blaschke series and its product generates an invariant
 * subspace. The decay exponent is -2, not -1; refute_reciprocal_decay
 * quantifies this and cross-checks the invariance numerically.
 */
#pragma once

#include <functional>
#include <vector>

#include "cphi/complex_util.hpp"
#include "cphi/inner.hpp"
#include "cphi/maps.hpp"

namespace cphi {

struct OrbitRow {
    int m = 0;
    cplx point;                // phi_m(z)
    double direct = 0.0;       // 1 - |phi_m(z)|^2 from iteration
    double formula = 0.0;      // 4u / ((mb + v)^2 + (1 + u)^2)
    double partial_sum = 0.0;  // sum of 1 - |phi_k(z)| for k <= m
};

struct OrbitReport {
    cplx z;
    cplx fixed_point;  // boundary fixed point rotated to 1 internally
    double b = 0.0;    // half-plane translation parameter
    double u = 0.0;    // omega(conj(fixed_point) z) = u + iv, u > 0
    double v = 0.0;
    std::vector<OrbitRow> rows;  // m = 1..M
    double fit_slope = 0.0;      // log-log slope of direct vs m over [M/2, M]
};

// tabulates direct iteration against the closed decay formula; M >= 10.
// throws NotParabolic / OutsideDisk / InvalidArgument
OrbitReport parabolic_orbit_report(const LinearFractionalMap& phi, cplx z, int M);

// upper bound for the decay sum past index M by integral comparison:
// sum_{m>M} 4u/((mb+v)^2+(1+u)^2) <= (4u/b^2) / (M - |v/b|), needing
// M > 2|v/b|; +infinity when the comparison does not apply
double parabolic_tail_bound(double u, double v, double b, int M);

struct SummabilityResult {
    double sum = 0.0;   // partial sum of the supplied terms
    double tail = 0.0;  // certified bound on the remainder
    bool certified = false;
};

// partial sum of nonnegative terms plus the caller's bound on the rest;
// certified only when that bound is finite
SummabilityResult blaschke_summability(const std::vector<double>& values,
                                       const std::function<double(int)>& tail_bound);

struct TruncationResidual {
    int factors = 0;
    double rho = 0.0;
    bool decisive = false;
};

struct DecayRefutation {
    OrbitReport orbit;
    double matched_constant = 0.0;       // c with c/m equal to the first table row
    double decay_sum = 0.0;              // sum of direct values over the table
    double reciprocal_model_sum = 0.0;   // sum of c/m over the table, grows like c log M
    bool forward_invariant = false;      // phi(p_m) coincides with p_{m+1}
    bool transport_ok = false;           // every zero multiplicity survives composition
    std::vector<TruncationResidual> residual_trend;  // oracle at 5, 10, 20 factors
    // composing the full orbit product just shifts its zeros, so
    // B.phi = c b_w B with w the preimage of the start point; on a k-factor
    // truncation the identity leaks by the dropped factor and the prefix
    // residual decays like 1/k^2, a trend finite sections can resolve (the
    // oracle cannot: the quotient pole of the truncation sits too close to
    // the boundary for any feasible section order)
    std::vector<TruncationResidual> shift_identity_trend;
};

// contrasts the true quadratic decay against a reciprocal model matched at
// m = 1, and certifies the orbit Blaschke subspace: exact forward invariance
// plus multiplicity transport on the stored zeros, cross-checked by the
// truncation oracle as factors accumulate. throws as parabolic_orbit_report
DecayRefutation refute_reciprocal_decay(const LinearFractionalMap& phi, cplx z, int M);

}  // namespace cphi
