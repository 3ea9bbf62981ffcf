/*
 * series.hpp: truncated power series and the finite-section oracle.
 *
 * A PowerSeries stores exact leading Taylor coefficients plus certificates
 * about what was dropped: an optional geometric envelope |c_n| <= C rho^n,
 * an optional l2 bound on the dropped tail, and an l2 bound on the stored
 * prefix's deviation from the true function (nonzero only after lossy steps
 * such as composing with a truncated outer series). Operator sections
 * compress C_phi and M_theta to the span of the first N monomials; the
 * invariance residual measures how far the probe vectors C_phi(theta z^k)
 * stick out of the truncated subspace theta H^2, with a certified bound on
 * truncation contamination. Kernel identities use the closed-form Szego
 * inner products.
 */
#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "cphi/complex_util.hpp"
#include "cphi/errors.hpp"
#include "cphi/inner.hpp"
#include "cphi/maps.hpp"
#include "cphi/tolerances.hpp"

namespace cphi {

struct GeometricTail {
    double constant;  // C >= |c_n| / radius^n for every n
    double radius;    // rho < 1
};

struct PowerSeries {
    std::vector<cplx> coeffs;             // degrees 0 .. N()-1
    std::optional<GeometricTail> tail;    // envelope valid for all degrees
    std::optional<double> l2_tail;        // l2 bound on coefficients >= N()
    std::optional<double> sup_bound;      // bound on |f| over the disk
    double prefix_err = 0.0;              // l2 bound on stored-vs-true prefix

    int N() const { return static_cast<int>(coeffs.size()); }
    cplx eval(cplx z) const;              // Horner on the stored prefix
    double l2_norm() const;
    // pointwise bound on the dropped tail at |z| = r (needs the envelope)
    double tail_at(double r) const;
};

// truncated Cauchy product (length min(Nf, Ng)); exact prefixes stay exact
PowerSeries series_mul(const PowerSeries& f, const PowerSeries& g);

// f(phi(z)) truncated to min(Nf, Nphi); requires |phi(0)| < 1; the result
// prefix is exact up to the certified prefix_err (composition never moves
// the degree->N tail of an exact phi-prefix below N)
PowerSeries series_compose(const PowerSeries& f, const PowerSeries& phi);

// exact expansion b/d + (ad - bc)/d^2 sum (-c/d)^{n-1} z^n with geometric
// envelope of radius |c/d|; PoleTooClose when the pole touches the disk
PowerSeries taylor_of_map(const LinearFractionalMap& phi, int n);

// exact expansion of a representable inner function; the l2 tail certificate
// comes from ||theta|| = 1; sequence prefixes add sqrt(2 tail) prefix error
PowerSeries taylor_of_inner(const InnerFunction& theta, int n);

// exact-prefix expansion of theta(phi(z)) built from the factored form:
// Blaschke factors pull back to fractional linear expressions and atom
// exponents (zeta + phi)/(zeta - phi) stay fractional linear, so no lossy
// truncated composition is involved. Truncating a numerically composed
// series instead would contaminate every coefficient with the l2 mass of
// the dropped theta tail, which for singular parts decays only like N^(-1/4).
PowerSeries taylor_of_composed_inner(const InnerFunction& theta, const LinearFractionalMap& phi,
                                     int n);

enum class SectionRole { Composition, Multiplication };

struct OperatorSection {
    Eigen::MatrixXcd entries;
    SectionRole role;
    std::string source;
};

// column k = coefficients of phi^k; CompositionDiverges if |phi(0)| >= 1
OperatorSection cphi_section(const PowerSeries& phi, int n);
// lower-triangular Toeplitz with first column theta
OperatorSection mtheta_section(const PowerSeries& theta, int n);

struct ResidualReport {
    double rho;         // max relative out-of-subspace component
    double tail_error;  // certified l2 contamination of the probe vectors
    int n;              // truncation order used
    int probes;         // number of probe columns
    int rank;           // numerical rank of the truncated subspace columns
    int subspace_dim;   // n/2, the restricted dimension
    // rank < subspace_dim: the projector cuts at least one direction, so a
    // small residual is real divisibility evidence. A full-rank section spans
    // everything and the residual is vacuously small; callers must not read
    // membership evidence out of an indecisive report.
    bool decisive;
};

// rho = max_k ||(I - P) c_k|| / ||c_k|| on the first n/2 coordinates, where
// c_k = C_phi(theta z^k) expanded exactly via taylor_of_composed_inner and
// P projects onto the numerically stable span of the truncated theta z^j
// columns (pivoted QR, pivots below tol::projector_rank dropped; the cut
// caps the implied quotient amplification at 1/threshold). Throws
// TruncationUnreliable when the probe prefix error exceeds a tenth of the
// membership threshold.
ResidualReport invariance_residual(const InnerFunction& theta, const LinearFractionalMap& phi,
                                   int n = tol::oracle_N, int probes = 0);

struct LittlewoodCheck {
    double section_norm;  // largest singular value of the n x n section
    double bound;         // sqrt((1 + |phi(0)|) / (1 - |phi(0)|))
};

LittlewoodCheck littlewood_bound_check(const LinearFractionalMap& phi, int n);

// ||(C_phi section)* k_w - k_phi(w)|| on the first n/2 coordinates
double kernel_relation_residual(const LinearFractionalMap& phi, cplx w, int n);

struct KernelNormEstimate {
    std::vector<cplx> points;
    double c;      // sqrt of the largest generalized eigenvalue
    double bound;  // Littlewood bound of phi, for comparison
    double ridge;  // regularizer added to both Gram matrices
};

// norm of the densely defined kernel map on span{conj(theta(w)) K(.,w)}
// against its image under phi, via closed-form Szego Gram matrices in
// extended precision; IllConditioned when the unridged Gram is numerically
// singular beyond repair
KernelNormEstimate kernel_map_norm(const InnerFunction& theta, const LinearFractionalMap& phi,
                                   const std::vector<cplx>& points,
                                   double ridge = tol::gram_ridge);

}  // namespace cphi
