/*
 * inner.hpp: inner functions on the unit disk.
 *
 * An InnerFunction is a unimodular constant times an optional Blaschke part
 * (finite product, or an infinite sequence stored as a prefix plus a tail
 * bound) times an optional atomic singular part. Finite Blaschke products
 * are z^m times canonical factors (|a|/a)(a - z)/(1 - conj(a) z); the
 * singular part is exp(-sum alpha_k (zeta_k + z)/(zeta_k - z)). Evaluation
 * returns a certified absolute error; infinite parts are usable only while
 * their stored tail bound covers the requested tolerance.
 */
#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "cphi/complex_util.hpp"
#include "cphi/errors.hpp"
#include "cphi/maps.hpp"
#include "cphi/polyroots.hpp"
#include "cphi/tolerances.hpp"

namespace cphi {

struct BlaschkeZero {
    cplx point;
    int multiplicity;
};

struct FiniteBlaschkeProduct {
    int m = 0;                        // order of the zero at the origin
    std::vector<BlaschkeZero> zeros;  // 0 < |point| < 1, sorted by (re, im)
    cplx c = 1.0;                     // unimodular

    int degree() const;  // m plus total multiplicity
};

struct BlaschkeSequence {
    std::vector<BlaschkeZero> zeros;      // stored prefix, original order kept
    std::optional<double> tail_beyond;    // bound on sum of 1 - |a_n| past the prefix
    int factor_count() const;             // total multiplicity of the prefix
};

struct SingularAtom {
    cplx point;     // unimodular
    double weight;  // > 0
};

struct AtomicSingularInner {
    std::vector<SingularAtom> atoms;  // distinct points, sorted by argument
    cplx c = 1.0;                     // unimodular
};

struct InnerFunction {
    std::optional<std::variant<FiniteBlaschkeProduct, BlaschkeSequence>> blaschke;
    std::optional<AtomicSingularInner> singular;
    cplx constant = 1.0;  // unimodular; parts carry their own constants too

    bool is_constant() const { return !blaschke && !singular; }
    bool finite_blaschke_only() const;
    bool has_sequence() const;
    const FiniteBlaschkeProduct* finite_part() const;
    const BlaschkeSequence* sequence_part() const;
    // total unimodular constant including part constants
    cplx total_constant() const;
};

// theta(z) = c (constant inner function); throws InvalidArgument unless |c| = 1
InnerFunction inner_constant(cplx c);
// theta(z) = z^m
InnerFunction monomial(int m);
// single canonical factor scaled so theta(0) = w (theta(z) = z when w = 0)
InnerFunction blaschke_factor(cplx w);
// validated finite Blaschke product; zeros at the origin may be listed or
// passed via m, duplicates merge into multiplicities
InnerFunction blaschke_product(int m, std::vector<BlaschkeZero> zeros, cplx c = 1.0);
// validated atomic singular inner; coincident atoms add their weights
InnerFunction atomic_singular(std::vector<SingularAtom> atoms, cplx c = 1.0);
InnerFunction atomic_singular(cplx atom, double weight);

struct InnerValue {
    cplx value;
    double error;  // certified absolute error bound
};

// evaluation with certified error <= tol; |z| <= 1 for finite parts, |z| < 1
// when an infinite part is present; throws OutsideDisk / TailBoundUnavailable
// / PoleAtPoint (z within the pole guard of an atom)
InnerValue inner_eval(const InnerFunction& theta, cplx z, double tol = 1e-9);

// zero multiplicity at w, matching stored zeros within `tol`; singular parts
// contribute 0, sequence parts count stored-prefix zeros only
int inner_mult(const InnerFunction& theta, cplx w, double tol = tol::zero_coincidence);

// pointwise product; zero lists merge, coincident atom weights add; sequence
// parts are rejected (truncate first)
InnerFunction inner_product(const InnerFunction& t1, const InnerFunction& t2);

// theta(rho z) for unimodular rho: zeros and atoms rotate by conj(rho), the
// constant picks up rho^m
InnerFunction compose_rotation(const InnerFunction& theta, cplx rho);

// zeros of theta.phi in the open disk, with multiplicities, for theta with a
// finite Blaschke part only; each zero a of theta contributes the solution of
// phi(z) = a when it lies inside
std::vector<BlaschkeZero> compose_zeros(const InnerFunction& theta,
                                        const LinearFractionalMap& phi);

// Blaschke sequence over orbit points (duplicates merged, order kept);
// tail_beyond certifies the sum past the stored points; when only a cap is
// given, partial sums exceeding it raise NotBlaschkeSummable
BlaschkeSequence orbit_blaschke(const std::vector<cplx>& orbit,
                                std::optional<double> tail_beyond = std::nullopt,
                                std::optional<double> partial_sum_cap = std::nullopt);

// finite product of the first `factors` zeros (counted with multiplicity)
InnerFunction truncate_sequence(const BlaschkeSequence& seq, int factors);

struct RieszFactorization {
    FiniteBlaschkeProduct blaschke;  // zeros of the input inside the disk
    RationalFunction outer;          // zero-free in the open disk
    double sup_input;                // boundary sup estimate of |num/den|
    double sup_outer;                // boundary sup estimate of |outer|
};

// factor num/den (den zero-free in the closed disk) as Blaschke * outer;
// throws PoleInDisk / ZeroFunction
RieszFactorization riesz_factor(const Polynomial& num, const Polynomial& den);

}  // namespace cphi
