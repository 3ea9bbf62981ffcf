/*
 * maps.hpp: linear fractional self-maps of the unit disk.
 *
 * phi(z) = (a z + b) / (c z + d), ad - bc != 0, stored with coefficients
 * normalized so max(|a|,|b|,|c|,|d|) = 1. Construction certifies the
 * self-map property: |phi| <= 1 + tol on 4096 boundary samples and the pole
 * -d/c outside the closed disk. Composition and iteration act on the 2x2
 * coefficient matrix (renormalized each step), never on sampled values.
 */
#pragma once

#include <optional>
#include <vector>

#include "cphi/complex_util.hpp"
#include "cphi/errors.hpp"

namespace cphi {

class LinearFractionalMap {
  public:
    // validates determinant and the self-map certificate; throws
    // DegenerateMap / NotSelfMap
    LinearFractionalMap(cplx a, cplx b, cplx c, cplx d);

    static LinearFractionalMap identity();
    // phi(z) = lambda z, |lambda| = 1
    static LinearFractionalMap rotation(cplx lambda);
    // phi(z) = lambda (a - z) / (1 - conj(a) z), |lambda| = 1, |a| < 1
    static LinearFractionalMap automorphism(cplx lambda, cplx a);
    // conjugate of s -> s + i b under omega(z) = (1+z)/(1-z); fixes zeta
    static LinearFractionalMap parabolic(double b, cplx zeta = cplx(1.0, 0.0));
    // elliptic automorphism fixing w in the disk with derivative mu there
    static LinearFractionalMap elliptic(cplx w, cplx mu);
    // validation without throwing; nullopt when not a disk self-map
    static std::optional<LinearFractionalMap> try_self_map(cplx a, cplx b, cplx c,
                                                           cplx d);

    cplx a() const { return a_; }
    cplx b() const { return b_; }
    cplx c() const { return c_; }
    cplx d() const { return d_; }
    cplx det() const { return a_ * d_ - b_ * c_; }

    // throws PoleAtPoint when |cz + d| < 1e-14
    cplx operator()(cplx z) const;
    // phi'(z) = (ad - bc) / (cz + d)^2
    cplx derivative_at(cplx z) const;

    bool is_identity() const;
    // inverse as a disk self-map; nullopt when phi is not an automorphism
    std::optional<LinearFractionalMap> inverse() const;

  private:
    struct Unchecked {};
    LinearFractionalMap(cplx a, cplx b, cplx c, cplx d, Unchecked);
    void normalize();
    cplx a_, b_, c_, d_;
};

// f after g, via the 2x2 matrix product; throws DegenerateComposition
LinearFractionalMap lf_compose(const LinearFractionalMap& f,
                               const LinearFractionalMap& g);

struct FixedPoint {
    cplx point;
    int multiplicity = 1;
    bool on_boundary = false;
};

// roots of c z^2 + (d-a) z - b in the closed disk; double roots merged when
// the two roots agree to 1e-9; boundary points snapped to |w| = 1.
// throws IdentityMap when the map is the identity.
std::vector<FixedPoint> fixed_points(const LinearFractionalMap& map);

enum class AutomorphismClass { Elliptic, Hyperbolic, Parabolic };

struct DiskAutomorphism {
    cplx lambda;  // unimodular multiplier
    cplx a;       // |a| < 1, phi(z) = lambda (a - z)/(1 - conj(a) z)
    AutomorphismClass cls;
    std::vector<FixedPoint> fixed;
};

// throws NotAutomorphism when the inverse fails the self-map certificate
DiskAutomorphism classify_automorphism(const LinearFractionalMap& map);

bool is_automorphism(const LinearFractionalMap& map);

struct DenjoyWolffData {
    cplx point;
    double derivative = 0.0;  // |phi'(w)| interior, angular derivative on the boundary
    bool interior = false;
};

// attracting fixed point; throws EllipticAutomorphism / IdentityMap
DenjoyWolffData denjoy_wolff(const LinearFractionalMap& map);

// orbit z, phi(z), ..., phi_M(z) by renormalized matrix powers;
// throws EscapedDisk if an iterate reaches |w| >= 1
std::vector<cplx> orbit(const LinearFractionalMap& map, cplx z, int M);

// phi_m(z); requires |z| < 1
cplx iterate(const LinearFractionalMap& map, cplx z, int m);

struct HalfPlaneTranslation {
    double b = 0.0;  // sigma(s) = s + i b on Re s > 0
};

// conjugates a parabolic automorphism to its half-plane translation; rotates
// the fixed point to 1 first when needed. throws NotParabolic.
HalfPlaneTranslation half_plane_conjugate(const LinearFractionalMap& map);

// psi = omega . phi . omega^{-1} with omega(z) = conj(a) z, |a| = 1;
// moves the Denjoy-Wolff point from w to conj(a) w
LinearFractionalMap rotation_conjugate(const LinearFractionalMap& map, cplx a);

}  // namespace cphi
