#include "cphi/maps.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "cphi/tolerances.hpp"

namespace cphi {

namespace {

double max_coef(cplx a, cplx b, cplx c, cplx d) {
    return std::max(std::max(std::abs(a), std::abs(b)),
                    std::max(std::abs(c), std::abs(d)));
}

// self-map certificate on already-normalized coefficients
bool self_map_certificate(cplx a, cplx b, cplx c, cplx d) {
    if (std::abs(c) >= std::abs(d)) return false;  // pole -d/c in the closed disk
    for (int k = 0; k < tol::self_map_samples; ++k) {
        double t = 2.0 * std::numbers::pi * k / tol::self_map_samples;
        cplx z = std::polar(1.0, t);
        cplx den = c * z + d;
        if (std::abs(a * z + b) > (1.0 + tol::self_map_boundary) * std::abs(den))
            return false;
    }
    return true;
}

}  // namespace

LinearFractionalMap::LinearFractionalMap(cplx a, cplx b, cplx c, cplx d, Unchecked)
    : a_(a), b_(b), c_(c), d_(d) {
    normalize();
}

LinearFractionalMap::LinearFractionalMap(cplx a, cplx b, cplx c, cplx d)
    : a_(a), b_(b), c_(c), d_(d) {
    double scale = max_coef(a_, b_, c_, d_);
    if (scale == 0.0) throw DegenerateMap("all coefficients vanish");
    normalize();
    if (std::abs(det()) < tol::degenerate_det)
        throw DegenerateMap("ad - bc vanishes");
    if (!self_map_certificate(a_, b_, c_, d_))
        throw NotSelfMap("map does not send the disk into itself");
}

void LinearFractionalMap::normalize() {
    double scale = max_coef(a_, b_, c_, d_);
    // already-normalized tuples must be exact fixed points, or print/parse
    // round trips drift by an ulp; hypot of a unit complex coefficient is
    // only 1 to within rounding
    if (std::abs(scale - 1.0) <= 32 * std::numeric_limits<double>::epsilon()) return;
    a_ /= scale;
    b_ /= scale;
    c_ /= scale;
    d_ /= scale;
}

LinearFractionalMap LinearFractionalMap::identity() {
    return LinearFractionalMap(1.0, 0.0, 0.0, 1.0, Unchecked{});
}

LinearFractionalMap LinearFractionalMap::rotation(cplx lambda) {
    if (!unimodular(lambda, 1e-12))
        throw InvalidArgument("rotation multiplier must be unimodular");
    lambda /= std::abs(lambda);
    return LinearFractionalMap(lambda, 0.0, 0.0, 1.0, Unchecked{});
}

LinearFractionalMap LinearFractionalMap::automorphism(cplx lambda, cplx a) {
    if (!unimodular(lambda, 1e-12))
        throw InvalidArgument("automorphism multiplier must be unimodular");
    if (std::abs(a) >= 1.0)
        throw InvalidArgument("automorphism center must lie in the open disk");
    lambda /= std::abs(lambda);
    return LinearFractionalMap(-lambda, lambda * a, -std::conj(a), 1.0, Unchecked{});
}

LinearFractionalMap LinearFractionalMap::parabolic(double b, cplx zeta) {
    if (b == 0.0) throw InvalidArgument("parabolic translation needs b != 0");
    if (!unimodular(zeta, 1e-12))
        throw InvalidArgument("parabolic fixed point must be unimodular");
    zeta /= std::abs(zeta);
    // omega^{-1} . (s + ib) . omega, omega(z) = (1+z)/(1-z)
    const cplx ib(0.0, b);
    LinearFractionalMap base(2.0 - ib, ib, -ib, 2.0 + ib, Unchecked{});
    if (std::abs(zeta - 1.0) <= tol::identity_proportionality) return base;
    // rotation_conjugate moves the fixed point 1 to conj(a) * 1
    return rotation_conjugate(base, std::conj(zeta));
}

LinearFractionalMap LinearFractionalMap::elliptic(cplx w, cplx mu) {
    if (!unimodular(mu, 1e-12))
        throw InvalidArgument("elliptic multiplier must be unimodular");
    if (std::abs(w) >= 1.0)
        throw InvalidArgument("elliptic fixed point must lie in the open disk");
    // T_w . (mu z) . T_w with the involution T_w(z) = (w - z)/(1 - conj(w) z)
    auto T = automorphism(1.0, w);
    return lf_compose(lf_compose(T, rotation(mu)), T);
}

std::optional<LinearFractionalMap> LinearFractionalMap::try_self_map(cplx a, cplx b,
                                                                     cplx c, cplx d) {
    double scale = max_coef(a, b, c, d);
    if (scale == 0.0) return std::nullopt;
    LinearFractionalMap m(a, b, c, d, Unchecked{});
    if (std::abs(m.det()) < tol::degenerate_det) return std::nullopt;
    if (!self_map_certificate(m.a_, m.b_, m.c_, m.d_)) return std::nullopt;
    return m;
}

cplx LinearFractionalMap::operator()(cplx z) const {
    cplx den = c_ * z + d_;
    if (std::abs(den) < tol::pole_guard)
        throw PoleAtPoint("evaluation at the pole of the map");
    return (a_ * z + b_) / den;
}

cplx LinearFractionalMap::derivative_at(cplx z) const {
    cplx den = c_ * z + d_;
    if (std::abs(den) < tol::pole_guard)
        throw PoleAtPoint("derivative at the pole of the map");
    return det() / (den * den);
}

bool LinearFractionalMap::is_identity() const {
    const double t = tol::identity_proportionality;
    return std::abs(b_) <= t && std::abs(c_) <= t && std::abs(a_ - d_) <= t;
}

std::optional<LinearFractionalMap> LinearFractionalMap::inverse() const {
    return try_self_map(d_, -b_, -c_, a_);
}

LinearFractionalMap lf_compose(const LinearFractionalMap& f,
                               const LinearFractionalMap& g) {
    cplx a = f.a() * g.a() + f.b() * g.c();
    cplx b = f.a() * g.b() + f.b() * g.d();
    cplx c = f.c() * g.a() + f.d() * g.c();
    cplx d = f.c() * g.b() + f.d() * g.d();
    double scale = std::max(std::max(std::abs(a), std::abs(b)),
                            std::max(std::abs(c), std::abs(d)));
    if (scale == 0.0 || std::abs(a * d - b * c) / (scale * scale) < tol::degenerate_det)
        throw DegenerateComposition("composition is numerically degenerate");
    return LinearFractionalMap(a, b, c, d);
}

std::vector<FixedPoint> fixed_points(const LinearFractionalMap& map) {
    if (map.is_identity()) throw IdentityMap("every point is fixed");
    // c z^2 + (d - a) z - b = 0 on normalized coefficients
    const cplx A = map.c(), B = map.d() - map.a(), C = -map.b();
    std::vector<std::pair<cplx, int>> raw;  // (root, multiplicity)
    if (std::abs(A) <= tol::degenerate_det) {
        raw.emplace_back(-C / B, 1);  // B != 0, otherwise the map were the identity
    } else {
        cplx sq = std::sqrt(B * B - 4.0 * A * C);
        // sign choice that avoids cancellation in -B -/+ sq
        cplx q = (std::real(std::conj(B) * sq) >= 0.0) ? -(B + sq) / 2.0
                                                       : -(B - sq) / 2.0;
        cplx r1, r2;
        if (std::abs(q) > tol::degenerate_det) {
            r1 = q / A;
            r2 = C / q;
        } else {  // B ~ 0 and C ~ 0: double root at the vertex
            r1 = r2 = -B / (2.0 * A);
        }
        if (std::abs(r1 - r2) < tol::root_merge)
            raw.emplace_back(-B / (2.0 * A), 2);
        else {
            raw.emplace_back(r1, 1);
            raw.emplace_back(r2, 1);
        }
    }
    std::vector<FixedPoint> result;
    for (auto [w, mult] : raw) {
        double r = std::abs(w);
        if (r > 1.0 + tol::boundary_membership) continue;
        bool boundary = std::abs(r - 1.0) < tol::boundary_membership;
        if (boundary) w /= r;
        result.push_back({w, mult, boundary});
    }
    std::sort(result.begin(), result.end(), [](const FixedPoint& x, const FixedPoint& y) {
        if (std::real(x.point) != std::real(y.point))
            return std::real(x.point) < std::real(y.point);
        return std::imag(x.point) < std::imag(y.point);
    });
    return result;
}

bool is_automorphism(const LinearFractionalMap& map) {
    return map.inverse().has_value();
}

DiskAutomorphism classify_automorphism(const LinearFractionalMap& map) {
    if (!is_automorphism(map))
        throw NotAutomorphism("inverse fails the self-map certificate");
    if (map.is_identity()) throw IdentityMap("identity has no conjugacy class");
    DiskAutomorphism aut;
    aut.lambda = -map.a() / map.d();
    aut.a = -map.b() / map.a();
    aut.lambda /= std::abs(aut.lambda);
    // tr^2 / det separates the classes without the sqrt noise amplification a
    // root-merge test suffers: 4 parabolic, < 4 elliptic, > 4 hyperbolic
    cplx tr = map.a() + map.d();
    double kappa = std::real(tr * tr / map.det());
    if (std::abs(kappa - 4.0) <= 1e-10) {
        aut.cls = AutomorphismClass::Parabolic;
        cplx w = (map.a() - map.d()) / (2.0 * map.c());
        aut.fixed = {{w / std::abs(w), 2, true}};
    } else {
        aut.cls = (kappa < 4.0) ? AutomorphismClass::Elliptic
                                : AutomorphismClass::Hyperbolic;
        aut.fixed = fixed_points(map);
        if (aut.cls == AutomorphismClass::Elliptic) {
            // keep the interior fixed point only; its mirror 1/conj(w) is outside
            std::erase_if(aut.fixed, [](const FixedPoint& fp) { return fp.on_boundary; });
        }
    }
    return aut;
}

DenjoyWolffData denjoy_wolff(const LinearFractionalMap& map) {
    if (auto inv = map.inverse()) {
        auto aut = classify_automorphism(map);  // throws IdentityMap for the identity
        if (aut.cls == AutomorphismClass::Elliptic)
            throw EllipticAutomorphism("elliptic automorphisms have no attracting point");
        if (aut.cls == AutomorphismClass::Parabolic)
            return {aut.fixed.front().point, 1.0, false};
        const FixedPoint* best = nullptr;
        double best_der = 0.0;
        for (const auto& fp : aut.fixed) {
            double der = std::real(map.derivative_at(fp.point));
            if (!best || der < best_der) {
                best = &fp;
                best_der = der;
            }
        }
        return {best->point, std::min(best_der, 1.0), false};
    }
    auto fixed = fixed_points(map);  // throws IdentityMap for the identity
    for (const auto& fp : fixed) {
        if (fp.on_boundary) continue;
        double der = std::abs(map.derivative_at(fp.point));
        if (der < 1.0 - 1e-10) return {fp.point, der, true};
        throw EllipticAutomorphism("interior fixed point with |phi'| = 1");
    }
    // boundary candidates: the attracting one has angular derivative <= 1
    const FixedPoint* best = nullptr;
    double best_der = 0.0;
    for (const auto& fp : fixed) {
        double der = std::real(map.derivative_at(fp.point));
        if (der <= 1.0 + tol::boundary_membership && (!best || der < best_der)) {
            best = &fp;
            best_der = der;
        }
    }
    if (!best) throw Error("no attracting fixed point in the closed disk");
    return {best->point, std::min(best_der, 1.0), false};
}

std::vector<cplx> orbit(const LinearFractionalMap& map, cplx z, int M) {
    if (std::abs(z) >= 1.0) throw OutsideDisk("orbit start must lie in the open disk");
    std::vector<cplx> pts;
    pts.reserve(static_cast<std::size_t>(M) + 1);
    pts.push_back(z);
    // P = M^m, renormalized every step so entries stay O(1)
    std::array<cplx, 4> P{1.0, 0.0, 0.0, 1.0};
    const std::array<cplx, 4> A{map.a(), map.b(), map.c(), map.d()};
    for (int m = 1; m <= M; ++m) {
        std::array<cplx, 4> Q{A[0] * P[0] + A[1] * P[2], A[0] * P[1] + A[1] * P[3],
                              A[2] * P[0] + A[3] * P[2], A[2] * P[1] + A[3] * P[3]};
        double scale = std::max(std::max(std::abs(Q[0]), std::abs(Q[1])),
                                std::max(std::abs(Q[2]), std::abs(Q[3])));
        for (auto& q : Q) q /= scale;
        P = Q;
        cplx w = (P[0] * z + P[1]) / (P[2] * z + P[3]);
        // orbits may round onto the boundary while converging to a boundary
        // Denjoy-Wolff point; only a genuine exit is an error
        if (std::abs(w) > 1.0 + tol::boundary_membership)
            throw EscapedDisk("iterate left the closed disk");
        pts.push_back(w);
    }
    return pts;
}

cplx iterate(const LinearFractionalMap& map, cplx z, int m) {
    return orbit(map, z, m).back();
}

LinearFractionalMap rotation_conjugate(const LinearFractionalMap& map, cplx a) {
    if (!unimodular(a, 1e-12))
        throw InvalidArgument("rotation_conjugate needs |a| = 1");
    a /= std::abs(a);
    return LinearFractionalMap(map.a(), std::conj(a) * map.b(), a * map.c(), map.d());
}

HalfPlaneTranslation half_plane_conjugate(const LinearFractionalMap& map) {
    DiskAutomorphism aut = classify_automorphism(map);
    if (aut.cls != AutomorphismClass::Parabolic)
        throw NotParabolic("half-plane conjugation needs a parabolic automorphism");
    cplx zeta = aut.fixed.front().point;
    LinearFractionalMap psi = (std::abs(zeta - 1.0) <= tol::boundary_membership)
                                  ? map
                                  : rotation_conjugate(map, zeta);
    // sigma = omega . psi . omega^{-1}, omega(z) = (1+z)/(1-z)
    const cplx w00 = 1.0, w01 = 1.0, w10 = -1.0, w11 = 1.0;    // omega
    const cplx v00 = 1.0, v01 = -1.0, v10 = 1.0, v11 = 1.0;    // omega^{-1}
    cplx p00 = psi.a() * v00 + psi.b() * v10, p01 = psi.a() * v01 + psi.b() * v11;
    cplx p10 = psi.c() * v00 + psi.d() * v10, p11 = psi.c() * v01 + psi.d() * v11;
    cplx s00 = w00 * p00 + w01 * p10, s01 = w00 * p01 + w01 * p11;
    cplx s10 = w10 * p00 + w11 * p10, s11 = w10 * p01 + w11 * p11;
    if (std::abs(s00) < tol::degenerate_det)
        throw NotParabolic("conjugated matrix is not a translation");
    cplx shift = s01 / s00;
    if (std::abs(s10 / s00) > 1e-10 || std::abs(s11 / s00 - 1.0) > 1e-10 ||
        std::abs(std::real(shift)) > 1e-10)
        throw NotParabolic("conjugated matrix is not a translation");
    double b = std::imag(shift);
    // verify sigma(s) = s + ib at three half-plane points
    const std::array<cplx, 3> probes{cplx(1.0, 0.0), cplx(2.0, 1.0), cplx(0.5, -3.0)};
    for (cplx s : probes) {
        cplx img = (s00 * s + s01) / (s10 * s + s11);
        if (std::abs(img - (s + cplx(0.0, b))) > tol::conjugacy_check * (1.0 + std::abs(s)))
            throw NotParabolic("translation verification failed");
    }
    return {b};
}

}  // namespace cphi
