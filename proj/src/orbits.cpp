/*
 * orbits.cpp: parabolic orbit decay tables, summability, and the refutation
 * of reciprocal decay.
 *
 * The half-plane model makes the decay exact: with omega(z) = (1+z)/(1-z)
 * and the start point at u + iv, iterate m sits at u + i(v + mb), so
 * 1 - |phi_m(z)|^2 = 4u / ((mb + v)^2 + (1 + u)^2). Everything here is a
 * consequence: quadratic decay (slope -2), integral-comparison tail bounds,
 * and the invariance of the orbit Blaschke subspace.
 */
#include "cphi/orbits.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "cphi/errors.hpp"
#include "cphi/series.hpp"
#include "cphi/tolerances.hpp"

namespace cphi {
namespace {

double sq(double x) { return x * x; }

// least-squares slope of log(direct) against log(m) over rows [first, last]
double loglog_slope(const std::vector<OrbitRow>& rows, int first_m) {
    double sx = 0.0, sy = 0.0;
    int n = 0;
    for (const OrbitRow& r : rows) {
        if (r.m < first_m) continue;
        sx += std::log(static_cast<double>(r.m));
        sy += std::log(r.direct);
        ++n;
    }
    const double mx = sx / n, my = sy / n;
    double num = 0.0, den = 0.0;
    for (const OrbitRow& r : rows) {
        if (r.m < first_m) continue;
        const double dx = std::log(static_cast<double>(r.m)) - mx;
        num += dx * (std::log(r.direct) - my);
        den += dx * dx;
    }
    return num / den;
}

}  // namespace

OrbitReport parabolic_orbit_report(const LinearFractionalMap& phi, cplx z, int M) {
    if (M < 10) throw InvalidArgument("orbit table needs at least 10 rows");
    if (std::abs(z) >= 1.0) throw OutsideDisk("orbit start must lie in the open disk");
    const HalfPlaneTranslation tr = half_plane_conjugate(phi);

    OrbitReport rep;
    rep.z = z;
    rep.b = tr.b;
    rep.fixed_point = 1.0;
    for (const FixedPoint& fp : classify_automorphism(phi).fixed)
        if (fp.on_boundary) rep.fixed_point = fp.point;
    const cplx rotated = std::conj(rep.fixed_point) * z;
    const cplx s = (1.0 + rotated) / (1.0 - rotated);
    rep.u = s.real();
    rep.v = s.imag();

    const std::vector<cplx> pts = orbit(phi, z, M);
    rep.rows.reserve(static_cast<size_t>(M));
    double running = 0.0;
    for (int m = 1; m <= M; ++m) {
        OrbitRow row;
        row.m = m;
        row.point = pts[static_cast<size_t>(m)];
        row.direct = 1.0 - std::norm(row.point);
        row.formula = 4.0 * rep.u / (sq(m * rep.b + rep.v) + sq(1.0 + rep.u));
        // 1 - |p| = (1 - |p|^2)/(1 + |p|) avoids cancellation near the boundary
        running += row.direct / (1.0 + std::abs(row.point));
        row.partial_sum = running;
        rep.rows.push_back(row);
    }
    rep.fit_slope = loglog_slope(rep.rows, M / 2);
    return rep;
}

double parabolic_tail_bound(double u, double v, double b, int M) {
    const double inf = std::numeric_limits<double>::infinity();
    if (b == 0.0) return inf;
    const double shift = std::abs(v / b);
    if (!(static_cast<double>(M) > 2.0 * shift)) return inf;
    return (4.0 * u / (b * b)) / (static_cast<double>(M) - shift);
}

SummabilityResult blaschke_summability(const std::vector<double>& values,
                                       const std::function<double(int)>& tail_bound) {
    SummabilityResult res;
    for (double t : values) res.sum += t;
    res.tail = tail_bound ? tail_bound(static_cast<int>(values.size()))
                          : std::numeric_limits<double>::infinity();
    res.certified = std::isfinite(res.tail);
    return res;
}

DecayRefutation refute_reciprocal_decay(const LinearFractionalMap& phi, cplx z, int M) {
    DecayRefutation out;
    out.orbit = parabolic_orbit_report(phi, z, M);
    out.matched_constant = out.orbit.rows.front().direct;
    for (const OrbitRow& row : out.orbit.rows) {
        out.decay_sum += row.direct;
        out.reciprocal_model_sum += out.matched_constant / row.m;
    }

    // zeros p_0..p_19 form the stored prefix; p_20 witnesses that the image
    // of the last stored zero still lies in the zero set
    const int factors = 20;
    const std::vector<cplx> pts = orbit(phi, z, factors);
    out.forward_invariant = true;
    for (int m = 0; m < factors; ++m)
        if (std::abs(phi(pts[static_cast<size_t>(m)]) - pts[static_cast<size_t>(m + 1)]) >
            tol::forward_invariance)
            out.forward_invariant = false;

    const std::vector<cplx> stored(pts.begin(), pts.begin() + factors);
    const BlaschkeSequence seq =
        orbit_blaschke(stored, parabolic_tail_bound(out.orbit.u, out.orbit.v, out.orbit.b,
                                                    factors - 1));

    // composition moves each zero one step along the orbit, so multiplicity
    // transport holds at every stored zero
    out.transport_ok = out.forward_invariant;
    for (const BlaschkeZero& zero : seq.zeros) {
        if (!out.transport_ok) break;
        const cplx image = phi(zero.point);
        int got = 0;
        for (const BlaschkeZero& t : seq.zeros)
            if (std::abs(t.point - image) <= tol::zero_coincidence) got += t.multiplicity;
        if (std::abs(image - pts[static_cast<size_t>(factors)]) <= tol::zero_coincidence)
            got += 1;
        if (got < zero.multiplicity) out.transport_ok = false;
    }

    const std::optional<LinearFractionalMap> inv = phi.inverse();
    for (int k : {5, 10, 20}) {
        const InnerFunction trunc = truncate_sequence(seq, k);
        const ResidualReport rr = invariance_residual(trunc, phi, tol::oracle_N);
        out.residual_trend.push_back({k, rr.rho, rr.decisive});

        // best unimodular-constant fit of trunc.phi against b_w trunc
        const InnerFunction shifted = inner_product(blaschke_factor((*inv)(z)), trunc);
        const std::vector<cplx> lhs = taylor_of_composed_inner(trunc, phi, tol::oracle_N).coeffs;
        const std::vector<cplx> rhs = taylor_of_inner(shifted, tol::oracle_N).coeffs;
        cplx cross = 0.0;
        double rhs_mass = 0.0;
        for (size_t i = 0; i < rhs.size(); ++i) {
            cross += std::conj(rhs[i]) * lhs[i];
            rhs_mass += std::norm(rhs[i]);
        }
        const cplx c = cross / rhs_mass;
        double dev = 0.0;
        for (size_t i = 0; i < rhs.size(); ++i) dev += std::norm(lhs[i] - c * rhs[i]);
        out.shift_identity_trend.push_back({k, std::sqrt(dev / rhs_mass), true});
    }
    return out;
}

}  // namespace cphi
