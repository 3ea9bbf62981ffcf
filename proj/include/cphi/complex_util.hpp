/*
 * complex_util.hpp: small helpers on the unit disk.
 *
 * Pseudo-hyperbolic distance, boundary sup-norm estimation (uniform samples
 * plus one golden-section refinement around the running maximum), and the
 * seeded point generators used by the sampling routines.
 */
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace cphi {

using cplx = std::complex<double>;

inline bool unimodular(cplx c, double tol = 1e-9) {
    return std::abs(std::abs(c) - 1.0) <= tol;
}

// d(z,w) = |z-w| / |1 - conj(w) z|, the Moebius-invariant metric on the disk
inline double pseudo_hyperbolic(cplx z, cplx w) {
    return std::abs(z - w) / std::abs(1.0 - std::conj(w) * z);
}

struct CircleMax {
    double value = 0.0;
    cplx point;  // argmax location on the sampled circle
};

// max of |f| over |z| = r: `samples` uniform angles, then one golden-section
// pass on the bracketing arc of the best sample.
inline CircleMax sup_on_circle(const std::function<cplx(cplx)>& f, double r,
                               int samples = 4096) {
    const double two_pi = 2.0 * std::numbers::pi;
    auto mod_at = [&](double t) { return std::abs(f(std::polar(r, t))); };
    double best_t = 0.0, best = -1.0;
    for (int k = 0; k < samples; ++k) {
        double t = two_pi * k / samples;
        double m = mod_at(t);
        if (m > best) { best = m; best_t = t; }
    }
    const double step = two_pi / samples;
    double lo = best_t - step, hi = best_t + step;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = mod_at(x1), f2 = mod_at(x2);
    for (int it = 0; it < 48; ++it) {
        if (f1 < f2) {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + gr * (hi - lo); f2 = mod_at(x2);
        } else {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - gr * (hi - lo); f1 = mod_at(x1);
        }
    }
    double t_ref = (f1 > f2) ? x1 : x2;
    double m_ref = std::max(f1, f2);
    if (m_ref < best) { m_ref = best; t_ref = best_t; }
    return {m_ref, std::polar(r, t_ref)};
}

// deterministic disk points with moduli in [rmin, rmax]
inline std::vector<cplx> seeded_disk_points(std::size_t n, unsigned long long seed,
                                            double rmin = 0.1, double rmax = 0.95) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<cplx> pts;
    pts.reserve(n);
    while (pts.size() < n) {
        // sqrt for area-uniform radius, then clamp into the requested annulus
        double r = rmin + (rmax - rmin) * std::sqrt(unit(rng));
        double t = 2.0 * std::numbers::pi * unit(rng);
        pts.push_back(std::polar(r, t));
    }
    return pts;
}

}  // namespace cphi
