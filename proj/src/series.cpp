/*
 * series.cpp: truncated power series arithmetic and finite sections.
 *
 * Exactness discipline: every constructor here produces exact prefix
 * coefficients (up to floating rounding), and the two lossy operations
 * account for their loss explicitly. series_mul of exact prefixes is exact
 * because dropped cross terms only feed degrees >= N. series_compose with an
 * exact phi-prefix is exact on the prefix because phi - phi_hat has
 * valuation >= N; the only contamination is the composed image of the theta
 * tail, bounded in l2 by the Littlewood constant times the tail norm.
 */
#include "cphi/series.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace cphi {

namespace {

using VecC = std::vector<cplx>;

// truncated Cauchy product of coefficient prefixes
VecC conv_trunc(const VecC& f, const VecC& g, int n) {
    VecC h(static_cast<size_t>(n), cplx(0.0));
    const int nf = std::min<int>(static_cast<int>(f.size()), n);
    for (int i = 0; i < nf; ++i) {
        if (f[static_cast<size_t>(i)] == cplx(0.0)) continue;
        const int ng = std::min<int>(static_cast<int>(g.size()), n - i);
        for (int j = 0; j < ng; ++j)
            h[static_cast<size_t>(i + j)] += f[static_cast<size_t>(i)] * g[static_cast<size_t>(j)];
    }
    return h;
}

double l2_of(const VecC& v) {
    double s = 0.0;
    for (const cplx& c : v) s += std::norm(c);
    return std::sqrt(s);
}

// envelope for the product when both factors carry one: sum_{i+j=n} C r^i D s^j
std::optional<GeometricTail> mul_tail(const std::optional<GeometricTail>& f,
                                      const std::optional<GeometricTail>& g) {
    if (!f || !g) return std::nullopt;
    const double C = f->constant * g->constant;
    double r = f->radius, s = g->radius;
    if (r > s) std::swap(r, s);
    if (s <= 0.0) return GeometricTail{C, 0.0};
    if (s - r > 1e-12 * s) {
        // sum <= C s^n / (1 - r/s)
        return GeometricTail{C / (1.0 - r / s), s};
    }
    // equal radii: sum = C (n+1) s^n; absorb the polynomial factor into a
    // slightly larger radius tau and the worst-case ratio (n+1)(s/tau)^n
    const double tau = 0.5 * (s + 1.0);
    if (tau <= s) return GeometricTail{C, 1.0};
    const double q = s / tau;
    double worst = 1.0;
    const double n_star = q < 1.0 ? -1.0 / std::log(q) : 0.0;
    for (int n : {static_cast<int>(n_star), static_cast<int>(n_star) + 1, 0, 1})
        if (n >= 0) worst = std::max(worst, (n + 1) * std::pow(q, n));
    return GeometricTail{C * worst, tau};
}

double geo_l2_tail(const GeometricTail& t, int n) {
    if (t.radius <= 0.0) return 0.0;
    if (t.radius >= 1.0) return std::numeric_limits<double>::infinity();
    return t.constant * std::pow(t.radius, n) / std::sqrt(1.0 - t.radius * t.radius);
}

double littlewood_constant(cplx phi0) {
    return std::sqrt((1.0 + std::abs(phi0)) / (1.0 - std::abs(phi0)));
}

// coefficient prefix of the canonical factor (|a|/a)(a - z)/(1 - conj(a) z),
// the same normalization canonical_factor uses for pointwise evaluation
VecC factor_coeffs(cplx a, int n) {
    VecC c(static_cast<size_t>(n), cplx(0.0));
    const double m = std::abs(a);
    if (m <= tol::zero_merge) {
        if (n > 1) c[1] = 1.0;
        return c;
    }
    // (|a|/a)(a - z)/(1 - conj(a) z) = |a| - (|a|/a)(1 - |a|^2) sum conj(a)^{n-1} z^n
    const cplx unit = std::conj(a) / m;
    c[0] = m;
    cplx pw = 1.0;
    for (int k = 1; k < n; ++k) {
        c[static_cast<size_t>(k)] = -unit * (1.0 - m * m) * pw;
        pw *= std::conj(a);
    }
    return c;
}

// exp of a polynomial prefix via the derivative recurrence n S_n = sum j h_j S_{n-j}
VecC exp_series(const VecC& h, int n) {
    VecC s(static_cast<size_t>(n), cplx(0.0));
    s[0] = std::exp(h[0]);
    for (int k = 1; k < n; ++k) {
        cplx acc = 0.0;
        const int jmax = std::min<int>(k, static_cast<int>(h.size()) - 1);
        for (int j = 1; j <= jmax; ++j)
            acc += static_cast<double>(j) * h[static_cast<size_t>(j)] * s[static_cast<size_t>(k - j)];
        s[static_cast<size_t>(k)] = acc / static_cast<double>(k);
    }
    return s;
}

}  // namespace

cplx PowerSeries::eval(cplx z) const {
    cplx acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

double PowerSeries::l2_norm() const { return l2_of(coeffs); }

double PowerSeries::tail_at(double r) const {
    if (!tail) return std::numeric_limits<double>::infinity();
    if (tail->radius <= 0.0) return 0.0;
    const double q = tail->radius * r;
    if (q >= 1.0) return std::numeric_limits<double>::infinity();
    return tail->constant * std::pow(q, N()) / (1.0 - q);
}

PowerSeries series_mul(const PowerSeries& f, const PowerSeries& g) {
    if (f.coeffs.empty() || g.coeffs.empty())
        throw InvalidArgument("series product needs nonempty prefixes");
    const int n = std::min(f.N(), g.N());
    PowerSeries h;
    h.coeffs = conv_trunc(f.coeffs, g.coeffs, n);
    h.tail = mul_tail(f.tail, g.tail);
    if (h.tail && h.tail->radius < 1.0) h.l2_tail = geo_l2_tail(*h.tail, n);
    if (f.sup_bound && g.sup_bound) h.sup_bound = *f.sup_bound * *g.sup_bound;
    // || (f - fhat) g || <= sup|g| err_f and symmetrically; exact inputs stay exact
    if (f.prefix_err == 0.0 && g.prefix_err == 0.0) {
        h.prefix_err = 0.0;
    } else if (f.sup_bound && g.sup_bound) {
        h.prefix_err = f.prefix_err * *g.sup_bound + g.prefix_err * *f.sup_bound;
    } else {
        h.prefix_err = std::numeric_limits<double>::infinity();
    }
    return h;
}

PowerSeries series_compose(const PowerSeries& f, const PowerSeries& phi) {
    if (f.coeffs.empty() || phi.coeffs.empty())
        throw InvalidArgument("series composition needs nonempty prefixes");
    const double p0 = std::abs(phi.coeffs[0]);
    if (p0 >= 1.0)
        throw CompositionDiverges("composition center |phi(0)| = " + std::to_string(p0) +
                                  " leaves the open disk");
    const int n = std::min(f.N(), phi.N());
    // Horner in the truncated algebra: acc <- acc * phi + f_k
    VecC acc(1, f.coeffs.back());
    for (int k = f.N() - 2; k >= 0; --k) {
        acc = conv_trunc(acc, phi.coeffs, n);
        if (acc.empty()) acc.assign(1, cplx(0.0));
        acc[0] += f.coeffs[static_cast<size_t>(k)];
    }
    acc.resize(static_cast<size_t>(n), cplx(0.0));

    PowerSeries h;
    h.coeffs = std::move(acc);
    h.sup_bound = f.sup_bound;
    // image of the dropped f-tail: ||(f - fhat) . phi|| <= L ||f - fhat||
    const double L = littlewood_constant(phi.coeffs[0]);
    double f_tail = f.l2_tail ? *f.l2_tail
                              : (f.tail ? geo_l2_tail(*f.tail, f.N())
                                        : std::numeric_limits<double>::infinity());
    double err = L * (f_tail + f.prefix_err);
    if (phi.prefix_err > 0.0) {
        // inexact phi-prefix breaks the valuation argument; fall back to the
        // Lipschitz bound max|f'| * max|delta phi| with l1 <= sqrt(N) l2
        double deriv_l1 = 0.0;
        for (int k = 1; k < f.N(); ++k)
            deriv_l1 += k * std::abs(f.coeffs[static_cast<size_t>(k)]);
        err += deriv_l1 * std::sqrt(static_cast<double>(phi.N())) * phi.prefix_err;
    }
    h.prefix_err = err;
    if (h.sup_bound) {
        // crude subtractive tail, good to the double rounding floor only
        const double head = l2_of(h.coeffs);
        const double s = *h.sup_bound;
        h.l2_tail = std::sqrt(std::max(0.0, s * s - head * head)) + 2.0 * err + 1e-7;
    }
    return h;
}

namespace {

// raw expansion of (az + b)/(cz + d) without self-map validation; the pole
// must stay outside the open disk (it can sit on the circle, where the
// coefficients are bounded but no longer summable)
VecC lf_prefix(cplx a, cplx b, cplx c, cplx d, int n) {
    VecC out(static_cast<size_t>(n), cplx(0.0));
    out[0] = b / d;
    if (std::abs(c) == 0.0) {
        if (n > 1) out[1] = a / d;
        return out;
    }
    if (std::abs(d / c) < 1.0 - 1e-12)
        throw PoleTooClose("pullback pole inside the disk");
    const cplx t = -c / d;
    const cplx K = (a * d - b * c) / (d * d);
    cplx pw = 1.0;
    for (int k = 1; k < n; ++k) {
        out[static_cast<size_t>(k)] = K * pw;
        pw *= t;
    }
    return out;
}

// expansion of theta(phi(z)) to order n from the factored form
VecC composed_prefix(const InnerFunction& theta, const LinearFractionalMap& phi, int n) {
    const cplx a = phi.a(), b = phi.b(), c = phi.c(), d = phi.d();
    VecC acc(static_cast<size_t>(n), cplx(0.0));
    acc[0] = theta.total_constant();
    int shift = 0;
    std::vector<BlaschkeZero> zeros;
    if (theta.blaschke) {
        if (const BlaschkeSequence* seq = theta.sequence_part()) {
            zeros = seq->zeros;
        } else {
            const FiniteBlaschkeProduct* fin = theta.finite_part();
            shift = fin->m;
            zeros = fin->zeros;
        }
    }
    for (const BlaschkeZero& z : zeros) {
        // b_w(phi(z)) with b_w(u) = (|w|/w)(w - u)/(1 - conj(w) u); the 2x2
        // matrix of b_w is ((-|w|/w, |w|), (-conj(w), 1)), composed by product
        const cplx w = z.point;
        const double mw = std::abs(w);
        VecC fc;
        if (mw <= tol::zero_merge) {
            fc = lf_prefix(a, b, c, d, n);
        } else {
            const cplx s = mw / w;
            fc = lf_prefix(-s * a + mw * c, -s * b + mw * d, -std::conj(w) * a + c,
                           -std::conj(w) * b + d, n);
        }
        for (int k = 0; k < z.multiplicity; ++k) acc = conv_trunc(acc, fc, n);
    }
    if (theta.singular) {
        VecC h(static_cast<size_t>(n), cplx(0.0));
        for (const SingularAtom& atom : theta.singular->atoms) {
            // (zeta + phi)/(zeta - phi) = ((zeta c + a) z + zeta d + b) /
            //                             ((zeta c - a) z + zeta d - b)
            const cplx zc = atom.point;
            const VecC mu = lf_prefix(zc * c + a, zc * d + b, zc * c - a, zc * d - b, n);
            for (int k = 0; k < n; ++k) h[static_cast<size_t>(k)] -= atom.weight * mu[static_cast<size_t>(k)];
        }
        acc = conv_trunc(acc, exp_series(h, n), n);
    }
    if (shift > 0) {
        const VecC phis = lf_prefix(a, b, c, d, n);
        for (int k = 0; k < shift; ++k) acc = conv_trunc(acc, phis, n);
    }
    return acc;
}

}  // namespace

double measured_tail(const VecC& extended, int n, double norm_cap);

PowerSeries taylor_of_composed_inner(const InnerFunction& theta, const LinearFractionalMap& phi,
                                     int n) {
    if (n < 2) throw InvalidArgument("composed expansion needs at least two coefficients");
    double seq_err = 0.0;
    if (const BlaschkeSequence* seq = theta.sequence_part()) {
        if (!seq->tail_beyond)
            throw TailBoundUnavailable("sequence expansion needs a tail bound");
        // omitted factors compose too: ||(B - B_prefix) . phi|| <= L sqrt(2 tail)
        seq_err = littlewood_constant(phi(cplx(0.0))) * std::sqrt(2.0 * *seq->tail_beyond);
    }
    const int n_ext = std::min(std::max(4 * n, n + 192), n + 4096);
    const VecC extended = composed_prefix(theta, phi, n_ext);

    PowerSeries s;
    s.coeffs.assign(extended.begin(), extended.begin() + n);
    s.sup_bound = 1.0;
    s.prefix_err = seq_err;
    s.l2_tail = measured_tail(extended, n, 1.0);
    return s;
}

PowerSeries taylor_of_map(const LinearFractionalMap& phi, int n) {
    if (n < 2) throw InvalidArgument("map expansion needs at least two coefficients");
    const cplx a = phi.a(), b = phi.b(), c = phi.c(), d = phi.d();
    PowerSeries s;
    s.coeffs.assign(static_cast<size_t>(n), cplx(0.0));
    s.sup_bound = 1.0;
    s.coeffs[0] = b / d;
    if (std::abs(c) == 0.0) {
        s.coeffs[1] = a / d;
        s.tail = GeometricTail{0.0, 0.0};
        s.l2_tail = 0.0;
        return s;
    }
    if (std::abs(d / c) <= 1.0)
        throw PoleTooClose("pole at distance " + std::to_string(std::abs(d / c)) +
                           " from the origin");
    const cplx t = -c / d;
    const cplx K = phi.det() / (d * d);
    cplx pw = 1.0;
    for (int k = 1; k < n; ++k) {
        s.coeffs[static_cast<size_t>(k)] = K * pw;
        pw *= t;
    }
    const double rho = std::abs(t);
    const double C = std::max(std::abs(s.coeffs[0]), std::abs(K) / rho);
    s.tail = GeometricTail{C, rho};
    s.l2_tail = geo_l2_tail(*s.tail, n);
    return s;
}

// expansion of the representable parts to an arbitrary order; the sequence
// tail (if any) is accounted separately by the caller
VecC inner_prefix(const InnerFunction& theta, int n) {
    VecC acc(static_cast<size_t>(n), cplx(0.0));
    acc[0] = theta.total_constant();
    int shift = 0;
    std::vector<BlaschkeZero> zeros;
    if (theta.blaschke) {
        if (const BlaschkeSequence* seq = theta.sequence_part()) {
            zeros = seq->zeros;
        } else {
            const FiniteBlaschkeProduct* fin = theta.finite_part();
            shift = fin->m;
            zeros = fin->zeros;
        }
    }
    for (const BlaschkeZero& z : zeros) {
        const VecC fc = factor_coeffs(z.point, n);
        for (int k = 0; k < z.multiplicity; ++k) acc = conv_trunc(acc, fc, n);
    }
    if (theta.singular) {
        // exponent h(z) = -sum alpha (1 + 2 sum_n (z/zeta)^n)
        VecC h(static_cast<size_t>(n), cplx(0.0));
        for (const SingularAtom& atom : theta.singular->atoms) {
            h[0] -= atom.weight;
            cplx inv = 1.0 / atom.point, pw = inv;
            for (int k = 1; k < n; ++k) {
                h[static_cast<size_t>(k)] -= 2.0 * atom.weight * pw;
                pw *= inv;
            }
        }
        acc = conv_trunc(acc, exp_series(h, n), n);
    }
    if (shift > 0) {
        acc.insert(acc.begin(), static_cast<size_t>(shift), cplx(0.0));
        acc.resize(static_cast<size_t>(n), cplx(0.0));
    }
    return acc;
}

// l2 mass of coefficients n .. n_ext-1 measured directly, plus the mass
// beyond the window. The beyond part uses the valid cap ||f||^2 <= norm_cap
// (floor ~1e-16 in the subtraction, irrelevant for slowly decaying tails);
// only when the last measured octave is below 1e-18 is the tail treated as
// continuing to decay, avoiding the subtraction floor for the geometric
// families where sub-1e-9 certificates actually matter.
double measured_tail(const VecC& extended, int n, double norm_cap) {
    const int n_ext = static_cast<int>(extended.size());
    long double head = 0.0L, window = 0.0L;
    for (int k = 0; k < n; ++k)
        head += static_cast<long double>(std::norm(extended[static_cast<size_t>(k)]));
    for (int k = n; k < n_ext; ++k)
        window += static_cast<long double>(std::norm(extended[static_cast<size_t>(k)]));
    const int quarter = std::max(1, (n_ext - n) / 4);
    long double last = 0.0L;
    for (int k = n_ext - quarter; k < n_ext; ++k)
        last += static_cast<long double>(std::norm(extended[static_cast<size_t>(k)]));
    long double beyond;
    if (last <= 1e-18L) {
        beyond = 100.0L * last;
    } else {
        beyond = std::max(0.0L, static_cast<long double>(norm_cap) - head - window) + 5e-16L;
    }
    return static_cast<double>(std::sqrt(window + beyond)) + 1e-16;
}

PowerSeries taylor_of_inner(const InnerFunction& theta, int n) {
    if (n < 2) throw InvalidArgument("inner expansion needs at least two coefficients");
    double seq_err = 0.0;
    if (const BlaschkeSequence* seq = theta.sequence_part()) {
        if (!seq->tail_beyond)
            throw TailBoundUnavailable("sequence expansion needs a tail bound");
        // ||B - B_prefix||_2^2 = 2(1 - prod |a|) <= 2 sum (1 - |a|)
        seq_err = std::sqrt(2.0 * *seq->tail_beyond);
    }
    const int n_ext = std::min(std::max(4 * n, n + 192), n + 4096);
    const VecC extended = inner_prefix(theta, n_ext);

    PowerSeries s;
    s.coeffs.assign(extended.begin(), extended.begin() + n);
    s.sup_bound = 1.0;
    s.prefix_err = seq_err;
    s.l2_tail = measured_tail(extended, n, 1.0);
    return s;
}

OperatorSection cphi_section(const PowerSeries& phi, int n) {
    if (phi.coeffs.empty() || std::abs(phi.coeffs[0]) >= 1.0)
        throw CompositionDiverges("section needs |phi(0)| < 1");
    OperatorSection sec;
    sec.entries = Eigen::MatrixXcd::Zero(n, n);
    sec.role = SectionRole::Composition;
    sec.source = "columns phi^k";
    VecC col(1, cplx(1.0));
    col.resize(static_cast<size_t>(n), cplx(0.0));
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) sec.entries(i, k) = col[static_cast<size_t>(i)];
        if (k + 1 < n) col = conv_trunc(col, phi.coeffs, n);
    }
    return sec;
}

OperatorSection mtheta_section(const PowerSeries& theta, int n) {
    OperatorSection sec;
    sec.entries = Eigen::MatrixXcd::Zero(n, n);
    sec.role = SectionRole::Multiplication;
    sec.source = "lower-triangular Toeplitz";
    for (int j = 0; j < n; ++j)
        for (int i = j; i < n; ++i)
            if (i - j < theta.N()) sec.entries(i, j) = theta.coeffs[static_cast<size_t>(i - j)];
    return sec;
}

ResidualReport invariance_residual(const InnerFunction& theta, const LinearFractionalMap& phi,
                                   int n, int probes) {
    if (n < 8 || n % 2 != 0) throw InvalidArgument("truncation order must be even and >= 8");
    if (probes <= 0) probes = std::min(8, n / 4);
    probes = std::min(probes, n / 4);
    const int n_eff = n / 2;

    const PowerSeries ts = taylor_of_inner(theta, n_eff);
    const PowerSeries ps = taylor_of_map(phi, n);
    // probe columns c_k = (theta . phi) phi^k with exact prefixes; only a
    // sequence tail can make them inexact
    const PowerSeries comp = taylor_of_composed_inner(theta, phi, n);
    const double contamination = comp.prefix_err;
    if (contamination > tol::oracle_member / 10.0)
        throw TruncationUnreliable("certified contamination " + std::to_string(contamination) +
                                   " exceeds a tenth of the membership threshold");

    Eigen::MatrixXcd probes_mat(n_eff, probes);
    VecC col = comp.coeffs;
    for (int k = 0; k < probes; ++k) {
        for (int i = 0; i < n_eff; ++i) probes_mat(i, k) = col[static_cast<size_t>(i)];
        if (k + 1 < probes) col = conv_trunc(col, ps.coeffs, n);
    }

    // numerically stable span of the truncated subspace columns theta z^j
    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(n_eff, n_eff);
    for (int j = 0; j < n_eff; ++j)
        for (int i = j; i < n_eff; ++i)
            T(i, j) = ts.coeffs[static_cast<size_t>(i - j)];
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(T);
    qr.setThreshold(tol::projector_rank);
    const int rank = static_cast<int>(qr.rank());
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd q_r = q.leftCols(rank);

    ResidualReport report{0.0, contamination, n, probes, rank, n_eff, rank < n_eff};
    for (int k = 0; k < probes; ++k) {
        const Eigen::VectorXcd v = probes_mat.col(k);
        const double denom = v.norm();
        if (denom <= std::max(1e-12, 10.0 * contamination))
            throw TruncationUnreliable("probe column mass below the certification floor");
        const double out = (v - q_r * (q_r.adjoint() * v)).norm();
        report.rho = std::max(report.rho, out / denom);
    }
    return report;
}

LittlewoodCheck littlewood_bound_check(const LinearFractionalMap& phi, int n) {
    const PowerSeries ps = taylor_of_map(phi, n);
    const OperatorSection sec = cphi_section(ps, n);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sec.entries);
    return LittlewoodCheck{svd.singularValues()(0), littlewood_constant(ps.coeffs[0])};
}

double kernel_relation_residual(const LinearFractionalMap& phi, cplx w, int n) {
    if (std::abs(w) >= 1.0) throw OutsideDisk("kernel point must lie in the open disk");
    const PowerSeries ps = taylor_of_map(phi, n);
    const OperatorSection sec = cphi_section(ps, n);
    Eigen::VectorXcd kw(n);
    cplx pw = 1.0;
    for (int i = 0; i < n; ++i) {
        kw(i) = pw;
        pw *= std::conj(w);
    }
    const cplx image = phi(w);
    const Eigen::VectorXcd y = sec.entries.adjoint() * kw;
    const int half = n / 2;
    Eigen::VectorXcd target(half);
    pw = 1.0;
    for (int j = 0; j < half; ++j) {
        target(j) = pw;
        pw *= std::conj(image);
    }
    return (y.head(half) - target).norm();
}

KernelNormEstimate kernel_map_norm(const InnerFunction& theta, const LinearFractionalMap& phi,
                                   const std::vector<cplx>& points, double ridge) {
    using LD = std::complex<long double>;
    using MatLD = Eigen::Matrix<LD, Eigen::Dynamic, Eigen::Dynamic>;
    const int m = static_cast<int>(points.size());
    if (m < 1 || m > 20) throw InvalidArgument("kernel map needs 1 to 20 points");
    for (int i = 0; i < m; ++i) {
        if (std::abs(points[static_cast<size_t>(i)]) >= 1.0)
            throw OutsideDisk("kernel point must lie in the open disk");
        for (int j = i + 1; j < m; ++j)
            if (pseudo_hyperbolic(points[static_cast<size_t>(i)], points[static_cast<size_t>(j)]) <
                0.1)
                throw InvalidArgument("kernel points closer than 0.1 in pseudo-hyperbolic metric");
    }

    std::vector<LD> tv(static_cast<size_t>(m)), tw(static_cast<size_t>(m));
    std::vector<LD> zin(static_cast<size_t>(m)), zout(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        const cplx w = points[static_cast<size_t>(i)];
        const cplx fw = phi(w);
        const cplx t1 = inner_eval(theta, w).value;
        const cplx t2 = inner_eval(theta, fw).value;
        zin[static_cast<size_t>(i)] = LD(w.real(), w.imag());
        zout[static_cast<size_t>(i)] = LD(fw.real(), fw.imag());
        tv[static_cast<size_t>(i)] = LD(t1.real(), t1.imag());
        tw[static_cast<size_t>(i)] = LD(t2.real(), t2.imag());
    }
    auto gram = [m](const std::vector<LD>& vals, const std::vector<LD>& pts) {
        MatLD g(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                g(i, j) = vals[static_cast<size_t>(i)] * std::conj(vals[static_cast<size_t>(j)]) /
                          (LD(1.0L) - pts[static_cast<size_t>(i)] * std::conj(pts[static_cast<size_t>(j)]));
        // enforce exact Hermitian symmetry before factorization
        return MatLD(((g + MatLD(g.adjoint())) / LD(2.0L)).eval());
    };
    MatLD g_in = gram(tv, zin);
    MatLD g_out = gram(tw, zout);

    // generalized eigenvalues are invariant under joint diagonal scaling, so
    // normalize the input vectors to unit length before conditioning them
    std::vector<long double> scale(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        const long double d = g_in(i, i).real();
        if (!(d > 1e-300L))
            throw IllConditioned("input kernel vector has no mass at point " + std::to_string(i));
        scale[static_cast<size_t>(i)] = 1.0L / std::sqrt(d);
    }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const LD s = scale[static_cast<size_t>(i)] * scale[static_cast<size_t>(j)];
            g_in(i, j) *= s;
            g_out(i, j) *= s;
        }

    Eigen::SelfAdjointEigenSolver<MatLD> cond_solver(g_in, Eigen::EigenvaluesOnly);
    const long double lo = cond_solver.eigenvalues()(0);
    const long double hi = cond_solver.eigenvalues()(m - 1);
    if (!(lo > 0.0L) || hi / lo > static_cast<long double>(tol::gram_condition))
        throw IllConditioned("input Gram condition exceeds the certification limit");

    const MatLD eye = MatLD::Identity(m, m);
    Eigen::GeneralizedSelfAdjointEigenSolver<MatLD> ges(
        MatLD(g_out + LD(static_cast<long double>(ridge)) * eye),
        MatLD(g_in + LD(static_cast<long double>(ridge)) * eye));
    const long double top = ges.eigenvalues()(m - 1);

    KernelNormEstimate est;
    est.points = points;
    est.c = std::sqrt(static_cast<double>(std::max(0.0L, top)));
    est.bound = littlewood_constant(phi(cplx(0.0)));
    est.ridge = ridge;
    return est;
}

}  // namespace cphi
