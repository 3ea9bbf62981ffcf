#include "cphi/polyroots.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "cphi/tolerances.hpp"

namespace cphi {

int Polynomial::degree(double tol) const {
    for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k) {
        if (std::abs(coeffs[k]) > tol) return k;
    }
    return -1;
}

cplx poly_eval(const Polynomial& p, cplx z) {
    cplx acc = 0.0;
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Polynomial poly_mul(const Polynomial& p, const Polynomial& q) {
    if (p.coeffs.empty() || q.coeffs.empty()) return Polynomial{};
    std::vector<cplx> out(p.coeffs.size() + q.coeffs.size() - 1, cplx(0.0));
    for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
        for (std::size_t j = 0; j < q.coeffs.size(); ++j) {
            out[i + j] += p.coeffs[i] * q.coeffs[j];
        }
    }
    return Polynomial(std::move(out));
}

Polynomial poly_derivative(const Polynomial& p) {
    if (p.coeffs.size() <= 1) return Polynomial({cplx(0.0)});
    std::vector<cplx> out(p.coeffs.size() - 1);
    for (std::size_t k = 1; k < p.coeffs.size(); ++k) {
        out[k - 1] = static_cast<double>(k) * p.coeffs[k];
    }
    return Polynomial(std::move(out));
}

Polynomial poly_trim(const Polynomial& p, double tol) {
    int d = p.degree(tol);
    if (d < 0) return Polynomial({cplx(0.0)});
    return Polynomial(std::vector<cplx>(p.coeffs.begin(), p.coeffs.begin() + d + 1));
}

Polynomial poly_deflate(const Polynomial& p, cplx root) {
    int d = p.degree();
    if (d < 1) return Polynomial({cplx(0.0)});
    std::vector<cplx> out(static_cast<std::size_t>(d));
    cplx carry = p.coeffs[static_cast<std::size_t>(d)];
    for (int k = d - 1; k >= 0; --k) {
        out[static_cast<std::size_t>(k)] = carry;
        carry = p.coeffs[static_cast<std::size_t>(k)] + carry * root;
    }
    return Polynomial(std::move(out));
}

std::vector<cplx> poly_roots(const Polynomial& p) {
    Polynomial t = poly_trim(p, 0.0);
    int d = t.degree();
    if (d < 1) return {};
    const cplx lead = t.coeffs[static_cast<std::size_t>(d)];
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
    for (int k = 0; k < d - 1; ++k) companion(k + 1, k) = 1.0;
    for (int k = 0; k < d; ++k) {
        companion(k, d - 1) = -t.coeffs[static_cast<std::size_t>(k)] / lead;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    std::vector<cplx> roots(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) roots[static_cast<std::size_t>(k)] = solver.eigenvalues()(k);
    return roots;
}

std::vector<RootCluster> cluster_roots(const std::vector<cplx>& roots, double tol) {
    std::vector<cplx> sorted = roots;
    std::sort(sorted.begin(), sorted.end(), [](cplx x, cplx y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    std::vector<RootCluster> clusters;
    std::vector<cplx> sums;
    for (cplx r : sorted) {
        bool merged = false;
        for (std::size_t i = 0; i < clusters.size(); ++i) {
            if (std::abs(r - clusters[i].center) <= tol) {
                sums[i] += r;
                clusters[i].multiplicity += 1;
                clusters[i].center = sums[i] / static_cast<double>(clusters[i].multiplicity);
                merged = true;
                break;
            }
        }
        if (!merged) {
            clusters.push_back({r, 1});
            sums.push_back(r);
        }
    }
    return clusters;
}

cplx rational_eval(const RationalFunction& f, cplx z) {
    cplx den = poly_eval(f.den, z);
    if (std::abs(den) < tol::pole_guard) throw PoleAtPoint("rational function pole at evaluation point");
    return poly_eval(f.num, z) / den;
}

}  // namespace cphi
