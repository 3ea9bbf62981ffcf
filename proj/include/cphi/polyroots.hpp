/*
 * polyroots.hpp: dense complex polynomials and companion-matrix roots.
 *
 * Coefficients are stored in ascending degree order. Roots come from the
 * eigenvalues of the (balanced) companion matrix; nearby roots are merged
 * into multiplicity clusters at a caller-supplied separation tolerance, the
 * cluster centroid being the reported root. Rational functions pair two
 * polynomials and guard evaluation near denominator zeros.
 */
#pragma once

#include <vector>

#include "cphi/complex_util.hpp"
#include "cphi/errors.hpp"

namespace cphi {

struct Polynomial {
    std::vector<cplx> coeffs;  // ascending; coeffs[k] multiplies z^k

    Polynomial() = default;
    explicit Polynomial(std::vector<cplx> c) : coeffs(std::move(c)) {}

    // degree after ignoring trailing coefficients below `tol`; -1 when zero
    int degree(double tol = 0.0) const;
    bool is_zero(double tol = 0.0) const { return degree(tol) < 0; }
};

cplx poly_eval(const Polynomial& p, cplx z);
Polynomial poly_mul(const Polynomial& p, const Polynomial& q);
Polynomial poly_derivative(const Polynomial& p);
// drops trailing coefficients with |c| <= tol (result keeps >= 1 coefficient)
Polynomial poly_trim(const Polynomial& p, double tol);
// quotient of p by (z - root); remainder (= p(root)) is discarded
Polynomial poly_deflate(const Polynomial& p, cplx root);

// all complex roots, with multiplicity, as raw eigenvalues of the companion
// matrix; the zero polynomial and constants yield an empty list
std::vector<cplx> poly_roots(const Polynomial& p);

struct RootCluster {
    cplx center;       // centroid of the merged eigenvalues
    int multiplicity;  // cluster size
};

// greedy merge of roots lying within `tol` of a cluster centroid
std::vector<RootCluster> cluster_roots(const std::vector<cplx>& roots, double tol);

struct RationalFunction {
    Polynomial num;
    Polynomial den;
};

// throws PoleAtPoint when |den(z)| < pole guard
cplx rational_eval(const RationalFunction& f, cplx z);

}  // namespace cphi
