#include "cphi/inner.hpp"

#include <algorithm>
#include <cmath>

#include "cphi/tolerances.hpp"

namespace cphi {
namespace {

bool point_before(cplx x, cplx y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
}

cplx normalize_unimodular(cplx c, const char* what) {
    if (!unimodular(c)) throw InvalidArgument(std::string(what) + " must be unimodular");
    return c / std::abs(c);
}

// canonical factor (|a|/a)(a - z)/(1 - conj(a) z); plain z for a at the origin
cplx canonical_factor(cplx a, cplx z) {
    double r = std::abs(a);
    if (r <= tol::zero_merge) return z;
    return (r / a) * (a - z) / (1.0 - std::conj(a) * z);
}

// appends (point, mult), merging into an existing entry within `tol`
void merge_zero(std::vector<BlaschkeZero>& zeros, cplx point, int mult, double tol) {
    for (auto& zr : zeros) {
        if (std::abs(zr.point - point) <= tol) {
            zr.multiplicity += mult;
            return;
        }
    }
    zeros.push_back({point, mult});
}

cplx atom_exponent(const AtomicSingularInner& s, cplx z) {
    cplx sum = 0.0;
    for (const auto& atom : s.atoms) sum -= atom.weight * (atom.point + z) / (atom.point - z);
    return sum;
}

}  // namespace

int FiniteBlaschkeProduct::degree() const {
    int d = m;
    for (const auto& zr : zeros) d += zr.multiplicity;
    return d;
}

int BlaschkeSequence::factor_count() const {
    int n = 0;
    for (const auto& zr : zeros) n += zr.multiplicity;
    return n;
}

bool InnerFunction::finite_blaschke_only() const {
    return !singular && (!blaschke || std::holds_alternative<FiniteBlaschkeProduct>(*blaschke));
}

bool InnerFunction::has_sequence() const {
    return blaschke && std::holds_alternative<BlaschkeSequence>(*blaschke);
}

const FiniteBlaschkeProduct* InnerFunction::finite_part() const {
    if (!blaschke) return nullptr;
    return std::get_if<FiniteBlaschkeProduct>(&*blaschke);
}

const BlaschkeSequence* InnerFunction::sequence_part() const {
    if (!blaschke) return nullptr;
    return std::get_if<BlaschkeSequence>(&*blaschke);
}

cplx InnerFunction::total_constant() const {
    cplx c = constant;
    if (const auto* fb = finite_part()) c *= fb->c;
    if (singular) c *= singular->c;
    return c;
}

InnerFunction inner_constant(cplx c) {
    InnerFunction theta;
    theta.constant = normalize_unimodular(c, "inner constant");
    return theta;
}

InnerFunction monomial(int m) {
    if (m < 0) throw InvalidArgument("monomial order must be nonnegative");
    if (m == 0) return inner_constant(1.0);
    InnerFunction theta;
    theta.blaschke = FiniteBlaschkeProduct{m, {}, 1.0};
    return theta;
}

InnerFunction blaschke_factor(cplx w) {
    if (std::abs(w) >= 1.0) throw OutsideDisk("Blaschke factor zero must lie in the open disk");
    if (std::abs(w) <= tol::zero_merge) return monomial(1);
    InnerFunction theta;
    theta.blaschke = FiniteBlaschkeProduct{0, {{w, 1}}, 1.0};
    // canonical factor is |w| at the origin; rotate so theta(0) = w
    theta.constant = w / std::abs(w);
    return theta;
}

InnerFunction blaschke_product(int m, std::vector<BlaschkeZero> zeros, cplx c) {
    if (m < 0) throw InvalidArgument("origin multiplicity must be nonnegative");
    cplx constant = normalize_unimodular(c, "Blaschke constant");
    std::vector<BlaschkeZero> merged;
    for (const auto& zr : zeros) {
        if (zr.multiplicity <= 0) throw InvalidArgument("zero multiplicity must be positive");
        if (std::abs(zr.point) <= tol::zero_merge) {
            m += zr.multiplicity;
            continue;
        }
        if (std::abs(zr.point) >= 1.0 - tol::interior_exclusion)
            throw OutsideDisk("Blaschke zero must lie strictly inside the disk");
        merge_zero(merged, zr.point, zr.multiplicity, tol::zero_merge);
    }
    std::sort(merged.begin(), merged.end(),
              [](const BlaschkeZero& x, const BlaschkeZero& y) { return point_before(x.point, y.point); });
    if (m == 0 && merged.empty()) return inner_constant(constant);
    InnerFunction theta;
    theta.blaschke = FiniteBlaschkeProduct{m, std::move(merged), 1.0};
    theta.constant = constant;
    return theta;
}

InnerFunction atomic_singular(std::vector<SingularAtom> atoms, cplx c) {
    cplx constant = normalize_unimodular(c, "singular constant");
    std::vector<SingularAtom> merged;
    for (const auto& atom : atoms) {
        if (atom.weight <= 0.0) throw InvalidArgument("atom weight must be positive");
        if (!unimodular(atom.point)) throw InvalidArgument("atom must be unimodular");
        cplx point = atom.point / std::abs(atom.point);
        bool found = false;
        for (auto& prev : merged) {
            if (std::abs(prev.point - point) <= tol::atom_coincidence) {
                prev.weight += atom.weight;
                found = true;
                break;
            }
        }
        if (!found) merged.push_back({point, atom.weight});
    }
    if (merged.empty()) return inner_constant(constant);
    std::sort(merged.begin(), merged.end(), [](const SingularAtom& x, const SingularAtom& y) {
        return std::arg(x.point) < std::arg(y.point);
    });
    InnerFunction theta;
    theta.singular = AtomicSingularInner{std::move(merged), 1.0};
    theta.constant = constant;
    return theta;
}

InnerFunction atomic_singular(cplx atom, double weight) {
    return atomic_singular(std::vector<SingularAtom>{{atom, weight}}, 1.0);
}

InnerValue inner_eval(const InnerFunction& theta, cplx z, double tol) {
    if (std::abs(z) > 1.0 + tol::boundary_membership)
        throw OutsideDisk("inner functions are evaluated on the closed disk only");
    cplx value = theta.constant;
    double error = 2e-15;
    int factor_ops = 0;
    if (const auto* fb = theta.finite_part()) {
        value *= fb->c;
        for (int k = 0; k < fb->m; ++k) value *= z;
        factor_ops += fb->m;
        for (const auto& zr : fb->zeros) {
            cplx f = canonical_factor(zr.point, z);
            for (int k = 0; k < zr.multiplicity; ++k) value *= f;
            factor_ops += zr.multiplicity;
        }
    } else if (const auto* seq = theta.sequence_part()) {
        if (!seq->tail_beyond)
            throw TailBoundUnavailable("Blaschke sequence carries no tail bound");
        double tail = *seq->tail_beyond;
        if (tail > 0.0) {
            if (std::abs(z) >= 1.0 - tol::interior_exclusion)
                throw TailBoundUnavailable("sequence tail bound degenerates at the boundary");
            double bound = 2.0 / (1.0 - std::abs(z)) * tail;
            if (bound > tol)
                throw TailBoundUnavailable("stored prefix cannot reach the requested tolerance");
            error += bound;
        }
        for (const auto& zr : seq->zeros) {
            cplx f = canonical_factor(zr.point, z);
            for (int k = 0; k < zr.multiplicity; ++k) value *= f;
            factor_ops += zr.multiplicity;
        }
    }
    if (theta.singular) {
        value *= theta.singular->c;
        for (const auto& atom : theta.singular->atoms) {
            if (std::abs(z - atom.point) < tol::zero_coincidence)
                throw PoleAtPoint("evaluation point collides with a singular atom");
        }
        cplx expo = atom_exponent(*theta.singular, z);
        value *= std::exp(expo);
        error += (1.0 + std::abs(expo)) * 1e-15;
    }
    error += factor_ops * 1e-15;
    if (error > tol)
        throw TailBoundUnavailable("certified evaluation error exceeds the requested tolerance");
    return {value, error};
}

int inner_mult(const InnerFunction& theta, cplx w, double tol) {
    int mult = 0;
    auto count = [&](int m, const std::vector<BlaschkeZero>& zeros) {
        if (std::abs(w) <= tol) mult += m;
        for (const auto& zr : zeros) {
            if (std::abs(zr.point - w) <= tol) mult += zr.multiplicity;
        }
    };
    if (const auto* fb = theta.finite_part()) count(fb->m, fb->zeros);
    if (const auto* seq = theta.sequence_part()) count(0, seq->zeros);
    return mult;
}

InnerFunction inner_product(const InnerFunction& t1, const InnerFunction& t2) {
    if (t1.has_sequence() || t2.has_sequence())
        throw InvalidArgument("products of Blaschke sequences are unsupported; truncate first");
    int m = 0;
    std::vector<BlaschkeZero> zeros;
    std::vector<SingularAtom> atoms;
    for (const auto* t : {&t1, &t2}) {
        if (const auto* fb = t->finite_part()) {
            m += fb->m;
            zeros.insert(zeros.end(), fb->zeros.begin(), fb->zeros.end());
        }
        if (t->singular)
            atoms.insert(atoms.end(), t->singular->atoms.begin(), t->singular->atoms.end());
    }
    cplx constant = t1.total_constant() * t2.total_constant();
    InnerFunction blaschke = blaschke_product(m, std::move(zeros), 1.0);
    if (atoms.empty()) {
        blaschke.constant *= constant;
        return blaschke;
    }
    InnerFunction result = atomic_singular(std::move(atoms), 1.0);
    result.blaschke = blaschke.blaschke;
    result.constant *= constant * blaschke.constant;
    return result;
}

InnerFunction compose_rotation(const InnerFunction& theta, cplx rho) {
    rho = normalize_unimodular(rho, "rotation argument");
    const cplx nu = std::conj(rho);
    InnerFunction out = theta;
    int m = 0;
    if (out.blaschke) {
        if (auto* fb = std::get_if<FiniteBlaschkeProduct>(&*out.blaschke)) {
            m = fb->m;
            for (auto& zr : fb->zeros) zr.point *= nu;
            std::sort(fb->zeros.begin(), fb->zeros.end(),
                      [](const BlaschkeZero& x, const BlaschkeZero& y) {
                          return point_before(x.point, y.point);
                      });
        } else if (auto* seq = std::get_if<BlaschkeSequence>(&*out.blaschke)) {
            for (auto& zr : seq->zeros) zr.point *= nu;
        }
    }
    if (out.singular) {
        for (auto& atom : out.singular->atoms) atom.point *= nu;
        std::sort(out.singular->atoms.begin(), out.singular->atoms.end(),
                  [](const SingularAtom& x, const SingularAtom& y) {
                      return std::arg(x.point) < std::arg(y.point);
                  });
    }
    // canonical factors and atoms absorb the rotation; only z^m leaves a constant
    for (int k = 0; k < m; ++k) out.constant *= rho;
    return out;
}

std::vector<BlaschkeZero> compose_zeros(const InnerFunction& theta,
                                        const LinearFractionalMap& phi) {
    if (!theta.finite_blaschke_only())
        throw InvalidArgument("composition zeros need a finite Blaschke part only");
    std::vector<BlaschkeZero> sources;
    if (const auto* fb = theta.finite_part()) {
        if (fb->m > 0) sources.push_back({0.0, fb->m});
        sources.insert(sources.end(), fb->zeros.begin(), fb->zeros.end());
    }
    std::vector<BlaschkeZero> out;
    for (const auto& zr : sources) {
        // phi(z) = a has the unique solution z = (a d - b)/(A - a c)
        cplx denom = phi.a() - zr.point * phi.c();
        if (std::abs(denom) <= tol::pole_guard) continue;  // preimage at infinity
        cplx z = (zr.point * phi.d() - phi.b()) / denom;
        if (std::abs(z) < 1.0 - tol::interior_exclusion) out.push_back({z, zr.multiplicity});
    }
    std::sort(out.begin(), out.end(), [](const BlaschkeZero& x, const BlaschkeZero& y) {
        return point_before(x.point, y.point);
    });
    return out;
}

BlaschkeSequence orbit_blaschke(const std::vector<cplx>& orbit,
                                std::optional<double> tail_beyond,
                                std::optional<double> partial_sum_cap) {
    double partial = 0.0;
    std::vector<BlaschkeZero> zeros;
    for (cplx p : orbit) {
        if (std::abs(p) >= 1.0) throw OutsideDisk("orbit point outside the open disk");
        partial += 1.0 - std::abs(p);
        if (!tail_beyond && partial_sum_cap && partial > *partial_sum_cap)
            throw NotBlaschkeSummable("partial sums exceed the cap with no certified tail");
        merge_zero(zeros, p, 1, tol::zero_merge);
    }
    return BlaschkeSequence{std::move(zeros), tail_beyond};
}

InnerFunction truncate_sequence(const BlaschkeSequence& seq, int factors) {
    if (factors < 0) throw InvalidArgument("factor count must be nonnegative");
    std::vector<BlaschkeZero> taken;
    int remaining = factors;
    for (const auto& zr : seq.zeros) {
        if (remaining == 0) break;
        int take = std::min(remaining, zr.multiplicity);
        taken.push_back({zr.point, take});
        remaining -= take;
    }
    return blaschke_product(0, std::move(taken), 1.0);
}

RieszFactorization riesz_factor(const Polynomial& num, const Polynomial& den) {
    Polynomial P = poly_trim(num, 0.0);
    if (P.is_zero()) throw ZeroFunction("numerator is identically zero");
    Polynomial Q = poly_trim(den, 0.0);
    if (Q.is_zero()) throw InvalidArgument("denominator is identically zero");
    for (cplx r : poly_roots(Q)) {
        if (std::abs(r) <= 1.0 + tol::boundary_membership)
            throw PoleInDisk("denominator root in the closed disk");
    }
    auto clusters = cluster_roots(poly_roots(P), tol::root_cluster);
    // polish each cluster center with Newton on the matching derivative order
    for (auto& cl : clusters) {
        Polynomial q = P;
        for (int k = 1; k < cl.multiplicity; ++k) q = poly_derivative(q);
        Polynomial dq = poly_derivative(q);
        for (int it = 0; it < 3; ++it) {
            cplx d = poly_eval(dq, cl.center);
            if (std::abs(d) < tol::pole_guard) break;
            cl.center -= poly_eval(q, cl.center) / d;
        }
    }
    int m0 = 0;
    std::vector<BlaschkeZero> inside;
    Polynomial Pd = P;
    cplx gamma = 1.0;
    for (const auto& cl : clusters) {
        if (std::abs(cl.center) <= tol::root_cluster) {
            m0 += cl.multiplicity;
            for (int k = 0; k < cl.multiplicity; ++k) Pd = poly_deflate(Pd, 0.0);
        } else if (std::abs(cl.center) < 1.0 - tol::interior_exclusion) {
            inside.push_back({cl.center, cl.multiplicity});
            for (int k = 0; k < cl.multiplicity; ++k) {
                Pd = poly_deflate(Pd, cl.center);
                gamma *= -cl.center / std::abs(cl.center);
            }
        }
    }
    std::sort(inside.begin(), inside.end(), [](const BlaschkeZero& x, const BlaschkeZero& y) {
        return point_before(x.point, y.point);
    });
    // g = gamma * Pd * prod (1 - conj(a) z)^k / Q, zero-free inside
    Polynomial g_num = Pd;
    for (auto& coeff : g_num.coeffs) coeff *= gamma;
    for (const auto& zr : inside) {
        Polynomial factor({cplx(1.0), -std::conj(zr.point)});
        for (int k = 0; k < zr.multiplicity; ++k) g_num = poly_mul(g_num, factor);
    }
    RationalFunction outer{g_num, Q};
    auto sup_in = sup_on_circle(
        [&](cplx z) { return poly_eval(P, z) / poly_eval(Q, z); }, 1.0,
        tol::boundary_norm_samples);
    auto sup_out = sup_on_circle([&](cplx z) { return rational_eval(outer, z); }, 1.0,
                                 tol::boundary_norm_samples);
    return {FiniteBlaschkeProduct{m0, std::move(inside), 1.0}, std::move(outer),
            sup_in.value, sup_out.value};
}

}  // namespace cphi
