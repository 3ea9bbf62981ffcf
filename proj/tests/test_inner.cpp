#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cphi/complex_util.hpp"
#include "cphi/inner.hpp"
#include "cphi/maps.hpp"
#include "cphi/polyroots.hpp"

using namespace cphi;

namespace {

const double pi = std::numbers::pi;

bool approx(cplx x, cplx y, double tol) { return std::abs(x - y) <= tol; }

cplx eval(const InnerFunction& theta, cplx z) { return inner_eval(theta, z).value; }

const InnerFunction b_half = blaschke_factor(0.5);

}  // namespace

TEST_CASE("polynomial arithmetic and deflation") {
    Polynomial p({cplx(-1.0), cplx(0.0), cplx(1.0)});  // z^2 - 1
    CHECK(approx(poly_eval(p, 2.0), 3.0, 1e-15));
    CHECK(approx(poly_eval(p, cplx(0, 1)), -2.0, 1e-15));

    Polynomial q = poly_mul(Polynomial({1.0, 1.0}), Polynomial({1.0, -1.0}));
    REQUIRE(q.coeffs.size() == 3);
    CHECK(approx(q.coeffs[0], 1.0, 0.0));
    CHECK(approx(q.coeffs[1], 0.0, 0.0));
    CHECK(approx(q.coeffs[2], -1.0, 0.0));

    Polynomial d = poly_derivative(p);
    REQUIRE(d.coeffs.size() == 2);
    CHECK(approx(d.coeffs[1], 2.0, 0.0));

    Polynomial defl = poly_deflate(p, 1.0);  // (z^2 - 1)/(z - 1) = z + 1
    REQUIRE(defl.coeffs.size() == 2);
    CHECK(approx(defl.coeffs[0], 1.0, 1e-15));
    CHECK(approx(defl.coeffs[1], 1.0, 1e-15));

    CHECK(p.degree() == 2);
    CHECK(Polynomial({cplx(0.0)}).is_zero());
}

TEST_CASE("companion roots with multiplicity clustering") {
    // (z - 0.3)^2 (z + 2) = z^3 + 1.4 z^2 - 1.11 z + 0.18
    Polynomial p({0.18, -1.11, 1.4, 1.0});
    auto clusters = cluster_roots(poly_roots(p), 1e-6);
    REQUIRE(clusters.size() == 2);
    bool saw_double = false, saw_simple = false;
    for (const auto& cl : clusters) {
        if (cl.multiplicity == 2) {
            saw_double = true;
            CHECK(approx(cl.center, 0.3, 1e-7));
        } else {
            saw_simple = true;
            CHECK(cl.multiplicity == 1);
            CHECK(approx(cl.center, -2.0, 1e-10));
        }
    }
    CHECK(saw_double);
    CHECK(saw_simple);

    RationalFunction f{Polynomial({1.0}), Polynomial({1.0, -2.0})};
    CHECK(approx(rational_eval(f, 0.0), 1.0, 0.0));
    CHECK_THROWS_AS(rational_eval(f, 0.5), PoleAtPoint);
}

TEST_CASE("blaschke factor defining values") {
    CHECK(approx(eval(blaschke_factor(0.0), cplx(0, 0.3)), cplx(0, 0.3), 1e-15));

    CHECK(approx(eval(b_half, 0.5), 0.0, 1e-15));
    CHECK(approx(eval(b_half, 0.0), 0.5, 1e-15));
    CHECK(approx(eval(b_half, -1.0), 1.0, 1e-15));

    cplx w(0.3, -0.4);
    auto bw = blaschke_factor(w);
    CHECK(approx(eval(bw, w), 0.0, 1e-15));
    CHECK(approx(eval(bw, 0.0), w, 1e-15));

    CHECK_THROWS_AS(blaschke_factor(cplx(1.0, 0.0)), OutsideDisk);
    CHECK_THROWS_AS(blaschke_factor(cplx(0.8, 0.8)), OutsideDisk);
}

TEST_CASE("atomic singular evaluation and semigroup law") {
    auto s1 = atomic_singular(1.0, 1.0);
    CHECK(approx(eval(s1, 0.0), std::exp(-1.0), 1e-15));

    auto s_half = atomic_singular(1.0, 0.5);
    auto s2 = atomic_singular(1.0, 2.0);
    auto prod = inner_product(s_half, s2);
    REQUIRE(prod.singular.has_value());
    REQUIRE(prod.singular->atoms.size() == 1);
    CHECK(prod.singular->atoms[0].weight == doctest::Approx(2.5).epsilon(1e-15));

    auto s25 = atomic_singular(1.0, 2.5);
    for (cplx z : seeded_disk_points(20, 11, 0.05, 0.9)) {
        CHECK(approx(eval(prod, z), eval(s_half, z) * eval(s2, z), 1e-12));
        CHECK(approx(eval(prod, z), eval(s25, z), 1e-12));
        CHECK(std::abs(eval(s1, z)) <= 1.0 + 1e-12);
    }

    CHECK(inner_mult(s1, 0.0) == 0);
    CHECK(inner_mult(s1, cplx(0.3, 0.2)) == 0);
    CHECK_THROWS_AS(eval(s1, cplx(1.0, 0.0)), PoleAtPoint);
    CHECK_THROWS_AS(atomic_singular(cplx(0.5, 0.0), 1.0), InvalidArgument);
    CHECK_THROWS_AS(atomic_singular(cplx(1.0, 0.0), -2.0), InvalidArgument);
}

TEST_CASE("finite blaschke products evaluate and stay inner") {
    auto theta = inner_product(b_half, blaschke_factor(-0.5));
    // factor constants keep b_w(0) = w, so the product picks up the signs
    CHECK(approx(eval(theta, 0.0), -0.25, 1e-15));
    CHECK(std::abs(eval(theta, 0.0)) == doctest::Approx(0.25).epsilon(1e-15));

    // modulus 1 on the unit circle
    for (int k = 0; k < 64; ++k) {
        cplx z = std::polar(1.0, 2 * pi * k / 64.0);
        CHECK(std::abs(std::abs(eval(theta, z)) - 1.0) <= 1e-10);
    }

    auto mixed = inner_product(inner_product(monomial(1), theta), atomic_singular(1.0, 1.5));
    for (cplx z : seeded_disk_points(200, 21, 0.0, 0.999)) {
        CHECK(std::abs(eval(mixed, z)) <= 1.0 + 1e-10);
    }

    // radial limits approach modulus 1 off the singularity
    double best = 0.0;
    for (int k = 0; k < 256; ++k) {
        cplx z = std::polar(0.999, 2 * pi * k / 256.0);
        best = std::max(best, std::abs(eval(theta, z)));
    }
    CHECK(best >= 0.5);
}

TEST_CASE("zero multiplicities add across products") {
    auto z2 = monomial(2);
    CHECK(inner_mult(z2, 0.0) == 2);
    CHECK(inner_mult(b_half, 0.5) == 1);
    CHECK(inner_mult(b_half, 0.2) == 0);

    auto sq = inner_product(b_half, b_half);
    const auto* fb = sq.finite_part();
    REQUIRE(fb != nullptr);
    REQUIRE(fb->zeros.size() == 1);
    CHECK(fb->zeros[0].multiplicity == 2);

    auto zz = inner_product(monomial(1), monomial(1));
    REQUIRE(zz.finite_part() != nullptr);
    CHECK(zz.finite_part()->m == 2);

    auto t1 = inner_product(monomial(1), atomic_singular(1.0, 1.0));
    auto t2 = inner_product(b_half, atomic_singular(1.0, 2.0));
    auto prod = inner_product(t1, t2);
    for (cplx w : {cplx(0.0), cplx(0.5), cplx(0.2, 0.1)}) {
        CHECK(inner_mult(prod, w) == inner_mult(t1, w) + inner_mult(t2, w));
    }
    REQUIRE(prod.singular.has_value());
    CHECK(prod.singular->atoms[0].weight == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("construction validation and canonical merging") {
    auto merged = blaschke_product(0, {{0.5, 1}, {0.5, 2}, {0.0, 1}}, 1.0);
    const auto* fb = merged.finite_part();
    REQUIRE(fb != nullptr);
    CHECK(fb->m == 1);
    REQUIRE(fb->zeros.size() == 1);
    CHECK(fb->zeros[0].multiplicity == 3);

    CHECK_THROWS_AS(blaschke_product(0, {{cplx(0.999999999999, 0.0), 1}}, 1.0), OutsideDisk);
    CHECK_THROWS_AS(blaschke_product(0, {{0.5, 0}}, 1.0), InvalidArgument);
    CHECK_THROWS_AS(blaschke_product(0, {{0.5, 1}}, 2.0), InvalidArgument);
    CHECK_THROWS_AS(monomial(-1), InvalidArgument);
    CHECK(inner_constant(cplx(0, 1)).is_constant());
    CHECK_THROWS_AS(inner_constant(0.5), InvalidArgument);
    CHECK_THROWS_AS(eval(b_half, cplx(1.1, 0.0)), OutsideDisk);
}

TEST_CASE("composition zero transport") {
    LinearFractionalMap phi(1.0, 0.5, 0.5, 1.0);  // (z + 1/2)/(1 + z/2)
    auto zs = compose_zeros(monomial(1), phi);
    REQUIRE(zs.size() == 1);
    CHECK(approx(zs[0].point, -0.5, 1e-15));
    CHECK(zs[0].multiplicity == 1);

    auto zid = compose_zeros(monomial(1), LinearFractionalMap::identity());
    REQUIRE(zid.size() == 1);
    CHECK(approx(zid[0].point, 0.0, 1e-15));

    // preimage of 1/2 under z/2 is the boundary point 1: filtered out
    LinearFractionalMap half(1.0, 0.0, 0.0, 2.0);
    CHECK(compose_zeros(b_half, half).empty());

    CHECK_THROWS_AS(compose_zeros(atomic_singular(1.0, 1.0), phi), InvalidArgument);

    // finite-difference consistency at a double zero
    auto theta = inner_product(b_half, b_half);
    auto aut = LinearFractionalMap::automorphism(1.0, cplx(0.3, 0.2));
    auto zeros = compose_zeros(theta, aut);
    REQUIRE(zeros.size() == 1);
    CHECK(zeros[0].multiplicity == 2);
    auto f = [&](cplx z) { return eval(theta, aut(z)); };
    cplx z0 = zeros[0].point;
    CHECK(std::abs(f(z0)) <= 1e-6);
    const double h = 1e-5;
    cplx fd = (f(z0 + h) - f(z0 - h)) / (2 * h);
    CHECK(std::abs(fd) <= 1e-6);
}

TEST_CASE("rotation of the argument") {
    auto theta = inner_product(inner_product(monomial(2), b_half), atomic_singular(cplx(0, 1), 2.0));
    cplx rho = std::polar(1.0, 0.7);
    auto rotated = compose_rotation(theta, rho);
    for (cplx z : seeded_disk_points(20, 31, 0.05, 0.9)) {
        CHECK(approx(eval(rotated, z), eval(theta, rho * z), 1e-12));
    }
    auto back = compose_rotation(rotated, std::conj(rho));
    for (cplx z : seeded_disk_points(5, 41, 0.05, 0.9)) {
        CHECK(approx(eval(back, z), eval(theta, z), 1e-12));
    }

    // moving an atom to 1
    auto atom_i = atomic_singular(cplx(0, 1), 1.0);
    auto moved = compose_rotation(atom_i, cplx(0, 1));
    REQUIRE(moved.singular.has_value());
    CHECK(approx(moved.singular->atoms[0].point, 1.0, 1e-15));
}

TEST_CASE("orbit blaschke sequences and truncation") {
    std::vector<cplx> orbit{0.25, 0.125, 0.0625};
    auto seq = orbit_blaschke(orbit, 0.0);
    CHECK(seq.factor_count() == 3);

    auto trunc2 = truncate_sequence(seq, 2);
    auto manual = inner_product(blaschke_factor(0.25), blaschke_factor(0.125));
    for (cplx z : seeded_disk_points(10, 51, 0.05, 0.9)) {
        CHECK(approx(std::abs(eval(trunc2, z)), std::abs(eval(manual, z)), 1e-13));
    }

    // exact tail (0) makes the sequence evaluable everywhere inside
    InnerFunction as_seq;
    as_seq.blaschke = seq;
    auto full = truncate_sequence(seq, 3);
    for (cplx z : seeded_disk_points(10, 61, 0.05, 0.9)) {
        CHECK(approx(std::abs(eval(as_seq, z)), std::abs(eval(full, z)), 1e-13));
    }

    // a genuine tail bound widens the certified error but allows evaluation
    InnerFunction with_tail;
    with_tail.blaschke = BlaschkeSequence{seq.zeros, 1e-3};
    auto val = inner_eval(with_tail, 0.5, 1e-2);
    CHECK(val.error <= 2.0 / 0.5 * 1e-3 + 1e-12);
    CHECK_THROWS_AS(inner_eval(with_tail, 0.5, 1e-9), TailBoundUnavailable);

    InnerFunction no_tail;
    no_tail.blaschke = BlaschkeSequence{seq.zeros, std::nullopt};
    CHECK_THROWS_AS(inner_eval(no_tail, 0.5, 1e-2), TailBoundUnavailable);

    CHECK_THROWS_AS(orbit_blaschke({0.5, 0.5, 0.5}, std::nullopt, 1.0), NotBlaschkeSummable);
    CHECK_THROWS_AS(orbit_blaschke({cplx(1.0, 0.0)}), OutsideDisk);

    // duplicates merge into multiplicities
    auto dup = orbit_blaschke({0.5, 0.5, 0.25}, 0.0);
    REQUIRE(dup.zeros.size() == 2);
    CHECK(dup.zeros[0].multiplicity == 2);
}

TEST_CASE("riesz factorization of rational functions") {
    // f(z) = z(2+z)/4
    Polynomial num({0.0, 0.5, 0.25});
    Polynomial den({1.0});
    auto rf = riesz_factor(num, den);
    CHECK(rf.blaschke.m == 1);
    CHECK(rf.blaschke.zeros.empty());
    CHECK(rf.sup_input == doctest::Approx(0.75).epsilon(1e-8));
    CHECK(rf.sup_outer == doctest::Approx(0.75).epsilon(1e-8));
    CHECK(std::abs(rf.sup_input - rf.sup_outer) <= 1e-8);
    for (cplx z : seeded_disk_points(100, 71, 0.0, 0.98)) {
        cplx b = eval(InnerFunction{rf.blaschke, std::nullopt, 1.0}, z);
        cplx g = rational_eval(rf.outer, z);
        CHECK(approx(poly_eval(num, z) / poly_eval(den, z), b * g, 1e-10));
    }
    for (cplx r : poly_roots(rf.outer.num)) CHECK(std::abs(r) > 1.0 - 1e-9);

    // zero-free input keeps B trivial
    auto rf2 = riesz_factor(Polynomial({0.5, 0.25}), Polynomial({1.0}));
    CHECK(rf2.blaschke.m == 0);
    CHECK(rf2.blaschke.zeros.empty());

    // an already inner input leaves a unimodular outer part
    auto rf3 = riesz_factor(Polynomial({0.5, -1.0}), Polynomial({1.0, -0.5}));
    REQUIRE(rf3.blaschke.zeros.size() == 1);
    CHECK(approx(rf3.blaschke.zeros[0].point, 0.5, 1e-9));
    for (cplx z : seeded_disk_points(10, 81, 0.0, 0.9)) {
        CHECK(approx(rational_eval(rf3.outer, z), 1.0, 1e-9));
    }
    CHECK(rf3.sup_outer == doctest::Approx(1.0).epsilon(1e-8));

    // double zero inside
    auto rf4 = riesz_factor(poly_mul(Polynomial({-0.3, 1.0}), Polynomial({-0.3, 1.0})),
                            Polynomial({1.0}));
    REQUIRE(rf4.blaschke.zeros.size() == 1);
    CHECK(rf4.blaschke.zeros[0].multiplicity == 2);
    CHECK(approx(rf4.blaschke.zeros[0].point, 0.3, 1e-9));
    for (cplx z : seeded_disk_points(100, 91, 0.0, 0.98)) {
        cplx b = eval(InnerFunction{rf4.blaschke, std::nullopt, 1.0}, z);
        cplx g = rational_eval(rf4.outer, z);
        cplx f = poly_eval(rf4.outer.den, z);
        (void)f;
        cplx direct = std::pow(z - 0.3, 2);
        CHECK(approx(direct, b * g, 1e-10));
    }

    CHECK_THROWS_AS(riesz_factor(Polynomial({1.0}), Polynomial({1.0, -2.0})), PoleInDisk);
    CHECK_THROWS_AS(riesz_factor(Polynomial({1.0}), Polynomial({1.0, -1.0})), PoleInDisk);
    CHECK_THROWS_AS(riesz_factor(Polynomial({0.0, 0.0}), Polynomial({1.0})), ZeroFunction);
}
