/*
 * cphi_main.cpp: command-line front end.
 *
 * Four commands over the library: classify a disk self-map, certify a
 * subspace against a composition, tabulate a parabolic orbit with its
 * summability certificate, and run the numerical cross-check battery.
 * Reports are JSON envelopes on stdout; orbit tables optionally land in a
 * CSV file. Identical invocations emit byte-identical output.
 *
 * Exit codes: 0 member or consistent, 1 non-member or violated, 2 input
 * error, 3 indeterminate, 4 soundness alarm (an exact verdict contradicted
 * by its own numerical cross-check).
 */
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cphi/certify.hpp"
#include "cphi/errors.hpp"
#include "cphi/funcspec.hpp"
#include "cphi/maps.hpp"
#include "cphi/orbits.hpp"
#include "cphi/report.hpp"
#include "cphi/series.hpp"

namespace {

using namespace cphi;

ordered_json json_fixed_points(const std::vector<FixedPoint>& pts) {
    ordered_json arr = ordered_json::array();
    for (const FixedPoint& fp : pts)
        arr.push_back(ordered_json{{"point", json_complex(fp.point)},
                                   {"multiplicity", fp.multiplicity},
                                   {"onBoundary", fp.on_boundary}});
    return arr;
}

ordered_json json_denjoy_wolff(const DenjoyWolffData& dw) {
    return ordered_json{{"point", json_complex(dw.point)},
                        {"derivative", dw.derivative},
                        {"interior", dw.interior}};
}

ordered_json json_verdict(const SchurVerdict& v) {
    ordered_json out{{"status", status_name(v.status)},
                     {"supEstimate", v.sup_estimate},
                     {"route", v.route}};
    if (v.witness)
        out["witness"] = ordered_json{{"point", json_complex(v.witness->point)},
                                      {"modulus", v.witness->modulus}};
    else
        out["witness"] = nullptr;
    return out;
}

ordered_json json_trend(const std::vector<TruncationResidual>& trend) {
    ordered_json arr = ordered_json::array();
    for (const TruncationResidual& t : trend)
        arr.push_back(ordered_json{{"factors", t.factors}, {"rho", t.rho},
                                   {"decisive", t.decisive}});
    return arr;
}

int emit(const ordered_json& envelope, int code) {
    std::cout << render_report(envelope);
    return code;
}

int emit_error(const std::string& command, const ordered_json& inputs, const Error& e) {
    return emit(report_envelope(command, inputs, ordered_json{{"error", e.what()}}), 2);
}

int run_classify(const std::string& map_spec) {
    ordered_json inputs{{"map", map_spec}};
    try {
        const LinearFractionalMap phi = parse_map(map_spec);
        inputs["map"] = print_spec(phi);
        ordered_json result;
        if (phi.is_identity()) {
            result["class"] = "identity";
            result["isAutomorphism"] = true;
            result["fixedPoints"] = nullptr;  // every point of the disk
            result["denjoyWolff"] = nullptr;
        } else if (is_automorphism(phi)) {
            const DiskAutomorphism aut = classify_automorphism(phi);
            switch (aut.cls) {
                case AutomorphismClass::Elliptic: result["class"] = "elliptic"; break;
                case AutomorphismClass::Hyperbolic: result["class"] = "hyperbolic"; break;
                case AutomorphismClass::Parabolic: result["class"] = "parabolic"; break;
            }
            result["isAutomorphism"] = true;
            result["multiplier"] = json_complex(aut.lambda);
            result["basePoint"] = json_complex(aut.a);
            result["fixedPoints"] = json_fixed_points(aut.fixed);
            if (aut.cls == AutomorphismClass::Elliptic)
                result["denjoyWolff"] = nullptr;  // no attracting fixed point
            else
                result["denjoyWolff"] = json_denjoy_wolff(denjoy_wolff(phi));
        } else {
            result["class"] = "nonAutomorphism";
            result["isAutomorphism"] = false;
            result["fixedPoints"] = json_fixed_points(fixed_points(phi));
            result["denjoyWolff"] = json_denjoy_wolff(denjoy_wolff(phi));
        }
        return emit(report_envelope("classify", inputs, result), 0);
    } catch (const Error& e) {
        return emit_error("classify", inputs, e);
    }
}

int run_certify(const std::string& theta_spec, const std::string& phi_spec,
                const std::vector<double>& radii, int angles, double margin) {
    ordered_json inputs{{"theta", theta_spec}, {"phi", phi_spec}};
    try {
        const InnerFunction theta = parse_inner(theta_spec);
        const LinearFractionalMap phi = parse_map(phi_spec);
        inputs["theta"] = print_spec(theta);
        inputs["phi"] = print_spec(phi);

        const InvarianceReport rep = certify_invariance(theta, phi);
        const QuotientSamples samples = quotient_samples(theta, phi, radii, angles);
        const SchurVerdict sampled = schur_membership(samples, margin);

        ordered_json result{{"route", route_name(rep.route)},
                            {"verdict", json_verdict(rep.verdict)}};
        result["quotientConstant"] =
            rep.quotient_constant ? json_complex(*rep.quotient_constant) : ordered_json(nullptr);
        result["oracleResidual"] =
            rep.oracle_residual ? ordered_json(*rep.oracle_residual) : ordered_json(nullptr);
        result["agreement"] = rep.agreement;
        result["sampling"] = ordered_json{{"sampleCount", samples.values.size()},
                                          {"skippedCount", samples.skipped.size()},
                                          {"verdict", json_verdict(sampled)}};

        int code = 3;
        switch (rep.verdict.status) {
            case SchurStatus::CertifiedMember:
            case SchurStatus::NumericallyConsistent: code = 0; break;
            case SchurStatus::CertifiedNonMember:
            case SchurStatus::NumericallyViolated: code = 1; break;
            case SchurStatus::Indeterminate: code = 3; break;
        }
        return emit(report_envelope("certify", inputs, result), code);
    } catch (const Error& e) {
        return emit_error("certify", inputs, e);
    }
}

int run_orbit(const std::string& phi_spec, const std::string& z_literal, int terms,
              const std::string& out_path) {
    ordered_json inputs{{"phi", phi_spec}, {"z", z_literal}, {"terms", terms}};
    try {
        const LinearFractionalMap phi = parse_map(phi_spec);
        const cplx z = parse_complex_literal(z_literal);
        inputs["phi"] = print_spec(phi);
        inputs["z"] = format_complex(z);

        const OrbitReport orb = parabolic_orbit_report(phi, z, terms);
        std::vector<double> gaps;
        for (const OrbitRow& row : orb.rows)
            gaps.push_back(row.direct / (1.0 + std::abs(row.point)));
        const SummabilityResult sum = blaschke_summability(gaps, [&](int m) {
            return parabolic_tail_bound(orb.u, orb.v, orb.b, m);
        });
        const DecayRefutation ref = refute_reciprocal_decay(phi, z, terms);

        ordered_json result{{"fixedPoint", json_complex(orb.fixed_point)},
                            {"b", orb.b},
                            {"u", orb.u},
                            {"v", orb.v},
                            {"terms", terms},
                            {"fitSlope", orb.fit_slope}};
        result["summability"] = ordered_json{
            {"sum", sum.sum}, {"tailBound", sum.tail}, {"certified", sum.certified}};
        result["refutation"] = ordered_json{
            {"matchedConstant", ref.matched_constant},
            {"decaySum", ref.decay_sum},
            {"reciprocalModelSum", ref.reciprocal_model_sum},
            {"forwardInvariant", ref.forward_invariant},
            {"transportOk", ref.transport_ok},
            {"residualTrend", json_trend(ref.residual_trend)},
            {"shiftIdentityTrend", json_trend(ref.shift_identity_trend)}};

        if (!out_path.empty()) {
            std::ofstream csv(out_path);
            if (!csv) throw InvalidArgument("cannot open CSV output path: " + out_path);
            csv << "m,re_phi_m,im_phi_m,direct,formula,partial_sum\n";
            for (const OrbitRow& row : orb.rows)
                csv << row.m << ',' << format_real(row.point.real()) << ','
                    << format_real(row.point.imag()) << ',' << format_real(row.direct) << ','
                    << format_real(row.formula) << ',' << format_real(row.partial_sum) << '\n';
            result["csv"] = out_path;
        } else {
            result["csv"] = nullptr;
        }
        return emit(report_envelope("orbit", inputs, result), 0);
    } catch (const Error& e) {
        return emit_error("orbit", inputs, e);
    }
}

int run_oracle(const std::string& theta_spec, const std::string& phi_spec, int n) {
    ordered_json inputs{{"theta", theta_spec}, {"phi", phi_spec}, {"N", n}};
    try {
        const InnerFunction theta = parse_inner(theta_spec);
        const LinearFractionalMap phi = parse_map(phi_spec);
        inputs["theta"] = print_spec(theta);
        inputs["phi"] = print_spec(phi);

        const ResidualReport res = invariance_residual(theta, phi, n);
        const LittlewoodCheck lw = littlewood_bound_check(phi, n);

        const std::vector<cplx> kernel_points = {cplx(0.0, 0.0), cplx(0.3, 0.4),
                                                 cplx(-0.5, 0.0), cplx(0.2, -0.6),
                                                 cplx(0.7, 0.1)};
        ordered_json kernel = ordered_json::array();
        double kernel_max = 0.0;
        for (cplx w : kernel_points) {
            const double r = kernel_relation_residual(phi, w, n);
            kernel_max = std::max(kernel_max, r);
            kernel.push_back(ordered_json{{"point", json_complex(w)}, {"residual", r}});
        }

        // a zero of theta contributes the zero vector to the kernel span and
        // degenerates the Gram matrix; drop such points from the norm battery
        std::vector<cplx> norm_points;
        for (cplx w : kernel_points)
            if (std::abs(inner_eval(theta, w).value) > 1e-9) norm_points.push_back(w);

        ordered_json norm_json;
        bool norm_violation = false;
        try {
            if (norm_points.size() < 2) throw IllConditioned("too few usable kernel points");
            const KernelNormEstimate est = kernel_map_norm(theta, phi, norm_points);
            norm_json = ordered_json{{"c", est.c},
                                     {"bound", est.bound},
                                     {"ridge", est.ridge},
                                     {"pointCount", est.points.size()}};
            norm_violation = est.c > est.bound + tol::kernel_norm_slack;
        } catch (const IllConditioned& e) {
            norm_json = ordered_json{{"illConditioned", e.what()}};
        }

        const InvarianceReport rep = certify_invariance(theta, phi);
        const bool member = rep.verdict.status == SchurStatus::CertifiedMember ||
                            rep.verdict.status == SchurStatus::NumericallyConsistent;

        std::vector<std::string> alarms;
        if (!rep.agreement) alarms.push_back("exact verdict disagrees with the oracle");
        if (res.decisive) {
            if (member && res.rho > tol::oracle_nonmember)
                alarms.push_back("membership contradicted by a decisive residual");
            if (!member && rep.verdict.status == SchurStatus::CertifiedNonMember &&
                res.rho < tol::oracle_member)
                alarms.push_back("non-membership contradicted by a decisive residual");
        }
        if (lw.section_norm > lw.bound + tol::littlewood_slack)
            alarms.push_back("section norm exceeds the composition norm bound");
        if (member && norm_violation)
            alarms.push_back("kernel map norm exceeds the composition norm bound");

        ordered_json result{{"invarianceResidual",
                             ordered_json{{"rho", res.rho},
                                          {"tailError", res.tail_error},
                                          {"n", res.n},
                                          {"rank", res.rank},
                                          {"subspaceDim", res.subspace_dim},
                                          {"decisive", res.decisive}}},
                            {"littlewood",
                             ordered_json{{"sectionNorm", lw.section_norm},
                                          {"bound", lw.bound}}},
                            {"kernelRelation",
                             ordered_json{{"maxResidual", kernel_max}, {"perPoint", kernel}}},
                            {"kernelMapNorm", norm_json},
                            {"exact",
                             ordered_json{{"route", route_name(rep.route)},
                                          {"status", status_name(rep.verdict.status)},
                                          {"agreement", rep.agreement}}}};
        ordered_json alarm_json = ordered_json::array();
        for (const std::string& a : alarms) alarm_json.push_back(a);
        result["alarms"] = alarm_json;
        result["sound"] = alarms.empty();

        return emit(report_envelope("oracle", inputs, result), alarms.empty() ? 0 : 4);
    } catch (const Error& e) {
        return emit_error("oracle", inputs, e);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"inner-function invariance toolkit"};
    app.require_subcommand(1);

    std::string map_spec;
    CLI::App* classify = app.add_subcommand("classify", "classify a disk self-map");
    classify->add_option("map", map_spec, "map spec, e.g. mobius(2,1,1,2)")->required();

    std::string theta_spec, phi_spec;
    std::vector<double> radii = {0.5, 0.9, 0.99};
    int angles = 2048;
    double margin = cphi::tol::schur_margin;
    CLI::App* certify = app.add_subcommand("certify", "certify subspace invariance");
    certify->add_option("--theta", theta_spec, "inner function spec")->required();
    certify->add_option("--phi", phi_spec, "map spec")->required();
    certify->add_option("--radii", radii, "sampling radii in (0,1)")->delimiter(',');
    certify->add_option("--angles", angles, "samples per circle");
    certify->add_option("--margin", margin, "witness margin above 1");

    std::string orbit_phi, z_literal, out_path;
    int terms = 1000;
    CLI::App* orbit = app.add_subcommand("orbit", "parabolic orbit decay table");
    orbit->add_option("--phi", orbit_phi, "parabolic map spec")->required();
    orbit->add_option("--z", z_literal, "start point, e.g. 0.3+0.4i")->required();
    orbit->add_option("--terms", terms, "orbit length (at least 10)")->required();
    orbit->add_option("--out", out_path, "CSV output path");

    std::string oracle_theta, oracle_phi;
    int oracle_n = cphi::tol::oracle_N;
    CLI::App* oracle = app.add_subcommand("oracle", "numerical cross-check battery");
    oracle->add_option("--theta", oracle_theta, "inner function spec")->required();
    oracle->add_option("--phi", oracle_phi, "map spec")->required();
    oracle->add_option("-N", oracle_n, "truncation order");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (classify->parsed()) return run_classify(map_spec);
    if (certify->parsed()) return run_certify(theta_spec, phi_spec, radii, angles, margin);
    if (orbit->parsed()) return run_orbit(orbit_phi, z_literal, terms, out_path);
    if (oracle->parsed()) return run_oracle(oracle_theta, oracle_phi, oracle_n);
    return 2;
}
