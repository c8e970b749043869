// Copyright (c) 2026 the wittlift authors.
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

// Command-line entry point: every decision procedure of the library behind
// one dispatcher with structured reports.
//
// Exit codes: 0 full, 10 quotient-full, 20 not surjective, 30 inconclusive
// or budget exceeded, 2 parse/usage error.

#include <CLI11.hpp>

#include <iostream>

#include "wittlift/io.hpp"
#include "wittlift/oracle.hpp"

using namespace wittlift;

namespace {

struct CommonOpts {
    std::string format = "text";
    u64 seed = 0;
    u64 bound = 5000000;
    u64 budget = 2000000;
    unsigned threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--format", c.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--seed", c.seed, "seed recorded in the report (procedures are deterministic)");
    cmd->add_option("--bound", c.bound, "enumeration bound")->check(CLI::PositiveNumber);
    cmd->add_option("--budget", c.budget, "kernel-element budget for layer saturation")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--threads", c.threads, "worker budget (execution stays deterministic)")
        ->check(CLI::PositiveNumber);
}

json report_shell(const CommonOpts& c, const std::string& command) {
    json j;
    j["command"] = command;
    j["seed"] = c.seed;
    j["budgets"] = {{"bound", c.bound}, {"budget", c.budget}, {"threads", c.threads}};
    return j;
}

void emit(const CommonOpts& c, const json& j, const std::string& text) {
    if (c.format == "json")
        std::cout << j.dump(2) << std::endl;
    else
        std::cout << text;
}

EngineOptions engine_options(const CommonOpts& c) {
    EngineOptions o;
    o.enumeration_bound = c.bound;
    o.transversal_bound = c.bound;
    o.kernel_budget = c.budget;
    return o;
}

// automatic condition report for the quotient mode on GL/GSp inputs
ConditionReport default_condition_report(const GroupDescriptor& D) {
    Check24Input in;
    const GaloisRing& R = *D.ring;
    u64 q = 1;
    for (unsigned i = 0; i < R.r; ++i) q *= R.p;
    switch (D.family) {
        case GroupFamily::GL:
            in.datum = dynkin_datum_for(
                GroupDescriptor::make(GroupFamily::PGL, D.size, R.at_level(1)));
            break;
        case GroupFamily::GSp:
            in.datum = dynkin_datum_for(
                GroupDescriptor::make(GroupFamily::PGSp, D.size, R.at_level(1)));
            break;
        default:
            throw UnsupportedFamilyError(
                "automatic condition reports exist for GL and GSp inputs only");
    }
    in.iso = isogeny_decomposition_for(D, R.p);
    in.p = R.p;
    in.q = q;
    in.k1_at_least_4 = q >= 4;
    in.adjoint_split_or_even_unitary = true;
    in.instantiable = D.at_level(1);
    return check_2_4(in);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"surjectivity decisions for matrix groups over p-adic integers "
                 "from finite-level data"};
    app.require_subcommand(1);

    // --- ring ---------------------------------------------------------------
    auto* ring_cmd = app.add_subcommand("ring", "inspect a Galois ring W_n(F_{p^r})");
    std::string ring_desc;
    CommonOpts ring_opts;
    ring_cmd->add_option("--descriptor", ring_desc, "ring descriptor, e.g. W(p=2,r=2,n=3)")
        ->required();
    add_common(ring_cmd, ring_opts);

    // --- group --------------------------------------------------------------
    auto* group_cmd = app.add_subcommand("group", "inspect a group descriptor");
    std::string group_desc;
    bool group_gens = false;
    CommonOpts group_opts;
    group_cmd->add_option("--descriptor", group_desc, "e.g. GSp(4, W(p=2,r=1,n=2))")->required();
    group_cmd->add_flag("--generators", group_gens, "print the standard generators");
    add_common(group_cmd, group_opts);

    // --- lift-check ---------------------------------------------------------
    auto* lift_cmd = app.add_subcommand("lift-check", "decide surjectivity of a generated subgroup");
    std::string lift_group, lift_file, lift_mode = "FULL";
    bool assert_ab = false, assert_ld = false;
    CommonOpts lift_opts;
    lift_cmd->add_option("--group", lift_group, "group descriptor")->required();
    lift_cmd->add_option("--generators", lift_file, "generator file (one matrix per line)")
        ->required();
    lift_cmd->add_option("--mode", lift_mode, "FULL, TILDE, NORMAL_DERIVED or THM_4_1")
        ->check(CLI::IsMember({"FULL", "TILDE", "NORMAL_DERIVED", "THM_4_1"}));
    lift_cmd->add_flag("--assert-ab-full", assert_ab,
                       "assert that the subgroup maps onto the full abelianization");
    lift_cmd->add_flag("--assert-linear-disjoint", assert_ld,
                       "assert the linear-disjointness hypothesis of the rank-one setting");
    add_common(lift_cmd, lift_opts);

    // --- layers ---------------------------------------------------------------
    auto* layers_cmd = app.add_subcommand("layers", "layer filtration of a generated subgroup");
    std::string layers_group, layers_file;
    CommonOpts layers_opts;
    layers_cmd->add_option("--group", layers_group, "group descriptor")->required();
    layers_cmd->add_option("--generators", layers_file, "generator file")->required();
    add_common(layers_cmd, layers_opts);

    // --- criteria -------------------------------------------------------------
    auto* crit_cmd = app.add_subcommand("criteria", "structural condition checks");
    std::string crit_which = "check24", crit_fixture, crit_family;
    u64 crit_q = 0;
    CommonOpts crit_opts;
    crit_cmd->add_option("--check", crit_which, "check225, check23 or check24")
        ->check(CLI::IsMember({"check225", "check23", "check24"}));
    crit_cmd->add_option("--fixture", crit_fixture,
                         "fixture name for check24 (see --fixture list)");
    crit_cmd->add_option("--family", crit_family, "group descriptor for check225/check23");
    crit_cmd->add_option("--q", crit_q, "residue field size for check225/check23");
    add_common(crit_cmd, crit_opts);

    // --- oracle -----------------------------------------------------------------
    auto* oracle_cmd = app.add_subcommand("oracle", "ground-truth enumeration tools");
    std::string oracle_what = "closure", oracle_group, oracle_file;
    unsigned oracle_low = 1;
    CommonOpts oracle_opts;
    oracle_cmd->add_option("--task", oracle_what, "closure, section or factors")
        ->check(CLI::IsMember({"closure", "section", "factors"}));
    oracle_cmd->add_option("--group", oracle_group, "group descriptor")->required();
    oracle_cmd->add_option("--generators", oracle_file,
                           "generator file (closure/factors; defaults to standard generators)");
    oracle_cmd->add_option("--low-level", oracle_low, "target level for section search");
    add_common(oracle_cmd, oracle_opts);

    // --- curve --------------------------------------------------------------------
    auto* curve_cmd = app.add_subcommand("curve", "hyperelliptic 2-adic image tools");
    std::string curve_what = "verdict", curve_poly;
    u64 curve_ell = 5, curve_ell_max = 0;
    unsigned curve_budget = 500;
    CommonOpts curve_opts;
    curve_cmd->add_option("--task", curve_what, "verdict, count, mod2, evidence or quartic")
        ->check(CLI::IsMember({"verdict", "count", "mod2", "evidence", "quartic"}));
    curve_cmd->add_option("--f", curve_poly, "defining polynomial, e.g. x^3-2");
    curve_cmd->add_option("--ell", curve_ell, "odd prime of good reduction");
    curve_cmd->add_option("--ell-max", curve_ell_max, "run over all good primes up to this bound");
    curve_cmd->add_option("--prime-budget", curve_budget, "primes scanned for certification");
    add_common(curve_cmd, curve_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ring_cmd) {
            const GaloisRing& R = parse_ring(ring_desc);
            json j = report_shell(ring_opts, "ring");
            j["descriptor"] = R.to_string();
            j["characteristic"] = R.pn;
            j["residue_field_order"] = [&] {
                u64 q = 1;
                for (unsigned i = 0; i < R.r; ++i) q *= R.p;
                return q;
            }();
            j["modulus_lower_coefficients"] = R.modulus;
            j["unit_group_order"] = unit_group_order(R).get_str();
            std::ostringstream os;
            os << R.to_string() << ": characteristic " << R.pn << ", order p^(r n) with r = "
               << R.r << ", n = " << R.n << ", units " << unit_group_order(R).get_str() << "\n";
            emit(ring_opts, j, os.str());
            return 0;
        }

        if (*group_cmd) {
            GroupDescriptor D = parse_group_descriptor(group_desc);
            json j = report_shell(group_opts, "group");
            j["descriptor"] = D.to_string();
            j["order"] = group_order(D).get_str();
            j["dimension"] = group_dim(D);
            DynkinDatum d = dynkin_datum_for(D);
            j["dynkin"] = {{"type", simple_type_name(d.type)},
                           {"rank", d.rank},
                           {"o", d.o_G},
                           {"o_sc", d.o_Gsc},
                           {"c", d.c_G}};
            std::ostringstream os;
            os << D.to_string() << ": order " << group_order(D).get_str() << ", dimension "
               << group_dim(D) << ", type " << simple_type_name(d.type) << "_" << d.rank
               << ", o = " << d.o_G << ", c = " << d.c_G << "\n";
            if (group_gens) {
                std::vector<GroupElt> gens = standard_generators(D);
                json ga = json::array();
                std::ostringstream gs;
                for (const GroupElt& g : gens) {
                    ga.push_back(g.mat().flat_ints());
                    std::vector<u64> v = g.mat().flat_ints();
                    for (size_t i = 0; i < v.size(); ++i) gs << (i ? " " : "") << v[i];
                    gs << "\n";
                }
                j["generators"] = ga;
                os << gs.str();
            }
            emit(group_opts, j, os.str());
            return 0;
        }

        if (*lift_cmd) {
            GroupDescriptor D = parse_group_descriptor(lift_group);
            std::vector<Mat> gens = read_generator_file(D, lift_file);
            Hypotheses hyp;
            hyp.abelianization_full = assert_ab;
            hyp.linearly_disjoint = assert_ld;
            GeneratedSubgroup K = GeneratedSubgroup::make(D, gens, hyp);
            DecisionMode mode = lift_mode == "FULL"             ? DecisionMode::FULL
                                : lift_mode == "TILDE"          ? DecisionMode::TILDE
                                : lift_mode == "NORMAL_DERIVED" ? DecisionMode::NORMAL_DERIVED
                                                                : DecisionMode::THM_4_1;
            std::optional<ConditionReport> crep;
            if (mode == DecisionMode::TILDE) crep = default_condition_report(D);
            SurjectivityVerdict v = decide_surjectivity(K, mode, engine_options(lift_opts),
                                                        crep ? &*crep : nullptr);
            json j = report_shell(lift_opts, "lift-check");
            j["group"] = D.to_string();
            j["mode"] = lift_mode;
            j["verdict"] = to_json(v);
            if (crep) j["conditions"] = to_json(*crep);
            std::ostringstream os;
            os << outcome_name(v.outcome) << ": " << v.detail << "\n";
            os << "trail:";
            for (const auto& t : v.trail) os << " " << t;
            os << "\n";
            emit(lift_opts, j, os.str());
            return v.exit_code();
        }

        if (*layers_cmd) {
            GroupDescriptor D = parse_group_descriptor(layers_group);
            std::vector<Mat> gens = read_generator_file(D, layers_file);
            GeneratedSubgroup K = GeneratedSubgroup::make(D, gens);
            FiltrationReport F = layer_filtration(K, engine_options(layers_opts));
            json j = report_shell(layers_opts, "layers");
            j["group"] = D.to_string();
            j["filtration"] = to_json(F);
            std::ostringstream os;
            os << "residue order " << F.residue.order << (F.residue.full ? " (full)" : "")
               << "\n";
            for (const LayerReport& L : F.layers)
                os << "layer " << L.s << ": dimension " << L.span.dim() << "/"
                   << F.full_layer_dim << (L.full ? " (full)" : "") << "\n";
            os << (F.exact ? "filtration exact\n" : "filtration truncated\n");
            emit(layers_opts, j, os.str());
            return F.exact ? 0 : 30;
        }

        if (*crit_cmd) {
            json j = report_shell(crit_opts, "criteria");
            std::ostringstream os;
            int rc = 0;
            if (crit_which == "check24") {
                if (crit_fixture == "list" || crit_fixture.empty()) {
                    j["fixtures"] = criteria_fixture_names();
                    for (const auto& n : criteria_fixture_names()) os << n << "\n";
                } else {
                    FixtureOutcome out = evaluate_criteria_fixture(crit_fixture);
                    j["fixture"] = crit_fixture;
                    j["report"] = to_json(out.report);
                    j["matches_expectation"] = out.matches;
                    os << crit_fixture << ": " << out.report.summary
                       << (out.matches ? " [matches expectation]" : " [MISMATCH]") << "\n";
                    for (const auto& c : out.report.checks)
                        os << "  " << c.key << ": " << (c.holds ? "pass" : "fail") << " ("
                           << c.evidence << ")\n";
                    rc = out.matches ? 0 : 20;
                }
            } else {
                if (crit_family.empty() || crit_q == 0)
                    throw ParseError("check225/check23 need --family and --q");
                GroupDescriptor D = parse_group_descriptor(crit_family);
                DynkinDatum d = dynkin_datum_for(D);
                ConditionReport rep = (crit_which == "check225") ? check_2_2_5(d, crit_q)
                                                                 : check_2_3_exceptions(d, crit_q);
                j["family"] = D.to_string();
                j["q"] = crit_q;
                j["report"] = to_json(rep);
                os << rep.summary << "\n";
                for (const auto& c : rep.checks)
                    os << "  " << c.key << ": " << (c.holds ? "pass" : "fail") << " ("
                       << c.evidence << ")\n";
                bool ok = (crit_which == "check225") ? rep.applicable_2_2_5 : rep.applicable_2_3;
                rc = ok ? 0 : 20;
            }
            emit(crit_opts, j, os.str());
            return rc;
        }

        if (*oracle_cmd) {
            GroupDescriptor D = parse_group_descriptor(oracle_group);
            json j = report_shell(oracle_opts, "oracle");
            j["group"] = D.to_string();
            std::ostringstream os;
            std::vector<Mat> gens;
            if (!oracle_file.empty())
                gens = read_generator_file(D, oracle_file);
            else
                for (const GroupElt& g : standard_generators(D)) gens.push_back(g.mat());
            if (oracle_what == "closure") {
                EnumeratedGroup G = enumerate_closure(D, gens, oracle_opts.bound);
                j["closure_order"] = G.size();
                j["full_order"] = group_order(D).get_str();
                os << "closure order " << G.size() << " of " << group_order(D).get_str()
                   << "\n";
            } else if (oracle_what == "factors") {
                EnumeratedGroup G = enumerate_closure(D, gens, oracle_opts.bound);
                auto f = composition_factors(G);
                json fj = json::array();
                for (const auto& x : f) {
                    fj.push_back({{"order", x.order}, {"abelian", x.abelian},
                                  {"simple", x.simple}});
                    os << "factor of order " << x.order << (x.abelian ? " (abelian)" : "")
                       << (x.simple && !x.abelian ? " (non-abelian simple)" : "") << "\n";
                }
                j["composition_factors"] = fj;
            } else {
                SectionSearchResult r = find_section(D, oracle_low, oracle_opts.bound);
                j["section"] = to_json(r);
                os << (r.found ? "section found" : "no section") << "; candidates "
                   << r.candidates_total << ", rejected " << r.rejected_order << "/"
                   << r.rejected_relations << "/" << r.rejected_full
                   << (r.exhausted ? " (exhaustion certified)" : "") << "\n";
            }
            emit(oracle_opts, j, os.str());
            return 0;
        }

        if (*curve_cmd) {
            json j = report_shell(curve_opts, "curve");
            std::ostringstream os;
            if (curve_what == "quartic") {
                std::vector<i64> q = {1, 1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 1, 0, 0, 0};
                json counts = json::array();
                for (unsigned e = 1; e <= 3; ++e) {
                    u64 c = count_plane_quartic(q, curve_ell, e);
                    counts.push_back({{"extension", e}, {"count", c}});
                    os << "points over F_{" << curve_ell << "^" << e << "}: " << c << "\n";
                }
                j["plane_quartic_counts"] = counts;
                emit(curve_opts, j, os.str());
                return 0;
            }
            if (curve_poly.empty()) throw ParseError("--f is required");
            IntPoly f = parse_poly(curve_poly);
            j["polynomial"] = f.to_string();
            if (curve_what == "verdict") {
                int deg = f.degree();
                if (deg != 3 && deg != 6)
                    throw BadDegreeError("the verdict needs degree 3 or 6");
                unsigned d = (deg == 3) ? 1 : 2;
                ImageVerdict v = verdict_4_2_1(f, d, true, curve_budget);
                j["verdict"] = to_json(v);
                os << (v.outcome == ImageOutcome::Surjective      ? "Surjective"
                       : v.outcome == ImageOutcome::NotSurjective ? "NotSurjective"
                                                                  : "Unknown")
                   << ": " << v.detail << "\n";
                emit(curve_opts, j, os.str());
                return v.outcome == ImageOutcome::Surjective      ? 0
                       : v.outcome == ImageOutcome::NotSurjective ? 20
                                                                  : 30;
            }
            if (curve_what == "count") {
                FrobeniusData fd = count_points_lpoly(f, curve_ell);
                j["frobenius"] = to_json(fd);
                os << "counts:";
                for (u64 c : fd.counts) os << " " << c;
                os << "\nL:";
                for (const auto& c : fd.lpoly) os << " " << c.get_str();
                os << "\njacobian order " << fd.jacobian_order.get_str() << "\n";
                emit(curve_opts, j, os.str());
                return 0;
            }
            if (curve_what == "mod2") {
                Mod2Consistency m = mod2_consistency(f, curve_ell);
                j["mod2"] = to_json(m);
                os << "pattern:";
                for (unsigned p : m.pattern) os << " " << p;
                os << "\nequal: " << (m.equal ? "yes" : "no") << "\n";
                emit(curve_opts, j, os.str());
                return m.equal ? 0 : 20;
            }
            // evidence: per-prime table up to ell-max
            u64 maxell = curve_ell_max ? curve_ell_max : 50;
            json rows = json::array();
            mpz_class bad = discriminant(f) * f.lead();
            for (u64 ell = 3; ell <= maxell; ell += 2) {
                if (!wittlift::detail::is_prime_u64(ell)) continue;
                if (bad % (long)ell == 0) continue;
                FrobeniusData fd = count_points_lpoly(f, ell);
                json row = to_json(fd);
                if (f.degree() == 3 || f.degree() == 5 || f.degree() == 6) {
                    Mod2Consistency m = mod2_consistency(f, ell);
                    row["mod2_equal"] = m.equal;
                }
                rows.push_back(row);
                os << "ell = " << ell << ": counts";
                for (u64 c : fd.counts) os << " " << c;
                os << "\n";
            }
            j["evidence"] = rows;
            emit(curve_opts, j, os.str());
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetExhaustedError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 30;
    } catch (const BoundExceededError& e) {
        std::cerr << "bound exceeded: " << e.what() << "\n";
        return 30;
    } catch (const TooLargeError& e) {
        std::cerr << "too large: " << e.what() << "\n";
        return 30;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
