// Copyright (c) 2026 the wittlift authors.
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

#ifndef WITTLIFT_IO_HPP
#define WITTLIFT_IO_HPP

// Textual interfaces: ring descriptors "W(p=2,r=2,n=3)", group descriptors
// "GSp(4, W(p=2,r=1,n=2))" (with "Res[s](...)" wrappers), generator files
// (one matrix per line, row-major integers, r consecutive integers per ring
// entry), and JSON serialization of the reports.

#include <fstream>
#include <json.hpp>

#include "wittlift/curves.hpp"
#include "wittlift/engine.hpp"

namespace wittlift {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// parsing

namespace detail {

inline std::string strip_spaces(const std::string& s) {
    std::string out;
    for (char c : s)
        if (!isspace((unsigned char)c)) out += c;
    return out;
}

inline u64 parse_u64_field(const std::string& s, size_t& i, const std::string& name) {
    if (s.compare(i, name.size(), name) != 0)
        throw ParseError("expected '" + name + "' in descriptor");
    i += name.size();
    std::string digits;
    while (i < s.size() && isdigit((unsigned char)s[i])) digits += s[i++];
    if (digits.empty()) throw ParseError("expected digits after '" + name + "'");
    return std::stoull(digits);
}

}  // namespace detail

inline const GaloisRing& parse_ring(const std::string& text) {
    std::string s = detail::strip_spaces(text);
    size_t i = 0;
    if (s.compare(0, 2, "W(") != 0) throw ParseError("ring descriptor must start with W(");
    i = 2;
    u64 p = detail::parse_u64_field(s, i, "p=");
    if (i >= s.size() || s[i] != ',') throw ParseError("expected ','");
    ++i;
    u64 r = detail::parse_u64_field(s, i, "r=");
    if (i >= s.size() || s[i] != ',') throw ParseError("expected ','");
    ++i;
    u64 n = detail::parse_u64_field(s, i, "n=");
    if (i >= s.size() || s[i] != ')') throw ParseError("expected ')'");
    return GaloisRing::get(p, (unsigned)r, (unsigned)n);
}

inline GroupDescriptor parse_group_descriptor(const std::string& text) {
    std::string s = detail::strip_spaces(text);
    if (s.compare(0, 4, "Res[") == 0) {
        size_t close = s.find(']');
        if (close == std::string::npos) throw ParseError("expected ']' in Res descriptor");
        unsigned deg = (unsigned)std::stoul(s.substr(4, close - 4));
        if (close + 1 >= s.size() || s[close + 1] != '(' || s.back() != ')')
            throw ParseError("expected parenthesized inner descriptor");
        GroupDescriptor inner =
            parse_group_descriptor(s.substr(close + 2, s.size() - close - 3));
        return weil_restriction_descriptor(inner, deg);
    }
    static const std::vector<std::pair<std::string, GroupFamily>> fams = {
        {"GSO+", GroupFamily::GSOplus}, {"GSO-", GroupFamily::GSOminus},
        {"SO+", GroupFamily::SOplus},   {"SO-", GroupFamily::SOminus},
        {"GSp", GroupFamily::GSp},      {"PGSp", GroupFamily::PGSp},
        {"PGL", GroupFamily::PGL},      {"GL", GroupFamily::GL},
        {"SLmu", GroupFamily::SLmodMu}, {"SL", GroupFamily::SL},
        {"Sp", GroupFamily::Sp},        {"SU", GroupFamily::SU},
        {"U", GroupFamily::U},
    };
    // longest-match family token
    GroupFamily fam = GroupFamily::GL;
    size_t tok_len = 0;
    unsigned qm = 0;
    for (const auto& [tok, f] : fams) {
        if (s.compare(0, tok.size(), tok) == 0 && tok.size() > tok_len) {
            fam = f;
            tok_len = tok.size();
        }
    }
    if (tok_len == 0) throw ParseError("unknown family in group descriptor");
    size_t i = tok_len;
    if (fam == GroupFamily::SLmodMu) {
        std::string digits;
        while (i < s.size() && isdigit((unsigned char)s[i])) digits += s[i++];
        if (digits.empty()) throw ParseError("SLmu needs a quotient modulus, e.g. SLmu2");
        qm = (unsigned)std::stoul(digits);
    }
    if (i >= s.size() || s[i] != '(') throw ParseError("expected '(' after the family");
    ++i;
    std::string digits;
    while (i < s.size() && isdigit((unsigned char)s[i])) digits += s[i++];
    if (digits.empty()) throw ParseError("expected the matrix size");
    unsigned size = (unsigned)std::stoul(digits);
    if (i >= s.size() || s[i] != ',') throw ParseError("expected ','");
    ++i;
    size_t close = s.rfind(')');
    if (close == std::string::npos || close <= i) throw ParseError("expected closing ')'");
    const GaloisRing& R = parse_ring(s.substr(i, close - i));
    return GroupDescriptor::make(fam, size, R, qm);
}

// generator file: one matrix per line, row-major integers, r consecutive
// integers per entry; '#' starts a comment
inline std::vector<Mat> read_generator_file(const GroupDescriptor& D, std::istream& in) {
    std::vector<Mat> out;
    std::string line;
    while (std::getline(in, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ss(line);
        std::vector<i64> vals;
        i64 v;
        while (ss >> v) vals.push_back(v);
        if (vals.empty()) continue;
        out.push_back(Mat::from_flat_ints(*D.ring, D.size, D.size, vals));
    }
    return out;
}

inline std::vector<Mat> read_generator_file(const GroupDescriptor& D, const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw ParseError("cannot open generator file " + path);
    return read_generator_file(D, in);
}

inline void write_generator_file(const std::vector<GroupElt>& gens, std::ostream& out) {
    for (const GroupElt& g : gens) {
        std::vector<u64> v = g.mat().flat_ints();
        for (size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
        out << "\n";
    }
}

// ---------------------------------------------------------------------------
// JSON reports

inline json to_json(const ResidueImageReport& r) {
    json j;
    j["enumerated"] = r.enumerated;
    j["order"] = r.order;
    j["full_order"] = r.full_order.get_str();
    j["full"] = r.full;
    j["contains_derived_points"] = r.contains_derived_points;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline json to_json(const FiltrationReport& f) {
    json j;
    j["residue"] = to_json(f.residue);
    json layers = json::array();
    for (const LayerReport& L : f.layers) {
        json lj;
        lj["layer"] = L.s;
        lj["dimension"] = L.span.dim();
        lj["full"] = L.full;
        layers.push_back(lj);
    }
    j["layers"] = layers;
    j["full_layer_dimension"] = f.full_layer_dim;
    j["exact"] = f.exact;
    j["budget_exhausted"] = f.budget_exhausted;
    j["kernel_elements_processed"] = f.processed;
    return j;
}

inline json to_json(const Hypotheses& h) {
    json j;
    j["abelianization_full"] = h.abelianization_full;
    j["linearly_disjoint"] = h.linearly_disjoint;
    j["notes"] = h.notes;
    return j;
}

inline json to_json(const SurjectivityVerdict& v) {
    json j;
    j["outcome"] = outcome_name(v.outcome);
    j["exit_code"] = v.exit_code();
    if (!v.target.empty()) j["target"] = v.target;
    j["theorem_trail"] = v.trail;
    j["exception_checks"] = v.exception_checks;
    j["hypotheses"] = to_json(v.hypotheses);
    j["witness_level"] = v.witness_level;
    j["layer_dimensions"] = v.layer_dims;
    j["layers_exact"] = v.layers_exact;
    j["residue_order"] = v.residue_order;
    if (v.cokernel_bound) j["cokernel_bound"] = *v.cokernel_bound;
    j["detail"] = v.detail;
    if (!v.missing_subspace.empty()) {
        json ms = json::array();
        for (const FpVec& row : v.missing_subspace) ms.push_back(row);
        j["missing_subspace"] = ms;
    }
    return j;
}

inline json to_json(const IndexDecomposition& ix) {
    json j;
    j["total_index"] = ix.total_index.get_str();
    j["center_split"] = {{"center_factor", ix.center_factor.get_str()},
                         {"quotient_factor", ix.center_quotient.get_str()},
                         {"consistent", ix.center_split_consistent}};
    j["derived_split"] = {{"derived_factor", ix.derived_factor.get_str()},
                          {"ab_factor", ix.ab_factor.get_str()},
                          {"consistent", ix.derived_split_consistent}};
    j["subgroup_order"] = ix.subgroup_order;
    return j;
}

inline json to_json(const ConditionReport& r) {
    json j;
    json checks = json::array();
    for (const ConditionCheck& c : r.checks) {
        json cj;
        cj["key"] = c.key;
        cj["holds"] = c.holds;
        cj["known"] = c.known;
        cj["evidence"] = c.evidence;
        checks.push_back(cj);
    }
    j["checks"] = checks;
    j["applicable"] = {{"2.2.5", r.applicable_2_2_5},   {"2.3", r.applicable_2_3},
                       {"2.4.1a", r.applicable_2_4_1a}, {"2.4.1b", r.applicable_2_4_1b},
                       {"2.4.2a", r.applicable_2_4_2a}, {"2.4.2b", r.applicable_2_4_2b}};
    j["summary"] = r.summary;
    return j;
}

inline json to_json(const GaloisCertificate& c) {
    json j;
    j["degree"] = c.n;
    j["primes_used"] = c.primes_used;
    json pats = json::array();
    for (const auto& p : c.patterns) pats.push_back(p);
    j["patterns"] = pats;
    j["irreducibility_certified"] = c.irreducibility_certified;
    j["n_minus_1_cycle_seen"] = c.n_minus_1_cycle_seen;
    j["n_cycle_seen"] = c.n_cycle_seen;
    j["transposition_pattern_seen"] = c.transposition_pattern_seen;
    j["verdict"] = c.verdict == SnVerdict::Certified  ? "Sn-certified"
                   : c.verdict == SnVerdict::NotSn    ? "not-Sn"
                                                       : "unknown";
    j["witness"] = c.witness;
    return j;
}

inline json to_json(const ImageVerdict& v) {
    json j;
    j["outcome"] = v.outcome == ImageOutcome::Surjective      ? "Surjective"
                   : v.outcome == ImageOutcome::NotSurjective ? "NotSurjective"
                                                              : "Unknown";
    j["d"] = v.d;
    j["target"] = "GSp_" + std::to_string(2 * v.d) + "(Z_2)";
    j["certificate"] = to_json(v.certificate);
    j["discriminant"] = v.disc.disc.get_str();
    j["squarefree_part"] = v.disc.squarefree_part.get_str();
    j["squarefree_part_obstructs"] = v.squarefree_part_obstructs;
    j["theorem_trail"] = v.trail;
    j["condition_ii_reduction"] =
        "with the full symmetric group, the splitting field meets Q(i,sqrt(2)) iff the "
        "squarefree part of the discriminant lies in {-1, 2, -2}";
    j["base_field_is_Q_asserted"] = v.base_field_is_Q_asserted;
    j["detail"] = v.detail;
    return j;
}

inline json to_json(const FrobeniusData& f) {
    json j;
    j["ell"] = f.ell;
    j["genus"] = f.genus;
    j["counts"] = f.counts;
    json l = json::array();
    for (const mpz_class& c : f.lpoly) l.push_back(c.get_str());
    j["lpoly"] = l;
    j["weil_bounds_ok"] = f.weil_bounds_ok;
    j["functional_equation_ok"] = f.functional_equation_ok;
    j["jacobian_order"] = f.jacobian_order.get_str();
    return j;
}

inline json to_json(const Mod2Consistency& m) {
    json j;
    j["pattern"] = m.pattern;
    j["lpoly_mod2"] = m.lpoly_mod2;
    j["permutation_charpoly"] = m.permutation_charpoly;
    j["equal"] = m.equal;
    return j;
}

inline json to_json(const SectionSearchResult& r) {
    json j;
    j["found"] = r.found;
    j["candidates_total"] = r.candidates_total;
    j["rejected_order"] = r.rejected_order;
    j["rejected_relations"] = r.rejected_relations;
    j["rejected_full"] = r.rejected_full;
    j["full_checks"] = r.full_checks;
    j["exhausted"] = r.exhausted;
    return j;
}

}  // namespace wittlift

#endif  // WITTLIFT_IO_HPP
