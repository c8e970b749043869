// Copyright (c) 2026 the wittlift authors.
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

#ifndef WITTLIFT_ENGINE_HPP
#define WITTLIFT_ENGINE_HPP

// The decision core: residue images of generated subgroups, congruence-layer
// filtrations by Schreier kernel generators plus saturation (addition,
// adjoint action, brackets, p-th-power promotion), surjectivity verdicts, and
// finite-level index decompositions.
//
// Soundness contract: every vector placed in a layer span is realized by an
// explicit group element of the subgroup, so "layers full" certificates are
// always sound.  Layer spans are exact when the saturation fixpoint completes
// within budget; a truncated run degrades every verdict that would rely on
// exactness to Inconclusive instead of overclaiming.

#include "wittlift/criteria.hpp"
#include "wittlift/oracle.hpp"

namespace wittlift {

struct Hypotheses {
    bool abelianization_full = false;  // K maps onto the full abelianization
    bool linearly_disjoint = false;    // the field hypothesis of the rank-one setting
    std::vector<std::string> notes;
};

struct GeneratedSubgroup {
    GroupDescriptor D;  // descriptor at the working level N
    std::vector<GroupElt> generators;
    Hypotheses hypotheses;

    unsigned level() const { return D.ring->n; }

    static GeneratedSubgroup make(const GroupDescriptor& D, const std::vector<Mat>& gens,
                                  Hypotheses hyp = {}) {
        GeneratedSubgroup K;
        K.D = D;
        K.hypotheses = std::move(hyp);
        for (const Mat& m : gens) K.generators.push_back(GroupElt::make(D, m));
        return K;
    }
};

struct EngineOptions {
    u64 enumeration_bound = 5000000;   // elements for oracle-grade BFS
    u64 transversal_bound = 2000000;   // residue transversal nodes
    u64 kernel_budget = 2000000;       // kernel elements processed in saturation
    unsigned early_exit_full_upto = 0; // 0 = none: stop when layers 1..k are full
};

// ---------------------------------------------------------------------------
// residue image

struct ResidueImageReport {
    bool enumerated = false;
    u64 order = 0;
    mpz_class full_order;
    bool full = false;
    bool contains_derived_points = false;  // image of the cover's points is inside
    std::string note;
};

inline ResidueImageReport residue_image(const GeneratedSubgroup& K,
                                        const EngineOptions& opt = {}) {
    ResidueImageReport rep;
    GroupDescriptor Dk = K.D.at_level(1);
    rep.full_order = group_order(Dk);
    std::vector<Mat> gens;
    for (const GroupElt& g : K.generators) gens.push_back(g.reduce(1).mat());
    try {
        EnumeratedGroup img = enumerate_closure(Dk, gens, opt.enumeration_bound);
        rep.enumerated = true;
        rep.order = img.size();
        rep.full = (mpz_class((unsigned long)img.size()) == rep.full_order);
        // does the image contain the points coming from the cover?
        try {
            GroupFamily cf = GroupFamily::SL;
            bool has_cover = true;
            switch (Dk.family) {
                case GroupFamily::GL: cf = GroupFamily::SL; break;
                case GroupFamily::GSp:
                case GroupFamily::PGSp: cf = GroupFamily::Sp; break;
                case GroupFamily::PGL:
                case GroupFamily::SLmodMu: cf = GroupFamily::SL; break;
                case GroupFamily::SL: cf = GroupFamily::SL; break;
                case GroupFamily::Sp: cf = GroupFamily::Sp; break;
                default: has_cover = false; break;
            }
            if (has_cover) {
                GroupDescriptor cover = GroupDescriptor::make(cf, Dk.size, *Dk.ring);
                bool inside = true;
                for (const GroupElt& cg : standard_generators(cover)) {
                    Mat m = canonical_rep(Dk, cg.mat());
                    if (!img.contains(m)) { inside = false; break; }
                }
                // generators inside a subgroup force the whole cover image in
                rep.contains_derived_points = inside;
            }
        } catch (const Error&) {
            rep.note = "cover containment not evaluated";
        }
    } catch (const BoundExceededError&) {
        rep.enumerated = false;
        rep.note = "residue group above the enumeration bound";
    }
    return rep;
}

// ---------------------------------------------------------------------------
// layer filtration

struct LayerReport {
    unsigned s = 1;
    FpSpan span;
    std::vector<Mat> realizers;  // level-N matrices, decode at s = span row
    bool full = false;
};

struct FiltrationReport {
    ResidueImageReport residue;
    std::vector<LayerReport> layers;  // index 0 <-> layer 1
    bool exact = false;               // fixpoint completed within budget
    bool budget_exhausted = false;
    u64 processed = 0;
    unsigned full_layer_dim = 0;  // r * dim(G): the full F_p dimension per layer
    u64 p_char = 2;

    bool layer_full(unsigned s) const { return layers[s - 1].full; }

    // |K mod p^N| = |residue| * prod_s p^{dim span_s}; meaningful when exact
    mpz_class subgroup_order_at_level() const {
        mpz_class o((unsigned long)residue.order);
        for (const LayerReport& L : layers)
            o *= mpz_pow_u(mpz_class((unsigned long)p_char), L.span.dim());
        return o;
    }
};

namespace detail {

struct FiltrationWork {
    const GroupDescriptor* D = nullptr;
    const GaloisRing* R = nullptr;
    unsigned N = 0;
    unsigned flat_dim = 0;
    u64 p = 2;
    unsigned full_dim = 0;  // r * group_dim
    std::vector<LayerReport>* layers = nullptr;
    std::vector<GroupElt> gens;  // level-N generators
    u64 processed = 0;
    u64 budget = 0;
    unsigned early_upto = 0;
    bool stop = false;
    bool budget_exhausted = false;

    bool layers_full_upto(unsigned k) const {
        for (unsigned s = 1; s <= k; ++s)
            if (!(*layers)[s - 1].full) return false;
        return true;
    }

    void maybe_stop() {
        if (early_upto && layers_full_upto(early_upto)) stop = true;
    }

    // insert a kernel element; drill down when its decode is dependent
    void process(Mat z) {
        if (stop) return;
        if (++processed > budget) {
            budget_exhausted = true;
            stop = true;
            return;
        }
        for (;;) {
            Mat diff = z - Mat::identity(*R, z.rows());
            if (diff.is_zero()) return;  // the identity carries no information
            unsigned v = diff.valuation();
            if (v >= N) return;
            if (v == 0) throw Error("filtration: non-kernel element reached the layer engine");
            LayerReport& L = (*layers)[v - 1];
            GroupElt ge = GroupElt::unchecked(*D, z);
            Mat X = layer_decode(*D, ge, v);
            FpVec flat = fp_flatten(X);
            std::vector<u64> dep;
            u64 norm = 1;
            auto idx = L.span.insert(flat, &dep, &norm);
            if (idx.has_value()) {
                // realizer for the normalized stored row
                Mat r = z;
                for (size_t k2 = 0; k2 < dep.size(); ++k2) {
                    if (!dep[k2]) continue;
                    Mat adj = mat_pow(L.realizers[k2], (u64)(p - dep[k2] % p));
                    r = canonical_rep(*D, r * adj);
                }
                r = mat_pow(r, norm % p);
                L.realizers.push_back(r);
                L.full = (L.span.dim() == full_dim);
                new_realizers.emplace_back(v, L.realizers.size() - 1);
                maybe_stop();
                return;
            }
            if (dep.empty()) return;
            // dependent: strip the span part and go deeper
            Mat r = z;
            bool moved = false;
            for (size_t k2 = 0; k2 < dep.size(); ++k2) {
                if (!dep[k2]) continue;
                Mat adj = mat_pow(L.realizers[k2], (u64)(p - dep[k2] % p));
                r = canonical_rep(*D, r * adj);
                moved = true;
            }
            if (!moved) return;
            z = r;
        }
    }

    std::vector<std::pair<unsigned, size_t>> new_realizers;  // (layer, index)
};

}  // namespace detail

inline FiltrationReport layer_filtration(const GeneratedSubgroup& K,
                                         const EngineOptions& opt = {}) {
    const GroupDescriptor& D = K.D;
    const GaloisRing& R = *D.ring;
    unsigned N = R.n;
    FiltrationReport rep;
    rep.residue = residue_image(K, opt);
    rep.full_layer_dim = R.r * group_dim(D);
    rep.p_char = R.p;
    for (unsigned s = 1; s < N; ++s) {
        LayerReport L;
        L.s = s;
        L.span = FpSpan(R.p, (size_t)D.size * D.size * R.r);
        rep.layers.push_back(L);
    }
    if (N == 1) {
        rep.exact = rep.residue.enumerated;
        return rep;
    }
    if (!rep.residue.enumerated) {
        rep.exact = false;
        rep.budget_exhausted = true;
        return rep;
    }

    detail::FiltrationWork W;
    W.D = &D;
    W.R = &R;
    W.N = N;
    W.flat_dim = D.size * D.size * R.r;
    W.p = R.p;
    W.full_dim = rep.full_layer_dim;
    W.layers = &rep.layers;
    for (const GroupElt& g : K.generators) W.gens.push_back(g);
    W.budget = opt.kernel_budget;
    W.early_upto = opt.early_exit_full_upto;

    // residue transversal with level-N representatives (BFS over the residue
    // image, nodes keyed by residue class)
    GroupDescriptor Dk = D.at_level(1);
    struct Node {
        std::string key_high;  // level-N packed matrix
    };
    std::vector<Node> nodes;
    std::unordered_map<std::string, u32> res_index;
    {
        Mat idh = canonical_rep(D, Mat::identity(R, D.size));
        nodes.push_back({idh.key()});
        res_index.emplace(canonical_rep(Dk, idh.reduce(1)).key(), 0);
        std::deque<u32> todo{0};
        while (!todo.empty() && !W.stop) {
            u32 cur = todo.front();
            todo.pop_front();
            Mat curm = Mat::from_key(R, D.size, D.size, nodes[cur].key_high);
            for (const GroupElt& g : W.gens) {
                Mat nxt = canonical_rep(D, curm * g.mat());
                std::string rkey = canonical_rep(Dk, nxt.reduce(1)).key();
                auto it = res_index.find(rkey);
                if (it == res_index.end()) {
                    if (nodes.size() >= opt.transversal_bound) {
                        rep.budget_exhausted = true;
                        W.stop = true;
                        break;
                    }
                    u32 id2 = (u32)nodes.size();
                    nodes.push_back({nxt.key()});
                    res_index.emplace(rkey, id2);
                    todo.push_back(id2);
                } else {
                    // Schreier generator: T(t) g T(t g)^{-1}
                    Mat t2 = Mat::from_key(R, D.size, D.size, nodes[it->second].key_high);
                    auto t2inv = t2.inverse();
                    if (!t2inv) throw NotInvertibleError("transversal element not invertible");
                    W.process(canonical_rep(D, nxt * *t2inv));
                    if (W.stop) break;
                }
            }
        }
    }

    // saturation moves applied once per realizer
    size_t cursor = 0;
    while (cursor < W.new_realizers.size() && !W.stop) {
        auto [s, idx] = W.new_realizers[cursor++];
        Mat r = (*W.layers)[s - 1].realizers[idx];
        // adjoint action by the subgroup generators
        for (const GroupElt& g : W.gens) {
            auto gi = g.mat().inverse();
            if (!gi) continue;
            W.process(canonical_rep(D, g.mat() * r * *gi));
            if (W.stop) break;
        }
        if (W.stop) break;
        // p-th power promotion
        if (s + 1 < N) W.process(mat_pow(r, W.p));
        if (W.stop) break;
        // brackets with every known realizer at compatible depth
        for (unsigned s2 = 1; s2 < N && !W.stop; ++s2) {
            if (s + s2 >= N) continue;
            LayerReport& L2 = (*W.layers)[s2 - 1];
            for (size_t j = 0; j < L2.realizers.size() && !W.stop; ++j) {
                const Mat& r2 = L2.realizers[j];
                auto ri = r.inverse();
                auto r2i = r2.inverse();
                if (!ri || !r2i) continue;
                W.process(canonical_rep(D, r * r2 * *ri * *r2i));
            }
        }
    }

    rep.processed = W.processed;
    rep.budget_exhausted = rep.budget_exhausted || W.budget_exhausted;
    bool early_stop = W.early_upto && W.layers_full_upto(W.early_upto);
    rep.exact = !rep.budget_exhausted && !early_stop;
    if (early_stop) rep.exact = false;  // spans below the cut are still sound lower bounds
    for (LayerReport& L : rep.layers) L.full = (L.span.dim() == rep.full_layer_dim);
    return rep;
}

// ---------------------------------------------------------------------------
// verdicts

enum class Outcome { FullGroup, FullOnQuotient, NormalSubgroupContained, NotSurjective,
                     Inconclusive };

enum class DecisionMode { FULL, TILDE, NORMAL_DERIVED, THM_4_1 };

inline std::string outcome_name(Outcome o) {
    switch (o) {
        case Outcome::FullGroup: return "FullGroup";
        case Outcome::FullOnQuotient: return "FullOnQuotient";
        case Outcome::NormalSubgroupContained: return "NormalSubgroupContained";
        case Outcome::NotSurjective: return "NotSurjective";
        case Outcome::Inconclusive: return "Inconclusive";
    }
    return "?";
}

inline int outcome_exit_code(Outcome o) {
    switch (o) {
        case Outcome::FullGroup: return 0;
        case Outcome::FullOnQuotient: return 10;
        case Outcome::NormalSubgroupContained: return 10;
        case Outcome::NotSurjective: return 20;
        case Outcome::Inconclusive: return 30;
    }
    return 30;
}

struct SurjectivityVerdict {
    Outcome outcome = Outcome::Inconclusive;
    std::string target;                       // named group for quotient/normal outcomes
    std::vector<std::string> trail;           // rule keys, in application order
    std::vector<std::string> exception_checks;  // consulted exception lists
    Hypotheses hypotheses;                     // echoed asserted hypotheses
    unsigned witness_level = 0;                // for NotSurjective
    std::vector<FpVec> missing_subspace;       // complement basis at the witness layer
    std::vector<unsigned> layer_dims;
    bool layers_exact = false;
    std::string detail;
    u64 residue_order = 0;
    std::optional<u64> cokernel_bound;         // parenthetical derived mode

    int exit_code() const { return outcome_exit_code(outcome); }
};

namespace detail {

inline std::vector<FpVec> complement_basis(const FpSpan& span, const std::vector<Mat>& fullb) {
    std::vector<FpVec> out;
    FpSpan acc = span;
    for (const Mat& b : fullb) {
        FpVec v = fp_flatten(b);
        if (acc.insert(v).has_value()) out.push_back(v);
    }
    return out;
}

inline GroupDescriptor adjoint_descriptor(const GroupDescriptor& D) {
    switch (D.family) {
        case GroupFamily::GL:
        case GroupFamily::SL:
        case GroupFamily::PGL:
        case GroupFamily::SLmodMu:
            return GroupDescriptor::make(GroupFamily::PGL, D.size, *D.ring);
        case GroupFamily::GSp:
        case GroupFamily::Sp:
        case GroupFamily::PGSp:
            return GroupDescriptor::make(GroupFamily::PGSp, D.size, *D.ring);
        default: throw UnsupportedFamilyError("no adjoint quotient descriptor for this family");
    }
}

inline GroupDescriptor derived_descriptor(const GroupDescriptor& D) {
    switch (D.family) {
        case GroupFamily::GL: return GroupDescriptor::make(GroupFamily::SL, D.size, *D.ring);
        case GroupFamily::SL: return D;
        case GroupFamily::GSp: return GroupDescriptor::make(GroupFamily::Sp, D.size, *D.ring);
        case GroupFamily::Sp: return D;
        case GroupFamily::GSOplus:
            return GroupDescriptor::make(GroupFamily::SOplus, D.size, *D.ring);
        case GroupFamily::GSOminus:
            return GroupDescriptor::make(GroupFamily::SOminus, D.size, *D.ring);
        default: throw UnsupportedFamilyError("no derived descriptor for this family");
    }
}

// order of the adjoint residue image of K (image in G/Z^0 over the residue
// field), via scalar-class canonicalization
inline u64 adjoint_residue_order(const GeneratedSubgroup& K, u64 bound) {
    GroupDescriptor adj = adjoint_descriptor(K.D.at_level(1));
    std::vector<Mat> gens;
    for (const GroupElt& g : K.generators) gens.push_back(canonical_rep(adj, g.reduce(1).mat()));
    EnumeratedGroup img = enumerate_closure(adj, gens, bound);
    return img.size();
}

}  // namespace detail

inline SurjectivityVerdict decide_surjectivity(const GeneratedSubgroup& K, DecisionMode mode,
                                               const EngineOptions& opt = {},
                                               const ConditionReport* criteria_report = nullptr) {
    const GroupDescriptor& D = K.D;
    const GaloisRing& R = *D.ring;
    u64 p = R.p;
    unsigned N = R.n;
    SurjectivityVerdict v;
    v.hypotheses = K.hypotheses;

    switch (mode) {
        case DecisionMode::FULL: {
            unsigned threshold = (p == 2) ? 3 : 2;
            if (N < threshold)
                throw BadLevelError("the lifting criterion needs level >= " +
                                    std::to_string(threshold));
            EngineOptions o2 = opt;
            o2.early_exit_full_upto = threshold - 1;
            FiltrationReport F = layer_filtration(K, o2);
            v.residue_order = F.residue.order;
            for (const LayerReport& L : F.layers) v.layer_dims.push_back((unsigned)L.span.dim());
            v.layers_exact = F.exact;
            if (F.residue.enumerated && !F.residue.full) {
                v.outcome = Outcome::NotSurjective;
                v.witness_level = 0;
                v.trail = {"2.2.1a"};
                v.detail = "residue image has order " + std::to_string(F.residue.order) +
                           " < " + F.residue.full_order.get_str();
                return v;
            }
            if (!F.residue.enumerated) {
                v.outcome = Outcome::Inconclusive;
                v.detail = "residue image not enumerable within bounds";
                return v;
            }
            bool full_upto = true;
            for (unsigned s = 1; s < threshold; ++s)
                if (!F.layer_full(s)) full_upto = false;
            if (full_upto) {
                v.outcome = Outcome::FullGroup;
                v.target = D.to_string() + " at all levels";
                v.trail = {"2.2.1a"};
                v.detail = "residue image full and layers 1.." +
                           std::to_string(threshold - 1) + " full";
                return v;
            }
            if (F.exact) {
                unsigned bad = 1;
                for (unsigned s = 1; s < threshold; ++s)
                    if (!F.layer_full(s)) { bad = s; break; }
                v.outcome = Outcome::NotSurjective;
                v.witness_level = bad;
                v.trail = {"2.2.1a"};
                v.missing_subspace =
                    detail::complement_basis(F.layers[bad - 1].span, lie_basis_fp(D));
                v.detail = "layer " + std::to_string(bad) + " has dimension " +
                           std::to_string(F.layers[bad - 1].span.dim()) + " < " +
                           std::to_string(F.full_layer_dim);
                return v;
            }
            v.outcome = Outcome::Inconclusive;
            v.detail = "saturation budget exhausted before certifying the layers";
            return v;
        }

        case DecisionMode::THM_4_1: {
            if (D.family != GroupFamily::GSp)
                throw UnsupportedFamilyError("the rank-one verdict expects a GSp family");
            unsigned d = D.size / 2;
            if ((p == 2 && d < 3) || (p == 3 && d < 2))
                throw BadLevelError("dimension constraints: p=2 needs d>=3, p=3 needs d>=2");
            if (R.r != 1)
                throw UnsupportedFamilyError("the rank-one verdict works over W(F_p)");
            if (!K.hypotheses.linearly_disjoint)
                throw HypothesisMissingError(
                    "assert the linear-disjointness hypothesis to use this mode");
            GroupDescriptor adj =
                GroupDescriptor::make(GroupFamily::PGSp, D.size, R.at_level(1));
            u64 got = detail::adjoint_residue_order(K, opt.enumeration_bound);
            mpz_class want = group_order(adj);
            v.residue_order = got;
            v.trail = {"2.2.4", "2.2.3", "2.3", "4.1"};
            v.exception_checks.push_back("derived-descent list consulted at q = p: PGSp_" +
                                         std::to_string(D.size) +
                                         (p == 2 && d == 2 ? " excluded" : " not excluded"));
            if (mpz_class((unsigned long)got) == want) {
                v.outcome = Outcome::FullGroup;
                v.target = "GSp_" + std::to_string(D.size) + "(Z_" + std::to_string(p) + ")";
                v.detail = "mod-p image surjects onto the adjoint points (order " +
                           std::to_string(got) + ")";
            } else {
                v.outcome = Outcome::NotSurjective;
                v.witness_level = 0;
                v.detail = "adjoint residue image has order " + std::to_string(got) + " < " +
                           want.get_str();
            }
            return v;
        }

        case DecisionMode::NORMAL_DERIVED: {
            GroupDescriptor F = detail::derived_descriptor(D);
            DynkinDatum datum = dynkin_datum_for(F);
            u64 q = 1;
            for (unsigned i = 0; i < R.r; ++i) q *= p;
            ConditionReport c23 = check_2_3_exceptions(datum, q);
            v.exception_checks.push_back("derived-descent exception list at q = " +
                                         std::to_string(q));
            for (const auto& c : c23.checks)
                if (!c.holds && c.key == "2.3(list)")
                    throw ExceptionListHitError(c.evidence);
            if (!c23.applicable_2_3)
                throw ExceptionListHitError("gcd(p, c(F)) != 1: " + c23.checks[0].evidence);
            // hypothesis: the residue image contains F(k) (or F(k)')
            GroupDescriptor Dk = D.at_level(1);
            GroupDescriptor Fk = F.at_level(1);
            std::vector<Mat> kgens;
            for (const GroupElt& g : K.generators) kgens.push_back(g.reduce(1).mat());
            EnumeratedGroup img = enumerate_closure(Dk, kgens, opt.enumeration_bound);
            v.residue_order = img.size();
            EnumeratedGroup fgrp = enumerate_group(Fk, opt.enumeration_bound);
            bool contains = true;
            // the derived family is scalar-free, so its canonical keys agree
            // with the ambient family's
            for (u32 i = 0; i < fgrp.size(); ++i)
                if (!img.contains_key(fgrp.keys[i])) { contains = false; break; }
            if (!contains) {
                v.outcome = Outcome::Inconclusive;
                v.trail = {"2.3"};
                v.detail = "the residue image does not contain the derived points F(k)";
                return v;
            }
            v.outcome = Outcome::NormalSubgroupContained;
            v.target = F.to_string() + " at all levels";
            v.trail = {"2.2.4", "2.2.3", "2.3"};
            // in the parenthetical reading the cokernel order divides the
            // order of the kernel of the covering isogeny
            v.cokernel_bound = datum.o_Gsc / datum.o_G;
            v.detail = "derived descent applies: K contains " + F.to_string() +
                       " as a normal subgroup at every level";
            return v;
        }

        case DecisionMode::TILDE: {
            if (!criteria_report)
                throw HypothesisMissingError("the quotient mode needs a condition report");
            if (!K.hypotheses.abelianization_full)
                throw HypothesisMissingError(
                    "assert the abelianization-fullness hypothesis to use this mode");
            bool route_a = (p > 2) && criteria_report->applicable_2_4_1a;
            bool route_b = (p == 2) && criteria_report->applicable_2_4_1b;
            bool route_2a = criteria_report->applicable_2_4_2a;
            bool route_2b = criteria_report->applicable_2_4_2b;
            if (!route_a && !route_b && !route_2a && !route_2b) {
                v.outcome = Outcome::Inconclusive;
                v.detail = "no quotient-surjectivity route applies: " + criteria_report->summary;
                return v;
            }
            GroupDescriptor adjk = detail::adjoint_descriptor(D.at_level(1));
            u64 got = detail::adjoint_residue_order(K, opt.enumeration_bound);
            v.residue_order = got;
            if (mpz_class((unsigned long)got) != group_order(adjk)) {
                v.outcome = Outcome::NotSurjective;
                v.witness_level = 0;
                v.trail = {route_a ? "2.4.1a" : route_b ? "2.4.1b" : route_2a ? "2.4.2a"
                                                                              : "2.4.2b"};
                v.detail = "the residue image does not surject onto the adjoint points";
                return v;
            }
            // p = 2 needs the level-3 layer of the adjoint image; under the
            // (vb) route it must moreover be a k1-subspace
            if (p == 2) {
                if (N < 3) throw BadLevelError("the p = 2 quotient mode needs level >= 3");
                GroupDescriptor adj3 = detail::adjoint_descriptor(D.at_level(3));
                std::vector<Mat> agens;
                for (const GroupElt& g : K.generators)
                    agens.push_back(canonical_rep(adj3, g.reduce(3).mat()));
                GeneratedSubgroup Kadj;
                Kadj.D = adj3;
                for (const Mat& m : agens) Kadj.generators.push_back(GroupElt::unchecked(adj3, m));
                FiltrationReport F3 = layer_filtration(Kadj, opt);
                if (!F3.exact) {
                    v.outcome = Outcome::Inconclusive;
                    v.detail = "the adjoint layer filtration was truncated";
                    return v;
                }
                const FpSpan& K32 = F3.layers[1].span;
                for (const LayerReport& L : F3.layers)
                    v.layer_dims.push_back((unsigned)L.span.dim());
                v.layers_exact = true;
                bool va_route = criteria_report->holds("2.4(va)");
                if (!va_route) {
                    // (vb): K32 must be a k1-vector subspace
                    const GaloisRing& k = adj3.ring->residue_field();
                    bool stable = true;
                    for (const FpVec& row : K32.basis()) {
                        Mat X = fp_unflatten(k, D.size, D.size, row);
                        Mat tX = lie_canonicalize(adjk, X.scaled(k.gen()));
                        if (!K32.contains(fp_flatten(tX))) { stable = false; break; }
                    }
                    if (!stable) {
                        v.outcome = Outcome::Inconclusive;
                        v.trail = {"2.4.1b"};
                        v.detail =
                            "the level-3 layer of the adjoint image is not a k1-subspace; "
                            "the (vb) route cannot conclude";
                        return v;
                    }
                    v.trail.push_back("2.4(vb)");
                }
            }
            v.outcome = Outcome::FullOnQuotient;
            GroupDescriptor adj = detail::adjoint_descriptor(D);
            v.target = adj.to_string() + " at all levels";
            v.trail.insert(v.trail.begin(), route_b   ? "2.4.1b"
                                            : route_a ? "2.4.1a"
                                            : route_2a ? "2.4.2a"
                                                       : "2.4.2b");
            v.detail = "quotient surjectivity: the image covers " + adj.to_string();
            return v;
        }
    }
    return v;
}

// ---------------------------------------------------------------------------
// index decomposition

struct IndexDecomposition {
    mpz_class total_index = 1;
    mpz_class center_factor = 1;    // [T(R) : K cap T]
    mpz_class center_quotient = 1;  // [G~(R) : image of K]
    mpz_class derived_factor = 1;   // [G^der(R) : K^d]
    mpz_class ab_factor = 1;        // [G^ab(R) : K^ab]
    bool center_split_consistent = false;
    bool derived_split_consistent = false;
    u64 subgroup_order = 0;
};

inline IndexDecomposition index_decomposition(const GeneratedSubgroup& K,
                                              const EngineOptions& opt = {}) {
    const GroupDescriptor& D = K.D;
    const GaloisRing& R = *D.ring;
    if (D.family != GroupFamily::GL && D.family != GroupFamily::GSp &&
        D.family != GroupFamily::GSOplus)
        throw UnsupportedFamilyError("index decomposition supports GL, GSp, GSO+");
    std::vector<Mat> gens;
    for (const GroupElt& g : K.generators) gens.push_back(g.mat());
    EnumeratedGroup C = [&] {
        try {
            return enumerate_closure(D, gens, opt.enumeration_bound);
        } catch (const BoundExceededError&) {
            throw TooLargeError("index decomposition: subgroup above the enumeration bound");
        }
    }();
    IndexDecomposition out;
    out.subgroup_order = C.size();
    mpz_class total = group_order(D);
    out.total_index = total / mpz_class((unsigned long)C.size());

    // center split: T = Z^0(G) = scalars; the quotient points over the local
    // ring are unit-scaling classes, so |G/T (R)| = |G(R)| / |R^x|
    u64 scalars_in_K = 0;
    std::unordered_set<std::string> adj_classes;
    GroupDescriptor scaling = GroupDescriptor::make(GroupFamily::PGL, D.size, R);
    for (u32 ci = 0; ci < C.size(); ++ci) {
        Mat m = C.element(ci);
        bool scalar = true;
        RingElt c0 = m.at(0, 0);
        for (unsigned i = 0; i < D.size && scalar; ++i)
            for (unsigned j = 0; j < D.size; ++j) {
                if (i == j ? !(m.at(i, j) == c0) : !m.at(i, j).is_zero()) {
                    scalar = false;
                    break;
                }
            }
        if (scalar) ++scalars_in_K;
        adj_classes.insert(canonical_rep(scaling, m).key());
    }
    mpz_class units = unit_group_order(R);
    out.center_factor = units / mpz_class((unsigned long)scalars_in_K);
    mpz_class adj_total = total / units;
    out.center_quotient = adj_total / mpz_class((unsigned long)adj_classes.size());
    out.center_split_consistent = (out.center_factor * out.center_quotient == out.total_index);

    // derived split: K^d = K cap G^der, abelianization via det / multiplier
    GroupDescriptor derD = detail::derived_descriptor(D);
    u64 der_count = 0;
    std::unordered_set<u64> ab_values;
    for (u32 ci = 0; ci < C.size(); ++ci) {
        Mat m = C.element(ci);
        if (D.family == GroupFamily::GL) {
            RingElt d = m.det();
            ab_values.insert(R.index_of(d));
            if (d == R.one()) ++der_count;
        } else {
            MembershipResult mr = membership_and_multiplier(m, D);
            ab_values.insert(R.index_of(*mr.multiplier));
            if (*mr.multiplier == R.one() && membership_and_multiplier(m, derD).member)
                ++der_count;
        }
    }
    out.derived_factor = group_order(derD) / mpz_class((unsigned long)der_count);
    out.ab_factor = units / mpz_class((unsigned long)ab_values.size());
    out.derived_split_consistent = (out.derived_factor * out.ab_factor == out.total_index);
    return out;
}

}  // namespace wittlift

#endif  // WITTLIFT_ENGINE_HPP
