#include "hda/reduce.hpp"

#include <algorithm>
#include <sstream>

#include "hda/homology.hpp"
#include "hda/io.hpp"
#include "hda/trace.hpp"

namespace hda {

std::string tag_name(TheoremTag t) {
    switch (t) {
        case TheoremTag::elem_dim_ge4: return "elem-dim>=4";
        case TheoremTag::elem_dim3: return "elem-dim3";
        case TheoremTag::elem_dim2: return "elem-dim2";
        case TheoremTag::vertex_star: return "vertex-star";
        case TheoremTag::merge: return "merge";
    }
    return "?";
}

std::string guarantee_name(Guarantee g) {
    switch (g) {
        case Guarantee::trace_iso: return "trace-iso";
        case Guarantee::homology_graph_iso: return "homology-graph-iso";
        case Guarantee::homotopy_equiv: return "homotopy-equiv";
        case Guarantee::extremal_preserved: return "extremal-preserved";
        case Guarantee::access_preserved: return "access-preserved";
    }
    return "?";
}

std::string Judgment::first_failure() const {
    for (const auto& c : checks)
        if (!c.pass) return c.name + (c.witness.empty() ? "" : " (" + c.witness + ")");
    return "";
}

std::string Step::kind_name(Kind k) {
    switch (k) {
        case elementary: return "elem";
        case vertex_star: return "vstar";
        case manual: return "manual";
        case merge: return "merge";
    }
    return "?";
}

namespace {

const std::set<Guarantee> kAllGuarantees = {
    Guarantee::trace_iso, Guarantee::homology_graph_iso, Guarantee::homotopy_equiv,
    Guarantee::extremal_preserved, Guarantee::access_preserved};

// Corner vertex d^{1-k}_1 ... d^{1-k}_1 d^k_i x of the free-face theorems.
CubeId collapse_corner(const PrecubicalSet& p, CubeId x, int k, int i) {
    CubeId cur = p.face(x, k, i);
    while (p.degree(cur) > 0) cur = p.face(cur, 1 - k, 1);
    return cur;
}

bool face_is_free(const PrecubicalSet& p, CubeId x, int k, int i) {
    CubeId f = p.face(x, k, i);
    auto st = star(p, f);
    return st.size() == 2 && st.count(x) && st.count(f);
}

std::vector<CubeId> edges_with_face(const PrecubicalSet& p, int side, CubeId v) {
    std::vector<CubeId> out;
    for (const auto& c : p.cubes())
        if (c.dim == 1 && p.face(c.id, side, 1) == v) out.push_back(c.id);
    return out;
}

bool all_pairs_reachable(const PrecubicalSet& p) {
    Reachability r = reachability(p);
    for (std::size_t i = 0; i < r.vertices.size(); ++i)
        for (std::size_t j = 0; j < r.vertices.size(); ++j)
            if (!r.reach[i][j]) return false;
    return true;
}

}  // namespace

Judgment check_elementary(const Hda& a, CubeId x, int k, int i) {
    const PrecubicalSet& p = a.p;
    Judgment j;
    if (!p.contains(x)) throw argument_error("check_elementary: unknown cube");
    int n = p.degree(x);
    if (k != 0 && k != 1) throw argument_error("check_elementary: bad side");
    if (i < 1 || i > n) throw argument_error("check_elementary: bad index");
    j.theorem = n >= 4 ? TheoremTag::elem_dim_ge4
                       : (n == 3 ? TheoremTag::elem_dim3 : TheoremTag::elem_dim2);
    j.applicable = true;

    auto [wr, witness] = is_weakly_regular(p);
    if (wr) j.pass("weakly-regular");
    else j.fail("weakly-regular", "2-cube " + std::to_string(*witness));

    if (n < 2) {
        j.fail("degree", "collapse requires degree >= 2");
        return j;
    }
    j.pass("degree");

    if (cube_image(p, x).injective) j.pass("regular-cube");
    else j.fail("regular-cube", "characteristic map not injective");

    if (face_is_free(p, x, k, i)) j.pass("free-face");
    else {
        j.fail("free-face", "star(d^k_i x) larger than {x, d^k_i x}");
        return j;
    }

    CubeId v = collapse_corner(p, x, k, i);
    CubeId e = corner_edge(p, x, k, i);
    // (c) no edge besides e^k_i x has its k-side face at the corner vertex
    bool unique = true;
    CubeId offender = -1;
    for (CubeId y : edges_with_face(p, k, v))
        if (y != e) {
            unique = false;
            offender = y;
            break;
        }
    if (unique) j.pass("unique-corner-edge");
    else j.fail("unique-corner-edge", "edge " + std::to_string(offender));

    if (n <= 3) {
        if (a.init.count(v) || a.final.count(v))
            j.fail("corner-not-distinguished",
                   "corner vertex " + std::to_string(v) + " is initial or final");
        else
            j.pass("corner-not-distinguished");
    }
    if (n == 2) {
        CubeId f = p.face(x, k, i);
        CubeId anchor = p.face(f, 1 - k, 1);
        bool found = false;
        for (CubeId y : edges_with_face(p, 1 - k, anchor))
            if (y != f) {
                found = true;
                break;
            }
        if (found) j.pass("alternative-edge");
        else j.fail("alternative-edge",
                    "no second edge at " + std::to_string(anchor));
    }
    if (j.applicable) j.guarantees = kAllGuarantees;
    return j;
}

std::pair<Hda, Judgment> collapse_elementary(const Hda& a, CubeId x, int k, int i,
                                             bool force) {
    Judgment j = check_elementary(a, x, k, i);
    if (!j.applicable && !force)
        throw precondition_error("elementary collapse not applicable: " +
                                 j.first_failure());
    if (!j.applicable) j.guarantees.clear();
    CubeId f = a.p.face(x, k, i);
    PrecubicalSet q = remove_star(a.p, f);
    std::set<CubeId> members;
    for (const auto& c : q.cubes()) members.insert(c.id);
    return {restrict(a, {&a.p, members}), j};
}

Judgment check_vertex_star(const Hda& a, CubeId x, const std::vector<int>& ks) {
    const PrecubicalSet& p = a.p;
    if (!p.contains(x)) throw argument_error("check_vertex_star: unknown cube");
    int n = p.degree(x);
    if (static_cast<int>(ks.size()) != n)
        throw argument_error("check_vertex_star: ks length mismatch");
    Judgment j;
    j.theorem = TheoremTag::vertex_star;
    j.applicable = true;

    if (n >= 2) j.pass("degree");
    else {
        j.fail("degree", "vertex star collapse requires degree >= 2");
        return j;
    }
    if (cube_image(p, x).injective) j.pass("regular-cube");
    else j.fail("regular-cube", "characteristic map not injective");

    bool has0 = false, has1 = false;
    for (int b : ks) {
        if (b == 0) has0 = true;
        else if (b == 1) has1 = true;
        else throw argument_error("check_vertex_star: ks entries must be 0/1");
    }
    if (has0 && has1) j.pass("mixed-direction");
    else j.fail("mixed-direction", "ks must contain both a 0 and a 1");

    // corner vertex d^{k_n}_1 ... d^{k_1}_1 x
    CubeId w = x;
    for (int idx = 0; idx < n; ++idx) w = p.face(w, ks[static_cast<std::size_t>(idx)], 1);
    if (a.init.count(w) || a.final.count(w))
        j.fail("corner-not-distinguished",
               "vertex " + std::to_string(w) + " is initial or final");
    else
        j.pass("corner-not-distinguished");

    auto st = star(p, w);
    auto img = cube_image(p, x).subset.members;
    bool contained = true;
    CubeId outside = -1;
    for (CubeId c : st)
        if (!img.count(c)) {
            contained = false;
            outside = c;
            break;
        }
    if (contained) j.pass("star-contained");
    else j.fail("star-contained", "cube " + std::to_string(outside) +
                                     " outside the cube image");
    if (j.applicable) j.guarantees = kAllGuarantees;
    return j;
}

std::pair<Hda, Judgment> collapse_vertex_star(const Hda& a, CubeId x,
                                              const std::vector<int>& ks,
                                              bool force) {
    Judgment j = check_vertex_star(a, x, ks);
    if (!j.applicable && !force)
        throw precondition_error("vertex star collapse not applicable: " +
                                 j.first_failure());
    if (!j.applicable) j.guarantees.clear();
    const PrecubicalSet& p = a.p;
    CubeId w = x;
    for (std::size_t idx = 0; idx < ks.size(); ++idx) w = p.face(w, ks[idx], 1);
    PrecubicalSet q = remove_star(p, w);
    std::set<CubeId> members;
    for (const auto& c : q.cubes()) members.insert(c.id);
    return {restrict(a, {&a.p, members}), j};
}

namespace {

// Structural verification of the divisibility hypothesis: every path of Q
// into (out of) the corner can be rewritten by one square move to end
// (start) with the corner edge, and that edge cancels.
struct ManualAnalysis {
    bool existence = false;
    bool uniqueness = false;
    std::string existence_note, uniqueness_note;
};

ManualAnalysis manual_divisibility(const PrecubicalSet& q, int k, CubeId v,
                                   CubeId e,
                                   const std::set<CubeId>& distinguished,
                                   const ReduceOptions& opts) {
    ManualAnalysis res;
    Reachability rq = reachability(q);
    // exact route on acyclic complexes: enumerate all relevant paths
    if (rq.acyclic) {
        bool all_ok = true;
        std::string note = "exact enumeration";
        Path gamma{q.edge_source(e), {e}};
        for (CubeId d : distinguished) {
            if (!q.contains(d)) continue;
            std::vector<Path> paths =
                k == 1 ? enumerate_paths(q, d, v, rq.vertices.size(), opts.path_budget)
                       : enumerate_paths(q, v, d, rq.vertices.size(), opts.path_budget);
            for (const Path& w : paths) {
                DivisionResult dr = divides(q, gamma, w, k, opts.path_budget);
                if (!dr.divisible || dr.unique != std::make_optional(true)) {
                    all_ok = false;
                    note = "path from/to " + std::to_string(d) + " fails";
                    break;
                }
            }
            if (!all_ok) break;
        }
        res.existence = res.uniqueness = all_ok;
        res.existence_note = res.uniqueness_note = note;
        return res;
    }

    // Structural route (cyclic-safe). k = 1: paths end at v; k = 0 mirrors.
    auto edges_into = [&](CubeId vert) { return edges_with_face(q, 1, vert); };
    auto edges_out_of = [&](CubeId vert) { return edges_with_face(q, 0, vert); };

    bool existence = true;
    std::string note;
    std::vector<CubeId> boundary_edges =
        k == 1 ? edges_into(v) : edges_out_of(v);
    for (CubeId g : boundary_edges) {
        if (g == e) continue;
        // need a square of Q whose k-side faces are exactly {e, g}; the
        // boundary factorizations pair the index-1 face of one side with
        // the index-2 face of the other
        CubeId zfound = -1, gfront = -1;
        for (const auto& c : q.cubes()) {
            if (c.dim != 2) continue;
            CubeId s1 = q.face(c.id, k, 1), s2 = q.face(c.id, k, 2);
            if (!((s1 == e && s2 == g) || (s1 == g && s2 == e))) continue;
            zfound = c.id;
            gfront = s2 == g ? q.face(c.id, 1 - k, 1) : q.face(c.id, 1 - k, 2);
            break;
        }
        CubeId ganchor = k == 1 ? q.edge_source(g) : q.edge_target(g);
        if (zfound < 0 || gfront < 0) {
            existence = false;
            note = "no mediating square for edge " + std::to_string(g);
            break;
        }
        if (distinguished.count(ganchor)) {
            existence = false;
            note = "vertex " + std::to_string(ganchor) + " is distinguished";
            break;
        }
        std::vector<CubeId> anchors =
            k == 1 ? edges_into(ganchor) : edges_out_of(ganchor);
        if (anchors.size() != 1 || anchors[0] != gfront) {
            existence = false;
            note = "vertex " + std::to_string(ganchor) +
                   " admits paths that bypass the mediating square";
            break;
        }
    }
    res.existence = existence;
    res.existence_note = existence ? "one-move rewrite onto the corner edge"
                                   : note;

    Path gamma{q.edge_source(e), {e}};
    CancellationResult c1 = cancellation_sufficient(q, gamma, k, opts.path_budget);
    if (c1.holds) {
        res.uniqueness = true;
        res.uniqueness_note = c1.reason;
        return res;
    }
    // composite route: a unique feeding edge y makes y|e (or e|y) cancel
    CubeId mid = k == 1 ? q.edge_source(e) : q.edge_target(e);
    std::vector<CubeId> feeders = k == 1 ? edges_into(mid) : edges_out_of(mid);
    if (feeders.size() == 1) {
        CubeId y = feeders[0];
        Path composite = k == 1
                             ? Path{q.edge_source(y), {y, e}}
                             : Path{q.edge_source(e), {e, y}};
        CancellationResult c2 =
            cancellation_sufficient(q, composite, k, opts.path_budget);
        if (c2.holds) {
            res.uniqueness = true;
            res.uniqueness_note =
                "composite with unique feeding edge " + std::to_string(y) + ": " +
                c2.reason;
            return res;
        }
    }
    res.uniqueness = false;
    res.uniqueness_note = "no cancellation route";
    return res;
}

}  // namespace

Judgment check_manual_2cube(const Hda& a, CubeId x, int k, int i,
                            const ReduceOptions& opts) {
    const PrecubicalSet& p = a.p;
    if (!p.contains(x)) throw argument_error("check_manual_2cube: unknown cube");
    if (p.degree(x) != 2)
        throw precondition_error("check_manual_2cube: x must be a 2-cube");
    if (k != 0 && k != 1) throw argument_error("bad side");
    if (i != 1 && i != 2) throw argument_error("bad index");
    Judgment j;
    j.theorem = TheoremTag::elem_dim2;
    j.applicable = true;

    if (cube_image(p, x).injective) j.pass("regular-cube");
    else j.fail("regular-cube", "characteristic map not injective");

    if (face_is_free(p, x, k, i)) j.pass("free-face");
    else {
        j.fail("free-face", "face is not free");
        return j;
    }

    CubeId f = p.face(x, k, i);
    CubeId v = collapse_corner(p, x, k, i);  // d^{1-k}_1 d^k_i x
    CubeId e = corner_edge(p, x, k, i);

    // condition (i): another edge keeps the corner non-extremal
    CubeId anchor = p.face(f, 1 - k, 1);
    bool alt = false;
    for (CubeId y : edges_with_face(p, 1 - k, anchor))
        if (y != f) {
            alt = true;
            break;
        }
    if (alt) j.pass("alternative-edge");
    else j.fail("alternative-edge", "corner would become extremal");

    Reachability rp = reachability(p);
    std::set<CubeId> distinguished = a.init;
    distinguished.insert(a.final.begin(), a.final.end());
    distinguished.insert(rp.m0.begin(), rp.m0.end());
    distinguished.insert(rp.m1.begin(), rp.m1.end());
    CubeId far = x;
    far = p.face(far, k, 1);
    far = p.face(far, k, 1);  // d^k_1 d^k_1 x
    distinguished.insert(far);

    if (distinguished.count(v)) {
        j.fail("corner-not-distinguished",
               "corner " + std::to_string(v) + " is distinguished");
        return j;
    }
    j.pass("corner-not-distinguished");

    PrecubicalSet q = remove_star(p, f);
    ManualAnalysis ma = manual_divisibility(q, k, v, e, distinguished, opts);
    if (ma.existence) j.pass("divisibility", ma.existence_note);
    else j.fail("divisibility", ma.existence_note);
    if (ma.uniqueness) j.pass("unique-division", ma.uniqueness_note);
    else j.fail("unique-division", ma.uniqueness_note);

    // homology-graph side
    bool homology_ok = false;
    std::string hom_note;
    bool unique_edge = true;
    for (CubeId y : edges_with_face(p, k, v))
        if (y != e) {
            unique_edge = false;
            break;
        }
    if (unique_edge) {
        homology_ok = true;
        hom_note = "unique-edge criterion";
    } else if (all_pairs_reachable(q)) {
        homology_ok = true;
        hom_note = "1-skeleton strongly connected; both homology graphs complete";
    } else if (p.size() <= opts.oracle_bound && q.size() <= opts.oracle_bound) {
        HomologyContext cp(p), cq(q);
        auto pairing = inclusion_pairing(cp, cq);
        if (pairing) {
            HomologyGraphOptions go;
            go.oracle_bound = opts.oracle_bound;
            auto gp = homology_graph(cp, GraphMode::bruteforce, go);
            auto gq = homology_graph(cq, GraphMode::bruteforce, go);
            homology_ok = homology_iso_as_graphs(gp, gq, *pairing) == IsoStatus::yes;
            hom_note = homology_ok ? "bruteforce oracle" : "oracle found mismatch";
        } else {
            hom_note = "no inclusion-induced basis pairing";
        }
    } else {
        hom_note = "status unknown: over oracle bound and not strongly connected";
    }
    if (homology_ok) j.pass("homology-side", hom_note);
    else j.fail("homology-side", hom_note);

    if (j.applicable) {
        j.guarantees = {Guarantee::trace_iso, Guarantee::homotopy_equiv,
                        Guarantee::extremal_preserved,
                        Guarantee::homology_graph_iso};
        // accessibility equality is rechecked, not theorem-carried
        std::set<CubeId> members;
        for (const auto& c : q.cubes()) members.insert(c.id);
        Hda b = restrict(a, {&a.p, members});
        Accessibility before = accessibility(a), after = accessibility(b);
        if (before.accessible == after.accessible &&
            before.coaccessible == after.coaccessible &&
            before.offenders == after.offenders) {
            j.pass("access-recheck");
            j.guarantees.insert(Guarantee::access_preserved);
        } else {
            j.checks.push_back({"access-recheck", false, "verdicts differ"});
        }
    }
    return j;
}

MergeCheck check_merge(const Hda& a, CubeId v) {
    const PrecubicalSet& p = a.p;
    MergeCheck out;
    if (!p.contains(v) || p.degree(v) != 0) {
        out.reason = "not a vertex";
        return out;
    }
    if (a.init.count(v) || a.final.count(v)) {
        out.reason = "vertex is initial or final";
        return out;
    }
    auto st = star(p, v);
    std::vector<CubeId> in, outv;
    for (CubeId c : st) {
        if (c == v) continue;
        if (p.degree(c) != 1) {
            out.reason = "vertex touches a cube of degree >= 2";
            return out;
        }
        if (p.edge_target(c) == v && p.edge_source(c) == v) {
            out.reason = "vertex carries a self-loop";
            return out;
        }
        if (p.edge_target(c) == v) in.push_back(c);
        else outv.push_back(c);
    }
    if (in.size() != 1 || outv.size() != 1) {
        out.reason = "vertex degree is not one-in-one-out";
        return out;
    }
    out.ok = true;
    out.e_in = in[0];
    out.e_out = outv[0];
    return out;
}

Hda merge_edges(const Hda& a, CubeId v, CubeId* new_edge) {
    MergeCheck mc = check_merge(a, v);
    if (!mc.ok) throw precondition_error("merge_edges: " + mc.reason);
    const PrecubicalSet& p = a.p;
    CubeId src = p.edge_source(mc.e_in);
    CubeId dst = p.edge_target(mc.e_out);
    CubeId fresh = p.max_id() + 1;
    PrecubicalSetBuilder b;
    for (const auto& c : p.cubes()) {
        if (c.id == v || c.id == mc.e_in || c.id == mc.e_out) continue;
        b.add_cube_with_id(c.id, c.dim);
    }
    b.add_cube_with_id(fresh, 1);
    for (const auto& c : p.cubes()) {
        if (c.id == v || c.id == mc.e_in || c.id == mc.e_out) continue;
        for (int i = 1; i <= c.dim; ++i)
            for (int k = 0; k <= 1; ++k) b.set_face(c.id, k, i, c.faces[2 * (i - 1) + k]);
    }
    b.set_face(fresh, 0, 1, src);
    b.set_face(fresh, 1, 1, dst);
    Hda out;
    out.p = std::move(b).build();
    out.init = a.init;
    out.final = a.final;
    for (const auto& [e, w] : a.label)
        if (e != mc.e_in && e != mc.e_out) out.label[e] = w;
    Word w = a.edge_word(mc.e_in);
    const Word& w2 = a.edge_word(mc.e_out);
    w.insert(w.end(), w2.begin(), w2.end());
    out.label[fresh] = std::move(w);
    if (new_edge) *new_edge = fresh;
    return out;
}

std::pair<Hda, ReductionReport> reduce(const Hda& a, const ReduceOptions& opts) {
    ReductionReport report;
    report.before_counts = a.p.counts_per_degree();
    Hda cur = a;
    for (;;) {
        bool applied = false;
        // (1) elementary collapses
        for (const FreeFace& ff : free_faces(cur.p)) {
            Judgment j = check_elementary(cur, ff.cube, ff.k, ff.i);
            if (!j.applicable) continue;
            Step s;
            s.kind = Step::elementary;
            s.cube = ff.cube;
            s.k = ff.k;
            s.i = ff.i;
            s.judgment = j;
            cur = collapse_elementary(cur, ff.cube, ff.k, ff.i).first;
            report.steps.push_back(std::move(s));
            applied = true;
            break;
        }
        if (applied) continue;
        // (2) vertex-star collapses
        for (const auto& c : cur.p.cubes()) {
            if (c.dim < 2) continue;
            int n = c.dim;
            for (int mask = 1; mask + 1 < (1 << n); ++mask) {
                std::vector<int> ks;
                for (int b = 0; b < n; ++b) ks.push_back((mask >> b) & 1);
                Judgment j = check_vertex_star(cur, c.id, ks);
                if (!j.applicable) continue;
                Step s;
                s.kind = Step::vertex_star;
                s.cube = c.id;
                s.ks = ks;
                s.judgment = j;
                cur = collapse_vertex_star(cur, c.id, ks).first;
                report.steps.push_back(std::move(s));
                applied = true;
                break;
            }
            if (applied) break;
        }
        if (applied) continue;
        // (3) manual 2-cube collapses
        if (opts.enable_manual) {
            for (const FreeFace& ff : free_faces(cur.p)) {
                if (cur.p.degree(ff.cube) != 2) continue;
                Judgment j = check_manual_2cube(cur, ff.cube, ff.k, ff.i, opts);
                if (!j.applicable) continue;
                Step s;
                s.kind = Step::manual;
                s.cube = ff.cube;
                s.k = ff.k;
                s.i = ff.i;
                s.judgment = j;
                CubeId f = cur.p.face(ff.cube, ff.k, ff.i);
                PrecubicalSet q = remove_star(cur.p, f);
                std::set<CubeId> members;
                for (const auto& c : q.cubes()) members.insert(c.id);
                cur = restrict(cur, {&cur.p, members});
                report.steps.push_back(std::move(s));
                applied = true;
                break;
            }
        }
        if (applied) continue;
        // (4) edge merges
        for (CubeId v : cur.p.cubes_of_degree(0)) {
            MergeCheck mc = check_merge(cur, v);
            if (!mc.ok) continue;
            Step s;
            s.kind = Step::merge;
            s.cube = v;
            s.merged_in = mc.e_in;
            s.merged_out = mc.e_out;
            s.judgment.applicable = true;
            s.judgment.theorem = TheoremTag::merge;
            s.judgment.pass("plain-vertex-chain");
            s.judgment.guarantees = kAllGuarantees;
            cur = merge_edges(cur, v, &s.new_edge);
            report.merged_labels[s.new_edge] = cur.edge_word(s.new_edge);
            report.steps.push_back(std::move(s));
            applied = true;
            break;
        }
        if (!applied) break;
    }
    report.after_counts = cur.p.counts_per_degree();
    return {cur, report};
}

std::string ReductionReport::serialize() const {
    std::ostringstream out;
    out << "report v1\n";
    out << "counts before";
    for (auto c : before_counts) out << " " << c;
    out << "\ncounts after";
    for (auto c : after_counts) out << " " << c;
    out << "\n";
    for (std::size_t idx = 0; idx < steps.size(); ++idx) {
        const Step& s = steps[idx];
        out << "step " << Step::kind_name(s.kind) << " " << s.cube;
        if (s.kind == Step::vertex_star) {
            out << " ";
            for (int b : s.ks) out << b;
            out << " -";
        } else if (s.kind == Step::merge) {
            out << " - -";
        } else {
            out << " " << s.k << " " << s.i;
        }
        out << " tag=" << tag_name(s.judgment.theorem) << " guarantees=";
        bool first = true;
        for (Guarantee g : s.judgment.guarantees) {
            if (!first) out << ",";
            out << guarantee_name(g);
            first = false;
        }
        if (s.judgment.guarantees.empty()) out << "-";
        out << "\n";
        if (s.kind == Step::merge)
            out << "merged " << s.new_edge << " = " << s.merged_in << ";"
                << s.merged_out << "\n";
    }
    return out.str();
}

ReductionReport ReductionReport::parse(const std::string& text) {
    ReductionReport r;
    std::istringstream in(text);
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (!header) {
            std::string ver;
            ls >> ver;
            if (kw != "report" || ver != "v1")
                throw parse_error("expected 'report v1' header");
            header = true;
            continue;
        }
        if (kw == "counts") {
            std::string which;
            ls >> which;
            std::vector<std::size_t>& tgt =
                which == "before" ? r.before_counts : r.after_counts;
            std::size_t c;
            while (ls >> c) tgt.push_back(c);
        } else if (kw == "step") {
            std::string kind, karg, iarg;
            CubeId cube;
            ls >> kind >> cube >> karg >> iarg;
            Step s;
            s.cube = cube;
            if (kind == "elem") s.kind = Step::elementary;
            else if (kind == "vstar") s.kind = Step::vertex_star;
            else if (kind == "manual") s.kind = Step::manual;
            else if (kind == "merge") s.kind = Step::merge;
            else throw parse_error("unknown step kind " + kind);
            if (s.kind == Step::vertex_star) {
                for (char ch : karg) s.ks.push_back(ch - '0');
            } else if (s.kind != Step::merge) {
                s.k = std::stoi(karg);
                s.i = std::stoi(iarg);
            }
            std::string tok;
            while (ls >> tok) {
                if (tok.rfind("tag=", 0) == 0) {
                    std::string t = tok.substr(4);
                    if (t == "elem-dim>=4") s.judgment.theorem = TheoremTag::elem_dim_ge4;
                    else if (t == "elem-dim3") s.judgment.theorem = TheoremTag::elem_dim3;
                    else if (t == "elem-dim2") s.judgment.theorem = TheoremTag::elem_dim2;
                    else if (t == "vertex-star") s.judgment.theorem = TheoremTag::vertex_star;
                    else if (t == "merge") s.judgment.theorem = TheoremTag::merge;
                } else if (tok.rfind("guarantees=", 0) == 0) {
                    std::string g = tok.substr(11);
                    std::string curname;
                    auto flush = [&]() {
                        if (curname.empty() || curname == "-") return;
                        for (Guarantee gg :
                             {Guarantee::trace_iso, Guarantee::homology_graph_iso,
                              Guarantee::homotopy_equiv, Guarantee::extremal_preserved,
                              Guarantee::access_preserved})
                            if (guarantee_name(gg) == curname)
                                s.judgment.guarantees.insert(gg);
                        curname.clear();
                    };
                    for (char ch : g) {
                        if (ch == ',') flush();
                        else curname += ch;
                    }
                    flush();
                }
            }
            s.judgment.applicable = true;
            r.steps.push_back(std::move(s));
        } else if (kw == "merged") {
            CubeId ne;
            std::string eq, pair;
            ls >> ne >> eq >> pair;
            auto semi = pair.find(';');
            if (eq != "=" || semi == std::string::npos)
                throw parse_error("merged record expects '<new> = <e1>;<e2>'");
            if (r.steps.empty() || r.steps.back().kind != Step::merge)
                throw parse_error("merged record without merge step");
            r.steps.back().new_edge = ne;
            r.steps.back().merged_in = std::stoll(pair.substr(0, semi));
            r.steps.back().merged_out = std::stoll(pair.substr(semi + 1));
        } else {
            throw parse_error("unknown report record " + kw);
        }
    }
    if (!header) throw parse_error("missing report header");
    return r;
}

Hda replay(const Hda& a, const ReductionReport& report) {
    Hda cur = a;
    for (const Step& s : report.steps) {
        try {
            switch (s.kind) {
                case Step::elementary:
                case Step::manual: {
                    CubeId f = cur.p.face(s.cube, s.k, s.i);
                    PrecubicalSet q = remove_star(cur.p, f);
                    std::set<CubeId> members;
                    for (const auto& c : q.cubes()) members.insert(c.id);
                    cur = restrict(cur, {&cur.p, members});
                    break;
                }
                case Step::vertex_star: {
                    CubeId w = s.cube;
                    for (std::size_t idx = 0; idx < s.ks.size(); ++idx)
                        w = cur.p.face(w, s.ks[idx], 1);
                    PrecubicalSet q = remove_star(cur.p, w);
                    std::set<CubeId> members;
                    for (const auto& c : q.cubes()) members.insert(c.id);
                    cur = restrict(cur, {&cur.p, members});
                    break;
                }
                case Step::merge: {
                    CubeId fresh = -1;
                    cur = merge_edges(cur, s.cube, &fresh);
                    if (fresh != s.new_edge)
                        throw integrity_error("merge produced edge " +
                                              std::to_string(fresh) +
                                              " but report records " +
                                              std::to_string(s.new_edge));
                    break;
                }
            }
        } catch (const integrity_error&) {
            throw;
        } catch (const std::exception& e) {
            throw integrity_error(std::string("replay failed: ") + e.what());
        }
    }
    return cur;
}

}  // namespace hda
