#include <algorithm>
#include <functional>
#include <sstream>

#include "hda/homology.hpp"
#include "hda/io.hpp"
#include "hda/reduce.hpp"
#include "hda/trace.hpp"

namespace hda {

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::certified: return "certified";
        case Verdict::certified_bounded: return "certified-bounded";
        case Verdict::inconclusive: return "inconclusive";
        case Verdict::failed: return "failed";
    }
    return "?";
}

std::string CertificationReport::to_string() const {
    std::ostringstream out;
    for (const auto& c : clauses)
        out << "clause " << c.name << ": " << c.status
            << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
    out << "verdict " << verdict_name(verdict) << "\n";
    return out.str();
}

namespace {

// Expansion of reduced-model edges into original edges through the merge
// table, innermost merges first.
std::map<CubeId, std::vector<CubeId>> merge_expansion(const Hda& a,
                                                      const ReductionReport& r) {
    std::map<CubeId, std::pair<CubeId, CubeId>> merged;
    for (const Step& s : r.steps)
        if (s.kind == Step::merge) merged[s.new_edge] = {s.merged_in, s.merged_out};
    std::map<CubeId, std::vector<CubeId>> memo;
    std::function<const std::vector<CubeId>&(CubeId)> expand =
        [&](CubeId e) -> const std::vector<CubeId>& {
        auto it = memo.find(e);
        if (it != memo.end()) return it->second;
        std::vector<CubeId> out;
        auto m = merged.find(e);
        if (m == merged.end()) {
            out.push_back(e);
        } else {
            const auto& l = expand(m->second.first);
            out.insert(out.end(), l.begin(), l.end());
            const auto& rr = expand(m->second.second);
            out.insert(out.end(), rr.begin(), rr.end());
        }
        return memo[e] = std::move(out);
    };
    (void)a;
    for (const auto& [e, _] : merged) expand(e);
    return memo;
}

Path expand_path(const Path& w, const std::map<CubeId, std::vector<CubeId>>& exp) {
    Path out{w.start, {}};
    for (CubeId e : w.edges) {
        auto it = exp.find(e);
        if (it == exp.end()) out.edges.push_back(e);
        else out.edges.insert(out.edges.end(), it->second.begin(), it->second.end());
    }
    return out;
}

bool profiles_equal(const HomologyProfile& pa, const HomologyProfile& pb) {
    std::size_t deg = std::max(pa.betti.size(), pb.betti.size());
    for (std::size_t n = 0; n < deg; ++n) {
        std::size_t ba = n < pa.betti.size() ? pa.betti[n] : 0;
        std::size_t bb = n < pb.betti.size() ? pb.betti[n] : 0;
        auto ta = n < pa.torsion.size() ? pa.torsion[n] : std::vector<BigInt>{};
        auto tb = n < pb.torsion.size() ? pb.torsion[n] : std::vector<BigInt>{};
        if (ba != bb || ta != tb) return false;
    }
    return true;
}

}  // namespace

CertificationReport certify(const Hda& a, const Hda& b,
                            const ReductionReport& report,
                            const ReduceOptions& opts) {
    CertificationReport cr;
    // integrity: the report must replay onto b bit-exactly
    Hda replayed = replay(a, report);
    if (write_hda(replayed) != write_hda(b))
        throw integrity_error("report does not replay to the reduced model");
    cr.clauses.push_back({"integrity", "pass", "report replays bit-exactly"});

    bool any_fail = false, any_unknown = false, any_bounded = false;

    // clause 1: distinguished vertices under the identity on survivors
    {
        Reachability ra = reachability(a.p), rb = reachability(b.p);
        bool ok = a.init == b.init && a.final == b.final && ra.m0 == rb.m0 &&
                  ra.m1 == rb.m1;
        cr.clauses.push_back({"distinguished-vertices", ok ? "pass" : "fail",
                              ok ? "I, F, m0, m1 identical"
                                 : "distinguished vertex sets differ"});
        any_fail |= !ok;
    }

    // clause 2: homotopy equivalence via step guarantees + equal profiles
    {
        bool attested = true;
        for (const Step& s : report.steps)
            if (!s.judgment.guarantees.count(Guarantee::homotopy_equiv))
                attested = false;
        bool eq = profiles_equal(homology(a.p), homology(b.p));
        if (!eq) {
            cr.clauses.push_back(
                {"homotopy-equivalence", "fail", "homology profiles differ"});
            any_fail = true;
        } else if (!attested) {
            cr.clauses.push_back({"homotopy-equivalence", "unknown",
                                  "some steps carry no guarantee; profiles equal"});
            any_unknown = true;
        } else {
            cr.clauses.push_back({"homotopy-equivalence", "pass",
                                  "all steps guaranteed; profiles equal"});
        }
    }

    // clause 3: trace category comparison via merge expansion
    {
        Reachability ra = reachability(a.p);
        bool acyclic = ra.acyclic;
        std::size_t bound = acyclic ? ra.vertices.size() : opts.trace_bound_cyclic;
        auto exp = merge_expansion(a, report);
        bool ok = true;
        std::string detail;
        try {
            TraceCategory tb = trace_category(b, bound, opts.path_budget);
            TraceCategory ta = trace_category(a, bound, opts.path_budget);
            if (ta.objects != tb.objects) {
                ok = false;
                detail = "object sets differ";
            } else {
                for (CubeId v : ta.objects) {
                    for (CubeId w : ta.objects) {
                        // image classes of B homs, compared by canonical reps
                        std::set<Path> image_canonicals;
                        bool injective = true;
                        for (const auto& cls : tb.homs.at({v, w})) {
                            Path ex = expand_path(cls.canonical(), exp);
                            if (ex.length() > bound) continue;
                            DihomotopyClass ac =
                                dihomotopy_class(a.p, ex, opts.path_budget);
                            if (!image_canonicals.insert(ac.canonical()).second)
                                injective = false;
                        }
                        std::set<Path> a_canonicals;
                        for (const auto& cls : ta.homs.at({v, w}))
                            a_canonicals.insert(cls.canonical());
                        // expanded images may exceed the bound on cyclic
                        // inputs; compare the common stratum
                        std::set<Path> a_compare;
                        for (const Path& c : a_canonicals)
                            if (c.length() <= bound) a_compare.insert(c);
                        if (!injective || image_canonicals != a_compare) {
                            ok = false;
                            detail = "hom-set mismatch at (" + std::to_string(v) +
                                     "," + std::to_string(w) + ")";
                            break;
                        }
                    }
                    if (!ok) break;
                }
            }
        } catch (const resource_error& e) {
            ok = false;
            detail = e.what();
        }
        if (!ok) {
            cr.clauses.push_back({"trace-category", "fail", detail});
            any_fail = true;
        } else if (acyclic) {
            cr.clauses.push_back({"trace-category", "pass", "exact comparison"});
        } else {
            cr.clauses.push_back({"trace-category", "bounded",
                                  "length-bounded comparison at " +
                                      std::to_string(bound)});
            any_bounded = true;
        }
    }

    // clause 4: homology graphs
    {
        std::string status = "unknown", detail;
        bool attested = true;
        for (const Step& s : report.steps)
            if (!s.judgment.guarantees.count(Guarantee::homology_graph_iso))
                attested = false;
        bool strongly_connected = true;
        {
            Reachability rb = reachability(b.p);
            for (std::size_t i = 0; i < rb.vertices.size() && strongly_connected;
                 ++i)
                for (std::size_t j = 0; j < rb.vertices.size(); ++j)
                    if (!rb.reach[i][j]) {
                        strongly_connected = false;
                        break;
                    }
        }
        if (attested) {
            status = "pass";
            detail = "attested by step guarantees";
        }
        if (a.p.size() <= opts.oracle_bound && b.p.size() <= opts.oracle_bound) {
            // desk-scale oracle; overrides attestation on a mismatch
            HomologyContext cp(a.p), cq(b.p);
            auto pairing = inclusion_pairing(cp, cq);
            if (pairing) {
                HomologyGraphOptions go;
                go.oracle_bound = opts.oracle_bound;
                auto gp = homology_graph(cp, GraphMode::bruteforce, go);
                auto gq = homology_graph(cq, GraphMode::bruteforce, go);
                IsoStatus iso = homology_iso_as_graphs(gp, gq, *pairing);
                if (iso == IsoStatus::yes) {
                    status = "pass";
                    detail += detail.empty() ? "" : "; ";
                    detail += "bruteforce oracle: graphs isomorphic";
                } else if (iso == IsoStatus::no) {
                    status = "fail";
                    detail = "bruteforce oracle: graphs differ";
                }
            } else if (!attested) {
                detail = "no inclusion-induced basis pairing";
            }
        } else if (!attested) {
            if (strongly_connected &&
                profiles_equal(homology(a.p), homology(b.p))) {
                status = "pass";
                detail = "1-skeletons strongly connected; graphs complete";
            } else {
                detail = "over oracle bound; certificate search offers no "
                         "negative evidence";
            }
        }
        cr.clauses.push_back({"homology-graph", status, detail});
        any_fail |= status == "fail";
        any_unknown |= status == "unknown";
    }

    if (any_fail) cr.verdict = Verdict::failed;
    else if (any_unknown) cr.verdict = Verdict::inconclusive;
    else if (any_bounded) cr.verdict = Verdict::certified_bounded;
    else cr.verdict = Verdict::certified;
    return cr;
}

}  // namespace hda
