#include <doctest.h>

#include "hda/fixtures.hpp"
#include "hda/io.hpp"
#include "hda/reduce.hpp"
#include "hda/trace.hpp"

using namespace hda;

TEST_CASE("identity certification") {
    Hda f8 = builtin_hda("fig8");
    ReductionReport empty;
    empty.before_counts = f8.p.counts_per_degree();
    empty.after_counts = empty.before_counts;
    CertificationReport cr = certify(f8, f8, empty, {});
    // cyclic model: the trace clause is length-bounded
    CHECK(cr.verdict == Verdict::certified_bounded);
}

TEST_CASE("identity certification on an acyclic model is exact") {
    Hda g = grid_hda(2, 2);
    ReductionReport empty;
    CertificationReport cr = certify(g, g, empty, {});
    CHECK(cr.verdict == Verdict::certified);
}

TEST_CASE("full Peterson pipeline certifies bounded") {
    Hda f6 = builtin_hda("fig6");
    ReduceOptions opts;
    opts.enable_manual = true;
    opts.trace_bound_cyclic = 10;
    auto [reduced, report] = reduce(f6, opts);
    CertificationReport cr = certify(f6, reduced, report, opts);
    CHECK(cr.verdict == Verdict::certified_bounded);
    for (const auto& c : cr.clauses) {
        INFO(c.name << " " << c.status << " " << c.detail);
        CHECK(c.status != "fail");
        CHECK(c.status != "unknown");
    }
}

TEST_CASE("acyclic reduction certifies exactly") {
    Hda g = grid_hda(2, 1);
    auto [reduced, report] = reduce(g, {});
    CHECK(report.steps.size() > 0);
    CertificationReport cr = certify(g, reduced, report, {});
    CHECK(cr.verdict == Verdict::certified);
}

TEST_CASE("tampered reports are rejected") {
    Hda f6 = builtin_hda("fig6");
    ReduceOptions opts;
    opts.enable_manual = true;
    auto [reduced, report] = reduce(f6, opts);
    // drop the last step: replay no longer matches
    ReductionReport tampered = report;
    tampered.steps.pop_back();
    CHECK_THROWS_AS(certify(f6, reduced, tampered, opts), integrity_error);
    // a wrong merge id is caught during replay
    ReductionReport wrong = report;
    for (auto& s : wrong.steps)
        if (s.kind == Step::merge) {
            s.new_edge += 1;
            break;
        }
    CHECK_THROWS_AS(certify(f6, reduced, wrong, opts), integrity_error);
}

TEST_CASE("forced steps leave certification inconclusive") {
    Hda f2 = builtin_hda("fig2");
    CubeId victim = -1;
    int vk = -1, vi = -1;
    for (const auto& ff : free_faces(f2.p)) {
        if (f2.p.degree(ff.cube) != 2) continue;
        if (!check_elementary(f2, ff.cube, ff.k, ff.i).applicable) {
            victim = ff.cube;
            vk = ff.k;
            vi = ff.i;
            break;
        }
    }
    REQUIRE(victim >= 0);
    auto [forced, j] = collapse_elementary(f2, victim, vk, vi, true);
    CHECK_FALSE(j.applicable);
    ReductionReport report;
    Step s;
    s.kind = Step::elementary;
    s.cube = victim;
    s.k = vk;
    s.i = vi;
    s.judgment.applicable = false;
    report.steps.push_back(s);
    report.before_counts = f2.p.counts_per_degree();
    report.after_counts = forced.p.counts_per_degree();
    CertificationReport cr = certify(f2, forced, report, {});
    CHECK((cr.verdict == Verdict::inconclusive || cr.verdict == Verdict::failed));
}

TEST_CASE("fig2 versus the fig3b shape: hom counts agree at four") {
    Hda f2 = builtin_hda("fig2");
    Hda f3b = builtin_hda("fig3b");
    TraceCategory t2 = trace_category(f2);
    TraceCategory t3 = trace_category(f3b);
    CHECK(t2.hom_count(*f2.init.begin(), *f2.final.begin()) == 4);
    CHECK(t3.hom_count(*f3b.init.begin(), *f3b.final.begin()) == 4);
}
