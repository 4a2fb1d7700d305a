#include <doctest.h>

#include "hda/fixtures.hpp"
#include "hda/homology.hpp"

using namespace hda;

namespace {

// The two holes of fig2 live in the x-section and the y-section, the
// subcomplexes of cubes all of whose edges carry x- (resp. y-) actions.
// Each section's cycle space maps to one hole class of the whole model.
struct Fig2Holes {
    HomologyContext ctx;
    HomologyClassRef early, late;  // early points to late, not conversely
    std::set<CubeId> early_support, late_support;

    static std::set<CubeId> section(const Hda& a, const std::string& prefix) {
        std::set<CubeId> members;
        for (const auto& c : a.p.cubes()) {
            bool ok = true;
            for (CubeId m : closure(a.p, {c.id}).members)
                if (a.p.degree(m) == 1 &&
                    word_to_string(a.edge_word(m)).rfind(prefix, 0) != 0)
                    ok = false;
            if (ok)
                for (CubeId m : closure(a.p, {c.id}).members) members.insert(m);
        }
        return members;
    }

    static HomologyClassRef hole_class(const HomologyContext& ctx,
                                       const std::set<CubeId>& sub) {
        const PrecubicalSet& p = ctx.complex();
        PrecubicalSet s = restrict_to(p, sub);
        IntMatrix b = chain_boundary(s, 1);
        SmithResult snf = smith_normal_form(b);
        auto sub_edges = s.cubes_of_degree(1);
        std::size_t z = sub_edges.size() - snf.rank;
        // the first kernel cycle that is nontrivial in the ambient homology
        for (std::size_t j = 0; j < z; ++j) {
            std::map<CubeId, long long> chain;
            for (std::size_t i = 0; i < sub_edges.size(); ++i) {
                BigInt val = snf.v.at(i, snf.rank + j);
                if (val != 0) chain[sub_edges[i]] = val.convert_to<long long>();
            }
            auto ref = class_of_cycle(ctx, 1, ctx.chain_from(1, chain));
            for (const auto& coord : ref.coords)
                if (coord != 0) return ref;
        }
        REQUIRE(false);
        return {};
    }

    explicit Fig2Holes(const Hda& a) : ctx(a.p) {
        REQUIRE(ctx.class_count(1) == 2);
        early = hole_class(ctx, section(a, "x:="));
        late = hole_class(ctx, section(a, "y:="));
        REQUIRE_FALSE(same_class(ctx, early, late));
        auto support = [&](const HomologyClassRef& c) {
            std::set<CubeId> s;
            const auto& d = ctx.degree(1);
            for (std::size_t i = 0; i < c.representative.size(); ++i)
                if (c.representative[i] != 0) s.insert(d.cube_ids[i]);
            return closure(a.p, s).members;
        };
        early_support = support(early);
        late_support = support(late);
    }
};

}  // namespace

TEST_CASE("verify_pointing on fig2 hole certificates") {
    Hda f2 = builtin_hda("fig2");
    Fig2Holes holes(f2);
    PointingCertificate forward{holes.early_support, holes.late_support};
    CHECK(verify_pointing(holes.ctx, holes.early, holes.late, forward));
    // swapped certificate fails on reachability
    PointingCertificate swapped{holes.late_support, holes.early_support};
    CHECK_FALSE(verify_pointing(holes.ctx, holes.late, holes.early, swapped));
}

TEST_CASE("component classes point to themselves") {
    for (const std::string& name : {"circle", "cube2", "fig4"}) {
        PrecubicalSet p = builtin_pcs(name);
        HomologyContext ctx(p);
        auto h0 = basis_class(ctx, 0, 0);
        CubeId v = p.cubes_of_degree(0).front();
        PointingCertificate cert{{v}, {v}};
        CHECK(verify_pointing(ctx, h0, h0, cert));
    }
}

TEST_CASE("search mode finds the fig2 pointing and not its reverse") {
    Hda f2 = builtin_hda("fig2");
    Fig2Holes holes(f2);
    auto fwd = search_pointing(holes.ctx, holes.early, holes.late, 2);
    CHECK(fwd.has_value());
    if (fwd) CHECK(verify_pointing(holes.ctx, holes.early, holes.late, *fwd));
    auto rev = search_pointing(holes.ctx, holes.late, holes.early, 2);
    CHECK_FALSE(rev.has_value());
}

TEST_CASE("bruteforce graph on the torus: all classes point everywhere") {
    PrecubicalSet torus = builtin_pcs("torus");
    HomologyContext ctx(torus);
    auto g = homology_graph(ctx, GraphMode::bruteforce);
    REQUIRE(g.nodes.size() == 4);  // 1 + 2 + 1
    for (std::size_t a = 0; a < g.nodes.size(); ++a)
        for (std::size_t b = 0; b < g.nodes.size(); ++b)
            CHECK(g.status(a, b) == EdgeStatus::yes_oracle);
}

TEST_CASE("bruteforce graph on an interval: the single class points to itself") {
    PrecubicalSet p = interval(0, 2);
    HomologyContext ctx(p);
    auto g = homology_graph(ctx, GraphMode::bruteforce);
    REQUIRE(g.nodes.size() == 1);
    CHECK(g.status(0, 0) == EdgeStatus::yes_oracle);
}

TEST_CASE("search yes-edges are a subset of bruteforce yes-edges") {
    for (const std::string& name : {"circle", "torus", "cube2", "pinched"}) {
        PrecubicalSet p = builtin_pcs(name);
        HomologyContext ctx(p);
        auto gs = homology_graph(ctx, GraphMode::search);
        auto gb = homology_graph(ctx, GraphMode::bruteforce);
        REQUIRE(gs.nodes.size() == gb.nodes.size());
        for (std::size_t a = 0; a < gs.nodes.size(); ++a)
            for (std::size_t b = 0; b < gs.nodes.size(); ++b)
                if (gs.status(a, b) == EdgeStatus::yes_cert)
                    CHECK(gb.status(a, b) == EdgeStatus::yes_oracle);
    }
}

TEST_CASE("bruteforce over the bound is refused") {
    Hda f2 = builtin_hda("fig2");
    HomologyContext ctx(f2.p);
    HomologyGraphOptions opts;
    opts.oracle_bound = 20;
    CHECK_THROWS_AS(homology_graph(ctx, GraphMode::bruteforce, opts),
                    resource_error);
}

TEST_CASE("fig4 collapse preserves the bruteforce homology graph") {
    PrecubicalSet p = builtin_pcs("fig4");
    CubeId x = -1;
    for (const auto& ff : free_faces(p))
        if (ff.k == 1 && ff.i == 2 && p.degree(ff.cube) == 2) x = ff.cube;
    REQUIRE(x >= 0);
    PrecubicalSet q = remove_star(p, p.face(x, 1, 2));
    HomologyContext cp(p), cq(q);
    auto pairing = inclusion_pairing(cp, cq);
    REQUIRE(pairing.has_value());
    HomologyGraphOptions opts;
    opts.oracle_bound = 32;
    auto gp = homology_graph(cp, GraphMode::bruteforce, opts);
    auto gq = homology_graph(cq, GraphMode::bruteforce, opts);
    CHECK(homology_iso_as_graphs(gp, gq, *pairing) == IsoStatus::yes);
}

TEST_CASE("graph iso detects a deliberate mispairing") {
    PrecubicalSet torus = builtin_pcs("torus");
    HomologyContext ctx(torus);
    auto g = homology_graph(ctx, GraphMode::bruteforce);
    // identity pairing certifies
    std::map<HomologyGraph::NodeKey, HomologyGraph::NodeKey> ident;
    for (const auto& k : g.nodes) ident[k] = k;
    CHECK(homology_iso_as_graphs(g, g, ident) == IsoStatus::yes);
    // non-bijective pairing is a precondition error
    std::map<HomologyGraph::NodeKey, HomologyGraph::NodeKey> broken = ident;
    broken[{1, 0}] = HomologyGraph::NodeKey{1, 1};
    broken[{1, 1}] = HomologyGraph::NodeKey{1, 1};
    CHECK_THROWS_AS(homology_iso_as_graphs(g, g, broken), precondition_error);
}

TEST_CASE("asymmetric pointing of the fig2 holes") {
    Hda f2 = builtin_hda("fig2");
    Fig2Holes holes(f2);
    // forward direction certified, reverse fails both search and the
    // swapped explicit certificate
    auto fwd = search_pointing(holes.ctx, holes.early, holes.late, 2);
    CHECK(fwd.has_value());
    auto rev = search_pointing(holes.ctx, holes.late, holes.early, 2);
    CHECK_FALSE(rev.has_value());
    PointingCertificate swapped{holes.late_support, holes.early_support};
    CHECK_FALSE(verify_pointing(holes.ctx, holes.late, holes.early, swapped));
}
