#include <doctest.h>

#include <random>

#include "hda/fixtures.hpp"
#include "hda/homology.hpp"

using namespace hda;

namespace {

std::vector<std::size_t> betti(const PrecubicalSet& p, RingSpec r = RingSpec::z()) {
    return homology(p, r).betti;
}

}  // namespace

TEST_CASE("smith normal form basics") {
    IntMatrix m(2, 2);
    m.at(0, 0) = 2;
    m.at(0, 1) = 4;
    m.at(1, 0) = 4;
    m.at(1, 1) = 8;
    SmithResult s = smith_normal_form(m);
    CHECK(s.rank == 1);
    CHECK(s.invariant_factors == std::vector<BigInt>{2});
    CHECK(s.u.multiply(m).multiply(s.v) == s.d);
    CHECK(s.u.multiply(s.u_inv) == IntMatrix::identity(2));
    CHECK(s.v.multiply(s.v_inv) == IntMatrix::identity(2));

    IntMatrix t(2, 2);
    t.at(0, 0) = 2;
    t.at(1, 1) = 3;
    SmithResult st = smith_normal_form(t);
    REQUIRE(st.invariant_factors.size() == 2);
    CHECK(st.invariant_factors[0] == 1);
    CHECK(st.invariant_factors[1] == 6);
    CHECK(st.u.multiply(t).multiply(st.v) == st.d);
}

TEST_CASE("solve_integer") {
    IntMatrix m(2, 2);
    m.at(0, 0) = 2;
    m.at(1, 1) = 3;
    auto sol = solve_integer(m, {4, 9});
    REQUIRE(sol.has_value());
    CHECK((*sol)[0] == 2);
    CHECK((*sol)[1] == 3);
    CHECK_FALSE(solve_integer(m, {1, 0}).has_value());
}

TEST_CASE("chain boundary shapes and dd = 0") {
    PrecubicalSet circle = builtin_pcs("circle");
    IntMatrix b1 = chain_boundary(circle, 1);
    CHECK(b1.is_zero());  // d(e) = v - v

    PrecubicalSet sq = builtin_pcs("cube2");
    IntMatrix b2 = chain_boundary(sq, 2);
    // one column; entries +-1 on the four boundary edges
    CHECK(b2.cols() == 1);
    int nonzero = 0;
    for (std::size_t r = 0; r < b2.rows(); ++r)
        if (b2.at(r, 0) != 0) ++nonzero;
    CHECK(nonzero == 4);
    CHECK(chain_boundary(sq, 1).multiply(b2).is_zero());

    PrecubicalSet torus = builtin_pcs("torus");
    CHECK(chain_boundary(torus, 2).is_zero());
    CHECK(chain_boundary(torus, 1).is_zero());

    for (const std::string& name : {"fig4", "grid3x3", "cube3"}) {
        PrecubicalSet p = builtin_pcs(name);
        for (int n = 2; n <= p.max_degree(); ++n)
            CHECK(chain_boundary(p, n - 1).multiply(chain_boundary(p, n)).is_zero());
    }
}

TEST_CASE("homology of the standard fixtures") {
    CHECK(betti(builtin_pcs("circle")) == std::vector<std::size_t>{1, 1});
    CHECK(betti(builtin_pcs("torus")) == std::vector<std::size_t>{1, 2, 1});
    CHECK(betti(builtin_pcs("cube2")) == std::vector<std::size_t>{1, 0, 0});
    CHECK(betti(builtin_pcs("cube3")) == std::vector<std::size_t>{1, 0, 0, 0});
    CHECK(betti(builtin_pcs("fig4")) == std::vector<std::size_t>{1, 0, 0});
    // torsion-free integral homology on all fixtures here
    CHECK(homology(builtin_pcs("torus")).torsion ==
          std::vector<std::vector<BigInt>>{{}, {}, {}});
}

TEST_CASE("fig2 has two holes") {
    Hda f2 = builtin_hda("fig2");
    auto b = betti(f2.p);
    REQUIRE(b.size() >= 2);
    CHECK(b[0] == 1);
    CHECK(b[1] == 2);
}

TEST_CASE("field coefficients agree with integer betti absent torsion") {
    for (const std::string& name : {"circle", "torus", "fig4"}) {
        PrecubicalSet p = builtin_pcs(name);
        auto bz = betti(p);
        CHECK(betti(p, RingSpec::q()) == bz);
        auto b2 = betti(p, RingSpec::fp(2));
        auto b3 = betti(p, RingSpec::fp(3));
        for (std::size_t i = 0; i < bz.size(); ++i) {
            CHECK(b2[i] >= bz[i]);
            CHECK(b3[i] >= bz[i]);
        }
        CHECK(homology(p, RingSpec::q()).torsion ==
              std::vector<std::vector<BigInt>>(bz.size()));
    }
}

TEST_CASE("class coordinates and basis classes") {
    PrecubicalSet torus = builtin_pcs("torus");
    HomologyContext ctx(torus);
    CHECK(ctx.class_count(0) == 1);
    CHECK(ctx.class_count(1) == 2);
    CHECK(ctx.class_count(2) == 1);
    // the two 1-dimensional basis classes are the two loop edges
    auto e = torus.cubes_of_degree(1);
    auto c0 = class_of_cycle(ctx, 1, ctx.chain_from(1, {{e[0], 1}}));
    auto c1 = class_of_cycle(ctx, 1, ctx.chain_from(1, {{e[1], 1}}));
    CHECK_FALSE(same_class(ctx, c0, c1));
    auto sum = class_of_cycle(ctx, 1, ctx.chain_from(1, {{e[0], 1}, {e[1], 1}}));
    CHECK_FALSE(same_class(ctx, sum, c0));
    // coordinates of a basis class against itself
    auto b0 = basis_class(ctx, 1, 0);
    CHECK(same_class(ctx, b0, class_of_cycle(ctx, 1, b0.representative)));
}

TEST_CASE("induced image") {
    PrecubicalSet torus = builtin_pcs("torus");
    HomologyContext ctx(torus);
    // full complex: both degree-1 classes in the image
    std::set<CubeId> all;
    for (const auto& c : torus.cubes()) all.insert(c.id);
    auto gens = induced_image(ctx, {&torus, all}, 1);
    CHECK(in_subgroup(ctx, 1, basis_class(ctx, 1, 0).coords, gens));
    CHECK(in_subgroup(ctx, 1, basis_class(ctx, 1, 1).coords, gens));
    // single vertex: H_0 image is the component class, degree 1 image is 0
    auto vgens = induced_image(ctx, {&torus, {0}}, 1);
    CHECK_FALSE(in_subgroup(ctx, 1, basis_class(ctx, 1, 0).coords, vgens));
    auto vgens0 = induced_image(ctx, {&torus, {0}}, 0);
    CHECK(in_subgroup(ctx, 0, basis_class(ctx, 0, 0).coords, vgens0));
}

TEST_CASE("homology profile preserved by free-face collapses") {
    auto padded = [](HomologyProfile h, std::size_t n) {
        h.betti.resize(n, 0);
        h.torsion.resize(n);
        return h;
    };
    for (const std::string& name : {"fig4", "grid3x2", "cube3"}) {
        PrecubicalSet p = builtin_pcs(name);
        for (const auto& ff : free_faces(p)) {
            if (!cube_image(p, ff.cube).injective) continue;
            PrecubicalSet q = remove_star(p, p.face(ff.cube, ff.k, ff.i));
            std::size_t n = static_cast<std::size_t>(p.max_degree()) + 1;
            HomologyProfile hp = padded(homology(p), n), hq = padded(homology(q), n);
            CHECK(hp.betti == hq.betti);
            CHECK(hp.torsion == hq.torsion);
        }
    }
}

TEST_CASE("fig3a has the two-hole profile") {
    Hda f3a = builtin_hda("fig3a");
    auto b = homology(f3a.p).betti;
    REQUIRE(b.size() >= 2);
    CHECK(b[0] == 1);
    CHECK(b[1] == 2);
    CHECK(validate_hda(f3a).ok);
}

TEST_CASE("torsion: an identification square with doubled boundary") {
    // one vertex, edges a and b, one square with d^0_1=a, d^1_1=b, d^0_2=b,
    // d^1_2=a: the boundary is 2b - 2a, so H_1 = Z + Z/2
    PrecubicalSetBuilder bld;
    CubeId v = bld.add_cube(0);
    CubeId a = bld.add_cube(1), b = bld.add_cube(1);
    CubeId z = bld.add_cube(2);
    for (CubeId e : {a, b}) {
        bld.set_face(e, 0, 1, v);
        bld.set_face(e, 1, 1, v);
    }
    bld.set_face(z, 0, 1, a);
    bld.set_face(z, 1, 1, b);
    bld.set_face(z, 0, 2, b);
    bld.set_face(z, 1, 2, a);
    PrecubicalSet p = std::move(bld).build();
    REQUIRE(validate_precubical(p).ok);
    REQUIRE(is_weakly_regular(p).first);
    HomologyProfile h = homology(p);
    CHECK(h.betti == std::vector<std::size_t>{1, 1, 0});
    REQUIRE(h.torsion.size() >= 2);
    CHECK(h.torsion[1] == std::vector<BigInt>{2});
    // universal coefficients: F_2 sees the torsion class, Q does not
    CHECK(homology(p, RingSpec::q()).betti == std::vector<std::size_t>{1, 1, 0});
    auto f2 = homology(p, RingSpec::fp(2)).betti;
    CHECK(f2[1] == 2);
    CHECK(f2[2] == 1);
    auto f3 = homology(p, RingSpec::fp(3)).betti;
    CHECK(f3[1] == 1);
}

TEST_CASE("smith normal form randomized properties") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
        IntMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                m.at(i, j) = static_cast<long long>(rng() % 21) - 10;
        SmithResult s = smith_normal_form(m);
        CHECK(s.u.multiply(m).multiply(s.v) == s.d);
        CHECK(s.u.multiply(s.u_inv) == IntMatrix::identity(rows));
        CHECK(s.v.multiply(s.v_inv) == IntMatrix::identity(cols));
        for (std::size_t i = 0; i + 1 < s.invariant_factors.size(); ++i) {
            CHECK(s.invariant_factors[i] > 0);
            CHECK(s.invariant_factors[i + 1] % s.invariant_factors[i] == 0);
        }
        // off-diagonal entries vanish
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                if (i != j) CHECK(s.d.at(i, j) == 0);
    }
}
