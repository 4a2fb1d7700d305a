#include <doctest.h>

#include "hda/fixtures.hpp"
#include "hda/io.hpp"

using namespace hda;

TEST_CASE("pcs round trip") {
    for (const std::string& name : {"circle", "torus", "cube2", "fig4"}) {
        PrecubicalSet p = builtin_pcs(name);
        std::string text = write_pcs(p);
        PrecubicalSet q = read_pcs(text);
        CHECK(write_pcs(q) == text);
    }
}

TEST_CASE("hda round trip with quoted composite labels") {
    Hda a = builtin_hda("fig8");
    std::string text = write_hda(a);
    CHECK(text.find("\"crit_1;b_1:=_1 0\"") != std::string::npos);
    Hda b = read_hda(text);
    CHECK(write_hda(b) == text);
    CHECK(b.init == a.init);
    CHECK(b.label == a.label);
}

TEST_CASE("load errors") {
    CHECK_THROWS_AS(read_pcs(""), parse_error);
    CHECK_THROWS_AS(read_pcs("pcs v2\n"), parse_error);
    CHECK_THROWS_AS(read_pcs("pcs v1\ncube 0 dim 1\n"), parse_error);
    // conflicting duplicate face records
    std::string conflicting =
        "pcs v1\ncube 0 dim 0\ncube 1 dim 0\ncube 2 dim 1\n"
        "face 2 0 1 0\nface 2 0 1 1\nface 2 1 1 1\n";
    CHECK_THROWS_AS(read_pcs(conflicting), parse_error);
    // duplicate face records agreeing are fine
    std::string agreeing =
        "pcs v1\ncube 0 dim 0\ncube 1 dim 0\ncube 2 dim 1\n"
        "face 2 0 1 0\nface 2 0 1 0\nface 2 1 1 1\n";
    CHECK(read_pcs(agreeing).size() == 3);
    // record order is irrelevant
    std::string shuffled =
        "pcs v1\nface 2 1 1 1\ncube 2 dim 1\ncube 1 dim 0\n"
        "face 2 0 1 0\ncube 0 dim 0\n";
    CHECK(read_pcs(shuffled).count_of_degree(1) == 1);
}

TEST_CASE("path record round trip") {
    Path w{3, {7, 8, 12}};
    std::string line = write_path(w);
    CHECK(line == "path 3 : 7 8 12");
    CHECK(read_path(line) == w);
    Path empty{5, {}};
    CHECK(read_path(write_path(empty)) == empty);
}

TEST_CASE("word string forms") {
    Word w = {"crit_1", "b_1:=_1 0"};
    CHECK(word_to_string(w) == "crit_1;b_1:=_1 0");
    CHECK(word_from_string("crit_1;b_1:=_1 0") == w);
    CHECK(word_from_string("a") == Word{"a"});
}
