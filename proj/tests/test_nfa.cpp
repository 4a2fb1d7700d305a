#include <doctest.h>

#include "hda/nfa.hpp"

using namespace hda;

namespace {

const std::vector<std::string> kAb = {"a", "b"};

Nfa word_nfa(const std::vector<std::string>& alphabet,
             const std::vector<std::string>& word) {
    Nfa n = make_nfa(alphabet);
    int cur = n.add_state();
    n.initial.insert(cur);
    for (const auto& s : word) {
        int nxt = n.add_state();
        n.add_transition(cur, s, nxt);
        cur = nxt;
    }
    n.accepting.insert(cur);
    return n;
}

}  // namespace

TEST_CASE("basic acceptance") {
    Nfa ab = word_nfa(kAb, {"a", "b"});
    CHECK(ab.accepts({"a", "b"}));
    CHECK_FALSE(ab.accepts({"b", "a"}));
    CHECK_FALSE(ab.accepts({"a"}));
}

TEST_CASE("complement and intersection") {
    Nfa ab = word_nfa(kAb, {"a", "b"});
    Nfa not_ab = complement(ab);
    CHECK_FALSE(not_ab.accepts({"a", "b"}));
    CHECK(not_ab.accepts({"b", "a"}));
    CHECK(not_ab.accepts({}));
    CHECK(is_empty(intersect(ab, not_ab)));
    CHECK(equivalent(complement(not_ab), ab));
}

TEST_CASE("union and inclusion") {
    Nfa ab = word_nfa(kAb, {"a", "b"});
    Nfa ba = word_nfa(kAb, {"b", "a"});
    Nfa u = union_nfa(ab, ba);
    CHECK(u.accepts({"a", "b"}));
    CHECK(u.accepts({"b", "a"}));
    CHECK(includes(u, ab));
    CHECK(includes(u, ba));
    CHECK_FALSE(includes(ab, u));
}

TEST_CASE("shortest word is lexicographically least") {
    Nfa u = union_nfa(word_nfa(kAb, {"b"}), word_nfa(kAb, {"a"}));
    auto w = shortest_word(u);
    REQUIRE(w.has_value());
    CHECK(*w == std::vector<std::string>{"a"});
    // longer words lose to shorter ones
    Nfa v = union_nfa(word_nfa(kAb, {"a", "a"}), word_nfa(kAb, {"b"}));
    CHECK(*shortest_word(v) == std::vector<std::string>{"b"});
    CHECK_FALSE(shortest_word(make_nfa(kAb)).has_value());
}

TEST_CASE("combinators") {
    Nfa star = nfa_sigma_star(kAb);
    CHECK(star.accepts({}));
    CHECK(star.accepts({"a", "b", "b"}));
    Nfa a = nfa_symbol(kAb, "a");
    Nfa aa = nfa_concat(a, a);
    CHECK(aa.accepts({"a", "a"}));
    CHECK_FALSE(aa.accepts({"a"}));
    Nfa limited = nfa_symbol_set_star(kAb, {"b"});
    CHECK(limited.accepts({"b", "b"}));
    CHECK_FALSE(limited.accepts({"a"}));
}

TEST_CASE("alphabet extension preserves language") {
    Nfa ab = word_nfa(kAb, {"a", "b"});
    Nfa ext = with_alphabet(ab, {"a", "b", "c"});
    CHECK(ext.accepts({"a", "b"}));
    CHECK_FALSE(ext.accepts({"c"}));
    CHECK(ext.alphabet.size() == 3);
}
