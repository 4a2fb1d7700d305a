#ifndef HDA_NFA_HPP
#define HDA_NFA_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace hda {

// Nondeterministic finite automaton over string symbols. Epsilon moves are
// allowed during construction and eliminated by trim()/determinize().
struct Nfa {
    std::vector<std::string> alphabet;  // sorted, unique
    int states = 0;
    std::set<int> initial;
    std::set<int> accepting;
    // transitions[s] maps symbol index -> successor states
    std::vector<std::map<int, std::set<int>>> transitions;
    std::vector<std::set<int>> eps;  // eps[s] = eps successors

    int add_state();
    int symbol_index(const std::string& sym) const;  // -1 if absent
    void add_transition(int s, const std::string& sym, int t);
    void add_eps(int s, int t);

    bool accepts(const std::vector<std::string>& word) const;
};

// Alphabet must already contain every symbol used.
Nfa make_nfa(std::vector<std::string> alphabet);

// Extend the alphabet (no transitions added); symbol indices are remapped.
Nfa with_alphabet(const Nfa& a, std::vector<std::string> alphabet);

Nfa remove_eps(const Nfa& a);

// Deterministic, complete automaton over the same alphabet.
Nfa determinize(const Nfa& a);

Nfa complement(const Nfa& a);  // determinizes first

Nfa intersect(const Nfa& a, const Nfa& b);  // product; alphabets must match
Nfa union_nfa(const Nfa& a, const Nfa& b);

bool is_empty(const Nfa& a);

// Shortest accepted word; ties broken lexicographically by symbol order.
std::optional<std::vector<std::string>> shortest_word(const Nfa& a);

bool includes(const Nfa& sup, const Nfa& sub);  // L(sub) subset of L(sup)
bool equivalent(const Nfa& a, const Nfa& b);

// Combinators used by property templates. All take the ambient alphabet.
Nfa nfa_symbol(const std::vector<std::string>& alphabet, const std::string& sym);
Nfa nfa_symbol_set_star(const std::vector<std::string>& alphabet,
                        const std::set<std::string>& syms);
Nfa nfa_concat(const Nfa& a, const Nfa& b);
Nfa nfa_sigma_star(const std::vector<std::string>& alphabet);

}  // namespace hda

#endif
