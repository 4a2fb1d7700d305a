#include "hda/nfa.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <stdexcept>

namespace hda {

int Nfa::add_state() {
    transitions.emplace_back();
    eps.emplace_back();
    return states++;
}

int Nfa::symbol_index(const std::string& sym) const {
    auto it = std::lower_bound(alphabet.begin(), alphabet.end(), sym);
    if (it == alphabet.end() || *it != sym) return -1;
    return static_cast<int>(it - alphabet.begin());
}

void Nfa::add_transition(int s, const std::string& sym, int t) {
    int idx = symbol_index(sym);
    if (idx < 0) throw std::invalid_argument("nfa: unknown symbol " + sym);
    transitions[static_cast<std::size_t>(s)][idx].insert(t);
}

void Nfa::add_eps(int s, int t) { eps[static_cast<std::size_t>(s)].insert(t); }

namespace {

std::set<int> eps_closure(const Nfa& a, std::set<int> s) {
    std::deque<int> q(s.begin(), s.end());
    while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        for (int y : a.eps[static_cast<std::size_t>(x)])
            if (s.insert(y).second) q.push_back(y);
    }
    return s;
}

std::set<int> step(const Nfa& a, const std::set<int>& s, int sym) {
    std::set<int> out;
    for (int x : s) {
        auto it = a.transitions[static_cast<std::size_t>(x)].find(sym);
        if (it != a.transitions[static_cast<std::size_t>(x)].end())
            out.insert(it->second.begin(), it->second.end());
    }
    return eps_closure(a, std::move(out));
}

bool any_accepting(const Nfa& a, const std::set<int>& s) {
    for (int x : s)
        if (a.accepting.count(x)) return true;
    return false;
}

}  // namespace

bool Nfa::accepts(const std::vector<std::string>& word) const {
    std::set<int> cur = eps_closure(*this, initial);
    for (const auto& sym : word) {
        int idx = symbol_index(sym);
        if (idx < 0) return false;
        cur = step(*this, cur, idx);
        if (cur.empty()) return false;
    }
    return any_accepting(*this, cur);
}

Nfa make_nfa(std::vector<std::string> alphabet) {
    std::sort(alphabet.begin(), alphabet.end());
    alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
    Nfa a;
    a.alphabet = std::move(alphabet);
    return a;
}

Nfa with_alphabet(const Nfa& a, std::vector<std::string> alphabet) {
    for (const auto& s : a.alphabet)
        alphabet.push_back(s);
    Nfa out = make_nfa(std::move(alphabet));
    out.states = a.states;
    out.initial = a.initial;
    out.accepting = a.accepting;
    out.transitions.assign(static_cast<std::size_t>(a.states), {});
    out.eps = a.eps;
    for (int s = 0; s < a.states; ++s)
        for (const auto& [sym, ts] : a.transitions[static_cast<std::size_t>(s)]) {
            int ni = out.symbol_index(a.alphabet[static_cast<std::size_t>(sym)]);
            out.transitions[static_cast<std::size_t>(s)][ni] = ts;
        }
    return out;
}

Nfa remove_eps(const Nfa& a) {
    Nfa out = make_nfa(a.alphabet);
    out.states = a.states;
    out.transitions.assign(static_cast<std::size_t>(a.states), {});
    out.eps.assign(static_cast<std::size_t>(a.states), {});
    for (int s = 0; s < a.states; ++s) {
        auto cl = eps_closure(a, {s});
        for (int x : cl) {
            if (a.accepting.count(x)) out.accepting.insert(s);
            for (const auto& [sym, ts] : a.transitions[static_cast<std::size_t>(x)])
                out.transitions[static_cast<std::size_t>(s)][sym].insert(ts.begin(),
                                                                         ts.end());
        }
    }
    for (int s : a.initial)
        for (int x : eps_closure(a, {s})) out.initial.insert(x);
    return out;
}

Nfa determinize(const Nfa& a) {
    Nfa out = make_nfa(a.alphabet);
    std::map<std::set<int>, int> ids;
    std::deque<std::set<int>> work;
    auto intern = [&](const std::set<int>& s) {
        auto it = ids.find(s);
        if (it != ids.end()) return it->second;
        int id = out.add_state();
        ids[s] = id;
        if (any_accepting(a, s)) out.accepting.insert(id);
        work.push_back(s);
        return id;
    };
    int start = intern(eps_closure(a, a.initial));
    out.initial.insert(start);
    while (!work.empty()) {
        std::set<int> s = work.front();
        work.pop_front();
        int sid = ids[s];
        for (int sym = 0; sym < static_cast<int>(a.alphabet.size()); ++sym) {
            auto t = step(a, s, sym);
            int tid = intern(t);
            out.transitions[static_cast<std::size_t>(sid)][sym].insert(tid);
        }
    }
    return out;
}

Nfa complement(const Nfa& a) {
    Nfa d = determinize(a);
    std::set<int> acc;
    for (int s = 0; s < d.states; ++s)
        if (!d.accepting.count(s)) acc.insert(s);
    d.accepting = std::move(acc);
    return d;
}

Nfa intersect(const Nfa& a0, const Nfa& b0) {
    if (a0.alphabet != b0.alphabet)
        throw std::invalid_argument("nfa intersect: alphabet mismatch");
    Nfa a = remove_eps(a0), b = remove_eps(b0);
    Nfa out = make_nfa(a.alphabet);
    std::map<std::pair<int, int>, int> ids;
    std::deque<std::pair<int, int>> work;
    auto intern = [&](int x, int y) {
        auto key = std::make_pair(x, y);
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        int id = out.add_state();
        ids[key] = id;
        if (a.accepting.count(x) && b.accepting.count(y)) out.accepting.insert(id);
        work.push_back(key);
        return id;
    };
    for (int x : a.initial)
        for (int y : b.initial) out.initial.insert(intern(x, y));
    while (!work.empty()) {
        auto [x, y] = work.front();
        work.pop_front();
        int sid = ids[{x, y}];
        for (const auto& [sym, xs] : a.transitions[static_cast<std::size_t>(x)]) {
            auto it = b.transitions[static_cast<std::size_t>(y)].find(sym);
            if (it == b.transitions[static_cast<std::size_t>(y)].end()) continue;
            for (int nx : xs)
                for (int ny : it->second)
                    out.transitions[static_cast<std::size_t>(sid)][sym].insert(
                        intern(nx, ny));
        }
    }
    return out;
}

Nfa union_nfa(const Nfa& a, const Nfa& b) {
    if (a.alphabet != b.alphabet)
        throw std::invalid_argument("nfa union: alphabet mismatch");
    Nfa out = make_nfa(a.alphabet);
    int off = a.states;
    out.states = a.states + b.states;
    out.transitions.assign(static_cast<std::size_t>(out.states), {});
    out.eps.assign(static_cast<std::size_t>(out.states), {});
    for (int s = 0; s < a.states; ++s) {
        out.transitions[static_cast<std::size_t>(s)] =
            a.transitions[static_cast<std::size_t>(s)];
        for (int t : a.eps[static_cast<std::size_t>(s)])
            out.eps[static_cast<std::size_t>(s)].insert(t);
    }
    for (int s = 0; s < b.states; ++s) {
        for (const auto& [sym, ts] : b.transitions[static_cast<std::size_t>(s)])
            for (int t : ts)
                out.transitions[static_cast<std::size_t>(s + off)][sym].insert(t + off);
        for (int t : b.eps[static_cast<std::size_t>(s)])
            out.eps[static_cast<std::size_t>(s + off)].insert(t + off);
    }
    for (int s : a.initial) out.initial.insert(s);
    for (int s : b.initial) out.initial.insert(s + off);
    for (int s : a.accepting) out.accepting.insert(s);
    for (int s : b.accepting) out.accepting.insert(s + off);
    return out;
}

bool is_empty(const Nfa& a) { return !shortest_word(a).has_value(); }

std::optional<std::vector<std::string>> shortest_word(const Nfa& a0) {
    // Determinize first: in a DFA, FIFO BFS with symbols scanned in sorted
    // order discovers states in (length, lex) order of their access words,
    // so the first accepting state yields the lexicographically least
    // shortest word.
    Nfa a = determinize(a0);
    std::vector<int> parent(static_cast<std::size_t>(a.states), -1);
    std::vector<int> via(static_cast<std::size_t>(a.states), -1);
    std::vector<bool> seen(static_cast<std::size_t>(a.states), false);
    std::deque<int> q;
    for (int s : a.initial) {
        seen[static_cast<std::size_t>(s)] = true;
        q.push_back(s);
    }
    int found = -1;
    for (int s : a.initial)
        if (a.accepting.count(s)) found = s;
    while (found < 0 && !q.empty()) {
        int x = q.front();
        q.pop_front();
        for (const auto& [sym, ts] : a.transitions[static_cast<std::size_t>(x)]) {
            for (int t : ts) {
                if (seen[static_cast<std::size_t>(t)]) continue;
                seen[static_cast<std::size_t>(t)] = true;
                parent[static_cast<std::size_t>(t)] = x;
                via[static_cast<std::size_t>(t)] = sym;
                if (a.accepting.count(t)) {
                    found = t;
                    break;
                }
                q.push_back(t);
            }
            if (found >= 0) break;
        }
    }
    if (found < 0) return std::nullopt;
    std::vector<std::string> w;
    for (int x = found; via[static_cast<std::size_t>(x)] >= 0;
         x = parent[static_cast<std::size_t>(x)])
        w.push_back(a.alphabet[static_cast<std::size_t>(via[static_cast<std::size_t>(x)])]);
    std::reverse(w.begin(), w.end());
    return w;
}

bool includes(const Nfa& sup, const Nfa& sub) {
    return is_empty(intersect(sub, complement(sup)));
}

bool equivalent(const Nfa& a, const Nfa& b) {
    return includes(a, b) && includes(b, a);
}

Nfa nfa_symbol(const std::vector<std::string>& alphabet, const std::string& sym) {
    Nfa a = make_nfa(alphabet);
    int s = a.add_state(), t = a.add_state();
    a.initial.insert(s);
    a.accepting.insert(t);
    a.add_transition(s, sym, t);
    return a;
}

Nfa nfa_symbol_set_star(const std::vector<std::string>& alphabet,
                        const std::set<std::string>& syms) {
    Nfa a = make_nfa(alphabet);
    int s = a.add_state();
    a.initial.insert(s);
    a.accepting.insert(s);
    for (const auto& sym : syms) a.add_transition(s, sym, s);
    return a;
}

Nfa nfa_concat(const Nfa& a, const Nfa& b) {
    if (a.alphabet != b.alphabet)
        throw std::invalid_argument("nfa concat: alphabet mismatch");
    Nfa out = union_nfa(a, b);
    int off = a.states;
    out.initial.clear();
    out.accepting.clear();
    for (int s : a.initial) out.initial.insert(s);
    for (int s : a.accepting)
        for (int t : b.initial) out.eps[static_cast<std::size_t>(s)].insert(t + off);
    for (int s : b.accepting) out.accepting.insert(s + off);
    return remove_eps(out);
}

Nfa nfa_sigma_star(const std::vector<std::string>& alphabet) {
    return nfa_symbol_set_star(alphabet,
                               {alphabet.begin(), alphabet.end()});
}

}  // namespace hda
