#include "hda/hda.hpp"

#include <algorithm>
#include <sstream>

#include "hda/path.hpp"

namespace hda {

std::string word_to_string(const Word& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ';';
        out += w[i];
    }
    return out;
}

Word word_from_string(const std::string& s) {
    Word w;
    std::string cur;
    for (char c : s) {
        if (c == ';') {
            w.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty() || !w.empty()) w.push_back(cur);
    return w;
}

const Word& Hda::edge_word(CubeId e) const {
    auto it = label.find(e);
    if (it == label.end())
        throw argument_error("edge " + std::to_string(e) + " has no label");
    return it->second;
}

std::set<Label> Hda::letter_alphabet() const {
    std::set<Label> out;
    for (const auto& [e, w] : label)
        for (const auto& s : w) out.insert(s);
    return out;
}

std::set<Word> Hda::effective_alphabet() const {
    std::set<Word> out;
    for (const auto& [e, w] : label) out.insert(w);
    return out;
}

ValidationReport validate_hda(const Hda& a) {
    ValidationReport r = validate_precubical(a.p);
    for (CubeId v : a.init)
        if (!a.p.contains(v) || a.p.degree(v) != 0)
            r.add({"init-not-vertex", v, {}, "initial state is not a vertex"});
    for (CubeId v : a.final)
        if (!a.p.contains(v) || a.p.degree(v) != 0)
            r.add({"final-not-vertex", v, {}, "final state is not a vertex"});
    for (const auto& c : a.p.cubes()) {
        if (c.dim == 1 && !a.label.count(c.id))
            r.add({"label-missing", c.id, {}, "edge has no label"});
    }
    for (const auto& [e, w] : a.label) {
        if (!a.p.contains(e) || a.p.degree(e) != 1)
            r.add({"label-not-edge", e, {}, "labeled cube is not an edge"});
        if (w.empty()) r.add({"label-empty", e, {}, "empty word label"});
    }
    // label coherence on squares
    for (const auto& c : a.p.cubes()) {
        if (c.dim != 2) continue;
        for (int i = 1; i <= 2; ++i) {
            CubeId e0 = a.p.face(c.id, 0, i);
            CubeId e1 = a.p.face(c.id, 1, i);
            auto i0 = a.label.find(e0);
            auto i1 = a.label.find(e1);
            if (i0 == a.label.end() || i1 == a.label.end()) continue;
            if (i0->second != i1->second)
                r.add({"label-coherence", c.id, {i},
                       "opposite faces carry different labels"});
        }
    }
    return r;
}

Word extended_label(const Hda& a, const Path& path) {
    if (!is_path(a.p, path))
        throw argument_error("extended_label: not a path of the HDA");
    Word out;
    for (CubeId e : path.edges) {
        const Word& w = a.edge_word(e);
        out.insert(out.end(), w.begin(), w.end());
    }
    return out;
}

Nfa language_automaton(const Hda& a) {
    std::vector<std::string> alphabet;
    for (const Word& w : a.effective_alphabet())
        alphabet.push_back(word_to_string(w));
    Nfa n = make_nfa(std::move(alphabet));
    std::map<CubeId, int> st;
    for (CubeId v : a.p.cubes_of_degree(0)) st[v] = n.add_state();
    for (const auto& [e, w] : a.label)
        n.add_transition(st.at(a.p.edge_source(e)), word_to_string(w),
                         st.at(a.p.edge_target(e)));
    for (CubeId v : a.init) n.initial.insert(st.at(v));
    for (CubeId v : a.final) n.accepting.insert(st.at(v));
    return n;
}

Nfa letter_automaton(const Hda& a) {
    std::vector<std::string> alphabet;
    for (const Label& l : a.letter_alphabet()) alphabet.push_back(l);
    Nfa n = make_nfa(std::move(alphabet));
    std::map<CubeId, int> st;
    for (CubeId v : a.p.cubes_of_degree(0)) st[v] = n.add_state();
    std::vector<CubeId> edges = a.p.cubes_of_degree(1);
    for (CubeId e : edges) {
        const Word& w = a.edge_word(e);
        int cur = st.at(a.p.edge_source(e));
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            int mid = n.add_state();
            n.add_transition(cur, w[i], mid);
            cur = mid;
        }
        n.add_transition(cur, w.back(), st.at(a.p.edge_target(e)));
    }
    for (CubeId v : a.init) n.initial.insert(st.at(v));
    for (CubeId v : a.final) n.accepting.insert(st.at(v));
    return n;
}

Accessibility accessibility(const Hda& a) {
    Reachability r = reachability(a.p);
    Accessibility out;
    out.accessible = true;
    out.coaccessible = true;
    for (CubeId v : r.vertices) {
        bool from_init = false;
        for (CubeId i : a.init)
            if (r.reaches(i, v)) {
                from_init = true;
                break;
            }
        bool to_final = false;
        for (CubeId f : a.final)
            if (r.reaches(v, f)) {
                to_final = true;
                break;
            }
        if (!from_init) {
            out.accessible = false;
            out.offenders.insert(v);
        }
        if (!to_final) {
            out.coaccessible = false;
            out.offenders.insert(v);
        }
    }
    return out;
}

Hda restrict(const Hda& a, const PrecubicalSubset& q) {
    for (CubeId v : a.init)
        if (!q.contains(v))
            throw precondition_error("restrict: initial state outside subset");
    for (CubeId v : a.final)
        if (!q.contains(v))
            throw precondition_error("restrict: final state outside subset");
    Hda out;
    out.p = restrict_to(a.p, q.members);
    out.init = a.init;
    out.final = a.final;
    for (const auto& [e, w] : a.label)
        if (q.contains(e)) out.label[e] = w;
    return out;
}

}  // namespace hda
