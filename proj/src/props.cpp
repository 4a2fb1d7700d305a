#include "hda/props.hpp"

#include <algorithm>
#include <sstream>

#include "hda/io.hpp"

namespace hda {

IndependenceRelation local_independence(const Hda& a) {
    IndependenceRelation r;
    for (const auto& c : a.p.cubes()) {
        if (c.dim != 2) continue;
        const Word& w1 = a.edge_word(a.p.face(c.id, 0, 1));
        const Word& w2 = a.edge_word(a.p.face(c.id, 0, 2));
        r.add(word_to_string(w1), word_to_string(w2));
    }
    return r;
}

namespace {

std::set<std::string> minus(const std::vector<std::string>& alphabet,
                            const std::set<std::string>& rem) {
    std::set<std::string> out(alphabet.begin(), alphabet.end());
    for (const auto& s : rem) out.erase(s);
    return out;
}

void require_symbols(const std::vector<std::string>& alphabet,
                     const std::vector<std::string>& params) {
    for (const auto& s : params)
        if (std::find(alphabet.begin(), alphabet.end(), s) == alphabet.end())
            throw argument_error("property template: unknown symbol '" + s + "'");
}

Nfa concat_all(std::vector<Nfa> parts) {
    Nfa out = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) out = nfa_concat(out, parts[i]);
    return out;
}

}  // namespace

PropertyAutomaton build_property(const std::string& tmpl,
                                 const std::vector<std::string>& params,
                                 const std::vector<std::string>& alphabet_in) {
    std::vector<std::string> alphabet = alphabet_in;
    std::sort(alphabet.begin(), alphabet.end());
    alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
    require_symbols(alphabet, params);
    auto sigma_star = [&] { return nfa_sigma_star(alphabet); };
    auto sym = [&](const std::string& s) { return nfa_symbol(alphabet, s); };
    auto set_star = [&](const std::set<std::string>& rem) {
        return nfa_symbol_set_star(alphabet, minus(alphabet, rem));
    };

    if (tmpl == "order") {
        if (params.size() != 2) throw argument_error("order needs 2 symbols");
        return {concat_all({sigma_star(), sym(params[0]), sigma_star(),
                            sym(params[1]), sigma_star()})};
    }
    if (tmpl == "mutex") {
        if (params.size() != 4)
            throw argument_error("mutex needs crit0 crit1 reset0 reset1");
        const std::string &c0 = params[0], &c1 = params[1], &r0 = params[2],
                          &r1 = params[3];
        Nfa bad0 = concat_all(
            {sigma_star(), sym(c0), set_star({r0}), sym(c1), sigma_star()});
        Nfa bad1 = concat_all(
            {sigma_star(), sym(c1), set_star({r1}), sym(c0), sigma_star()});
        return {intersect(complement(bad0), complement(bad1))};
    }
    if (tmpl == "starvation-finite") {
        if (params.size() != 2)
            throw argument_error("starvation-finite needs request crit");
        Nfa bad = concat_all({sigma_star(), sym(params[0]), set_star({params[1]})});
        return {complement(bad)};
    }
    if (tmpl == "no-repeat") {
        if (params.size() != 3)
            throw argument_error("no-repeat needs symbol crit0 crit1");
        Nfa bad = concat_all({sigma_star(), sym(params[0]),
                              set_star({params[1], params[2]}), sym(params[0]),
                              sigma_star()});
        return {complement(bad)};
    }
    if (tmpl == "overtake-free") {
        if (params.size() != 3)
            throw argument_error("overtake-free needs request crit other-crit");
        const std::string &req = params[0], &crit = params[1], &other = params[2];
        Nfa bad = concat_all({sigma_star(), sym(req), set_star({crit}), sym(other),
                              set_star({crit}), sym(other), sigma_star()});
        return {complement(bad)};
    }
    throw argument_error("unknown property template '" + tmpl + "'");
}

PropertyAutomaton combine(const std::string& op,
                          const std::vector<PropertyAutomaton>& args) {
    if (args.empty()) throw argument_error("combine: no arguments");
    for (const auto& a : args)
        if (a.nfa.alphabet != args.front().nfa.alphabet)
            throw argument_error("combine: alphabet mismatch");
    if (op == "complement") {
        if (args.size() != 1) throw argument_error("complement takes one argument");
        return {complement(args[0].nfa)};
    }
    if (op == "intersect") {
        Nfa cur = args[0].nfa;
        for (std::size_t i = 1; i < args.size(); ++i)
            cur = intersect(cur, args[i].nfa);
        return {cur};
    }
    if (op == "union") {
        Nfa cur = args[0].nfa;
        for (std::size_t i = 1; i < args.size(); ++i)
            cur = union_nfa(remove_eps(cur), remove_eps(args[i].nfa));
        return {cur};
    }
    throw argument_error("unknown combine op '" + op + "'");
}

PropertyCheck has_property(const Hda& a, const PropertyAutomaton& l) {
    // model language at letter level, over the property's alphabet
    Nfa model = letter_automaton(a);
    for (const auto& s : model.alphabet)
        if (std::find(l.nfa.alphabet.begin(), l.nfa.alphabet.end(), s) ==
            l.nfa.alphabet.end())
            throw argument_error("model letter '" + s +
                                 "' missing from property alphabet");
    Nfa model_full = with_alphabet(model, l.nfa.alphabet);
    Nfa viol = intersect(model_full, complement(l.nfa));
    auto w = shortest_word(viol);
    PropertyCheck out;
    out.holds = !w.has_value();
    if (w) out.counterexample = Word(w->begin(), w->end());
    return out;
}

bool is_trace_closed(const PropertyAutomaton& l, const IndependenceRelation& r) {
    const Nfa base = remove_eps(l.nfa);
    for (const auto& [a, b] : r.pairs) {
        for (const auto& [x, y] :
             std::vector<std::pair<std::string, std::string>>{{a, b}, {b, a}}) {
            // image of L under one swap xy -> yx
            if (base.symbol_index(x) < 0 || base.symbol_index(y) < 0) continue;
            Nfa img = make_nfa(base.alphabet);
            // phase 0: copy; phase 1: after reading y, waiting to emit x
            int n = base.states;
            for (int s = 0; s < 2 * n + 0; ++s) img.add_state();
            // third block: post-swap copy
            for (int s = 0; s < n; ++s) img.add_state();
            auto p0 = [&](int s) { return s; };
            auto p1 = [&](int s) { return n + s; };
            auto p2 = [&](int s) { return 2 * n + s; };
            for (int s : base.initial) img.initial.insert(p0(s));
            for (int s : base.accepting) {
                img.accepting.insert(p0(s));
                img.accepting.insert(p2(s));
            }
            int xi = base.symbol_index(x), yi = base.symbol_index(y);
            for (int s = 0; s < n; ++s) {
                for (const auto& [sym, ts] :
                     base.transitions[static_cast<std::size_t>(s)]) {
                    for (int t : ts) {
                        img.transitions[static_cast<std::size_t>(p0(s))][sym].insert(
                            p0(t));
                        img.transitions[static_cast<std::size_t>(p2(s))][sym].insert(
                            p2(t));
                    }
                }
                // start the swap: base reads x then y, image emits y then x
                auto itx = base.transitions[static_cast<std::size_t>(s)].find(xi);
                if (itx != base.transitions[static_cast<std::size_t>(s)].end()) {
                    for (int mid : itx->second) {
                        auto ity =
                            base.transitions[static_cast<std::size_t>(mid)].find(yi);
                        if (ity == base.transitions[static_cast<std::size_t>(mid)].end())
                            continue;
                        for (int t : ity->second)
                            img.transitions[static_cast<std::size_t>(p0(s))][yi]
                                .insert(p1(t));
                    }
                }
            }
            for (int t = 0; t < n; ++t)
                img.transitions[static_cast<std::size_t>(p1(t))][xi].insert(p2(t));
            if (!includes(l.nfa, img)) return false;
        }
    }
    return true;
}

PropertyAutomaton read_property(const std::string& text,
                                const std::vector<std::string>& model_alphabet) {
    std::istringstream in(text);
    std::string line;
    bool header = false;
    std::vector<std::string> alphabet = model_alphabet;
    struct Trans {
        int s;
        std::string sym;
        int t;
    };
    std::vector<Trans> trans;
    std::set<int> initial, accepting;
    int max_state = -1;
    std::optional<std::pair<std::string, std::vector<std::string>>> tmpl;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (!header) {
            std::string ver;
            ls >> ver;
            if (kw != "prop" || ver != "v1")
                throw parse_error("expected 'prop v1' header");
            header = true;
            continue;
        }
        auto rest_tokens = [&]() {
            std::vector<std::string> out;
            std::string tail;
            std::getline(ls, tail);
            std::size_t pos = 0;
            while (pos < tail.size()) {
                while (pos < tail.size() && isspace(static_cast<unsigned char>(tail[pos])))
                    ++pos;
                if (pos >= tail.size()) break;
                if (tail[pos] == '"') {
                    ++pos;
                    std::string tok;
                    while (pos < tail.size() && tail[pos] != '"') {
                        if (tail[pos] == '\\' && pos + 1 < tail.size()) ++pos;
                        tok += tail[pos++];
                    }
                    if (pos >= tail.size())
                        throw parse_error("line " + std::to_string(lineno) +
                                          ": unterminated string");
                    ++pos;
                    out.push_back(tok);
                } else {
                    std::string tok;
                    while (pos < tail.size() &&
                           !isspace(static_cast<unsigned char>(tail[pos])))
                        tok += tail[pos++];
                    out.push_back(tok);
                }
            }
            return out;
        };
        if (kw == "alphabet") {
            for (const auto& t : rest_tokens()) alphabet.push_back(t);
        } else if (kw == "template") {
            auto toks = rest_tokens();
            if (toks.empty()) throw parse_error("template record without name");
            tmpl = {toks[0], {toks.begin() + 1, toks.end()}};
        } else if (kw == "state") {
            auto toks = rest_tokens();
            if (toks.empty()) throw parse_error("state record without id");
            int id = std::stoi(toks[0]);
            max_state = std::max(max_state, id);
            for (std::size_t t = 1; t < toks.size(); ++t) {
                if (toks[t] == "init") initial.insert(id);
                else if (toks[t] == "acc") accepting.insert(id);
                else throw parse_error("unknown state flag " + toks[t]);
            }
        } else if (kw == "init") {
            auto toks = rest_tokens();
            if (toks.size() != 1) throw parse_error("init needs one state id");
            initial.insert(std::stoi(toks[0]));
            max_state = std::max(max_state, std::stoi(toks[0]));
        } else if (kw == "acc") {
            auto toks = rest_tokens();
            if (toks.size() != 1) throw parse_error("acc needs one state id");
            accepting.insert(std::stoi(toks[0]));
            max_state = std::max(max_state, std::stoi(toks[0]));
        } else if (kw == "trans") {
            auto toks = rest_tokens();
            if (toks.size() != 3) throw parse_error("trans needs: from symbol to");
            trans.push_back({std::stoi(toks[0]), toks[1], std::stoi(toks[2])});
            max_state = std::max({max_state, std::stoi(toks[0]), std::stoi(toks[2])});
        } else {
            throw parse_error("unknown prop record " + kw);
        }
    }
    if (!header) throw parse_error("missing 'prop v1' header");
    if (tmpl) return build_property(tmpl->first, tmpl->second, alphabet);
    Nfa n = make_nfa(alphabet);
    for (int s = 0; s <= max_state; ++s) n.add_state();
    for (const auto& t : trans) n.add_transition(t.s, t.sym, t.t);
    n.initial = initial;
    n.accepting = accepting;
    return {n};
}

std::string write_property_template(const std::string& tmpl,
                                    const std::vector<std::string>& params) {
    std::ostringstream out;
    out << "prop v1\ntemplate " << tmpl;
    for (const auto& p : params) out << " " << quote(p);
    out << "\n";
    return out.str();
}

}  // namespace hda
