#include "hda/pgraph.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <sstream>

#include "hda/io.hpp"

namespace hda {

namespace {

struct LineParser {
    std::string line;
    std::size_t pos = 0;
    int lineno;

    void skip_ws() {
        while (pos < line.size() && isspace(static_cast<unsigned char>(line[pos])))
            ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= line.size();
    }
    [[noreturn]] void err(const std::string& msg) const {
        throw parse_error("line " + std::to_string(lineno) + ", col " +
                          std::to_string(pos + 1) + ": " + msg);
    }
    bool peek(char c) {
        skip_ws();
        return pos < line.size() && line[pos] == c;
    }
    void expect(char c) {
        skip_ws();
        if (pos >= line.size() || line[pos] != c)
            err(std::string("expected '") + c + "'");
        ++pos;
    }
    bool try_consume(const std::string& s) {
        skip_ws();
        if (line.compare(pos, s.size(), s) == 0) {
            pos += s.size();
            return true;
        }
        return false;
    }
    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < line.size() &&
               (isalnum(static_cast<unsigned char>(line[pos])) || line[pos] == '_'))
            ++pos;
        if (pos == start) err("expected identifier");
        return line.substr(start, pos - start);
    }
    long long integer() {
        skip_ws();
        std::size_t start = pos;
        if (pos < line.size() && (line[pos] == '-' || line[pos] == '+')) ++pos;
        while (pos < line.size() && isdigit(static_cast<unsigned char>(line[pos])))
            ++pos;
        if (pos == start) err("expected integer");
        return std::stoll(line.substr(start, pos - start));
    }
    std::string quoted() {
        skip_ws();
        if (pos >= line.size() || line[pos] != '"') err("expected quoted string");
        ++pos;
        std::string out;
        while (pos < line.size() && line[pos] != '"') {
            if (line[pos] == '\\' && pos + 1 < line.size()) ++pos;
            out += line[pos++];
        }
        if (pos >= line.size()) err("unterminated string");
        ++pos;
        return out;
    }
};

ProgramGraph::Guard parse_guard(LineParser& lp) {
    ProgramGraph::Guard g;
    lp.expect('[');
    if (lp.peek(']')) {
        lp.expect(']');
        return g;  // empty guard = true
    }
    for (;;) {
        std::vector<ProgramGraph::Atom> conj;
        for (;;) {
            ProgramGraph::Atom a;
            a.var = lp.ident();
            lp.expect('=');
            a.value = lp.integer();
            conj.push_back(a);
            if (lp.try_consume("&")) continue;
            break;
        }
        g.disjuncts.push_back(std::move(conj));
        if (lp.try_consume("|")) continue;
        break;
    }
    lp.expect(']');
    return g;
}

}  // namespace

ProgramGraph parse_program_graph(const std::string& text) {
    ProgramGraph pg;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    bool any = false;
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto h = raw.find('#'); h != std::string::npos) raw = raw.substr(0, h);
        LineParser lp{raw, 0, lineno};
        if (lp.done()) continue;
        any = true;
        std::string kw = lp.ident();
        if (kw == "var") {
            ProgramGraph::Var v;
            v.name = lp.ident();
            lp.expect(':');
            v.lo = lp.integer();
            lp.expect('.');
            lp.expect('.');
            v.hi = lp.integer();
            lp.expect('=');
            v.init = lp.integer();
            if (v.lo > v.hi || v.init < v.lo || v.init > v.hi)
                lp.err("variable domain or initial value out of range");
            pg.vars.push_back(std::move(v));
        } else if (kw == "loc") {
            pg.locations.push_back(lp.ident());
        } else if (kw == "init") {
            pg.initial_location = lp.ident();
        } else if (kw == "final") {
            pg.final_locations.push_back(lp.ident());
        } else if (kw == "edge") {
            ProgramGraph::Instruction ins;
            ins.from = lp.ident();
            lp.expect('-');
            lp.expect('>');
            ins.to = lp.ident();
            ins.guard = parse_guard(lp);
            ins.action = lp.quoted();
            lp.expect('{');
            if (!lp.peek('}')) {
                for (;;) {
                    std::string var = lp.ident();
                    lp.expect(':');
                    lp.expect('=');
                    long long val = lp.integer();
                    ins.effect.emplace_back(var, val);
                    if (lp.try_consume(",")) continue;
                    break;
                }
            }
            lp.expect('}');
            pg.instructions.push_back(std::move(ins));
        } else {
            lp.err("unknown keyword '" + kw + "'");
        }
        if (!lp.done()) lp.err("trailing tokens");
    }
    if (!any) throw parse_error("empty program graph");
    auto known_loc = [&](const std::string& l) {
        return std::find(pg.locations.begin(), pg.locations.end(), l) !=
               pg.locations.end();
    };
    auto known_var = [&](const std::string& v) {
        for (const auto& var : pg.vars)
            if (var.name == v) return true;
        return false;
    };
    if (pg.initial_location.empty()) throw parse_error("missing init location");
    if (!known_loc(pg.initial_location))
        throw parse_error("init names unknown location " + pg.initial_location);
    for (const auto& f : pg.final_locations)
        if (!known_loc(f)) throw parse_error("final names unknown location " + f);
    for (const auto& ins : pg.instructions) {
        if (!known_loc(ins.from) || !known_loc(ins.to))
            throw parse_error("edge names unknown location");
        for (const auto& d : ins.guard.disjuncts)
            for (const auto& a : d)
                if (!known_var(a.var))
                    throw parse_error("guard names unknown variable " + a.var);
        for (const auto& [v, val] : ins.effect) {
            bool found = false;
            for (const auto& var : pg.vars)
                if (var.name == v) {
                    found = true;
                    if (val < var.lo || val > var.hi)
                        throw parse_error("assignment out of domain for " + v);
                }
            if (!found) throw parse_error("effect names unknown variable " + v);
        }
    }
    return pg;
}

namespace {

struct Merged {
    std::vector<ProgramGraph::Var> vars;  // sorted by name
    std::map<std::string, std::size_t> var_index;
};

Merged merge_vars(const std::vector<ProgramGraph>& pgs) {
    Merged m;
    for (const auto& pg : pgs)
        for (const auto& v : pg.vars) {
            auto it = m.var_index.find(v.name);
            if (it == m.var_index.end()) {
                m.var_index[v.name] = m.vars.size();
                m.vars.push_back(v);
            } else {
                const auto& ex = m.vars[it->second];
                if (ex.lo != v.lo || ex.hi != v.hi || ex.init != v.init)
                    throw argument_error(
                        "inconsistent shared variable declaration: " + v.name);
            }
        }
    std::vector<ProgramGraph::Var> sorted = m.vars;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.name < b.name; });
    m.vars = sorted;
    m.var_index.clear();
    for (std::size_t i = 0; i < m.vars.size(); ++i) m.var_index[m.vars[i].name] = i;
    return m;
}

struct State {
    std::vector<int> locs;            // per process, index into locations
    std::vector<long long> vals;      // per merged var
    auto operator<=>(const State&) const = default;
};

bool guard_holds(const ProgramGraph::Guard& g, const Merged& m, const State& s) {
    if (g.disjuncts.empty()) return true;
    for (const auto& conj : g.disjuncts) {
        bool all = true;
        for (const auto& a : conj)
            if (s.vals[m.var_index.at(a.var)] != a.value) {
                all = false;
                break;
            }
        if (all) return true;
    }
    return false;
}

}  // namespace

Hda compose(const std::vector<ProgramGraph>& pgs, const ComposeOptions& opts) {
    if (pgs.empty()) throw argument_error("compose: no processes");
    Merged m = merge_vars(pgs);
    std::vector<std::map<std::string, int>> loc_index(pgs.size());
    for (std::size_t p = 0; p < pgs.size(); ++p)
        for (std::size_t l = 0; l < pgs[p].locations.size(); ++l)
            loc_index[p][pgs[p].locations[l]] = static_cast<int>(l);

    auto initial_state = [&](const std::map<std::string, long long>& over) {
        State s;
        for (std::size_t p = 0; p < pgs.size(); ++p)
            s.locs.push_back(loc_index[p].at(pgs[p].initial_location));
        for (const auto& v : m.vars) {
            auto it = over.find(v.name);
            long long val = it == over.end() ? v.init : it->second;
            if (val < v.lo || val > v.hi)
                throw argument_error("initial valuation out of domain: " + v.name);
            s.vals.push_back(val);
        }
        return s;
    };

    std::vector<State> inits;
    if (opts.initial_valuations.empty()) {
        inits.push_back(initial_state({}));
    } else {
        for (const auto& over : opts.initial_valuations)
            inits.push_back(initial_state(over));
    }

    // enabled instructions of one process in a state
    auto enabled = [&](const State& s, std::size_t p) {
        std::vector<std::size_t> out;
        for (std::size_t ii = 0; ii < pgs[p].instructions.size(); ++ii) {
            const auto& ins = pgs[p].instructions[ii];
            if (loc_index[p].at(ins.from) != s.locs[p]) continue;
            if (!guard_holds(ins.guard, m, s)) continue;
            out.push_back(ii);
        }
        return out;
    };
    auto apply = [&](const State& s, std::size_t p, std::size_t ii) {
        const auto& ins = pgs[p].instructions[ii];
        State t = s;
        t.locs[p] = loc_index[p].at(ins.to);
        for (const auto& [v, val] : ins.effect) t.vals[m.var_index.at(v)] = val;
        return t;
    };

    // BFS over accessible states
    std::set<State> seen(inits.begin(), inits.end());
    std::vector<State> work(inits.begin(), inits.end());
    while (!work.empty()) {
        State s = work.back();
        work.pop_back();
        for (std::size_t p = 0; p < pgs.size(); ++p)
            for (std::size_t ii : enabled(s, p)) {
                State t = apply(s, p, ii);
                if (seen.insert(t).second) {
                    if (seen.size() > opts.state_budget)
                        throw resource_error("state budget exceeded");
                    work.push_back(t);
                }
            }
    }
    std::vector<State> states(seen.begin(), seen.end());  // canonical order
    std::map<State, std::size_t> state_index;
    for (std::size_t i = 0; i < states.size(); ++i) state_index[states[i]] = i;

    // action tuple: (process, instruction index); cubes keyed by
    // (state index, sorted action tuple)
    using Action = std::pair<std::size_t, std::size_t>;
    using CubeKey = std::pair<std::size_t, std::vector<Action>>;

    // A set of actions is diamond-complete at s when every execution order
    // stays enabled and all orders land in the same state.
    std::function<bool(const State&, const std::vector<Action>&, State*)>
        diamond = [&](const State& s, const std::vector<Action>& acts,
                      State* out) -> bool {
        std::vector<std::size_t> perm(acts.size());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
        std::optional<State> target;
        do {
            State cur = s;
            for (std::size_t idx : perm) {
                auto [p, ii] = acts[idx];
                auto en = enabled(cur, p);
                if (std::find(en.begin(), en.end(), ii) == en.end()) return false;
                cur = apply(cur, p, ii);
            }
            if (!target) target = cur;
            else if (!(*target == cur)) return false;
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (out) *out = *target;
        return true;
    };

    // collect cubes level by level
    std::vector<std::vector<CubeKey>> by_level(1);  // level 0 unused
    std::map<CubeKey, bool> present;
    // level 1: edges
    std::vector<CubeKey> edges;
    for (std::size_t si = 0; si < states.size(); ++si)
        for (std::size_t p = 0; p < pgs.size(); ++p)
            for (std::size_t ii : enabled(states[si], p)) {
                CubeKey key{si, {{p, ii}}};
                edges.push_back(key);
                present[key] = true;
            }
    by_level.push_back(edges);
    for (std::size_t k = 2; k <= pgs.size(); ++k) {
        std::vector<CubeKey> level;
        for (std::size_t si = 0; si < states.size(); ++si) {
            // choose k distinct processes, one enabled instruction each
            std::vector<std::vector<Action>> choices;
            std::function<void(std::size_t, std::vector<Action>&)> pick =
                [&](std::size_t p, std::vector<Action>& acc) {
                    if (acc.size() == k) {
                        choices.push_back(acc);
                        return;
                    }
                    if (p >= pgs.size()) return;
                    if (pgs.size() - p + acc.size() >= k)
                        pick(p + 1, acc);
                    for (std::size_t ii : enabled(states[si], p)) {
                        acc.push_back({p, ii});
                        if (acc.size() <= k) pick(p + 1, acc);
                        acc.pop_back();
                    }
                };
            std::vector<Action> acc;
            pick(0, acc);
            for (const auto& acts : choices) {
                if (!diamond(states[si], acts, nullptr)) continue;
                // all (k-1)-faces must be present
                bool faces_ok = true;
                for (std::size_t drop = 0; drop < acts.size() && faces_ok; ++drop) {
                    std::vector<Action> sub;
                    for (std::size_t j = 0; j < acts.size(); ++j)
                        if (j != drop) sub.push_back(acts[j]);
                    auto [p, ii] = acts[drop];
                    State after = apply(states[si], p, ii);
                    if (!present.count({si, sub}) ||
                        !present.count({state_index.at(after), sub}))
                        faces_ok = false;
                }
                if (!faces_ok) continue;
                CubeKey key{si, acts};
                level.push_back(key);
                present[key] = true;
            }
        }
        by_level.push_back(level);
        if (level.empty()) break;
    }

    // assign ids degree-major: states, then edges, then squares, ...
    PrecubicalSetBuilder b;
    std::map<CubeKey, CubeId> cube_id;
    std::vector<CubeId> vertex_id(states.size());
    for (std::size_t si = 0; si < states.size(); ++si)
        vertex_id[si] = b.add_cube(0);
    for (std::size_t k = 1; k < by_level.size(); ++k)
        for (const auto& key : by_level[k])
            cube_id[key] = b.add_cube(static_cast<int>(k));
    // wire faces
    for (std::size_t k = 1; k < by_level.size(); ++k)
        for (const auto& key : by_level[k]) {
            const auto& [si, acts] = key;
            CubeId self = cube_id.at(key);
            for (std::size_t idx = 0; idx < acts.size(); ++idx) {
                std::vector<Action> sub;
                for (std::size_t j = 0; j < acts.size(); ++j)
                    if (j != idx) sub.push_back(acts[j]);
                auto [p, ii] = acts[idx];
                State after = apply(states[si], p, ii);
                std::size_t ti = state_index.at(after);
                CubeId front = k == 1 ? vertex_id[si] : cube_id.at(CubeKey{si, sub});
                CubeId back = k == 1 ? vertex_id[ti] : cube_id.at(CubeKey{ti, sub});
                b.set_face(self, 0, static_cast<int>(idx) + 1, front);
                b.set_face(self, 1, static_cast<int>(idx) + 1, back);
            }
        }

    Hda out;
    out.p = std::move(b).build();
    for (const auto& key : by_level[1]) {
        const auto& [si, acts] = key;
        out.label[cube_id.at(key)] = {pgs[acts[0].first].instructions[acts[0].second].action};
        (void)si;
    }
    for (const State& s : inits) out.init.insert(vertex_id[state_index.at(s)]);
    // final: every process at a declared final location (its initial
    // location when none declared), any valuation
    for (std::size_t si = 0; si < states.size(); ++si) {
        bool ok = true;
        for (std::size_t p = 0; p < pgs.size(); ++p) {
            std::vector<std::string> finals = pgs[p].final_locations;
            if (finals.empty()) finals.push_back(pgs[p].initial_location);
            bool here = false;
            for (const auto& f : finals)
                if (loc_index[p].at(f) == states[si].locs[p]) here = true;
            if (!here) {
                ok = false;
                break;
            }
        }
        if (ok) out.final.insert(vertex_id[si]);
    }
    return out;
}

}  // namespace hda
