#include "hda/path.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <unordered_map>

namespace hda {

CubeId path_end(const PrecubicalSet& p, const Path& w) {
    if (w.edges.empty()) return w.start;
    return p.edge_target(w.edges.back());
}

bool is_path(const PrecubicalSet& p, const Path& w) {
    if (!p.contains(w.start) || p.degree(w.start) != 0) return false;
    CubeId at = w.start;
    for (CubeId e : w.edges) {
        if (!p.contains(e) || p.degree(e) != 1) return false;
        if (p.edge_source(e) != at) return false;
        at = p.edge_target(e);
    }
    return true;
}

Path concat(const PrecubicalSet& p, const Path& a, const Path& b) {
    if (path_end(p, a) != b.start)
        throw argument_error("concat: endpoint mismatch");
    Path out = a;
    out.edges.insert(out.edges.end(), b.edges.begin(), b.edges.end());
    return out;
}

namespace {

// For every square, both boundary factorizations keyed by their first edge:
// (d^0_1 z, d^1_2 z) <-> (d^0_2 z, d^1_1 z).
struct MoveIndex {
    std::unordered_map<CubeId, std::vector<std::array<CubeId, 3>>> by_first;

    explicit MoveIndex(const PrecubicalSet& p) {
        for (const auto& c : p.cubes()) {
            if (c.dim != 2) continue;
            CubeId a1 = p.face(c.id, 0, 1), a2 = p.face(c.id, 0, 2);
            CubeId b1 = p.face(c.id, 1, 1), b2 = p.face(c.id, 1, 2);
            by_first[a1].push_back({b2, a2, b1});
            by_first[a2].push_back({b1, a1, b2});
        }
    }

    void expand(const Path& w, std::set<Path>& out) const {
        for (std::size_t j = 0; j + 1 < w.edges.size(); ++j) {
            auto it = by_first.find(w.edges[j]);
            if (it == by_first.end()) continue;
            for (const auto& [snd, r1, r2] : it->second) {
                if (w.edges[j + 1] != snd) continue;
                Path v = w;
                v.edges[j] = r1;
                v.edges[j + 1] = r2;
                if (!(v == w)) out.insert(std::move(v));
            }
        }
    }
};

std::set<Path> closure_impl(const PrecubicalSet& p, const Path& w,
                            std::size_t budget) {
    MoveIndex idx(p);
    std::set<Path> seen{w};
    std::deque<Path> work{w};
    while (!work.empty()) {
        Path cur = work.front();
        work.pop_front();
        std::set<Path> next;
        idx.expand(cur, next);
        for (auto& v : next) {
            if (seen.count(v)) continue;
            if (seen.size() >= budget)
                throw resource_error("dihomotopy closure exceeds path budget");
            seen.insert(v);
            work.push_back(v);
        }
    }
    return seen;
}

}  // namespace

std::set<Path> adjacent_paths(const PrecubicalSet& p, const Path& w) {
    if (!is_path(p, w)) throw argument_error("adjacent_paths: not a path");
    MoveIndex idx(p);
    std::set<Path> out;
    idx.expand(w, out);
    return out;
}

DihomotopyClass dihomotopy_class(const PrecubicalSet& p, const Path& w,
                                 std::size_t budget) {
    if (!is_path(p, w)) throw argument_error("dihomotopy_class: not a path");
    return {closure_impl(p, w, budget)};
}

bool are_dihomotopic(const PrecubicalSet& p, const Path& a, const Path& b,
                     std::size_t budget) {
    if (!is_path(p, a) || !is_path(p, b))
        throw argument_error("are_dihomotopic: not a path");
    if (a.start != b.start || a.edges.size() != b.edges.size() ||
        path_end(p, a) != path_end(p, b))
        return false;
    if (a == b) return true;
    return closure_impl(p, a, budget).count(b) != 0;
}

DivisionResult divides(const PrecubicalSet& p, const Path& g, const Path& w,
                       int side, std::size_t budget) {
    if (side != 0 && side != 1) throw argument_error("divides: side must be 0 or 1");
    if (!is_path(p, g) || !is_path(p, w))
        throw argument_error("divides: not a path");
    if (side == 0 && g.start != w.start)
        throw precondition_error("divides side 0: divisor must start at path start");
    if (side == 1 && path_end(p, g) != path_end(p, w))
        throw precondition_error("divides side 1: divisor must end at path end");
    DivisionResult res;
    if (g.edges.size() > w.edges.size()) return res;
    auto wclass = closure_impl(p, w, budget);
    auto gclass = closure_impl(p, g, budget);
    std::size_t lg = g.edges.size();
    std::vector<Path> quotients;
    for (const Path& m : wclass) {
        if (side == 0) {
            Path prefix{m.start, {m.edges.begin(), m.edges.begin() + static_cast<std::ptrdiff_t>(lg)}};
            if (!gclass.count(prefix)) continue;
            Path q{path_end(p, prefix),
                   {m.edges.begin() + static_cast<std::ptrdiff_t>(lg), m.edges.end()}};
            quotients.push_back(std::move(q));
        } else {
            std::size_t cut = m.edges.size() - lg;
            Path q{m.start, {m.edges.begin(), m.edges.begin() + static_cast<std::ptrdiff_t>(cut)}};
            Path suffix{path_end(p, q),
                        {m.edges.begin() + static_cast<std::ptrdiff_t>(cut), m.edges.end()}};
            if (!gclass.count(suffix)) continue;
            quotients.push_back(std::move(q));
        }
    }
    if (quotients.empty()) return res;
    res.divisible = true;
    std::sort(quotients.begin(), quotients.end());
    res.quotient = quotients.front();
    auto qclass = closure_impl(p, quotients.front(), budget);
    bool unique = true;
    for (const Path& q : quotients)
        if (!qclass.count(q)) {
            unique = false;
            break;
        }
    res.unique = unique;
    return res;
}

CancellationResult cancellation_sufficient(const PrecubicalSet& p, const Path& g,
                                           int side, std::size_t budget) {
    if (!is_path(p, g)) throw argument_error("cancellation: not a path");
    std::set<CubeId> front_faces, back_faces;
    for (const auto& c : p.cubes()) {
        if (c.dim != 2) continue;
        front_faces.insert(p.face(c.id, 0, 1));
        front_faces.insert(p.face(c.id, 0, 2));
        back_faces.insert(p.face(c.id, 1, 1));
        back_faces.insert(p.face(c.id, 1, 2));
    }
    auto gclass = closure_impl(p, g, budget);
    if (side == 1) {
        bool disjunct_a = true;
        for (const Path& m : gclass)
            if (!m.edges.empty() && back_faces.count(m.edges.front())) {
                disjunct_a = false;
                break;
            }
        if (disjunct_a)
            return {true, "no dihomotopic path starts with a back face"};
        bool disjunct_b = true;
        for (const auto& c : p.cubes())
            if (c.dim == 1 && p.edge_target(c.id) == g.start &&
                front_faces.count(c.id)) {
                disjunct_b = false;
                break;
            }
        if (disjunct_b)
            return {true, "no edge ending at the path start is a front face"};
        return {false, "both sufficient disjuncts fail"};
    }
    // left cancellation, mirrored
    bool disjunct_a = true;
    for (const Path& m : gclass)
        if (!m.edges.empty() && front_faces.count(m.edges.back())) {
            disjunct_a = false;
            break;
        }
    if (disjunct_a) return {true, "no dihomotopic path ends with a front face"};
    CubeId endv = path_end(p, g);
    bool disjunct_b = true;
    for (const auto& c : p.cubes())
        if (c.dim == 1 && p.edge_source(c.id) == endv && back_faces.count(c.id)) {
            disjunct_b = false;
            break;
        }
    if (disjunct_b)
        return {true, "no edge starting at the path end is a back face"};
    return {false, "both sufficient disjuncts fail"};
}

Path transport_path(const Hda& a, CubeId x, int i, const Path& w,
                    std::size_t budget) {
    const PrecubicalSet& p = a.p;
    if (p.degree(x) != 2) throw argument_error("transport_path: x must be a 2-cube");
    if (i != 1 && i != 2) throw argument_error("transport_path: i must be 1 or 2");
    if (!is_path(p, w)) throw argument_error("transport_path: not a path");
    CubeId removed = p.face(x, 1, i);
    auto st = star(p, removed);
    if (st.size() != 2 || !st.count(x))
        throw precondition_error("transport_path: face is not free");
    PrecubicalSet q = remove_star(p, removed);
    CubeId e_corner = p.face(x, 0, 3 - i);   // e^1_i x
    CubeId front_i = p.face(x, 0, i);        // d^0_i x
    CubeId back_other = p.face(x, 1, 3 - i); // d^1_{3-i} x

    // Split w at occurrences of the removed edge.
    std::vector<Path> segments;
    Path cur{w.start, {}};
    for (CubeId e : w.edges) {
        if (e == removed) {
            segments.push_back(cur);
            cur = Path{p.edge_target(e), {}};
        } else {
            cur.edges.push_back(e);
        }
    }
    segments.push_back(cur);
    if (segments.size() == 1) return w;  // no occurrence: w already lives in Q

    Path gamma{p.edge_source(e_corner), {e_corner}};
    Path out{w.start, {}};
    for (std::size_t j = 0; j + 1 < segments.size(); ++j) {
        DivisionResult d = divides(q, gamma, segments[j], 1, budget);
        if (!d.divisible)
            throw precondition_error(
                "transport_path: segment " + std::to_string(j) +
                " is not right-divisible by the corner edge");
        Path rerouted = *d.quotient;
        rerouted.edges.push_back(front_i);
        rerouted.edges.push_back(back_other);
        if (j == 0) out = rerouted;
        else out = concat(q, out, rerouted);
    }
    out = concat(q, out, segments.back());
    return out;
}

std::vector<Path> enumerate_paths(const PrecubicalSet& p, CubeId v, CubeId w,
                                  std::size_t max_len, std::size_t budget) {
    // edges grouped by source, in id order
    std::unordered_map<CubeId, std::vector<CubeId>> out_edges;
    for (const auto& c : p.cubes())
        if (c.dim == 1) out_edges[c.faces[0]].push_back(c.id);
    std::vector<Path> found;
    std::size_t visited = 0;
    Path cur{v, {}};
    // iterative DFS
    struct Frame {
        CubeId at;
        std::size_t next_idx;
    };
    std::vector<Frame> stack{{v, 0}};
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next_idx == 0) {
            if (++visited > budget)
                throw resource_error("path enumeration exceeds budget");
            if (f.at == w) found.push_back(cur);
        }
        auto it = out_edges.find(f.at);
        if (it == out_edges.end() || f.next_idx >= it->second.size() ||
            cur.edges.size() >= max_len) {
            if (!cur.edges.empty() && stack.size() > 1) cur.edges.pop_back();
            stack.pop_back();
            continue;
        }
        CubeId e = it->second[f.next_idx++];
        cur.edges.push_back(e);
        stack.push_back({p.edge_target(e), 0});
    }
    std::sort(found.begin(), found.end());
    return found;
}

}  // namespace hda
