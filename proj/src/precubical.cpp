#include "hda/precubical.hpp"

#include <algorithm>
#include <map>

namespace hda {

const PrecubicalSet::Cube& PrecubicalSet::cube(CubeId id) const {
    auto it = index_.find(id);
    if (it == index_.end())
        throw argument_error("unknown cube id " + std::to_string(id));
    return cubes_[it->second];
}

CubeId PrecubicalSet::face(CubeId id, int k, int i) const {
    const Cube& c = cube(id);
    if (k != 0 && k != 1) throw argument_error("face side must be 0 or 1");
    if (i < 1 || i > c.dim)
        throw argument_error("face index " + std::to_string(i) +
                             " out of range for cube of degree " +
                             std::to_string(c.dim));
    return c.faces[2 * (i - 1) + k];
}

std::vector<CubeId> PrecubicalSet::cubes_of_degree(int n) const {
    std::vector<CubeId> out;
    for (const Cube& c : cubes_)
        if (c.dim == n) out.push_back(c.id);
    return out;
}

std::size_t PrecubicalSet::count_of_degree(int n) const {
    std::size_t k = 0;
    for (const Cube& c : cubes_)
        if (c.dim == n) ++k;
    return k;
}

std::vector<std::size_t> PrecubicalSet::counts_per_degree() const {
    std::vector<std::size_t> out(static_cast<std::size_t>(max_degree_) + 1, 0);
    for (const Cube& c : cubes_) out[static_cast<std::size_t>(c.dim)]++;
    return out;
}

CubeId PrecubicalSet::max_id() const {
    CubeId m = -1;
    for (const Cube& c : cubes_) m = std::max(m, c.id);
    return m;
}

std::vector<CubeId> PrecubicalSet::image_of(CubeId x) const {
    std::set<CubeId> seen;
    std::vector<CubeId> frontier{x};
    seen.insert(x);
    while (!frontier.empty()) {
        std::vector<CubeId> next;
        for (CubeId c : frontier) {
            const Cube& cc = cube(c);
            for (int i = 1; i <= cc.dim; ++i)
                for (int k = 0; k <= 1; ++k) {
                    CubeId f = cc.faces[2 * (i - 1) + k];
                    if (seen.insert(f).second) next.push_back(f);
                }
        }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

CubeId PrecubicalSetBuilder::add_cube(int dim) {
    return add_cube_with_id(next_id_, dim);
}

CubeId PrecubicalSetBuilder::add_cube_with_id(CubeId id, int dim) {
    if (dim < 0 || dim > kMaxDegree)
        throw argument_error("cube degree out of range: " + std::to_string(dim));
    if (index_.count(id))
        throw argument_error("duplicate cube id " + std::to_string(id));
    index_[id] = cubes_.size();
    cubes_.push_back({id, dim, std::vector<CubeId>(2 * static_cast<std::size_t>(dim), -1)});
    next_id_ = std::max(next_id_, id + 1);
    return id;
}

void PrecubicalSetBuilder::set_face(CubeId x, int k, int i, CubeId y) {
    auto it = index_.find(x);
    if (it == index_.end())
        throw argument_error("set_face: unknown cube " + std::to_string(x));
    PrecubicalSet::Cube& c = cubes_[it->second];
    if (k != 0 && k != 1) throw argument_error("face side must be 0 or 1");
    if (i < 1 || i > c.dim) throw argument_error("face index out of range");
    CubeId& slot = c.faces[2 * (i - 1) + k];
    if (slot != -1 && slot != y)
        throw argument_error("conflicting face assignment for cube " +
                             std::to_string(x));
    slot = y;
}

PrecubicalSet PrecubicalSetBuilder::build() && {
    for (const auto& c : cubes_) {
        for (std::size_t s = 0; s < c.faces.size(); ++s) {
            CubeId f = c.faces[s];
            if (f == -1)
                throw argument_error("cube " + std::to_string(c.id) +
                                     " has an unassigned face");
            auto it = index_.find(f);
            if (it == index_.end())
                throw argument_error("cube " + std::to_string(c.id) +
                                     " has face pointing to unknown id " +
                                     std::to_string(f));
            if (cubes_[it->second].dim != c.dim - 1)
                throw argument_error("face of cube " + std::to_string(c.id) +
                                     " has wrong degree");
        }
    }
    PrecubicalSet p;
    p.cubes_ = std::move(cubes_);
    std::sort(p.cubes_.begin(), p.cubes_.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < p.cubes_.size(); ++i) p.index_[p.cubes_[i].id] = i;
    for (const auto& c : p.cubes_) p.max_degree_ = std::max(p.max_degree_, c.dim);
    return p;
}

ValidationReport validate_precubical(const PrecubicalSet& p) {
    ValidationReport r;
    for (const auto& c : p.cubes()) {
        for (int i = 1; i <= c.dim; ++i)
            for (int k = 0; k <= 1; ++k) {
                CubeId f = c.faces[2 * (i - 1) + k];
                if (!p.contains(f)) {
                    r.add({"face-missing", c.id, {k, i}, "face target not in set"});
                    continue;
                }
                if (p.degree(f) != c.dim - 1)
                    r.add({"face-degree", c.id, {k, i}, "degree mismatch"});
            }
        // d^k_i d^l_j = d^l_{j-1} d^k_i for i < j
        for (int j = 2; j <= c.dim; ++j)
            for (int i = 1; i < j; ++i)
                for (int k = 0; k <= 1; ++k)
                    for (int l = 0; l <= 1; ++l) {
                        CubeId a = c.faces[2 * (j - 1) + l];
                        CubeId b = c.faces[2 * (i - 1) + k];
                        if (!p.contains(a) || !p.contains(b)) continue;
                        if (p.degree(a) != c.dim - 1 || p.degree(b) != c.dim - 1)
                            continue;
                        CubeId lhs = p.face(a, k, i);
                        CubeId rhs = p.face(b, l, j - 1);
                        if (lhs != rhs)
                            r.add({"precubical-identity", c.id, {k, i, l, j},
                                   "d^k_i d^l_j != d^l_{j-1} d^k_i"});
                    }
    }
    return r;
}

PrecubicalSet interval(int k, int l) {
    if (k > l) throw argument_error("interval requires k <= l");
    PrecubicalSetBuilder b;
    std::vector<CubeId> verts;
    for (int v = k; v <= l; ++v) verts.push_back(b.add_cube(0));
    for (int j = k + 1; j <= l; ++j) {
        CubeId e = b.add_cube(1);
        b.set_face(e, 0, 1, verts[static_cast<std::size_t>(j - 1 - k)]);
        b.set_face(e, 1, 1, verts[static_cast<std::size_t>(j - k)]);
    }
    return std::move(b).build();
}

PrecubicalSet tensor(const PrecubicalSet& p, const PrecubicalSet& q,
                     std::vector<std::pair<CubeId, CubeId>>* pair_names) {
    // Pairs ordered degree-major, then by (p id, q id).
    std::vector<std::pair<CubeId, CubeId>> pairs;
    for (const auto& cp : p.cubes())
        for (const auto& cq : q.cubes()) {
            if (cp.dim + cq.dim > kMaxDegree)
                throw argument_error("tensor exceeds maximum supported degree");
            pairs.emplace_back(cp.id, cq.id);
        }
    std::stable_sort(pairs.begin(), pairs.end(),
                     [&](const auto& a, const auto& b) {
                         int da = p.degree(a.first) + q.degree(a.second);
                         int db = p.degree(b.first) + q.degree(b.second);
                         if (da != db) return da < db;
                         return a < b;
                     });
    std::map<std::pair<CubeId, CubeId>, CubeId> id_of;
    PrecubicalSetBuilder b;
    for (const auto& pr : pairs)
        id_of[pr] = b.add_cube(p.degree(pr.first) + q.degree(pr.second));
    for (const auto& pr : pairs) {
        int dp = p.degree(pr.first);
        int dq = q.degree(pr.second);
        CubeId self = id_of[pr];
        for (int i = 1; i <= dp + dq; ++i)
            for (int k = 0; k <= 1; ++k) {
                std::pair<CubeId, CubeId> f =
                    i <= dp ? std::make_pair(p.face(pr.first, k, i), pr.second)
                            : std::make_pair(pr.first, q.face(pr.second, k, i - dp));
                b.set_face(self, k, i, id_of.at(f));
            }
    }
    if (pair_names) {
        pair_names->clear();
        pair_names->resize(pairs.size());
        for (const auto& pr : pairs)
            (*pair_names)[static_cast<std::size_t>(id_of[pr])] = pr;
    }
    return std::move(b).build();
}

namespace {

// Elements of [[0,1]]^{tensor n} as tuples over {0,1,2} with 2 = [0,1].
void tuples_rec(int n, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == n) {
        out.push_back(cur);
        return;
    }
    for (int v = 0; v <= 2; ++v) {
        cur.push_back(v);
        tuples_rec(n, cur, out);
        cur.pop_back();
    }
}

CubeId evaluate_tuple(const PrecubicalSet& p, CubeId x, const std::vector<int>& t) {
    // Apply fixed coordinates as face operators from highest index down so
    // earlier applications do not shift lower indices.
    CubeId cur = x;
    for (int i = static_cast<int>(t.size()); i >= 1; --i) {
        int v = t[static_cast<std::size_t>(i - 1)];
        if (v == 2) continue;
        cur = p.face(cur, v, i);
    }
    return cur;
}

}  // namespace

CubeImage cube_image(const PrecubicalSet& p, CubeId x) {
    int n = p.degree(x);
    std::vector<std::vector<int>> tuples;
    std::vector<int> cur;
    tuples_rec(n, cur, tuples);
    std::set<CubeId> members;
    bool injective = true;
    for (const auto& t : tuples) {
        CubeId c = evaluate_tuple(p, x, t);
        if (!members.insert(c).second) injective = false;
    }
    // Distinct tuples hitting the same cube also break injectivity when the
    // insert order masks a collision; compare counts directly.
    if (members.size() != tuples.size()) injective = false;
    return {PrecubicalSubset{&p, std::move(members)}, injective};
}

std::pair<bool, std::optional<CubeId>> is_weakly_regular(const PrecubicalSet& p) {
    for (const auto& c : p.cubes()) {
        if (c.dim != 2) continue;
        if (p.face(c.id, 0, 1) == p.face(c.id, 0, 2) ||
            p.face(c.id, 1, 1) == p.face(c.id, 1, 2))
            return {false, c.id};
    }
    return {true, std::nullopt};
}

std::set<CubeId> star(const PrecubicalSet& p, CubeId x) {
    if (!p.contains(x)) throw argument_error("star: unknown cube id");
    std::set<CubeId> out;
    int dx = p.degree(x);
    for (const auto& c : p.cubes()) {
        if (c.dim < dx) continue;
        auto img = p.image_of(c.id);
        if (std::binary_search(img.begin(), img.end(), x)) out.insert(c.id);
    }
    return out;
}

std::vector<FreeFace> free_faces(const PrecubicalSet& p) {
    // star sizes via one pass over all cube images
    std::unordered_map<CubeId, std::vector<CubeId>> star_of;
    for (const auto& c : p.cubes())
        for (CubeId m : p.image_of(c.id)) star_of[m].push_back(c.id);
    std::vector<FreeFace> out;
    for (const auto& c : p.cubes()) {
        for (int i = 1; i <= c.dim; ++i)
            for (int k = 0; k <= 1; ++k) {
                CubeId f = c.faces[2 * (i - 1) + k];
                const auto& st = star_of[f];
                std::set<CubeId> distinct(st.begin(), st.end());
                if (distinct.size() != 2 || !distinct.count(c.id) ||
                    !distinct.count(f))
                    continue;
                // a face repeated inside x's own boundary is not free
                int occurrences = 0;
                for (CubeId g : c.faces)
                    if (g == f) ++occurrences;
                if (occurrences == 1) out.push_back({c.id, k, i});
            }
    }
    std::sort(out.begin(), out.end(), [](const FreeFace& a, const FreeFace& b) {
        return std::tie(a.cube, a.k, a.i) < std::tie(b.cube, b.k, b.i);
    });
    return out;
}

CubeId corner_edge(const PrecubicalSet& p, CubeId x, int k, int i) {
    int n = p.degree(x);
    if (n < 1) throw argument_error("corner_edge requires degree >= 1");
    if (i < 1 || i > n) throw argument_error("corner_edge index out of range");
    if (k != 0 && k != 1) throw argument_error("corner_edge side must be 0 or 1");
    if (n == 1) return x;
    CubeId cur = x;
    for (int j = n; j >= 1; --j) {
        if (j == i) continue;
        cur = p.face(cur, 1 - k, j);
    }
    return cur;
}

PrecubicalSet remove_star(const PrecubicalSet& p, CubeId x) {
    auto st = star(p, x);
    std::set<CubeId> keep;
    for (const auto& c : p.cubes())
        if (!st.count(c.id)) keep.insert(c.id);
    return restrict_to(p, keep);
}

PrecubicalSet restrict_to(const PrecubicalSet& p, const std::set<CubeId>& members) {
    PrecubicalSetBuilder b;
    for (const auto& c : p.cubes())
        if (members.count(c.id)) b.add_cube_with_id(c.id, c.dim);
    for (const auto& c : p.cubes()) {
        if (!members.count(c.id)) continue;
        for (int i = 1; i <= c.dim; ++i)
            for (int k = 0; k <= 1; ++k) {
                CubeId f = c.faces[2 * (i - 1) + k];
                if (!members.count(f))
                    throw argument_error(
                        "restrict_to: member set not closed under faces (cube " +
                        std::to_string(c.id) + ")");
                b.set_face(c.id, k, i, f);
            }
    }
    return std::move(b).build();
}

PrecubicalSubset closure(const PrecubicalSet& p, const std::set<CubeId>& s) {
    std::set<CubeId> out;
    for (CubeId x : s) {
        if (!p.contains(x)) throw argument_error("closure: unknown cube id");
        for (CubeId m : p.image_of(x)) out.insert(m);
    }
    return {&p, std::move(out)};
}

Reachability reachability(const PrecubicalSet& p) {
    Reachability r;
    r.vertices = p.cubes_of_degree(0);
    for (std::size_t i = 0; i < r.vertices.size(); ++i) r.index[r.vertices[i]] = i;
    std::size_t n = r.vertices.size();
    r.reach.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) r.reach[i][i] = true;
    std::vector<bool> has_out(n, false), has_in(n, false);
    std::vector<std::pair<std::size_t, std::size_t>> arcs;
    for (const auto& c : p.cubes()) {
        if (c.dim != 1) continue;
        std::size_t s = r.index.at(c.faces[0]);
        std::size_t t = r.index.at(c.faces[1]);
        has_out[s] = true;
        has_in[t] = true;
        arcs.emplace_back(s, t);
        r.reach[s][t] = true;
    }
    // Floyd-Warshall; vertex counts are desk scale.
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            if (!r.reach[i][k]) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (r.reach[k][j]) r.reach[i][j] = true;
        }
    for (std::size_t i = 0; i < n; ++i) {
        if (!has_out[i]) r.m0.insert(r.vertices[i]);
        if (!has_in[i]) r.m1.insert(r.vertices[i]);
    }
    for (const auto& [s, t] : arcs)
        if (r.reach[t][s]) r.acyclic = false;  // includes self-loops
    return r;
}

}  // namespace hda
