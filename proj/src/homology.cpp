#include "hda/homology.hpp"

#include <algorithm>
#include <sstream>

namespace hda {

std::string RingSpec::name() const {
    switch (kind) {
        case integers: return "Z";
        case rationals: return "Q";
        case prime_field: return "F" + std::to_string(p);
    }
    return "?";
}

IntMatrix chain_boundary(const PrecubicalSet& p, int n) {
    if (n < 1) throw argument_error("chain_boundary requires degree >= 1");
    std::vector<CubeId> rows = p.cubes_of_degree(n - 1);
    std::vector<CubeId> cols = p.cubes_of_degree(n);
    std::map<CubeId, std::size_t> row_index;
    for (std::size_t i = 0; i < rows.size(); ++i) row_index[rows[i]] = i;
    IntMatrix m(rows.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        for (int i = 1; i <= n; ++i) {
            int sign = (i % 2 == 0) ? 1 : -1;
            m.at(row_index.at(p.face(cols[j], 0, i)), j) += sign;
            m.at(row_index.at(p.face(cols[j], 1, i)), j) -= sign;
        }
    }
    return m;
}

std::string HomologyProfile::to_string() const {
    std::ostringstream out;
    out << ring << " betti";
    for (std::size_t b : betti) out << " " << b;
    for (std::size_t n = 0; n < torsion.size(); ++n)
        if (!torsion[n].empty()) {
            out << " torsion[" << n << "]";
            for (const auto& t : torsion[n]) out << " " << t;
        }
    return out.str();
}

namespace {

std::vector<std::size_t> trim_profile_degrees(const PrecubicalSet& p) {
    return p.counts_per_degree();
}

}  // namespace

HomologyProfile homology(const PrecubicalSet& p, RingSpec ring) {
    auto counts = trim_profile_degrees(p);
    int maxd = p.max_degree();
    std::vector<std::size_t> rank(static_cast<std::size_t>(maxd) + 2, 0);
    std::vector<std::vector<BigInt>> tors(static_cast<std::size_t>(maxd) + 1);
    for (int n = 1; n <= maxd; ++n) {
        IntMatrix b = chain_boundary(p, n);
        if (ring.kind == RingSpec::prime_field) {
            rank[static_cast<std::size_t>(n)] = rank_mod_p(b, ring.p);
        } else {
            SmithResult s = smith_normal_form(b);
            rank[static_cast<std::size_t>(n)] = s.rank;
            if (ring.kind == RingSpec::integers) {
                for (const auto& f : s.invariant_factors)
                    if (f > 1) tors[static_cast<std::size_t>(n - 1)].push_back(f);
            }
        }
    }
    HomologyProfile out;
    out.ring = ring.name();
    out.betti.resize(static_cast<std::size_t>(maxd) + 1);
    out.torsion = std::move(tors);
    for (int n = 0; n <= maxd; ++n)
        out.betti[static_cast<std::size_t>(n)] =
            counts[static_cast<std::size_t>(n)] - rank[static_cast<std::size_t>(n)] -
            rank[static_cast<std::size_t>(n) + 1];
    return out;
}

HomologyContext::HomologyContext(const PrecubicalSet& p) : p_(&p) {
    profile_ = homology(p, RingSpec::z());
    int maxd = p.max_degree();
    degrees_.resize(static_cast<std::size_t>(maxd) + 1);
    for (int n = 0; n <= maxd; ++n) {
        Degree& d = degrees_[static_cast<std::size_t>(n)];
        d.cube_ids = p.cubes_of_degree(n);
        for (std::size_t i = 0; i < d.cube_ids.size(); ++i)
            d.cube_index[d.cube_ids[i]] = i;
        std::size_t dim_n = d.cube_ids.size();
        // kernel of the boundary
        if (n == 0) {
            d.kernel = IntMatrix::identity(dim_n);
        } else {
            IntMatrix b = chain_boundary(p, n);
            SmithResult s = smith_normal_form(b);
            std::size_t z = dim_n - s.rank;
            d.kernel = IntMatrix(dim_n, z);
            for (std::size_t j = 0; j < z; ++j)
                for (std::size_t i = 0; i < dim_n; ++i)
                    d.kernel.at(i, j) = s.v.at(i, s.rank + j);
        }
        std::size_t z = d.kernel.cols();
        // image of the next boundary, in kernel coordinates
        IntMatrix img(z, 0);
        if (n < maxd) {
            IntMatrix bnext = chain_boundary(p, n + 1);
            SmithResult ks = smith_normal_form(d.kernel);
            img = IntMatrix(z, bnext.cols());
            for (std::size_t j = 0; j < bnext.cols(); ++j) {
                std::vector<BigInt> c(dim_n);
                for (std::size_t i = 0; i < dim_n; ++i) c[i] = bnext.at(i, j);
                // solve kernel * y = c using the cached factorization
                std::vector<BigInt> rhs = ks.u.apply(c);
                std::vector<BigInt> y(z, 0);
                bool ok = true;
                for (std::size_t i = 0; i < rhs.size(); ++i) {
                    if (i < ks.rank) {
                        if (rhs[i] % ks.d.at(i, i) != 0) ok = false;
                        else y[i] = rhs[i] / ks.d.at(i, i);
                    } else if (rhs[i] != 0) {
                        ok = false;
                    }
                }
                if (!ok)
                    throw std::logic_error(
                        "boundary column is not a cycle; dd != 0");
                std::vector<BigInt> sol = ks.v.apply(y);
                for (std::size_t i = 0; i < z; ++i) img.at(i, j) = sol[i];
            }
        }
        SmithResult qs = smith_normal_form(img);
        d.quot_u = qs.u;
        d.quot_u_inv = qs.u_inv;
        d.orders.assign(z, 0);
        for (std::size_t i = 0; i < qs.rank; ++i) d.orders[i] = qs.d.at(i, i);
        for (std::size_t i = 0; i < z; ++i)
            if (d.orders[i] != 1) d.class_positions.push_back(i);
        // representatives: kernel * (quot_u_inv column)
        for (std::size_t pos : d.class_positions) {
            std::vector<BigInt> col(z);
            for (std::size_t i = 0; i < z; ++i) col[i] = d.quot_u_inv.at(i, pos);
            std::vector<BigInt> rep = d.kernel.apply(col);
            int sign = 1;
            for (const auto& x : rep) {
                if (x == 0) continue;
                if (x < 0) sign = -1;
                break;
            }
            if (sign < 0)
                for (auto& x : rep) x = -x;
            d.signs.push_back(sign);
            d.representatives.push_back(std::move(rep));
        }
    }
}

const HomologyContext::Degree& HomologyContext::degree(int n) const {
    if (n < 0 || n >= static_cast<int>(degrees_.size()))
        throw argument_error("homology degree out of range");
    return degrees_[static_cast<std::size_t>(n)];
}

std::size_t HomologyContext::class_count(int n) const {
    if (n < 0 || n >= static_cast<int>(degrees_.size())) return 0;
    return degrees_[static_cast<std::size_t>(n)].class_positions.size();
}

bool HomologyContext::is_cycle(int n, const std::vector<BigInt>& chain) const {
    if (n == 0) return true;
    IntMatrix b = chain_boundary(*p_, n);
    auto img = b.apply(chain);
    for (const auto& x : img)
        if (x != 0) return false;
    return true;
}

std::vector<BigInt> HomologyContext::chain_from(
    int n, const std::map<CubeId, long long>& c) const {
    const Degree& d = degree(n);
    std::vector<BigInt> out(d.cube_ids.size(), 0);
    for (const auto& [id, coef] : c) {
        auto it = d.cube_index.find(id);
        if (it == d.cube_index.end())
            throw argument_error("chain_from: cube of wrong degree");
        out[it->second] = coef;
    }
    return out;
}

std::vector<BigInt> HomologyContext::class_coords(
    int n, const std::vector<BigInt>& cycle) const {
    const Degree& d = degree(n);
    if (cycle.size() != d.cube_ids.size())
        throw argument_error("class_coords: chain size mismatch");
    if (!is_cycle(n, cycle)) throw argument_error("class_coords: not a cycle");
    auto y = solve_integer(d.kernel, cycle);
    if (!y) throw std::logic_error("cycle not in kernel lattice");
    std::vector<BigInt> q = d.quot_u.apply(*y);
    std::vector<BigInt> out;
    for (std::size_t idx = 0; idx < d.class_positions.size(); ++idx) {
        std::size_t pos = d.class_positions[idx];
        BigInt v = q[pos] * d.signs[idx];
        if (d.orders[pos] > 1) {
            v %= d.orders[pos];
            if (v < 0) v += d.orders[pos];
        }
        out.push_back(v);
    }
    return out;
}

HomologyClassRef class_of_cycle(const HomologyContext& ctx, int n,
                                const std::vector<BigInt>& cycle) {
    HomologyClassRef ref;
    ref.degree = n;
    ref.coords = ctx.class_coords(n, cycle);
    ref.representative = cycle;
    return ref;
}

HomologyClassRef basis_class(const HomologyContext& ctx, int n, std::size_t idx) {
    const auto& d = ctx.degree(n);
    if (idx >= d.class_positions.size())
        throw argument_error("basis_class: index out of range");
    HomologyClassRef ref;
    ref.degree = n;
    ref.coords.assign(d.class_positions.size(), 0);
    ref.coords[idx] = 1;
    ref.representative = d.representatives[idx];
    return ref;
}

bool same_class(const HomologyContext& ctx, const HomologyClassRef& a,
                const HomologyClassRef& b) {
    if (a.degree != b.degree) return false;
    const auto& d = ctx.degree(a.degree);
    for (std::size_t i = 0; i < d.class_positions.size(); ++i) {
        BigInt x = a.coords[i], y = b.coords[i];
        const BigInt& ord = d.orders[d.class_positions[i]];
        if (ord > 1) {
            BigInt diff = (x - y) % ord;
            if (diff != 0) return false;
        } else if (x != y) {
            return false;
        }
    }
    return true;
}

std::vector<std::vector<BigInt>> induced_image(const HomologyContext& ctx,
                                               const PrecubicalSubset& x, int n) {
    const PrecubicalSet& p = ctx.complex();
    const auto& d = ctx.degree(n);
    // cycles of the subcomplex, embedded into P's chain space
    PrecubicalSet sub = restrict_to(p, x.members);
    std::vector<CubeId> sub_n = sub.cubes_of_degree(n);
    std::vector<std::vector<BigInt>> gens;
    if (sub_n.empty()) return gens;
    IntMatrix kernel;
    if (n == 0) {
        kernel = IntMatrix::identity(sub_n.size());
    } else {
        IntMatrix b = chain_boundary(sub, n);
        SmithResult s = smith_normal_form(b);
        std::size_t z = sub_n.size() - s.rank;
        kernel = IntMatrix(sub_n.size(), z);
        for (std::size_t j = 0; j < z; ++j)
            for (std::size_t i = 0; i < sub_n.size(); ++i)
                kernel.at(i, j) = s.v.at(i, s.rank + j);
    }
    for (std::size_t j = 0; j < kernel.cols(); ++j) {
        std::vector<BigInt> chain(d.cube_ids.size(), 0);
        for (std::size_t i = 0; i < sub_n.size(); ++i)
            chain[d.cube_index.at(sub_n[i])] = kernel.at(i, j);
        gens.push_back(ctx.class_coords(n, chain));
    }
    return gens;
}

bool in_subgroup(const HomologyContext& ctx, int n,
                 const std::vector<BigInt>& target,
                 const std::vector<std::vector<BigInt>>& generators) {
    const auto& d = ctx.degree(n);
    std::size_t rows = d.class_positions.size();
    if (rows == 0) return true;
    // relation columns for torsion coordinates
    std::vector<std::size_t> torsion_rows;
    for (std::size_t i = 0; i < rows; ++i)
        if (d.orders[d.class_positions[i]] > 1) torsion_rows.push_back(i);
    IntMatrix m(rows, generators.size() + torsion_rows.size());
    for (std::size_t j = 0; j < generators.size(); ++j)
        for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = generators[j][i];
    for (std::size_t j = 0; j < torsion_rows.size(); ++j)
        m.at(torsion_rows[j], generators.size() + j) =
            d.orders[d.class_positions[torsion_rows[j]]];
    return solve_integer(m, target).has_value();
}

bool verify_pointing(const HomologyContext& ctx, const HomologyClassRef& alpha,
                     const HomologyClassRef& beta, const PointingCertificate& cert) {
    const PrecubicalSet& p = ctx.complex();
    PrecubicalSubset xs{&p, cert.x}, ys{&p, cert.y};
    auto gx = induced_image(ctx, xs, alpha.degree);
    if (!in_subgroup(ctx, alpha.degree, alpha.coords, gx)) return false;
    auto gy = induced_image(ctx, ys, beta.degree);
    if (!in_subgroup(ctx, beta.degree, beta.coords, gy)) return false;
    Reachability r = reachability(p);
    for (CubeId c : cert.x) {
        if (p.degree(c) != 0) continue;
        for (CubeId w : cert.y) {
            if (p.degree(w) != 0) continue;
            if (!r.reaches(c, w)) return false;
        }
    }
    return true;
}

namespace {

std::set<CubeId> support_closure(const PrecubicalSet& p, int n,
                                 const HomologyContext::Degree& d,
                                 const std::vector<BigInt>& chain) {
    std::set<CubeId> supp;
    for (std::size_t i = 0; i < chain.size(); ++i)
        if (chain[i] != 0) supp.insert(d.cube_ids[i]);
    (void)n;
    return closure(p, supp).members;
}

// Perturbations of a representative by boundaries of higher cubes touching
// its support.
std::vector<std::vector<BigInt>> perturbed_reps(const HomologyContext& ctx, int n,
                                                const std::vector<BigInt>& rep,
                                                int depth) {
    const PrecubicalSet& p = ctx.complex();
    const auto& d = ctx.degree(n);
    std::vector<std::vector<BigInt>> out{rep};
    if (n + 1 > p.max_degree() || depth <= 0) return out;
    IntMatrix bnext = chain_boundary(p, n + 1);
    std::vector<CubeId> higher = p.cubes_of_degree(n + 1);
    std::set<std::vector<BigInt>> seen{rep};
    std::vector<std::vector<BigInt>> frontier{rep};
    for (int step = 0; step < depth; ++step) {
        std::vector<std::vector<BigInt>> next;
        for (const auto& r : frontier) {
            std::set<CubeId> supp;
            for (std::size_t i = 0; i < r.size(); ++i)
                if (r[i] != 0) supp.insert(d.cube_ids[i]);
            for (std::size_t h = 0; h < higher.size(); ++h) {
                // adjacency: the higher cube's boundary meets the support
                bool touches = false;
                for (std::size_t i = 0; i < r.size(); ++i)
                    if (bnext.at(i, h) != 0 && supp.count(d.cube_ids[i])) {
                        touches = true;
                        break;
                    }
                if (!touches) continue;
                for (int sgn : {1, -1}) {
                    std::vector<BigInt> nr = r;
                    for (std::size_t i = 0; i < nr.size(); ++i)
                        nr[i] += sgn * bnext.at(i, h);
                    if (seen.insert(nr).second) next.push_back(nr);
                }
            }
        }
        for (auto& x : next) out.push_back(x);
        frontier = std::move(next);
    }
    return out;
}

}  // namespace

std::optional<PointingCertificate> search_pointing(const HomologyContext& ctx,
                                                   const HomologyClassRef& alpha,
                                                   const HomologyClassRef& beta,
                                                   int perturbation_depth) {
    const PrecubicalSet& p = ctx.complex();
    Reachability r = reachability(p);
    auto alpha_reps = perturbed_reps(ctx, alpha.degree, alpha.representative,
                                     perturbation_depth);
    auto beta_reps = perturbed_reps(ctx, beta.degree, beta.representative,
                                    perturbation_depth);
    for (const auto& ra : alpha_reps) {
        std::set<CubeId> xs =
            support_closure(p, alpha.degree, ctx.degree(alpha.degree), ra);
        if (xs.empty()) continue;
        std::vector<CubeId> xverts;
        for (CubeId c : xs)
            if (p.degree(c) == 0) xverts.push_back(c);
        for (const auto& rb : beta_reps) {
            std::set<CubeId> ys =
                support_closure(p, beta.degree, ctx.degree(beta.degree), rb);
            if (ys.empty()) continue;
            bool ok = true;
            for (CubeId xv : xverts) {
                for (CubeId c : ys)
                    if (p.degree(c) == 0 && !r.reaches(xv, c)) {
                        ok = false;
                        break;
                    }
                if (!ok) break;
            }
            if (ok) return PointingCertificate{xs, ys};
        }
    }
    return std::nullopt;
}

std::vector<std::set<CubeId>> enumerate_closed_subsets(const PrecubicalSet& p,
                                                       std::size_t cap) {
    // Every face-closed subset is a union of principal closures, so folding
    // each principal closure over the accumulated family generates them all.
    std::set<std::set<CubeId>> all{{}};
    for (const auto& c : p.cubes()) {
        auto principal = closure(p, {c.id}).members;
        std::vector<std::set<CubeId>> added;
        for (const auto& s : all) {
            std::set<CubeId> u = s;
            u.insert(principal.begin(), principal.end());
            if (!all.count(u)) added.push_back(std::move(u));
        }
        for (auto& u : added) {
            all.insert(std::move(u));
            if (all.size() > cap)
                throw resource_error("closed-subset enumeration exceeds cap");
        }
    }
    return {all.begin(), all.end()};
}

HomologyGraph homology_graph(const HomologyContext& ctx, GraphMode mode,
                             const HomologyGraphOptions& opts) {
    const PrecubicalSet& p = ctx.complex();
    HomologyGraph g;
    for (int n = 0; n <= ctx.max_degree(); ++n)
        for (std::size_t i = 0; i < ctx.class_count(n); ++i)
            g.nodes.push_back({n, i});
    std::vector<HomologyClassRef> classes;
    for (const auto& k : g.nodes)
        classes.push_back(basis_class(ctx, k.degree, k.index));

    if (mode == GraphMode::bruteforce) {
        if (p.size() > opts.oracle_bound)
            throw resource_error("bruteforce homology graph over oracle bound");
        g.oracle = true;
        auto subsets = enumerate_closed_subsets(p, opts.subset_cap);
        Reachability r = reachability(p);
        // per subset: vertex list and membership per node
        std::vector<std::vector<CubeId>> verts(subsets.size());
        std::vector<std::vector<bool>> member(subsets.size(),
                                              std::vector<bool>(g.nodes.size()));
        for (std::size_t s = 0; s < subsets.size(); ++s) {
            for (CubeId c : subsets[s])
                if (p.degree(c) == 0) verts[s].push_back(c);
            PrecubicalSubset sub{&p, subsets[s]};
            std::map<int, std::vector<std::vector<BigInt>>> gens_by_degree;
            for (std::size_t ni = 0; ni < g.nodes.size(); ++ni) {
                int deg = g.nodes[ni].degree;
                if (!gens_by_degree.count(deg))
                    gens_by_degree[deg] = induced_image(ctx, sub, deg);
                member[s][ni] = in_subgroup(ctx, deg, classes[ni].coords,
                                            gens_by_degree[deg]);
            }
        }
        // reach-all precomputation per subset pair is the bottleneck; do the
        // pair loop directly with early exits.
        for (std::size_t a = 0; a < g.nodes.size(); ++a)
            for (std::size_t b = 0; b < g.nodes.size(); ++b) {
                bool found = false;
                PointingCertificate cert;
                for (std::size_t sx = 0; sx < subsets.size() && !found; ++sx) {
                    if (!member[sx][a] || subsets[sx].empty()) continue;
                    for (std::size_t sy = 0; sy < subsets.size() && !found; ++sy) {
                        if (!member[sy][b] || subsets[sy].empty()) continue;
                        bool ok = true;
                        for (CubeId xv : verts[sx]) {
                            for (CubeId yv : verts[sy])
                                if (!r.reaches(xv, yv)) {
                                    ok = false;
                                    break;
                                }
                            if (!ok) break;
                        }
                        if (ok) {
                            found = true;
                            cert = {subsets[sx], subsets[sy]};
                        }
                    }
                }
                g.edges[{a, b}] = found ? EdgeStatus::yes_oracle : EdgeStatus::no_oracle;
                if (found) g.certs[{a, b}] = cert;
            }
        return g;
    }

    for (std::size_t a = 0; a < g.nodes.size(); ++a)
        for (std::size_t b = 0; b < g.nodes.size(); ++b) {
            auto cert = search_pointing(ctx, classes[a], classes[b],
                                        opts.perturbation_depth);
            if (cert && verify_pointing(ctx, classes[a], classes[b], *cert)) {
                g.edges[{a, b}] = EdgeStatus::yes_cert;
                g.certs[{a, b}] = *cert;
            } else {
                g.edges[{a, b}] = EdgeStatus::unknown;
            }
        }
    return g;
}

IsoStatus homology_iso_as_graphs(
    const HomologyGraph& gp, const HomologyGraph& gq,
    const std::map<HomologyGraph::NodeKey, HomologyGraph::NodeKey>& pairing) {
    if (pairing.size() != gq.nodes.size() || gq.nodes.size() != gp.nodes.size())
        throw precondition_error("pairing is not a bijection on bases");
    std::set<HomologyGraph::NodeKey> targets;
    for (const auto& [q, p] : pairing) targets.insert(p);
    if (targets.size() != gp.nodes.size())
        throw precondition_error("pairing is not a bijection on bases");
    std::map<HomologyGraph::NodeKey, std::size_t> qidx, pidx;
    for (std::size_t i = 0; i < gq.nodes.size(); ++i) qidx[gq.nodes[i]] = i;
    for (std::size_t i = 0; i < gp.nodes.size(); ++i) pidx[gp.nodes[i]] = i;
    bool sure = true;
    for (const auto& [qa, pa] : pairing)
        for (const auto& [qb, pb] : pairing) {
            EdgeStatus sq = gq.status(qidx.at(qa), qidx.at(qb));
            EdgeStatus sp = gp.status(pidx.at(pa), pidx.at(pb));
            bool q_yes = sq == EdgeStatus::yes_cert || sq == EdgeStatus::yes_oracle;
            bool p_yes = sp == EdgeStatus::yes_cert || sp == EdgeStatus::yes_oracle;
            bool q_no = sq == EdgeStatus::no_oracle;
            bool p_no = sp == EdgeStatus::no_oracle;
            if ((q_yes && p_no) || (p_yes && q_no)) return IsoStatus::no;
            if (sq == EdgeStatus::unknown || sp == EdgeStatus::unknown) sure = false;
        }
    return sure ? IsoStatus::yes : IsoStatus::inconclusive;
}

std::optional<std::map<HomologyGraph::NodeKey, HomologyGraph::NodeKey>>
inclusion_pairing(const HomologyContext& ctx_p, const HomologyContext& ctx_q) {
    std::map<HomologyGraph::NodeKey, HomologyGraph::NodeKey> out;
    std::set<HomologyGraph::NodeKey> used;
    int maxd = std::max(ctx_p.max_degree(), ctx_q.max_degree());
    for (int n = 0; n <= maxd; ++n) {
        if (ctx_p.class_count(n) != ctx_q.class_count(n)) return std::nullopt;
        if (ctx_q.class_count(n) == 0) continue;
        const auto& dq = ctx_q.degree(n);
        for (std::size_t i = 0; i < ctx_q.class_count(n); ++i) {
            // embed the Q representative into P's chain space
            const auto& dp = ctx_p.degree(n);
            std::vector<BigInt> chain(dp.cube_ids.size(), 0);
            for (std::size_t j = 0; j < dq.cube_ids.size(); ++j) {
                if (dq.representatives[i][j] == 0) continue;
                auto it = dp.cube_index.find(dq.cube_ids[j]);
                if (it == dp.cube_index.end()) return std::nullopt;
                chain[it->second] = dq.representatives[i][j];
            }
            auto coords = ctx_p.class_coords(n, chain);
            // must be a signed unit vector
            std::optional<std::size_t> hit;
            bool ok = true;
            for (std::size_t c = 0; c < coords.size(); ++c) {
                const BigInt& ord =
                    dp.orders[dp.class_positions[c]];
                BigInt v = coords[c];
                if (ord > 1 && v == ord - 1) v = -1;  // normalized -1
                if (v == 0) continue;
                if ((v == 1 || v == -1) && !hit) hit = c;
                else ok = false;
            }
            if (!ok || !hit) return std::nullopt;
            HomologyGraph::NodeKey pk{n, *hit};
            if (used.count(pk)) return std::nullopt;
            used.insert(pk);
            out[{n, i}] = pk;
        }
    }
    return out;
}

}  // namespace hda
