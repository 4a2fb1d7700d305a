#ifndef HDA_HOMOLOGY_HPP
#define HDA_HOMOLOGY_HPP

#include <map>
#include <optional>
#include <string>

#include "hda/matrix.hpp"
#include "hda/precubical.hpp"

namespace hda {

struct RingSpec {
    enum Kind { integers, rationals, prime_field } kind = integers;
    long long p = 0;  // for prime_field

    static RingSpec z() { return {integers, 0}; }
    static RingSpec q() { return {rationals, 0}; }
    static RingSpec fp(long long p) { return {prime_field, p}; }
    std::string name() const;
};

// Boundary of the cubical chain complex: rows are (n-1)-cubes, columns are
// n-cubes, both in id order; the entry pattern realizes
// dx = sum_i (-1)^i (d^0_i x - d^1_i x).
IntMatrix chain_boundary(const PrecubicalSet& p, int n);

struct HomologyProfile {
    std::string ring;
    std::vector<std::size_t> betti;               // per degree 0..max
    std::vector<std::vector<BigInt>> torsion;     // invariant factors > 1
    bool operator==(const HomologyProfile&) const = default;
    std::string to_string() const;
};

HomologyProfile homology(const PrecubicalSet& p, RingSpec ring = RingSpec::z());

// Integer homology with a chosen basis per degree; heavyweight object
// computed once per precubical set and reused by class/graph operations.
class HomologyContext {
  public:
    explicit HomologyContext(const PrecubicalSet& p);

    const PrecubicalSet& complex() const { return *p_; }
    const HomologyProfile& profile() const { return profile_; }

    struct Degree {
        std::vector<CubeId> cube_ids;          // chain coordinate labels
        std::map<CubeId, std::size_t> cube_index;
        IntMatrix kernel;                      // chain dim x kernel dim
        IntMatrix quot_u;                      // kernel coords -> quotient coords
        IntMatrix quot_u_inv;
        std::vector<BigInt> orders;            // 0 = free, d >= 1 torsion order
        std::vector<std::size_t> class_positions;  // order != 1
        std::vector<int> signs;                // orientation normalization
        std::vector<std::vector<BigInt>> representatives;  // chain vectors
    };
    const Degree& degree(int n) const;
    int max_degree() const { return static_cast<int>(degrees_.size()) - 1; }
    std::size_t class_count(int n) const;

    // Coordinates of a cycle's class, one entry per basis class of degree n.
    // Torsion coordinates are normalized to [0, order).
    std::vector<BigInt> class_coords(int n, const std::vector<BigInt>& cycle) const;
    bool is_cycle(int n, const std::vector<BigInt>& chain) const;

    // Chain vector of a cube-coefficient map.
    std::vector<BigInt> chain_from(int n, const std::map<CubeId, long long>& c) const;

  private:
    const PrecubicalSet* p_;
    HomologyProfile profile_;
    std::vector<Degree> degrees_;
};

struct HomologyClassRef {
    int degree = 0;
    std::vector<BigInt> coords;
    std::vector<BigInt> representative;
};

HomologyClassRef class_of_cycle(const HomologyContext& ctx, int n,
                                const std::vector<BigInt>& cycle);
HomologyClassRef basis_class(const HomologyContext& ctx, int n, std::size_t idx);
bool same_class(const HomologyContext& ctx, const HomologyClassRef& a,
                const HomologyClassRef& b);

// Generators (as class coordinates) of im H_n(X) -> H_n(P).
std::vector<std::vector<BigInt>> induced_image(const HomologyContext& ctx,
                                               const PrecubicalSubset& x, int n);

// Membership of a class in the subgroup generated by the given coordinate
// vectors (torsion-aware).
bool in_subgroup(const HomologyContext& ctx, int n,
                 const std::vector<BigInt>& target,
                 const std::vector<std::vector<BigInt>>& generators);

struct PointingCertificate {
    std::set<CubeId> x, y;  // face-closed member sets
};

bool verify_pointing(const HomologyContext& ctx, const HomologyClassRef& alpha,
                     const HomologyClassRef& beta, const PointingCertificate& cert);

enum class EdgeStatus { yes_cert, yes_oracle, no_oracle, unknown };

struct HomologyGraphOptions {
    int perturbation_depth = 2;
    std::size_t oracle_bound = 20;       // max cube count for bruteforce
    std::size_t subset_cap = 2000000;    // hard cap on enumerated subsets
};

struct HomologyGraph {
    struct NodeKey {
        int degree;
        std::size_t index;
        auto operator<=>(const NodeKey&) const = default;
    };
    std::vector<NodeKey> nodes;
    std::map<std::pair<std::size_t, std::size_t>, EdgeStatus> edges;
    std::map<std::pair<std::size_t, std::size_t>, PointingCertificate> certs;
    bool oracle = false;

    EdgeStatus status(std::size_t a, std::size_t b) const {
        auto it = edges.find({a, b});
        return it == edges.end() ? EdgeStatus::unknown : it->second;
    }
};

enum class GraphMode { search, bruteforce };

HomologyGraph homology_graph(const HomologyContext& ctx, GraphMode mode,
                             const HomologyGraphOptions& opts = {});

// Single-pair decision used by both the graph construction and callers with
// explicit classes.
std::optional<PointingCertificate> search_pointing(
    const HomologyContext& ctx, const HomologyClassRef& alpha,
    const HomologyClassRef& beta, int perturbation_depth = 2);

enum class IsoStatus { yes, no, inconclusive };

// Graph comparison under a basis pairing (q node -> p node).
IsoStatus homology_iso_as_graphs(const HomologyGraph& gp, const HomologyGraph& gq,
                                 const std::map<HomologyGraph::NodeKey,
                                                HomologyGraph::NodeKey>& pairing);

// Pairing induced by inclusion Q -> P when every Q basis class maps to a
// signed P basis class bijectively; nullopt when classes mix.
std::optional<std::map<HomologyGraph::NodeKey, HomologyGraph::NodeKey>>
inclusion_pairing(const HomologyContext& ctx_p, const HomologyContext& ctx_q);

// All face-closed subsets (downsets); throws resource_error over the cap.
std::vector<std::set<CubeId>> enumerate_closed_subsets(const PrecubicalSet& p,
                                                       std::size_t cap);

}  // namespace hda

#endif
