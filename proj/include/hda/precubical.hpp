#ifndef HDA_PRECUBICAL_HPP
#define HDA_PRECUBICAL_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace hda {

using CubeId = std::int64_t;

// Build-time cap on cube dimension.
inline constexpr int kMaxDegree = 8;

struct argument_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct precondition_error : std::logic_error {
    using std::logic_error::logic_error;
};
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One violation of a structural invariant, with enough indices to locate it.
struct Violation {
    std::string identity;  // which invariant failed
    CubeId cube = -1;
    std::vector<int> indices;  // (k,i[,l,j]) as applicable
    std::string detail;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;
    void add(Violation v) {
        ok = false;
        violations.push_back(std::move(v));
    }
};

class PrecubicalSetBuilder;

// Graded set of cubes with face operators d^k_i (k in {0,1}, i in 1..n).
// Immutable after construction; ids are stable and sorted iteration order
// is id order.
class PrecubicalSet {
  public:
    struct Cube {
        CubeId id;
        int dim;
        // faces[2*(i-1)+k] = d^k_i, for i in 1..dim
        std::vector<CubeId> faces;
    };

    PrecubicalSet() = default;

    bool contains(CubeId id) const { return index_.count(id) != 0; }
    int degree(CubeId id) const { return cube(id).dim; }
    CubeId face(CubeId id, int k, int i) const;
    const std::vector<Cube>& cubes() const { return cubes_; }
    const Cube& cube(CubeId id) const;

    std::size_t size() const { return cubes_.size(); }
    int max_degree() const { return max_degree_; }
    std::vector<CubeId> cubes_of_degree(int n) const;
    std::size_t count_of_degree(int n) const;
    std::vector<std::size_t> counts_per_degree() const;
    CubeId max_id() const;

    // Both endpoints of an edge.
    CubeId edge_source(CubeId e) const { return face(e, 0, 1); }
    CubeId edge_target(CubeId e) const { return face(e, 1, 1); }

    // All iterated faces of x including x itself, in id order.
    std::vector<CubeId> image_of(CubeId x) const;

  private:
    friend class PrecubicalSetBuilder;
    std::vector<Cube> cubes_;  // sorted by id
    std::unordered_map<CubeId, std::size_t> index_;
    int max_degree_ = 0;
};

// Incremental construction; build() checks face totality and degrees but not
// the precubical identity (validate_precubical reports on that).
class PrecubicalSetBuilder {
  public:
    CubeId add_cube(int dim);
    CubeId add_cube_with_id(CubeId id, int dim);
    void set_face(CubeId x, int k, int i, CubeId y);
    PrecubicalSet build() &&;

  private:
    std::vector<PrecubicalSet::Cube> cubes_;
    std::unordered_map<CubeId, std::size_t> index_;
    CubeId next_id_ = 0;
};

struct PrecubicalSubset {
    const PrecubicalSet* parent = nullptr;
    std::set<CubeId> members;

    bool contains(CubeId id) const { return members.count(id) != 0; }
};

ValidationReport validate_precubical(const PrecubicalSet& p);

// Precubical interval [[k,l]]: vertices k..l get ids 0..l-k, edges follow.
PrecubicalSet interval(int k, int l);

// Tensor product; cube ids are assigned degree-major over pairs in id order.
// pair_names, when given, receives (id in result) -> (id in p, id in q).
PrecubicalSet tensor(const PrecubicalSet& p, const PrecubicalSet& q,
                     std::vector<std::pair<CubeId, CubeId>>* pair_names = nullptr);

struct CubeImage {
    PrecubicalSubset subset;
    bool injective = false;  // x regular iff injective
};

// Image of the characteristic map x#, with a regularity verdict.
CubeImage cube_image(const PrecubicalSet& p, CubeId x);

// Weak regularity reduces to the degree-2 condition d^0_1 x != d^0_2 x and
// d^1_1 x != d^1_2 x.
std::pair<bool, std::optional<CubeId>> is_weakly_regular(const PrecubicalSet& p);

// star(x) = all cubes having x among their iterated faces, x included.
std::set<CubeId> star(const PrecubicalSet& p, CubeId x);

struct FreeFace {
    CubeId cube;
    int k;
    int i;
    bool operator==(const FreeFace&) const = default;
};

// All (x,k,i) with star(d^k_i x) = {x, d^k_i x}, sorted by (cube, k, i).
std::vector<FreeFace> free_faces(const PrecubicalSet& p);

// e^k_i x: for degree 1 returns x itself; otherwise the iterated-face edge
// d^{1-k}_1 ... d^{1-k}_{i-1} d^{1-k}_{i+1} ... d^{1-k}_n x.
CubeId corner_edge(const PrecubicalSet& p, CubeId x, int k, int i);

// New precubical set on P \ star(x); surviving ids unchanged.
PrecubicalSet remove_star(const PrecubicalSet& p, CubeId x);

// Restriction of p to a face-closed member set (ids preserved).
PrecubicalSet restrict_to(const PrecubicalSet& p, const std::set<CubeId>& members);

// Smallest precubical subset containing s.
PrecubicalSubset closure(const PrecubicalSet& p, const std::set<CubeId>& s);

struct Reachability {
    std::vector<CubeId> vertices;                      // sorted
    std::unordered_map<CubeId, std::size_t> index;
    std::vector<std::vector<bool>> reach;              // reflexive-transitive
    std::set<CubeId> m0;                               // maximal: no outgoing
    std::set<CubeId> m1;                               // minimal: no incoming
    bool reaches(CubeId v, CubeId w) const {
        return reach[index.at(v)][index.at(w)];
    }
    bool acyclic = true;  // no directed cycle through distinct vertices
};

Reachability reachability(const PrecubicalSet& p);

}  // namespace hda

#endif
