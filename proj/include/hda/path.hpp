#ifndef HDA_PATH_HPP
#define HDA_PATH_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "hda/hda.hpp"
#include "hda/precubical.hpp"

namespace hda {

// Directed edge path: a start vertex and a chained edge sequence.
// The length-0 path is a bare vertex.
struct Path {
    CubeId start = -1;
    std::vector<CubeId> edges;

    std::size_t length() const { return edges.size(); }
    bool operator==(const Path&) const = default;
    bool operator<(const Path& o) const {
        if (start != o.start) return start < o.start;
        return edges < o.edges;
    }
};

CubeId path_end(const PrecubicalSet& p, const Path& w);
bool is_path(const PrecubicalSet& p, const Path& w);
Path concat(const PrecubicalSet& p, const Path& a, const Path& b);

// Default cap on materialized dihomotopy closures.
inline constexpr std::size_t kDefaultPathBudget = 1000000;

// All paths one square move away from w (w itself excluded).
std::set<Path> adjacent_paths(const PrecubicalSet& p, const Path& w);

// Equivalence class under square moves, materialized exactly.
struct DihomotopyClass {
    std::set<Path> representatives;
    const Path& canonical() const { return *representatives.begin(); }
    bool contains(const Path& w) const { return representatives.count(w) != 0; }
};

DihomotopyClass dihomotopy_class(const PrecubicalSet& p, const Path& w,
                                 std::size_t budget = kDefaultPathBudget);

bool are_dihomotopic(const PrecubicalSet& p, const Path& a, const Path& b,
                     std::size_t budget = kDefaultPathBudget);

struct DivisionResult {
    bool divisible = false;
    std::optional<Path> quotient;
    // true / false when decided; nullopt when no division exists
    std::optional<bool> unique;
};

// side 0: [w] = [g]·[q] (g a prefix up to dihomotopy); side 1: [w] = [q]·[g].
DivisionResult divides(const PrecubicalSet& p, const Path& g, const Path& w,
                       int side, std::size_t budget = kDefaultPathBudget);

struct CancellationResult {
    bool holds = false;
    std::string reason;
};

// Sufficient conditions for the right (side 1) / left (side 0) dihomotopy
// cancellation property of g.
CancellationResult cancellation_sufficient(const PrecubicalSet& p, const Path& g,
                                           int side,
                                           std::size_t budget = kDefaultPathBudget);

// Path transport across a 2-cube collapse with free back face d^1_i x:
// rewrites every occurrence of that edge using division quotients. The
// result lives in P \ star(d^1_i x) and is dihomotopic to w in P.
Path transport_path(const Hda& a, CubeId x, int i, const Path& w,
                    std::size_t budget = kDefaultPathBudget);

// All paths from v to w of length <= max_len (counted against budget).
std::vector<Path> enumerate_paths(const PrecubicalSet& p, CubeId v, CubeId w,
                                  std::size_t max_len, std::size_t budget);

}  // namespace hda

#endif
