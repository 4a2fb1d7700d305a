#ifndef HDA_TRACE_HPP
#define HDA_TRACE_HPP

#include <map>

#include "hda/path.hpp"

namespace hda {

// Hom-sets of the full subcategory of the fundamental category on the
// distinguished vertices I u F u m0 u m1. Exact ("complete") on acyclic
// inputs with the automatic length bound, length-bounded otherwise.
struct TraceCategory {
    std::set<CubeId> objects;
    std::map<std::pair<CubeId, CubeId>, std::vector<DihomotopyClass>> homs;
    std::map<std::pair<CubeId, CubeId>, bool> complete;
    std::size_t max_len = 0;
    bool all_complete = true;

    std::size_t hom_count(CubeId v, CubeId w) const {
        auto it = homs.find({v, w});
        return it == homs.end() ? 0 : it->second.size();
    }
};

inline constexpr std::size_t kAutoLen = static_cast<std::size_t>(-1);

TraceCategory trace_category(const Hda& a, std::size_t max_len = kAutoLen,
                             std::size_t budget = kDefaultPathBudget);

std::set<CubeId> distinguished_vertices(const Hda& a);

}  // namespace hda

#endif
