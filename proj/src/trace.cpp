#include "hda/trace.hpp"

#include <algorithm>

namespace hda {

std::set<CubeId> distinguished_vertices(const Hda& a) {
    Reachability r = reachability(a.p);
    std::set<CubeId> out = a.init;
    out.insert(a.final.begin(), a.final.end());
    out.insert(r.m0.begin(), r.m0.end());
    out.insert(r.m1.begin(), r.m1.end());
    return out;
}

TraceCategory trace_category(const Hda& a, std::size_t max_len,
                             std::size_t budget) {
    Reachability r = reachability(a.p);
    TraceCategory tc;
    tc.objects = a.init;
    tc.objects.insert(a.final.begin(), a.final.end());
    tc.objects.insert(r.m0.begin(), r.m0.end());
    tc.objects.insert(r.m1.begin(), r.m1.end());

    bool auto_bound = max_len == kAutoLen;
    if (auto_bound) max_len = r.vertices.size();
    tc.max_len = max_len;

    for (CubeId v : tc.objects)
        for (CubeId w : tc.objects) {
            auto paths = enumerate_paths(a.p, v, w, max_len, budget);
            std::vector<DihomotopyClass> classes;
            std::set<Path> assigned;
            for (const Path& pa : paths) {
                if (assigned.count(pa)) continue;
                DihomotopyClass cls = dihomotopy_class(a.p, pa, budget);
                for (const Path& m : cls.representatives) assigned.insert(m);
                classes.push_back(std::move(cls));
            }
            std::sort(classes.begin(), classes.end(),
                      [](const DihomotopyClass& x, const DihomotopyClass& y) {
                          return x.canonical() < y.canonical();
                      });
            bool cmpl = auto_bound && r.acyclic;
            tc.complete[{v, w}] = cmpl;
            if (!cmpl) tc.all_complete = false;
            tc.homs[{v, w}] = std::move(classes);
        }
    return tc;
}

}  // namespace hda
