#ifndef HDA_REDUCE_HPP
#define HDA_REDUCE_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "hda/hda.hpp"
#include "hda/path.hpp"

namespace hda {

enum class TheoremTag { elem_dim_ge4, elem_dim3, elem_dim2, vertex_star, merge };
std::string tag_name(TheoremTag t);

enum class Guarantee {
    trace_iso,
    homology_graph_iso,
    homotopy_equiv,
    extremal_preserved,
    access_preserved,
};
std::string guarantee_name(Guarantee g);

struct Check {
    std::string name;
    bool pass = false;
    std::string witness;
};

// Verdict of one theorem-gated applicability test. applicable implies all
// checks pass; guarantees derive from the theorem tag.
struct Judgment {
    bool applicable = false;
    TheoremTag theorem = TheoremTag::elem_dim2;
    std::vector<Check> checks;
    std::set<Guarantee> guarantees;

    void fail(const std::string& name, const std::string& witness) {
        checks.push_back({name, false, witness});
        applicable = false;
    }
    void pass(const std::string& name, const std::string& witness = "") {
        checks.push_back({name, true, witness});
    }
    std::string first_failure() const;
};

struct ReduceOptions {
    bool enable_manual = false;
    std::size_t path_budget = kDefaultPathBudget;
    std::size_t oracle_bound = 20;
    std::size_t trace_bound_cyclic = 12;  // certification length cap
};

// Elementary collapse of the free face d^k_i x (conditions of the
// dimension-dependent collapse theorems).
Judgment check_elementary(const Hda& a, CubeId x, int k, int i);
std::pair<Hda, Judgment> collapse_elementary(const Hda& a, CubeId x, int k, int i,
                                             bool force = false);

// 2-cube collapse justified by the divisibility/cancellation conditions
// rather than the unique-edge criterion.
Judgment check_manual_2cube(const Hda& a, CubeId x, int k, int i,
                            const ReduceOptions& opts = {});

// Vertex star collapse at the mixed corner selected by ks (one bit per axis).
Judgment check_vertex_star(const Hda& a, CubeId x, const std::vector<int>& ks);
std::pair<Hda, Judgment> collapse_vertex_star(const Hda& a, CubeId x,
                                              const std::vector<int>& ks,
                                              bool force = false);

// Chain merge at a plain degree-2 vertex; the new edge concatenates words.
struct MergeCheck {
    bool ok = false;
    std::string reason;
    CubeId e_in = -1, e_out = -1;
};
MergeCheck check_merge(const Hda& a, CubeId v);
Hda merge_edges(const Hda& a, CubeId v, CubeId* new_edge = nullptr);

struct Step {
    enum Kind { elementary, vertex_star, manual, merge } kind;
    CubeId cube = -1;
    int k = -1, i = -1;
    std::vector<int> ks;
    Judgment judgment;
    CubeId new_edge = -1, merged_in = -1, merged_out = -1;  // merge bookkeeping
    static std::string kind_name(Kind k);
};

struct ReductionReport {
    std::vector<Step> steps;
    std::vector<std::size_t> before_counts, after_counts;
    std::map<CubeId, Word> merged_labels;

    std::string serialize() const;
    static ReductionReport parse(const std::string& text);
};

std::pair<Hda, ReductionReport> reduce(const Hda& a, const ReduceOptions& opts = {});

// Re-applies a report's steps without re-checking. Throws integrity_error
// when a step cannot be applied or merge ids do not line up.
struct integrity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
Hda replay(const Hda& a, const ReductionReport& report);

enum class Verdict { certified, certified_bounded, inconclusive, failed };
std::string verdict_name(Verdict v);

struct ClauseReport {
    std::string name;
    std::string status;  // pass | bounded | unknown | fail
    std::string detail;
};

struct CertificationReport {
    Verdict verdict = Verdict::inconclusive;
    std::vector<ClauseReport> clauses;
    std::string to_string() const;
};

CertificationReport certify(const Hda& a, const Hda& b,
                            const ReductionReport& report,
                            const ReduceOptions& opts = {});

}  // namespace hda

#endif
