#ifndef HDA_PGRAPH_HPP
#define HDA_PGRAPH_HPP

#include <map>
#include <string>
#include <vector>

#include "hda/hda.hpp"

namespace hda {

// Process description: locations, finite-domain variables, guarded
// assignment instructions.
struct ProgramGraph {
    struct Var {
        std::string name;
        long long lo = 0, hi = 0, init = 0;
    };
    struct Atom {
        std::string var;
        long long value = 0;
    };
    struct Guard {
        // disjunction of conjunctions; empty means true
        std::vector<std::vector<Atom>> disjuncts;
    };
    struct Instruction {
        std::string from, to;
        Guard guard;
        std::string action;
        std::vector<std::pair<std::string, long long>> effect;
    };

    std::vector<Var> vars;
    std::vector<std::string> locations;
    std::string initial_location;
    std::vector<std::string> final_locations;
    std::vector<Instruction> instructions;
};

ProgramGraph parse_program_graph(const std::string& text);

struct ComposeOptions {
    // Variable-assignment overrides; each entry yields one initial state.
    // Empty list: the declared initial values.
    std::vector<std::map<std::string, long long>> initial_valuations;
    std::size_t state_budget = 1000000;
};

// Accessible-state HDA with independence cubes (diamond-complete filling).
Hda compose(const std::vector<ProgramGraph>& pgs, const ComposeOptions& opts = {});

}  // namespace hda

#endif
