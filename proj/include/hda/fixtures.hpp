#ifndef HDA_FIXTURES_HPP
#define HDA_FIXTURES_HPP

#include <string>
#include <vector>

#include "hda/hda.hpp"
#include "hda/pgraph.hpp"

namespace hda {

// Hand-encoded objects for the worked examples plus small synthetic
// complexes. Unknown names raise argument_error.
//
// Precubical: circle, torus, cube2, cube3, pinched, fig4, grid<m>x<n>
// HDA:        square_ab, fig2, fig3a, fig3b, fig6, fig7, fig8
bool is_builtin_pcs(const std::string& name);
bool is_builtin_hda(const std::string& name);
std::vector<std::string> builtin_names();

PrecubicalSet builtin_pcs(const std::string& name);
Hda builtin_hda(const std::string& name);

// Program-graph sources for the two worked systems.
std::string fig1_program_source(int process_id);
std::string fig5_program_source(int process_id);

// Grid HDA: tensor of two intervals with axis labels "a" / "b", initial and
// final states at the extreme corners.
Hda grid_hda(int m, int n);

}  // namespace hda

#endif
