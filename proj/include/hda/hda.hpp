#ifndef HDA_HDA_HPP
#define HDA_HDA_HPP

#include <map>
#include <string>
#include <vector>

#include "hda/nfa.hpp"
#include "hda/precubical.hpp"

namespace hda {

// A label is one alphabet symbol; a word is a finite symbol sequence.
// Merged edges carry multi-symbol words; plain edges carry one symbol.
using Label = std::string;
using Word = std::vector<Label>;

std::string word_to_string(const Word& w);   // symbols joined by ';'
Word word_from_string(const std::string& s);

struct Path;  // path.hpp

// Labeled higher-dimensional automaton over the free monoid on its letter
// alphabet. Values are immutable after construction.
struct Hda {
    PrecubicalSet p;
    std::set<CubeId> init;
    std::set<CubeId> final;
    std::map<CubeId, Word> label;  // total on edges

    const Word& edge_word(CubeId e) const;
    std::set<Label> letter_alphabet() const;   // all symbols occurring
    std::set<Word> effective_alphabet() const; // distinct edge words
};

ValidationReport validate_hda(const Hda& a);

// Concatenated labels along a path; the empty path maps to the empty word.
Word extended_label(const Hda& a, const Path& path);

// 1-skeleton as an acceptor over the effective alphabet (edge words as
// atomic symbols).
Nfa language_automaton(const Hda& a);

// Acceptor over single letters: composite edge words are expanded into
// chains of fresh states.
Nfa letter_automaton(const Hda& a);

struct Accessibility {
    bool accessible = false;
    bool coaccessible = false;
    std::set<CubeId> offenders;
};

Accessibility accessibility(const Hda& a);

// HDA on a face-closed subset carrying the restricted labeling.
Hda restrict(const Hda& a, const PrecubicalSubset& q);

}  // namespace hda

#endif
