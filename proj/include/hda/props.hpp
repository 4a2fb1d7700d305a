#ifndef HDA_PROPS_HPP
#define HDA_PROPS_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hda/hda.hpp"
#include "hda/nfa.hpp"

namespace hda {

// Regular language over the letter alphabet, used as a property L: the
// model satisfies L when every successful execution's label lies in L.
struct PropertyAutomaton {
    Nfa nfa;
    std::vector<std::string> alphabet() const { return nfa.alphabet; }
};

// Symmetric relation of label pairs realized by some square's front faces.
struct IndependenceRelation {
    std::set<std::pair<Label, Label>> pairs;  // stored with first <= second

    void add(const Label& a, const Label& b) {
        pairs.insert(a <= b ? std::make_pair(a, b) : std::make_pair(b, a));
    }
    bool contains(const Label& a, const Label& b) const {
        return pairs.count(a <= b ? std::make_pair(a, b) : std::make_pair(b, a)) != 0;
    }
};

IndependenceRelation local_independence(const Hda& a);

// Templates:
//   order a b                    : Sigma* a Sigma* b Sigma*
//   mutex crit0 crit1 r0 r1      : no crit_i then crit_{1-i} before r_i, both i
//   starvation-finite req crit   : complement(Sigma* req (Sigma-crit)*)
//   no-repeat a crit0 crit1      : complement(Sigma* a (Sigma-crits)* a Sigma*)
//   overtake-free req crit critO : complement(Sigma* req (Sigma-crit)* critO
//                                             (Sigma-crit)* critO Sigma*)
PropertyAutomaton build_property(const std::string& tmpl,
                                 const std::vector<std::string>& params,
                                 const std::vector<std::string>& alphabet);

PropertyAutomaton combine(const std::string& op,
                          const std::vector<PropertyAutomaton>& args);

struct PropertyCheck {
    bool holds = false;
    std::optional<Word> counterexample;  // shortest violating word
};

PropertyCheck has_property(const Hda& a, const PropertyAutomaton& l);

// Sufficient check: membership in L is stable under swapping one adjacent
// pair of independent symbols.
bool is_trace_closed(const PropertyAutomaton& l, const IndependenceRelation& r);

// Property file format ("prop v1").
PropertyAutomaton read_property(const std::string& text,
                                const std::vector<std::string>& model_alphabet);
std::string write_property_template(const std::string& tmpl,
                                    const std::vector<std::string>& params);

}  // namespace hda

#endif
