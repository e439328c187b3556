#pragma once

#include "aspex/egraph.hpp"
#include "aspex/ground_program.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace aspex {

using name_set = std::set<std::string>;
/// DA: for each deferred atom, the minimal sets of other tentative assumptions it is derivable from.
using derivation_map = std::map<std::string, std::vector<name_set>>;

struct wf_model {
    std::set<atom_id> true_atoms;
    std::set<atom_id> possible;  // atoms outside this set are well-founded false
};

/// Alternating fixpoint over the aspif rules. Choice heads are derivable only in the
/// overestimate; constraints and bounds are ignored.
wf_model well_founded(const ground_program& g);

/// NANT atoms that are false in m and not well-founded false.
name_set tentative_assumptions(const ground_program& g, const interpretation& m);

struct derivation_result {
    name_set t_must;      // T
    name_set t_deferred;  // T′
    derivation_map da;
};

derivation_result derivation_analysis(const support_table& e, const name_set& ta, const build_options& options = {});

/// All subset-minimal B over atoms on DA cycles such that the atoms outside DA's keys plus B
/// ground every key. [∅] when DA is acyclic.
std::vector<name_set> min_cycle_break(const derivation_map& da);

struct assumption_report {
    name_set ta;
    name_set t_must;
    name_set t_deferred;
    derivation_map da;
    std::vector<name_set> min_b_candidates;
    name_set chosen_u;

    /// T ∪ B for every candidate B, in candidate order.
    std::vector<name_set> all_u() const;
};

/// `e` is the merged support table of (g, m).
assumption_report minimal_assumption_sets(const ground_program& g, const interpretation& m, const support_table& e,
                                          const build_options& options = {});

std::string format_names(const name_set& s);
std::string format_report(const assumption_report& r, bool all_candidates);

}  // namespace aspex
