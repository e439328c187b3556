#pragma once

#include "aspex/enode.hpp"
#include "aspex/ground_program.hpp"

namespace aspex {

// Conversions from program terms to explanation nodes. `m` is always a completed
// interpretation (see ground_program::complete).
enode atom_node(const ground_program& g, atom_id a, bool holds);
std::vector<tuple_item> tuple_items(const ground_program& g, const tuple_spec& t);
enode tuple_node(const ground_program& g, const tuple_spec& t);
choice_payload choice_payload_of(const ground_program& g, const choice_spec& c);
/// Node for the term as it actually stands in m: "a" or "~a", the choice or its negation.
enode term_node(const ground_program& g, const interpretation& m, const body_term& t);

struct choice_expansion {
    enode node;
    support_table fragment;  // node -> [S] or [{*Empty}], each satisfied tuple -> [{*True}]
};

choice_expansion choice_body_support(const ground_program& g, const choice_spec& x, const interpretation& m);

/// Supports of a true atom, one set per rule with a satisfied body. Throws no_support.
std::vector<support_set> supported_sets_true(const ground_program& g, const interpretation& m, atom_id c);
/// Supports of a false atom: one falsifier per rule, crossed over all rules, subset-minimal.
std::vector<support_set> supported_sets_false(const ground_program& g, const interpretation& m, atom_id c);

/// E_r over every keyed atom plus the expansions of the choice nodes it mentions.
support_table build_er(const ground_program& g, const interpretation& m);

}  // namespace aspex
