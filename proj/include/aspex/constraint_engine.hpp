#pragma once

#include "aspex/enode.hpp"
#include "aspex/ground_program.hpp"

#include <optional>

namespace aspex {

enum class choice_side { pos_body, neg_body };

/// The choice node that falsifies a constraint through occurrence x on `side`, or nothing when
/// that occurrence holds under m.
std::optional<enode> classify_choice_support(const ground_program& g, const choice_spec& x, choice_side side,
                                             const interpretation& m);

/// E_c: literals of violated-looking constraint bodies mapped to triggered_constraint nodes, and
/// those nodes mapped to the literals that keep the constraints satisfied. Throws unviolable_constraint.
support_table constraint_preprocessing(const ground_program& g, const interpretation& m);

}  // namespace aspex
