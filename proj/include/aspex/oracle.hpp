#pragma once

#include "aspex/ground_program.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace aspex {

class oracle_error : public std::runtime_error {
public:
    explicit oracle_error(const std::string& message) : std::runtime_error(message) {}
};

/// Named atoms of a completed interpretation (facts included); the form answer sets are reported in.
std::set<atom_id> visible_atoms(const ground_program& g, const interpretation& m);

/// Checks directly, via the reduct, whether the named atom set `a` is an answer set.
bool check_answer_set(const ground_program& g, const std::set<atom_id>& a);
/// Same check for a full assignment of every atom.
bool is_stable(const ground_program& g, const interpretation& m);

/// Brute force over the guess atoms in increasing cardinality, atoms ordered by name.
/// Throws oracle_error when there are more than `cap` guess atoms.
std::vector<std::set<atom_id>> enumerate_answer_sets(const ground_program& g, std::size_t cap = 20);

/// Random program in the aspif shape a grounder produces for normal rules, constraints, and
/// choice rules with bounds and conditions.
aspif_program random_aspif(std::uint64_t seed, int n_atoms, int n_rules, double p_choice);
ground_program random_program(std::uint64_t seed, int n_atoms, int n_rules, double p_choice);

}  // namespace aspex
