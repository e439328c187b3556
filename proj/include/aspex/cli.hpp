#pragma once

#include "aspex/ground_program.hpp"

#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace aspex {

enum exit_code : int {
    exit_ok = 0,
    exit_parse = 1,
    exit_reconstruction = 2,
    exit_answer_set = 3,
    exit_unknown_literal = 4,
    exit_no_graph = 5,
    exit_over_cap = 6,
};

/// Atom names separated by whitespace; '%' starts a comment line. Throws std::invalid_argument
/// on names the program does not know.
std::set<atom_id> read_answer_set(const ground_program& g, std::string_view text);

/// Runs the command line (args excludes the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aspex
