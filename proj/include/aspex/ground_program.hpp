#pragma once

#include "aspex/aspif.hpp"

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace aspex {

class ground_error : public std::runtime_error {
public:
    enum class kind { multi_literal_output_condition, duplicate_symbol, disjunctive_head, aux_cycle, unknown_atom };

    ground_error(kind k, const std::string& message) : std::runtime_error(message), kind_(k) {}
    kind code() const noexcept { return kind_; }

private:
    kind kind_;
};

struct atom {
    atom_id id = 0;
    std::string name;
    bool is_aux = false;   // no output statement names it; rendered "l(<id>)"
    bool is_fact = false;  // declared by an external statement
};

struct lit {
    atom_id atom = 0;
    bool negated = false;

    auto operator<=>(const lit&) const = default;
};

/// One element of a choice atom: the conjunction (p, q1, ..., not y1, ...).
struct tuple_spec {
    std::vector<lit> items;

    auto operator<=>(const tuple_spec&) const = default;
};

/// l {t1; ...; tn} u over tuple elements; an absent upper bound means unbounded.
struct choice_spec {
    std::int64_t lower = 0;
    std::optional<std::int64_t> upper;
    std::vector<tuple_spec> elements;

    auto operator<=>(const choice_spec&) const = default;
};

struct choice_ref {
    std::size_t index = 0;

    auto operator<=>(const choice_ref&) const = default;
};

using body_term = std::variant<atom_id, choice_ref>;

struct body_literal {
    body_term term;
    bool negated = false;

    auto operator<=>(const body_literal&) const = default;
};

using conjunction = std::vector<body_literal>;

enum class rule_kind { normal, choice_head, constraint };

struct ground_rule {
    rule_kind kind = rule_kind::normal;
    std::vector<atom_id> head;
    std::vector<body_term> positive;  // r+
    std::vector<body_term> negative;  // r-
    std::size_t statement = 0;        // index among the aspif rule statements
    bool opaque = false;              // weight body with mixed weights, body not reconstructed
};

/// Key of the rule index D_P: head type (0 disjunction, 1 choice) and head atom (0 for constraints).
struct rule_key {
    int type = 0;
    atom_id head = 0;

    auto operator<=>(const rule_key&) const = default;
};

using rule_index = std::map<rule_key, std::vector<std::size_t>>;

class interpretation {
public:
    interpretation() = default;
    explicit interpretation(std::set<atom_id> atoms) : atoms_(std::move(atoms)) {}

    bool holds(atom_id a) const { return atoms_.contains(a); }
    const std::set<atom_id>& atoms() const noexcept { return atoms_; }

    bool operator==(const interpretation&) const = default;

private:
    std::set<atom_id> atoms_;
};

class ground_program {
public:
    /// Rebuilds symbolic rules; see reconstruct_rules.
    static ground_program from_aspif(const aspif_program& program);

    const std::vector<ground_rule>& rules() const noexcept { return rules_; }
    const std::vector<rule_statement>& statements() const noexcept { return statements_; }
    const std::map<atom_id, atom>& symbols() const noexcept { return symbols_; }
    const atom& symbol(atom_id id) const;
    const std::string& name(atom_id id) const { return symbol(id).name; }
    std::optional<atom_id> find(const std::string& name) const;

    const std::set<atom_id>& facts() const noexcept { return facts_; }
    const rule_index& index() const noexcept { return index_; }
    const std::set<atom_id>& nant() const noexcept { return nant_; }
    const std::vector<choice_spec>& choices() const noexcept { return choices_; }
    const choice_spec& choice(choice_ref ref) const { return choices_.at(ref.index); }
    const std::vector<std::string>& diagnostics() const noexcept { return diagnostics_; }

    /// Atoms that show up as literals in explanations: named atoms plus auxiliaries that
    /// cannot be inlined into their users.
    std::vector<atom_id> keyed_atoms() const;
    /// Atoms whose truth value is not implied by the others (named atoms, choice-headed auxiliaries).
    std::vector<atom_id> guess_atoms() const;
    bool is_inlined(atom_id id) const;

    std::vector<conjunction> resolve(const body_literal& literal) const;
    /// Disjunctive normal form of a rule body after inlining auxiliaries.
    std::vector<conjunction> resolve_body(const ground_rule& rule) const;

    /// Extends an assignment of the guess atoms (plus facts) by evaluating every derived auxiliary.
    interpretation complete(const std::set<atom_id>& assigned) const;

    bool holds(const body_literal& literal, const interpretation& in) const;
    bool holds(const tuple_spec& tuple, const interpretation& in) const;
    std::size_t satisfied_count(const choice_spec& choice, const interpretation& in) const;
    bool satisfied(const choice_spec& choice, const interpretation& in) const;

    std::string render(const tuple_spec& tuple) const;
    std::string render(const choice_spec& choice) const;
    std::string render(const body_literal& literal) const;
    std::string render(const ground_rule& rule) const;
    /// One rule per line in "head :- body." form.
    std::string dump() const;

private:
    enum class aux_role { none, inlined, folded, keyed };

    std::vector<conjunction> resolve_impl(const body_literal& literal, std::set<atom_id>& active) const;
    body_literal to_body_literal(literal_id l) const;
    bool evaluate(atom_id id, std::map<atom_id, bool>& memo, std::set<atom_id>& active,
                  const std::set<atom_id>& assigned) const;

    std::vector<rule_statement> statements_;
    std::vector<ground_rule> rules_;
    std::map<atom_id, atom> symbols_;
    std::map<std::string, atom_id> by_name_;
    std::set<atom_id> facts_;
    std::set<atom_id> choice_heads_;
    rule_index index_;
    std::set<atom_id> nant_;
    std::vector<choice_spec> choices_;
    std::map<atom_id, aux_role> roles_;
    std::map<atom_id, std::size_t> folds_;                // folded auxiliary -> choice index
    std::map<atom_id, std::vector<std::size_t>> defs_;  // single-head disjunctive rules by head
    std::vector<std::string> diagnostics_;

    friend ground_program reconstruct_rules(const aspif_program& program);
};

std::map<atom_id, atom> build_symbol_table(const aspif_program& program);
ground_program reconstruct_rules(const aspif_program& program);
std::set<atom_id> compute_nant(const ground_program& g);
std::vector<conjunction> resolve_aux(const ground_program& g, const lit& l);

}  // namespace aspex
