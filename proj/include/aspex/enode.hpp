#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aspex {

enum class node_kind {
    atom,
    neg_atom,
    top,
    bottom,
    assume,
    plus_choice,
    minus_choice,
    star_true,
    star_empty,
    tuple,
    choice_pos,
    choice_neg,
    triggered_constraint,
};

std::string_view kind_name(node_kind k);
std::optional<node_kind> kind_from_name(std::string_view name);

struct tuple_item {
    std::string atom;
    bool negated = false;

    auto operator<=>(const tuple_item&) const = default;
};

struct choice_payload {
    std::int64_t lower = 0;
    std::optional<std::int64_t> upper;
    std::vector<std::vector<tuple_item>> elements;

    auto operator<=>(const choice_payload&) const = default;
};

/// Node of an explanation graph. Payloads carry symbolic names so nodes are self-describing.
struct enode {
    node_kind kind = node_kind::top;
    std::string atom;                 // atom, neg_atom, triggered_constraint
    bool negated = false;             // triggered_constraint(~x)
    std::vector<tuple_item> tuple;    // tuple
    choice_payload choice;            // choice_pos, choice_neg

    auto operator<=>(const enode&) const = default;

    static enode make(node_kind k) { return enode{k, {}, false, {}, {}}; }
    static enode literal(std::string name, bool negated);
    static enode triggered(std::string name, bool negated);

    bool is_terminal() const noexcept;
    /// Rendered form, e.g. "~m(1)", "(m(1), n(1))", "~(1<={(p)}<=1)"; ascii swaps the ⊤/⊥ glyphs for T/F.
    std::string label(bool ascii = false) const;
};

/// Parses a rendered label back into a node. The kind can be given to disambiguate.
enode parse_node(std::string_view label, std::optional<node_kind> kind = std::nullopt);

using support_set = std::set<enode>;

class support_error : public std::runtime_error {
public:
    enum class kind { no_support, unviolable_constraint };

    support_error(kind k, const std::string& message) : std::runtime_error(message), kind_(k) {}
    kind code() const noexcept { return kind_; }

private:
    kind kind_;
};

/// Key -> ordered list of supported sets. Used for E_r, E_c and the merged table.
class support_table {
public:
    using map_type = std::map<enode, std::vector<support_set>>;

    bool contains(const enode& key) const { return entries_.contains(key); }
    const std::vector<support_set>& at(const enode& key) const { return entries_.at(key); }
    const std::vector<support_set>* find(const enode& key) const;

    /// Appends s unless an equal set is already listed.
    void append(const enode& key, support_set s);
    void assign(const enode& key, std::vector<support_set> sets);

    const map_type& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    /// One "key : [{...}, {...}]" line per key.
    std::string dump(bool ascii = true) const;

    bool operator==(const support_table&) const = default;

private:
    map_type entries_;
};

std::string render_set(const support_set& s, bool ascii = true);

}  // namespace aspex
