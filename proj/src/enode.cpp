#include "aspex/enode.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>

namespace aspex {

namespace {

constexpr std::array<std::pair<node_kind, std::string_view>, 13> kind_names{{
    {node_kind::atom, "atom"},
    {node_kind::neg_atom, "neg_atom"},
    {node_kind::top, "top"},
    {node_kind::bottom, "bottom"},
    {node_kind::assume, "assume"},
    {node_kind::plus_choice, "plus_choice"},
    {node_kind::minus_choice, "minus_choice"},
    {node_kind::star_true, "star_true"},
    {node_kind::star_empty, "star_empty"},
    {node_kind::tuple, "tuple"},
    {node_kind::choice_pos, "choice_pos"},
    {node_kind::choice_neg, "choice_neg"},
    {node_kind::triggered_constraint, "triggered_constraint"},
}};

constexpr std::string_view top_glyph = "⊤";
constexpr std::string_view bottom_glyph = "⊥";
constexpr std::string_view tc_prefix = "triggered_constraint(";

std::string render_tuple(const std::vector<tuple_item>& items) {
    std::string out = "(";
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ", ";
        if (items[i].negated) out += "not ";
        out += items[i].atom;
    }
    return out + ")";
}

std::string render_choice(const choice_payload& c) {
    std::string out = std::to_string(c.lower) + "<={";
    for (std::size_t i = 0; i < c.elements.size(); ++i) {
        if (i) out += ", ";
        out += render_tuple(c.elements[i]);
    }
    out += "}";
    if (c.upper) out += "<=" + std::to_string(*c.upper);
    return out;
}

std::invalid_argument bad_label(std::string_view label) {
    return std::invalid_argument("cannot parse node label '" + std::string(label) + "'");
}

// Splits on ',' at bracket depth zero.
std::vector<std::string_view> split_top(std::string_view s) {
    std::vector<std::string_view> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(' || c == '{') ++depth;
        if (c == ')' || c == '}') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    if (!s.empty()) out.push_back(s.substr(start));
    for (auto& p : out) {
        while (!p.empty() && p.front() == ' ') p.remove_prefix(1);
        while (!p.empty() && p.back() == ' ') p.remove_suffix(1);
    }
    return out;
}

std::vector<tuple_item> parse_tuple(std::string_view s) {
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw bad_label(s);
    std::vector<tuple_item> items;
    for (auto part : split_top(s.substr(1, s.size() - 2))) {
        tuple_item t;
        if (part.starts_with("not ")) {
            t.negated = true;
            part.remove_prefix(4);
        }
        if (part.empty()) throw bad_label(s);
        t.atom = std::string(part);
        items.push_back(std::move(t));
    }
    return items;
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw bad_label(whole);
    return v;
}

choice_payload parse_choice(std::string_view s) {
    auto open = s.find("<={");
    auto close = s.rfind('}');
    if (open == std::string_view::npos || close == std::string_view::npos || close < open) throw bad_label(s);
    choice_payload c;
    c.lower = parse_int(s.substr(0, open), s);
    auto rest = s.substr(close + 1);
    if (!rest.empty()) {
        if (!rest.starts_with("<=")) throw bad_label(s);
        c.upper = parse_int(rest.substr(2), s);
    }
    for (auto part : split_top(s.substr(open + 3, close - open - 3))) c.elements.push_back(parse_tuple(part));
    return c;
}

bool looks_like_choice(std::string_view s) {
    return !s.empty() && (std::isdigit(static_cast<unsigned char>(s.front())) != 0) && s.find("<={") != std::string_view::npos;
}

}  // namespace

std::string_view kind_name(node_kind k) {
    for (const auto& [kind, name] : kind_names) {
        if (kind == k) return name;
    }
    return "unknown";
}

std::optional<node_kind> kind_from_name(std::string_view name) {
    for (const auto& [kind, n] : kind_names) {
        if (n == name) return kind;
    }
    return std::nullopt;
}

enode enode::literal(std::string name, bool negated) {
    enode n = make(negated ? node_kind::neg_atom : node_kind::atom);
    n.atom = std::move(name);
    return n;
}

enode enode::triggered(std::string name, bool negated) {
    enode n = make(node_kind::triggered_constraint);
    n.atom = std::move(name);
    n.negated = negated;
    return n;
}

bool enode::is_terminal() const noexcept {
    switch (kind) {
        case node_kind::top:
        case node_kind::bottom:
        case node_kind::assume:
        case node_kind::plus_choice:
        case node_kind::minus_choice:
        case node_kind::star_true:
        case node_kind::star_empty:
            return true;
        default:
            return false;
    }
}

std::string enode::label(bool ascii) const {
    switch (kind) {
        case node_kind::atom: return atom;
        case node_kind::neg_atom: return "~" + atom;
        case node_kind::top: return ascii ? "T" : std::string(top_glyph);
        case node_kind::bottom: return ascii ? "F" : std::string(bottom_glyph);
        case node_kind::assume: return "assume";
        case node_kind::plus_choice: return "+choice";
        case node_kind::minus_choice: return "-choice";
        case node_kind::star_true: return "*True";
        case node_kind::star_empty: return "*Empty";
        case node_kind::tuple: return render_tuple(tuple);
        case node_kind::choice_pos: return render_choice(choice);
        case node_kind::choice_neg: return "~(" + render_choice(choice) + ")";
        case node_kind::triggered_constraint:
            return std::string(tc_prefix) + (negated ? "~" : "") + atom + ")";
    }
    return {};
}

enode parse_node(std::string_view label, std::optional<node_kind> kind) {
    if (label.empty()) throw bad_label(label);
    auto k = kind;
    if (!k) {
        if (label == top_glyph || label == "T") k = node_kind::top;
        else if (label == bottom_glyph || label == "F") k = node_kind::bottom;
        else if (label == "assume") k = node_kind::assume;
        else if (label == "+choice") k = node_kind::plus_choice;
        else if (label == "-choice") k = node_kind::minus_choice;
        else if (label == "*True") k = node_kind::star_true;
        else if (label == "*Empty") k = node_kind::star_empty;
        else if (label.starts_with(tc_prefix) && label.back() == ')') k = node_kind::triggered_constraint;
        else if (label.starts_with("~(") && looks_like_choice(label.substr(2))) k = node_kind::choice_neg;
        else if (looks_like_choice(label)) k = node_kind::choice_pos;
        else if (label.front() == '(') k = node_kind::tuple;
        else if (label.front() == '~') k = node_kind::neg_atom;
        else k = node_kind::atom;
    }

    enode n = enode::make(*k);
    switch (*k) {
        case node_kind::atom:
            n.atom = std::string(label);
            break;
        case node_kind::neg_atom:
            if (label.front() != '~' || label.size() < 2) throw bad_label(label);
            n.atom = std::string(label.substr(1));
            break;
        case node_kind::tuple:
            n.tuple = parse_tuple(label);
            break;
        case node_kind::choice_pos:
            n.choice = parse_choice(label);
            break;
        case node_kind::choice_neg:
            if (!label.starts_with("~(") || label.back() != ')') throw bad_label(label);
            n.choice = parse_choice(label.substr(2, label.size() - 3));
            break;
        case node_kind::triggered_constraint: {
            if (!label.starts_with(tc_prefix) || label.back() != ')') throw bad_label(label);
            auto inner = label.substr(tc_prefix.size(), label.size() - tc_prefix.size() - 1);
            if (inner.starts_with("~")) {
                n.negated = true;
                inner.remove_prefix(1);
            }
            if (inner.empty()) throw bad_label(label);
            n.atom = std::string(inner);
            break;
        }
        default:
            if (n.label(false) != label && n.label(true) != label) throw bad_label(label);
            break;
    }
    return n;
}

const std::vector<support_set>* support_table::find(const enode& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
}

void support_table::append(const enode& key, support_set s) {
    auto& list = entries_[key];
    if (std::find(list.begin(), list.end(), s) == list.end()) list.push_back(std::move(s));
}

void support_table::assign(const enode& key, std::vector<support_set> sets) { entries_[key] = std::move(sets); }

std::string render_set(const support_set& s, bool ascii) {
    std::string out = "{";
    bool first = true;
    for (const auto& n : s) {
        if (!first) out += ", ";
        first = false;
        out += n.label(ascii);
    }
    return out + "}";
}

std::string support_table::dump(bool ascii) const {
    std::string out;
    for (const auto& [key, sets] : entries_) {
        out += key.label(ascii) + " : [";
        for (std::size_t i = 0; i < sets.size(); ++i) {
            if (i) out += ", ";
            out += render_set(sets[i], ascii);
        }
        out += "]\n";
    }
    return out;
}

}  // namespace aspex
