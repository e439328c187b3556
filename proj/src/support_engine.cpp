#include "aspex/support_engine.hpp"

#include <algorithm>

namespace aspex {

namespace {

bool heads(const ground_rule& r, atom_id c) {
    return r.kind != rule_kind::constraint && std::find(r.head.begin(), r.head.end(), c) != r.head.end();
}

bool raw_body_holds(const ground_program& g, const ground_rule& r, const interpretation& m) {
    const auto& body = g.statements()[r.statement].body;
    auto holds = [&](literal_id l) { return m.holds(l < 0 ? -l : l) != (l < 0); };
    if (body.kind == body_kind::normal) return std::all_of(body.literals.begin(), body.literals.end(), holds);
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < body.literals.size(); ++i) {
        if (holds(body.literals[i])) sum += body.weights[i];
    }
    return sum >= body.lower_bound;
}

bool conj_holds(const ground_program& g, const conjunction& c, const interpretation& m) {
    return std::all_of(c.begin(), c.end(), [&](const body_literal& l) { return g.holds(l, m); });
}

void add_unique(std::vector<support_set>& into, support_set s) {
    if (std::find(into.begin(), into.end(), s) == into.end()) into.push_back(std::move(s));
}

// Drops every set that strictly contains another one.
std::vector<support_set> minimal_sets(std::vector<support_set> sets) {
    std::vector<support_set> out;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < sets.size() && !dominated; ++j) {
            if (i == j || sets[j].size() >= sets[i].size()) continue;
            dominated = std::includes(sets[i].begin(), sets[i].end(), sets[j].begin(), sets[j].end());
        }
        if (!dominated) add_unique(out, sets[i]);
    }
    return out;
}

}  // namespace

enode atom_node(const ground_program& g, atom_id a, bool holds) { return enode::literal(g.name(a), !holds); }

std::vector<tuple_item> tuple_items(const ground_program& g, const tuple_spec& t) {
    std::vector<tuple_item> out;
    for (const auto& l : t.items) out.push_back(tuple_item{g.name(l.atom), l.negated});
    return out;
}

enode tuple_node(const ground_program& g, const tuple_spec& t) {
    enode n = enode::make(node_kind::tuple);
    n.tuple = tuple_items(g, t);
    return n;
}

choice_payload choice_payload_of(const ground_program& g, const choice_spec& c) {
    choice_payload p;
    p.lower = c.lower;
    p.upper = c.upper;
    for (const auto& e : c.elements) p.elements.push_back(tuple_items(g, e));
    return p;
}

enode term_node(const ground_program& g, const interpretation& m, const body_term& t) {
    if (const auto* a = std::get_if<atom_id>(&t)) return atom_node(g, *a, m.holds(*a));
    const auto& spec = g.choice(std::get<choice_ref>(t));
    enode n = enode::make(g.satisfied(spec, m) ? node_kind::choice_pos : node_kind::choice_neg);
    n.choice = choice_payload_of(g, spec);
    return n;
}

choice_expansion choice_body_support(const ground_program& g, const choice_spec& x, const interpretation& m) {
    choice_expansion out;
    out.node = enode::make(g.satisfied(x, m) ? node_kind::choice_pos : node_kind::choice_neg);
    out.node.choice = choice_payload_of(g, x);
    support_set s;
    for (const auto& e : x.elements) {
        if (!g.holds(e, m)) continue;
        auto t = tuple_node(g, e);
        s.insert(t);
        out.fragment.assign(t, {support_set{enode::make(node_kind::star_true)}});
    }
    if (s.empty()) s.insert(enode::make(node_kind::star_empty));
    out.fragment.assign(out.node, {std::move(s)});
    return out;
}

std::vector<support_set> supported_sets_true(const ground_program& g, const interpretation& m, atom_id c) {
    if (g.symbol(c).is_fact) return {support_set{enode::make(node_kind::top)}};
    std::vector<support_set> out;
    for (const auto& r : g.rules()) {
        if (!heads(r, c)) continue;
        if (r.opaque) {
            if (raw_body_holds(g, r, m)) add_unique(out, support_set{enode::make(node_kind::top)});
            continue;
        }
        for (const auto& conj : g.resolve_body(r)) {
            if (!conj_holds(g, conj, m)) continue;
            support_set s;
            for (const auto& l : conj) s.insert(term_node(g, m, l.term));
            if (r.kind == rule_kind::choice_head) s.insert(enode::make(node_kind::plus_choice));
            if (s.empty()) s.insert(enode::make(node_kind::top));
            add_unique(out, std::move(s));
        }
    }
    if (out.empty()) {
        throw support_error(support_error::kind::no_support, "atom " + g.name(c) + " is true but no rule supports it");
    }
    return out;
}

std::vector<support_set> supported_sets_false(const ground_program& g, const interpretation& m, atom_id c) {
    std::vector<support_set> combined{support_set{}};
    bool any_rule = false;
    for (const auto& r : g.rules()) {
        if (!heads(r, c)) continue;
        any_rule = true;

        std::vector<support_set> options;
        if (r.opaque) {
            options.push_back(support_set{enode::make(node_kind::bottom)});
        } else {
            auto dnf = g.resolve_body(r);
            bool body_true = false;
            if (r.kind == rule_kind::choice_head) {
                for (const auto& conj : dnf) {
                    if (!conj_holds(g, conj, m)) continue;
                    body_true = true;
                    support_set s{enode::make(node_kind::minus_choice)};
                    for (const auto& l : conj) s.insert(term_node(g, m, l.term));
                    add_unique(options, std::move(s));
                }
            }
            if (!body_true) {
                // every alternative of the body must lose one literal
                options.push_back(support_set{});
                for (const auto& conj : dnf) {
                    std::vector<support_set> next;
                    for (const auto& l : conj) {
                        if (g.holds(l, m)) continue;
                        for (const auto& o : options) {
                            auto s = o;
                            s.insert(term_node(g, m, l.term));
                            add_unique(next, std::move(s));
                        }
                    }
                    options = minimal_sets(std::move(next));
                }
            }
        }

        std::vector<support_set> next;
        for (const auto& base : combined) {
            for (const auto& o : options) {
                auto s = base;
                s.insert(o.begin(), o.end());
                add_unique(next, std::move(s));
            }
        }
        combined = minimal_sets(std::move(next));
    }
    if (!any_rule) return {support_set{enode::make(node_kind::bottom)}};
    for (auto& s : combined) {
        if (s.empty()) s.insert(enode::make(node_kind::bottom));
    }
    return combined;
}

support_table build_er(const ground_program& g, const interpretation& m) {
    support_table er;
    for (auto a : g.keyed_atoms()) {
        bool holds = m.holds(a);
        er.assign(atom_node(g, a, holds), holds ? supported_sets_true(g, m, a) : supported_sets_false(g, m, a));
    }

    std::set<choice_payload> mentioned;
    for (const auto& [key, sets] : er.entries()) {
        for (const auto& s : sets) {
            for (const auto& n : s) {
                if (n.kind == node_kind::choice_pos || n.kind == node_kind::choice_neg) mentioned.insert(n.choice);
            }
        }
    }
    for (const auto& spec : g.choices()) {
        if (!mentioned.contains(choice_payload_of(g, spec))) continue;
        auto x = choice_body_support(g, spec, m);
        for (const auto& [k, v] : x.fragment.entries()) er.assign(k, v);
    }
    return er;
}

}  // namespace aspex
