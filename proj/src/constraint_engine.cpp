#include "aspex/constraint_engine.hpp"

#include "aspex/support_engine.hpp"

namespace aspex {

std::optional<enode> classify_choice_support(const ground_program& g, const choice_spec& x, choice_side side,
                                             const interpretation& m) {
    bool sat = g.satisfied(x, m);
    if ((side == choice_side::pos_body) == sat) return std::nullopt;
    enode n = enode::make(sat ? node_kind::choice_pos : node_kind::choice_neg);
    n.choice = choice_payload_of(g, x);
    return n;
}

support_table constraint_preprocessing(const ground_program& g, const interpretation& m) {
    support_table ec;
    for (const auto& r : g.rules()) {
        if (r.kind != rule_kind::constraint || r.opaque) continue;
        for (const auto& body : g.resolve_body(r)) {
            std::vector<enode> violation;
            std::vector<enode> support;
            std::vector<choice_expansion> expansions;
            for (const auto& l : body) {
                const auto* a = std::get_if<atom_id>(&l.term);
                if (a) {
                    (g.holds(l, m) ? violation : support).push_back(atom_node(g, *a, m.holds(*a)));
                    continue;
                }
                const auto& x = g.choice(std::get<choice_ref>(l.term));
                auto side = l.negated ? choice_side::neg_body : choice_side::pos_body;
                if (auto n = classify_choice_support(g, x, side, m)) {
                    support.push_back(*n);
                    expansions.push_back(choice_body_support(g, x, m));
                }
            }
            if (support.empty()) {
                throw support_error(support_error::kind::unviolable_constraint,
                                    "constraint " + g.render(r) + " is violated by the interpretation");
            }
            if (violation.empty()) continue;

            for (const auto& x : expansions) {
                for (const auto& [k, v] : x.fragment.entries()) ec.assign(k, v);
            }
            for (const auto& v : violation) {
                auto tc = enode::triggered(v.atom, v.kind == node_kind::neg_atom);
                ec.append(v, support_set{tc});
                const auto* found = ec.find(tc);
                std::vector<support_set> prior = found ? *found : std::vector<support_set>{support_set{}};
                std::vector<support_set> next;
                for (const auto& s : support) {
                    for (const auto& c : prior) {
                        auto u = c;
                        u.insert(s);
                        if (std::find(next.begin(), next.end(), u) == next.end()) next.push_back(std::move(u));
                    }
                }
                ec.assign(tc, std::move(next));
            }
        }
    }
    return ec;
}

}  // namespace aspex
