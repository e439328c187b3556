#include "aspex/assumption_engine.hpp"

#include <algorithm>

namespace aspex {

namespace {

std::set<atom_id> least_model(const ground_program& g, const std::set<atom_id>& reference, bool over) {
    std::set<atom_id> in = g.facts();
    auto holds = [&](literal_id l) { return l > 0 ? in.contains(l) : !reference.contains(-l); };
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& s : g.statements()) {
            if (s.head_atoms.empty()) continue;
            if (s.head == head_type::choice && !over) continue;
            bool body = false;
            if (s.body.kind == body_kind::normal) {
                body = std::all_of(s.body.literals.begin(), s.body.literals.end(), holds);
            } else {
                std::int64_t sum = 0;
                for (std::size_t i = 0; i < s.body.literals.size(); ++i) {
                    if (holds(s.body.literals[i])) sum += s.body.weights[i];
                }
                body = sum >= s.body.lower_bound;
            }
            if (!body) continue;
            for (auto h : s.head_atoms) changed = in.insert(h).second || changed;
        }
    }
    return in;
}

bool grounds_all(const derivation_map& da, const name_set& base) {
    name_set grounded = base;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [a, sets] : da) {
            if (grounded.contains(a)) continue;
            bool ok = std::any_of(sets.begin(), sets.end(), [&](const name_set& d) {
                return std::includes(grounded.begin(), grounded.end(), d.begin(), d.end());
            });
            if (ok) changed = grounded.insert(a).second;
        }
    }
    return std::all_of(da.begin(), da.end(), [&](const auto& kv) { return grounded.contains(kv.first); });
}

// Atoms on some cycle of the relation a -> d for d in a set of DA[a].
name_set cycle_participants(const derivation_map& da) {
    std::map<std::string, name_set> succ;
    for (const auto& [a, sets] : da) {
        for (const auto& d : sets) succ[a].insert(d.begin(), d.end());
    }
    name_set out;
    for (const auto& [a, unused] : da) {
        (void)unused;
        name_set seen;
        std::vector<std::string> todo(succ[a].begin(), succ[a].end());
        while (!todo.empty()) {
            auto n = todo.back();
            todo.pop_back();
            if (n == a) {
                out.insert(a);
                break;
            }
            if (!seen.insert(n).second) continue;
            if (auto it = succ.find(n); it != succ.end()) todo.insert(todo.end(), it->second.begin(), it->second.end());
        }
    }
    return out;
}

std::vector<std::string> sorted(const name_set& s) { return {s.begin(), s.end()}; }

}  // namespace

wf_model well_founded(const ground_program& g) {
    std::set<atom_id> under;
    while (true) {
        auto over = least_model(g, under, true);
        auto next = least_model(g, over, false);
        if (next == under) return wf_model{std::move(under), std::move(over)};
        under = std::move(next);
    }
}

name_set tentative_assumptions(const ground_program& g, const interpretation& m) {
    auto wf = well_founded(g);
    name_set ta;
    for (auto a : g.nant()) {
        if (!m.holds(a) && wf.possible.contains(a)) ta.insert(g.name(a));
    }
    return ta;
}

derivation_result derivation_analysis(const support_table& e, const name_set& ta, const build_options& options) {
    derivation_result out;
    for (const auto& a : ta) {
        auto root = enode::literal(a, true);
        name_set others = ta;
        others.erase(a);
        std::vector<explanation_graph> graphs;
        if (e.contains(root)) {
            try {
                graphs = build_egraph(e, others, root, options);
            } catch (const egraph_error&) {
            }
        }

        std::vector<name_set> found;
        for (const auto& graph : graphs) {
            name_set d;
            for (const auto& n : graph.nodes) {
                if (n.kind == node_kind::neg_atom && others.contains(n.atom)) d.insert(n.atom);
            }
            // shrink to a minimal set of assumptions that still explains ~a
            for (const auto& x : sorted(d)) {
                auto smaller = d;
                smaller.erase(x);
                if (explainable_set(e, smaller).nodes.contains(root)) d = std::move(smaller);
            }
            if (std::find(found.begin(), found.end(), d) == found.end()) found.push_back(std::move(d));
        }
        std::vector<name_set> minimal;
        for (const auto& d : found) {
            bool dominated = std::any_of(found.begin(), found.end(), [&](const name_set& o) {
                return o.size() < d.size() && std::includes(d.begin(), d.end(), o.begin(), o.end());
            });
            if (!dominated) minimal.push_back(d);
        }
        std::sort(minimal.begin(), minimal.end(), [](const name_set& x, const name_set& y) {
            return x.size() != y.size() ? x.size() < y.size() : x < y;
        });

        if (minimal.empty()) {
            out.t_must.insert(a);
        } else {
            out.t_deferred.insert(a);
            out.da[a] = std::move(minimal);
        }
    }
    return out;
}

std::vector<name_set> min_cycle_break(const derivation_map& da) {
    name_set base;
    for (const auto& [a, sets] : da) {
        for (const auto& d : sets) {
            for (const auto& x : d) {
                if (!da.contains(x)) base.insert(x);
            }
        }
    }
    if (grounds_all(da, base)) return {name_set{}};

    auto parts = sorted(cycle_participants(da));
    auto with = [&](const name_set& b) {
        auto s = base;
        s.insert(b.begin(), b.end());
        return s;
    };

    std::vector<name_set> found;
    if (parts.size() > 20) {
        // greedy: add participants in order until grounded, then drop the redundant ones
        name_set b;
        for (const auto& p : parts) {
            if (grounds_all(da, with(b))) break;
            b.insert(p);
        }
        for (const auto& p : sorted(b)) {
            auto smaller = b;
            smaller.erase(p);
            if (grounds_all(da, with(smaller))) b = std::move(smaller);
        }
        return {b};
    }

    const std::size_t n = parts.size();
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<bool> pick(n, false);
        std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
        do {
            name_set b;
            for (std::size_t i = 0; i < n; ++i) {
                if (pick[i]) b.insert(parts[i]);
            }
            bool superset = std::any_of(found.begin(), found.end(), [&](const name_set& f) {
                return std::includes(b.begin(), b.end(), f.begin(), f.end());
            });
            if (!superset && grounds_all(da, with(b))) found.push_back(std::move(b));
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    std::sort(found.begin(), found.end(), [](const name_set& x, const name_set& y) {
        return x.size() != y.size() ? x.size() < y.size() : x < y;
    });
    return found;
}

std::vector<name_set> assumption_report::all_u() const {
    std::vector<name_set> out;
    for (const auto& b : min_b_candidates) {
        auto u = t_must;
        u.insert(b.begin(), b.end());
        out.push_back(std::move(u));
    }
    return out;
}

assumption_report minimal_assumption_sets(const ground_program& g, const interpretation& m, const support_table& e,
                                          const build_options& options) {
    assumption_report r;
    r.ta = tentative_assumptions(g, m);
    auto d = derivation_analysis(e, r.ta, options);
    r.t_must = std::move(d.t_must);
    r.t_deferred = std::move(d.t_deferred);
    r.da = std::move(d.da);
    r.min_b_candidates = min_cycle_break(r.da);

    const name_set* best = nullptr;
    for (const auto& b : r.min_b_candidates) {
        if (!best || sorted(b) < sorted(*best)) best = &b;
    }
    r.chosen_u = r.t_must;
    if (best) r.chosen_u.insert(best->begin(), best->end());
    return r;
}

std::string format_names(const name_set& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& x : s) {
        if (!first) out += ",";
        first = false;
        out += x;
    }
    return out + "}";
}

std::string format_report(const assumption_report& r, bool all_candidates) {
    std::string out;
    out += "TA=" + format_names(r.ta) + " T=" + format_names(r.t_must) + " U=" + format_names(r.chosen_u) + "\n";
    out += "T'=" + format_names(r.t_deferred) + "\n";
    out += "DA={";
    bool first = true;
    for (const auto& [a, sets] : r.da) {
        if (!first) out += ", ";
        first = false;
        out += a + ": [";
        for (std::size_t i = 0; i < sets.size(); ++i) out += (i ? ", " : "") + format_names(sets[i]);
        out += "]";
    }
    out += "}\n";
    out += "min(B)=[";
    for (std::size_t i = 0; i < r.min_b_candidates.size(); ++i) {
        out += (i ? ", " : "") + format_names(r.min_b_candidates[i]);
    }
    out += "]\n";
    if (all_candidates) {
        for (const auto& u : r.all_u()) out += "U candidate: " + format_names(u) + "\n";
    }
    return out;
}

}  // namespace aspex
