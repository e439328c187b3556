#include "aspex/ground_program.hpp"

#include <algorithm>
#include <sstream>

namespace aspex {

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return a <= 0 ? 0 : (a + b - 1) / b; }

std::string aux_name(atom_id id) { return "l(" + std::to_string(id) + ")"; }

bool contradicts(const body_literal& a, const body_literal& b) { return a.term == b.term && a.negated != b.negated; }

// Conjunction of two conjunctions; empty optional when they clash.
std::optional<conjunction> join(const conjunction& a, const conjunction& b) {
    conjunction out = a;
    for (const auto& l : b) {
        if (std::find(out.begin(), out.end(), l) != out.end()) continue;
        for (const auto& o : out) {
            if (contradicts(o, l)) return std::nullopt;
        }
        out.push_back(l);
    }
    return out;
}

void add_unique(std::vector<conjunction>& into, conjunction c) {
    auto same = [&](const conjunction& x) {
        if (x.size() != c.size()) return false;
        return std::all_of(c.begin(), c.end(), [&](const body_literal& l) {
            return std::find(x.begin(), x.end(), l) != x.end();
        });
    };
    if (std::none_of(into.begin(), into.end(), same)) into.push_back(std::move(c));
}

std::vector<conjunction> product(const std::vector<conjunction>& a, const std::vector<conjunction>& b) {
    std::vector<conjunction> out;
    for (const auto& x : a) {
        for (const auto& y : b) {
            if (auto j = join(x, y)) add_unique(out, std::move(*j));
        }
    }
    return out;
}

bool uniform_weights(const body_spec& body) {
    if (body.weights.empty()) return true;
    auto w = body.weights.front();
    return w > 0 && std::all_of(body.weights.begin(), body.weights.end(), [w](auto x) { return x == w; });
}

std::int64_t unit_weight(const body_spec& body) { return body.weights.empty() ? 1 : body.weights.front(); }

std::vector<std::pair<literal_id, std::int64_t>> weighted_literals(const body_spec& body) {
    std::vector<std::pair<literal_id, std::int64_t>> out;
    for (std::size_t i = 0; i < body.literals.size(); ++i) out.emplace_back(body.literals[i], body.weights[i]);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::map<atom_id, atom> build_symbol_table(const aspif_program& program) {
    std::map<atom_id, atom> table;
    std::map<std::string, atom_id> names;

    for (const auto& out : program.outputs()) {
        if (out.condition.size() != 1 || out.condition.front() < 0) {
            throw ground_error(ground_error::kind::multi_literal_output_condition,
                               "output '" + out.symbol + "' must have a single positive condition literal");
        }
        atom_id id = out.condition.front();
        if (auto it = table.find(id); it != table.end() && it->second.name != out.symbol) {
            throw ground_error(ground_error::kind::duplicate_symbol, "atom " + std::to_string(id) + " is named both '" +
                                                                         it->second.name + "' and '" + out.symbol + "'");
        }
        if (auto it = names.find(out.symbol); it != names.end() && it->second != id) {
            throw ground_error(ground_error::kind::duplicate_symbol, "symbol '" + out.symbol + "' names atoms " +
                                                                         std::to_string(it->second) + " and " +
                                                                         std::to_string(id));
        }
        table[id] = atom{id, out.symbol, false, false};
        names[out.symbol] = id;
    }

    auto touch = [&](atom_id id) {
        if (!table.contains(id)) table[id] = atom{id, aux_name(id), true, false};
    };
    for (const auto& r : program.rules()) {
        for (auto h : r.head_atoms) touch(h);
        for (auto l : r.body.literals) touch(l < 0 ? -l : l);
    }
    for (const auto& e : program.externals()) {
        touch(e.atom);
        table[e.atom].is_fact = true;
    }
    for (const auto& [id, a] : table) {
        if (a.is_aux && names.contains(a.name)) {
            throw ground_error(ground_error::kind::duplicate_symbol,
                               "auxiliary atom " + std::to_string(id) + " clashes with symbol '" + a.name + "'");
        }
    }
    return table;
}

ground_program reconstruct_rules(const aspif_program& program) {
    ground_program g;
    g.symbols_ = build_symbol_table(program);
    for (const auto& [id, a] : g.symbols_) {
        g.by_name_[a.name] = id;
        if (a.is_fact) g.facts_.insert(id);
    }
    g.statements_ = program.rules();

    const auto& stmts = g.statements_;
    for (std::size_t i = 0; i < stmts.size(); ++i) {
        const auto& s = stmts[i];
        if (s.head == head_type::disjunction && s.head_atoms.size() > 1) {
            throw ground_error(ground_error::kind::disjunctive_head,
                               "rule statement " + std::to_string(i + 1) + " has a disjunctive head");
        }
        if (s.head == head_type::choice) {
            g.choice_heads_.insert(s.head_atoms.begin(), s.head_atoms.end());
        } else if (s.head_atoms.size() == 1) {
            g.defs_[s.head_atoms.front()].push_back(i);
        }
    }

    auto derived_aux = [&](atom_id id) {
        const auto& a = g.symbols_.at(id);
        return a.is_aux && !a.is_fact && !g.choice_heads_.contains(id);
    };
    auto single_def = [&](atom_id id) -> const rule_statement* {
        auto it = g.defs_.find(id);
        if (it == g.defs_.end() || it->second.size() != 1) return nullptr;
        return &stmts[it->second.front()];
    };
    auto weight_def = [&](atom_id id) -> const rule_statement* {
        if (!derived_aux(id)) return nullptr;
        const auto* d = single_def(id);
        return d && d->body.kind == body_kind::weight ? d : nullptr;
    };

    // Roles: weight-defined auxiliaries become cardinality choices; the "X_l and not X_(u+1)" pair
    // pattern becomes one bounded choice; normal-defined auxiliaries are inlined.
    std::vector<bool> opaque(stmts.size(), false);
    std::map<atom_id, std::pair<const rule_statement*, const rule_statement*>> pairs;
    for (const auto& [id, a] : g.symbols_) {
        if (!a.is_aux) continue;
        if (const auto* w = weight_def(id)) {
            if (uniform_weights(w->body)) {
                g.roles_[id] = ground_program::aux_role::folded;
            } else {
                g.roles_[id] = ground_program::aux_role::keyed;
                opaque[g.defs_[id].front()] = true;
                g.diagnostics_.push_back("weight body defining " + a.name +
                                         " has mixed weights; kept opaque (unsupported weight body)");
            }
        }
    }
    for (const auto& [id, a] : g.symbols_) {
        if (!a.is_aux || g.roles_.contains(id) || !derived_aux(id)) continue;
        const auto* d = single_def(id);
        if (!d || d->body.kind != body_kind::normal || d->body.literals.size() != 2) continue;
        auto l0 = d->body.literals[0], l1 = d->body.literals[1];
        if ((l0 < 0) == (l1 < 0)) continue;
        atom_id lo = l0 > 0 ? l0 : l1;
        atom_id hi = l0 > 0 ? -l1 : -l0;
        const auto* wl = weight_def(lo);
        const auto* wh = weight_def(hi);
        if (!wl || !wh || !uniform_weights(wl->body) || !uniform_weights(wh->body)) continue;
        if (weighted_literals(wl->body) != weighted_literals(wh->body)) continue;
        if (wh->body.lower_bound <= wl->body.lower_bound) continue;
        g.roles_[id] = ground_program::aux_role::folded;
        pairs[id] = {wl, wh};
    }
    for (const auto& [id, a] : g.symbols_) {
        if (!a.is_aux || g.roles_.contains(id)) continue;
        bool inline_ok = derived_aux(id);
        if (inline_ok && g.defs_.contains(id)) {
            for (auto i : g.defs_[id]) inline_ok = inline_ok && stmts[i].body.kind == body_kind::normal;
        }
        g.roles_[id] = inline_ok ? ground_program::aux_role::inlined : ground_program::aux_role::keyed;
    }

    std::map<choice_spec, std::size_t> interned;
    auto intern = [&](choice_spec spec) {
        auto [it, fresh] = interned.emplace(spec, g.choices_.size());
        if (fresh) g.choices_.push_back(std::move(spec));
        return it->second;
    };
    auto make_tuple = [&](literal_id l) {
        tuple_spec t;
        atom_id a = l < 0 ? -l : l;
        const auto* d = l > 0 && g.is_inlined(a) ? single_def(a) : nullptr;
        bool plain = d && d->body.kind == body_kind::normal && !d->body.literals.empty() &&
                     std::none_of(d->body.literals.begin(), d->body.literals.end(), [&](literal_id x) {
                         auto r = g.roles_.find(x < 0 ? -x : x);
                         return r != g.roles_.end() && r->second == ground_program::aux_role::folded;
                     });
        if (!plain) {
            t.items.push_back(lit{a, l < 0});
            return t;
        }
        // choice elements first, then their conditions, each group in body order
        for (int pass = 0; pass < 2; ++pass) {
            for (auto x : d->body.literals) {
                bool element = x > 0 && g.choice_heads_.contains(x);
                if (element == (pass == 0)) t.items.push_back(lit{x < 0 ? -x : x, x < 0});
            }
        }
        return t;
    };
    auto spec_of = [&](const body_spec& body, std::int64_t lower, std::optional<std::int64_t> upper) {
        choice_spec c;
        c.lower = lower;
        c.upper = upper;
        for (auto l : body.literals) c.elements.push_back(make_tuple(l));
        return c;
    };

    for (const auto& [id, role] : g.roles_) {
        if (role != ground_program::aux_role::folded || pairs.contains(id)) continue;
        const auto& body = single_def(id)->body;
        g.folds_[id] = intern(spec_of(body, ceil_div(body.lower_bound, unit_weight(body)), std::nullopt));
    }
    for (const auto& [id, defs] : pairs) {
        const auto& lo = defs.first->body;
        const auto& hi = defs.second->body;
        auto w = unit_weight(lo);
        g.folds_[id] = intern(spec_of(lo, ceil_div(lo.lower_bound, w), ceil_div(hi.lower_bound, w) - 1));
    }

    for (std::size_t i = 0; i < stmts.size(); ++i) {
        const auto& s = stmts[i];
        ground_rule r;
        r.statement = i;
        r.head = s.head_atoms;
        r.kind = s.head == head_type::choice ? rule_kind::choice_head
                 : s.head_atoms.empty()      ? rule_kind::constraint
                                             : rule_kind::normal;
        if (s.body.kind == body_kind::normal) {
            for (auto l : s.body.literals) {
                auto bl = g.to_body_literal(l);
                (bl.negated ? r.negative : r.positive).push_back(bl.term);
            }
        } else if (opaque[i]) {
            r.opaque = true;
        } else {
            auto w = unit_weight(s.body);
            r.positive.push_back(choice_ref{intern(spec_of(s.body, ceil_div(s.body.lower_bound, w), std::nullopt))});
        }
        std::size_t index = g.rules_.size();
        if (r.kind == rule_kind::constraint) {
            g.index_[rule_key{0, 0}].push_back(index);
        } else {
            for (auto h : r.head) g.index_[rule_key{r.kind == rule_kind::choice_head ? 1 : 0, h}].push_back(index);
        }
        g.rules_.push_back(std::move(r));
    }

    g.nant_ = compute_nant(g);
    return g;
}

ground_program ground_program::from_aspif(const aspif_program& program) { return reconstruct_rules(program); }

std::set<atom_id> compute_nant(const ground_program& g) {
    std::set<atom_id> out;
    for (const auto& r : g.rules()) {
        if (r.kind == rule_kind::normal && g.is_inlined(r.head.front())) continue;
        if (r.opaque) {
            for (auto l : g.statements()[r.statement].body.literals) {
                if (l < 0 && !g.is_inlined(-l)) out.insert(-l);
            }
            continue;
        }
        for (const auto& conj : g.resolve_body(r)) {
            for (const auto& bl : conj) {
                if (bl.negated && std::holds_alternative<atom_id>(bl.term)) out.insert(std::get<atom_id>(bl.term));
            }
        }
    }
    return out;
}

std::vector<conjunction> resolve_aux(const ground_program& g, const lit& l) {
    return g.resolve(body_literal{l.atom, l.negated});
}

const atom& ground_program::symbol(atom_id id) const {
    auto it = symbols_.find(id);
    if (it == symbols_.end()) throw ground_error(ground_error::kind::unknown_atom, "unknown atom id " + std::to_string(id));
    return it->second;
}

std::optional<atom_id> ground_program::find(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

bool ground_program::is_inlined(atom_id id) const {
    auto it = roles_.find(id);
    return it != roles_.end() && it->second == aux_role::inlined;
}

std::vector<atom_id> ground_program::keyed_atoms() const {
    std::vector<atom_id> out;
    for (const auto& [id, a] : symbols_) {
        if (!a.is_aux) {
            out.push_back(id);
        } else if (auto it = roles_.find(id); it != roles_.end() && it->second == aux_role::keyed) {
            out.push_back(id);
        }
    }
    return out;
}

std::vector<atom_id> ground_program::guess_atoms() const {
    std::vector<atom_id> out;
    for (const auto& [id, a] : symbols_) {
        if (!a.is_fact && (!a.is_aux || choice_heads_.contains(id))) out.push_back(id);
    }
    return out;
}

body_literal ground_program::to_body_literal(literal_id l) const {
    atom_id a = l < 0 ? -l : l;
    if (auto it = folds_.find(a); it != folds_.end()) return body_literal{choice_ref{it->second}, l < 0};
    return body_literal{a, l < 0};
}

std::vector<conjunction> ground_program::resolve(const body_literal& literal) const {
    std::set<atom_id> active;
    return resolve_impl(literal, active);
}

std::vector<conjunction> ground_program::resolve_impl(const body_literal& literal, std::set<atom_id>& active) const {
    const auto* id = std::get_if<atom_id>(&literal.term);
    if (!id || !is_inlined(*id)) return {conjunction{literal}};
    if (active.contains(*id)) {
        throw ground_error(ground_error::kind::aux_cycle, "auxiliary atom " + name(*id) + " is defined cyclically");
    }
    active.insert(*id);

    std::vector<conjunction> result;
    auto defs = defs_.find(*id);
    std::vector<std::size_t> rules = defs == defs_.end() ? std::vector<std::size_t>{} : defs->second;
    if (!literal.negated) {
        for (auto i : rules) {
            std::vector<conjunction> conj{conjunction{}};
            for (auto l : statements_[i].body.literals) conj = product(conj, resolve_impl(to_body_literal(l), active));
            for (auto& c : conj) add_unique(result, std::move(c));
        }
    } else {
        // not (B1 or B2 ...) = (some literal of B1 fails) and (some literal of B2 fails) ...
        result.push_back(conjunction{});
        for (auto i : rules) {
            std::vector<conjunction> alternatives;
            for (auto l : statements_[i].body.literals) {
                auto bl = to_body_literal(l);
                bl.negated = !bl.negated;
                for (auto& c : resolve_impl(bl, active)) add_unique(alternatives, std::move(c));
            }
            result = product(result, alternatives);
        }
    }
    active.erase(*id);
    return result;
}

std::vector<conjunction> ground_program::resolve_body(const ground_rule& rule) const {
    std::vector<conjunction> out{conjunction{}};
    for (const auto& t : rule.positive) out = product(out, resolve(body_literal{t, false}));
    for (const auto& t : rule.negative) out = product(out, resolve(body_literal{t, true}));
    return out;
}

bool ground_program::evaluate(atom_id id, std::map<atom_id, bool>& memo, std::set<atom_id>& active,
                              const std::set<atom_id>& assigned) const {
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    const auto& a = symbol(id);
    bool value = false;
    if (a.is_fact) {
        value = true;
    } else if (!a.is_aux || choice_heads_.contains(id)) {
        value = assigned.contains(id);
    } else {
        if (active.contains(id)) {
            throw ground_error(ground_error::kind::aux_cycle, "auxiliary atom " + a.name + " is defined cyclically");
        }
        active.insert(id);
        auto lit_holds = [&](literal_id l) { return evaluate(l < 0 ? -l : l, memo, active, assigned) != (l < 0); };
        if (auto defs = defs_.find(id); defs != defs_.end()) {
            for (auto i : defs->second) {
                const auto& body = statements_[i].body;
                if (body.kind == body_kind::normal) {
                    value = std::all_of(body.literals.begin(), body.literals.end(), lit_holds);
                } else {
                    std::int64_t sum = 0;
                    for (std::size_t k = 0; k < body.literals.size(); ++k) {
                        if (lit_holds(body.literals[k])) sum += body.weights[k];
                    }
                    value = sum >= body.lower_bound;
                }
                if (value) break;
            }
        }
        active.erase(id);
    }
    memo[id] = value;
    return value;
}

interpretation ground_program::complete(const std::set<atom_id>& assigned) const {
    std::map<atom_id, bool> memo;
    std::set<atom_id> active;
    std::set<atom_id> out;
    for (const auto& [id, a] : symbols_) {
        if (evaluate(id, memo, active, assigned)) out.insert(id);
    }
    return interpretation(std::move(out));
}

bool ground_program::holds(const body_literal& literal, const interpretation& in) const {
    bool value = std::visit(
        [&](const auto& t) {
            if constexpr (std::is_same_v<std::decay_t<decltype(t)>, atom_id>) {
                return in.holds(t);
            } else {
                return satisfied(choice(t), in);
            }
        },
        literal.term);
    return value != literal.negated;
}

bool ground_program::holds(const tuple_spec& tuple, const interpretation& in) const {
    return std::all_of(tuple.items.begin(), tuple.items.end(),
                       [&](const lit& l) { return in.holds(l.atom) != l.negated; });
}

std::size_t ground_program::satisfied_count(const choice_spec& c, const interpretation& in) const {
    return static_cast<std::size_t>(
        std::count_if(c.elements.begin(), c.elements.end(), [&](const tuple_spec& t) { return holds(t, in); }));
}

bool ground_program::satisfied(const choice_spec& c, const interpretation& in) const {
    auto n = static_cast<std::int64_t>(satisfied_count(c, in));
    return n >= c.lower && (!c.upper || n <= *c.upper);
}

std::string ground_program::render(const tuple_spec& tuple) const {
    std::string out = "(";
    for (std::size_t i = 0; i < tuple.items.size(); ++i) {
        if (i) out += ", ";
        if (tuple.items[i].negated) out += "not ";
        out += name(tuple.items[i].atom);
    }
    return out + ")";
}

std::string ground_program::render(const choice_spec& c) const {
    std::string out = std::to_string(c.lower) + "<={";
    for (std::size_t i = 0; i < c.elements.size(); ++i) {
        if (i) out += ", ";
        out += render(c.elements[i]);
    }
    out += "}";
    if (c.upper) out += "<=" + std::to_string(*c.upper);
    return out;
}

std::string ground_program::render(const body_literal& literal) const {
    std::string out = literal.negated ? "not " : "";
    if (const auto* id = std::get_if<atom_id>(&literal.term)) return out + name(*id);
    return out + render(choice(std::get<choice_ref>(literal.term)));
}

std::string ground_program::render(const ground_rule& rule) const {
    std::string head;
    if (rule.kind == rule_kind::normal) {
        head = name(rule.head.front());
    } else if (rule.kind == rule_kind::choice_head) {
        head = "{";
        for (std::size_t i = 0; i < rule.head.size(); ++i) head += (i ? "; " : "") + name(rule.head[i]);
        head += "}";
    }

    std::vector<std::string> pos, neg;
    if (rule.opaque) {
        const auto& body = statements_[rule.statement].body;
        std::string agg = std::to_string(body.lower_bound) + "<=#sum{";
        for (std::size_t i = 0; i < body.literals.size(); ++i) {
            auto l = body.literals[i];
            agg += (i ? "; " : "") + std::to_string(body.weights[i]) + ":" + (l < 0 ? "not " : "") + name(l < 0 ? -l : l);
        }
        pos.push_back(agg + "}");
    }
    for (const auto& t : rule.positive) pos.push_back(render(body_literal{t, false}));
    for (const auto& t : rule.negative) neg.push_back(render(body_literal{t, true}));
    std::sort(pos.begin(), pos.end());
    std::sort(neg.begin(), neg.end());
    pos.insert(pos.end(), neg.begin(), neg.end());

    if (pos.empty()) return head + ".";
    std::string body;
    for (std::size_t i = 0; i < pos.size(); ++i) body += (i ? ", " : "") + pos[i];
    return (head.empty() ? ":- " : head + " :- ") + body + ".";
}

std::string ground_program::dump() const {
    std::string out;
    for (const auto& r : rules_) out += render(r) + "\n";
    return out;
}

}  // namespace aspex
