#include "aspex/oracle.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace aspex {

namespace {

bool body_holds(const body_spec& body, const std::function<bool(literal_id)>& holds) {
    if (body.kind == body_kind::normal) return std::all_of(body.literals.begin(), body.literals.end(), holds);
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < body.literals.size(); ++i) {
        if (holds(body.literals[i])) sum += body.weights[i];
    }
    return sum >= body.lower_bound;
}

std::vector<atom_id> by_name(const ground_program& g, std::vector<atom_id> ids) {
    std::sort(ids.begin(), ids.end(), [&](atom_id a, atom_id b) { return g.name(a) < g.name(b); });
    return ids;
}

std::string random_name(int i) {
    if (i <= 26) return std::string(1, static_cast<char>('a' + i - 1));
    return "x" + std::to_string(i);
}

}  // namespace

std::set<atom_id> visible_atoms(const ground_program& g, const interpretation& m) {
    std::set<atom_id> out;
    for (auto a : m.atoms()) {
        if (!g.symbol(a).is_aux) out.insert(a);
    }
    return out;
}

bool is_stable(const ground_program& g, const interpretation& m) {
    auto in_m = [&](literal_id l) { return m.holds(l < 0 ? -l : l) != (l < 0); };
    for (const auto& s : g.statements()) {
        if (!body_holds(s.body, in_m)) continue;
        if (s.head == head_type::choice) continue;
        if (s.head_atoms.empty() || !m.holds(s.head_atoms.front())) return false;
    }
    for (auto f : g.facts()) {
        if (!m.holds(f)) return false;
    }

    // least model of the reduct P^M
    std::set<atom_id> lm = g.facts();
    auto reduct_holds = [&](literal_id l) { return l > 0 ? lm.contains(l) : !m.holds(-l); };
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& s : g.statements()) {
            if (s.head_atoms.empty() || !body_holds(s.body, reduct_holds)) continue;
            for (auto h : s.head_atoms) {
                if (s.head == head_type::choice && !m.holds(h)) continue;
                changed = lm.insert(h).second || changed;
            }
        }
    }
    return lm == m.atoms();
}

bool check_answer_set(const ground_program& g, const std::set<atom_id>& a) {
    std::set<atom_id> assigned;
    std::vector<atom_id> hidden;
    for (auto x : g.guess_atoms()) {
        if (g.symbol(x).is_aux) hidden.push_back(x);
        else if (a.contains(x)) assigned.insert(x);
    }
    if (hidden.size() > 16) throw oracle_error("too many auxiliary choice atoms to check");
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << hidden.size()); ++mask) {
        auto guess = assigned;
        for (std::size_t i = 0; i < hidden.size(); ++i) {
            if (mask >> i & 1) guess.insert(hidden[i]);
        }
        auto m = g.complete(guess);
        if (visible_atoms(g, m) == a && is_stable(g, m)) return true;
    }
    return false;
}

std::vector<std::set<atom_id>> enumerate_answer_sets(const ground_program& g, std::size_t cap) {
    auto atoms = by_name(g, g.guess_atoms());
    if (atoms.size() > cap) {
        throw oracle_error("program has " + std::to_string(atoms.size()) + " guess atoms, over the cap of " +
                           std::to_string(cap));
    }
    std::vector<std::set<atom_id>> out;
    const std::size_t n = atoms.size();
    for (std::size_t k = 0; k <= n; ++k) {
        std::vector<bool> pick(n, false);
        std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
        do {
            std::set<atom_id> guess;
            for (std::size_t i = 0; i < n; ++i) {
                if (pick[i]) guess.insert(atoms[i]);
            }
            auto m = g.complete(guess);
            if (!is_stable(g, m)) continue;
            auto v = visible_atoms(g, m);
            if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return out;
}

aspif_program random_aspif(std::uint64_t seed, int n_atoms, int n_rules, double p_choice) {
    aspif_program p;
    if (n_atoms <= 0) return p;

    std::mt19937_64 rng(seed);
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
    auto chance = [&](double q) { return static_cast<double>(rng() % 1000000) / 1e6 < q; };
    atom_id next = n_atoms + 1;

    auto rule = [&](head_type ht, std::vector<atom_id> head, std::vector<literal_id> lits) {
        rule_statement r;
        r.head = ht;
        r.head_atoms = std::move(head);
        r.body.literals = std::move(lits);
        p.statements.emplace_back(std::move(r));
    };
    auto weight_rule = [&](atom_id head, std::int64_t lb, std::vector<literal_id> lits) {
        rule_statement r;
        r.head_atoms = {head};
        r.body.kind = body_kind::weight;
        r.body.lower_bound = lb;
        r.body.weights.assign(lits.size(), 1);
        r.body.literals = std::move(lits);
        p.statements.emplace_back(std::move(r));
    };
    std::vector<atom_id> all_atoms, open_atoms;  // open atoms are the ones that are not facts
    auto distinct_atoms = [&](int k, const std::vector<atom_id>& from) {
        auto pool = from;
        std::vector<atom_id> out;
        for (int i = 0; i < k && !pool.empty(); ++i) {
            auto j = static_cast<std::size_t>(pick(static_cast<int>(pool.size())));
            out.push_back(pool[j]);
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(j));
        }
        return out;
    };
    auto random_literal = [&] {
        atom_id a = 1 + pick(n_atoms);
        return chance(0.5) ? a : -a;
    };
    // #count-style literal: aux <- lb { l1, ..., lk }
    auto count_literal = [&] {
        auto lits = distinct_atoms(2 + pick(2), all_atoms);
        std::vector<literal_id> body;
        for (auto a : lits) body.push_back(chance(0.3) ? -a : a);
        atom_id aux = next++;
        weight_rule(aux, 1 + pick(static_cast<int>(body.size())), body);
        return chance(0.5) ? aux : -aux;
    };
    auto random_body = [&](int lo, int hi) {
        std::vector<literal_id> body;
        int k = lo + pick(hi - lo + 1);
        for (int i = 0; i < k; ++i) {
            auto l = random_literal();
            if (std::find(body.begin(), body.end(), l) == body.end()) body.push_back(l);
        }
        if (chance(0.12)) body.push_back(count_literal());
        return body;
    };

    for (int i = 1; i <= n_atoms; ++i) {
        all_atoms.push_back(i);
        if (chance(0.1)) p.statements.emplace_back(external_statement{i, 2});
        else open_atoms.push_back(i);
    }
    const int n_open = static_cast<int>(open_atoms.size());

    for (int r = 0; r < n_rules; ++r) {
        double x = static_cast<double>(rng() % 1000000) / 1e6;
        if (n_open > 0 && x < p_choice) {
            auto elements = distinct_atoms(1 + pick(std::min(3, n_open)), open_atoms);
            const int m = static_cast<int>(elements.size());
            std::vector<atom_id> conditions;
            for (auto e : elements) {
                atom_id q = 0;
                if (chance(0.4)) {
                    q = 1 + pick(n_atoms);
                    if (q == e) q = 0;
                }
                conditions.push_back(q);
            }
            std::vector<literal_id> base;
            auto body = random_body(0, 2);
            if (!body.empty()) {
                atom_id beta = next++;
                rule(head_type::disjunction, {beta}, body);
                base.push_back(beta);
            }
            for (int i = 0; i < m; ++i) {
                auto lits = base;
                if (conditions[static_cast<std::size_t>(i)]) lits.push_back(conditions[static_cast<std::size_t>(i)]);
                rule(head_type::choice, {elements[static_cast<std::size_t>(i)]}, lits);
            }

            int bounds = pick(4);  // none, lower, upper, both
            if (bounds == 0) continue;
            std::vector<literal_id> tuples;
            for (int i = 0; i < m; ++i) {
                auto q = conditions[static_cast<std::size_t>(i)];
                auto e = elements[static_cast<std::size_t>(i)];
                if (!q) {
                    tuples.push_back(e);
                    continue;
                }
                atom_id t = next++;
                rule(head_type::disjunction, {t}, {q, e});
                tuples.push_back(t);
            }
            int lower = 1 + pick(m);
            int upper = lower + pick(m - lower + 1);
            if (bounds == 3 && upper == m) bounds = 1;
            if (bounds == 2) upper = pick(m);

            auto check = base;
            if (bounds == 1) {
                atom_id xl = next++;
                weight_rule(xl, lower, tuples);
                check.push_back(-xl);
            } else if (bounds == 2) {
                atom_id xu = next++;
                weight_rule(xu, upper + 1, tuples);
                check.push_back(xu);
            } else {
                atom_id xl = next++;
                atom_id xu = next++;
                atom_id y = next++;
                weight_rule(xl, lower, tuples);
                weight_rule(xu, upper + 1, tuples);
                rule(head_type::disjunction, {y}, {xl, -xu});
                check.push_back(-y);
            }
            rule(head_type::disjunction, {}, check);
        } else if (n_open == 0 || x < p_choice + 0.2) {
            rule(head_type::disjunction, {}, random_body(1, 3));
        } else {
            rule(head_type::disjunction, {open_atoms[static_cast<std::size_t>(pick(n_open))]}, random_body(0, 3));
        }
    }

    for (int i = 1; i <= n_atoms; ++i) {
        auto name = random_name(i);
        p.statements.emplace_back(output_statement{name, {i}});
    }
    return p;
}

ground_program random_program(std::uint64_t seed, int n_atoms, int n_rules, double p_choice) {
    return ground_program::from_aspif(random_aspif(seed, n_atoms, n_rules, p_choice));
}

}  // namespace aspex
