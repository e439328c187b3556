#include "aspex/egraph.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>

#include <json.hpp>

namespace aspex {

namespace {

constexpr std::array<std::pair<edge_label, std::string_view>, 7> label_names{{
    {edge_label::plus, "plus"},
    {edge_label::minus, "minus"},
    {edge_label::circ, "circ"},
    {edge_label::bullet, "bullet"},
    {edge_label::diamond, "diamond"},
    {edge_label::oplus, "oplus"},
    {edge_label::oslash, "oslash"},
}};

bool negative_category(node_kind k) {
    return k == node_kind::neg_atom || k == node_kind::tuple || k == node_kind::choice_pos ||
           k == node_kind::choice_neg;
}

using adjacency = std::map<enode, std::vector<std::pair<enode, edge_label>>>;

// Every edge inside a strongly connected component of the graph without diamond edges must be
// negative. Iterative Tarjan.
bool cycles_ok(const adjacency& adj) {
    std::map<enode, int> index, low;
    std::set<enode> on_stack;
    std::vector<enode> stack;
    std::map<enode, int> component;
    int counter = 0, comps = 0;

    auto edges_of = [&](const enode& n) -> const std::vector<std::pair<enode, edge_label>>* {
        auto it = adj.find(n);
        return it == adj.end() ? nullptr : &it->second;
    };

    for (const auto& [start, unused] : adj) {
        (void)unused;
        if (index.contains(start)) continue;
        std::vector<std::pair<enode, std::size_t>> work{{start, 0}};
        index[start] = low[start] = counter++;
        stack.push_back(start);
        on_stack.insert(start);
        while (!work.empty()) {
            auto& [n, i] = work.back();
            const auto* out = edges_of(n);
            if (out && i < out->size()) {
                const auto& [m, lab] = (*out)[i++];
                if (lab == edge_label::diamond) continue;
                if (!index.contains(m)) {
                    index[m] = low[m] = counter++;
                    stack.push_back(m);
                    on_stack.insert(m);
                    work.emplace_back(m, 0);
                } else if (on_stack.contains(m)) {
                    low[n] = std::min(low[n], index[m]);
                }
                continue;
            }
            enode done = n;
            work.pop_back();
            if (!work.empty()) low[work.back().first] = std::min(low[work.back().first], low[done]);
            if (low[done] == index[done]) {
                while (true) {
                    auto top = stack.back();
                    stack.pop_back();
                    on_stack.erase(top);
                    component[top] = comps;
                    if (top == done) break;
                }
                ++comps;
            }
        }
    }

    for (const auto& [n, out] : adj) {
        for (const auto& [m, lab] : out) {
            if (lab == edge_label::diamond || lab == edge_label::minus) continue;
            auto cm = component.find(m);
            if (cm != component.end() && cm->second == component.at(n)) return false;
        }
    }
    return true;
}

adjacency adjacency_of(const std::map<enode, support_set>& chosen) {
    adjacency adj;
    for (const auto& [n, s] : chosen) {
        auto& out = adj[n];
        for (const auto& m : s) out.emplace_back(m, label_for(m));
    }
    return adj;
}

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string_view dot_style(edge_label l) {
    switch (l) {
        case edge_label::plus: return "[style=solid]";
        case edge_label::minus: return "[style=dashed]";
        case edge_label::circ: return "[style=dotted]";
        case edge_label::bullet: return "[style=dotted, color=orange]";
        case edge_label::diamond: return "[style=dotted, color=green]";
        case edge_label::oplus: return "[style=solid, color=blue]";
        case edge_label::oslash: return "[style=solid, color=gray]";
    }
    return "";
}

}  // namespace

std::string_view label_name(edge_label l) {
    for (const auto& [lab, name] : label_names) {
        if (lab == l) return name;
    }
    return "unknown";
}

std::optional<edge_label> label_from_name(std::string_view name) {
    for (const auto& [lab, n] : label_names) {
        if (n == name) return lab;
    }
    return std::nullopt;
}

edge_label label_for(const enode& target) {
    switch (target.kind) {
        case node_kind::atom:
        case node_kind::tuple:
        case node_kind::choice_pos:
            return edge_label::plus;
        case node_kind::neg_atom:
        case node_kind::choice_neg:
            return edge_label::minus;
        case node_kind::top:
        case node_kind::bottom:
        case node_kind::assume:
            return edge_label::circ;
        case node_kind::plus_choice:
        case node_kind::minus_choice:
            return edge_label::bullet;
        case node_kind::triggered_constraint:
            return edge_label::diamond;
        case node_kind::star_true:
            return edge_label::oplus;
        case node_kind::star_empty:
            return edge_label::oslash;
    }
    return edge_label::plus;
}

std::vector<enode> explanation_graph::successors(const enode& n) const {
    std::vector<enode> out;
    for (const auto& e : edges) {
        if (e.from == n) out.push_back(e.to);
    }
    return out;
}

support_table merge_supports(const support_table& er, const support_table& ec) {
    support_table e;
    const std::vector<support_set> none{support_set{}};
    std::set<enode> keys;
    for (const auto& [k, v] : er.entries()) keys.insert(k);
    for (const auto& [k, v] : ec.entries()) keys.insert(k);
    for (const auto& k : keys) {
        const auto* r = er.find(k);
        const auto* c = ec.find(k);
        std::vector<support_set> merged;
        for (const auto& rs : r ? *r : none) {
            for (const auto& cs : c ? *c : none) {
                auto s = rs;
                s.insert(cs.begin(), cs.end());
                if (std::find(merged.begin(), merged.end(), s) == merged.end()) merged.push_back(std::move(s));
            }
        }
        e.assign(k, std::move(merged));
    }
    return e;
}

support_table with_assumptions(const support_table& e, const assumption_set& u) {
    support_table out = e;
    for (const auto& name : u) {
        auto key = enode::literal(name, true);
        if (out.contains(key)) out.assign(key, {support_set{enode::make(node_kind::assume)}});
    }
    return out;
}

explainability explainable_set(const support_table& table, const assumption_set& u) {
    auto e = with_assumptions(table, u);
    std::set<enode> atoms, negs, tcs;
    for (const auto& [k, v] : e.entries()) {
        if (k.kind == node_kind::atom) atoms.insert(k);
        else if (k.kind == node_kind::triggered_constraint) tcs.insert(k);
        else if (negative_category(k.kind)) negs.insert(k);
    }

    std::set<enode> tc_ok = tcs;
    while (true) {
        std::set<enode> w, g;
        std::map<enode, support_set> witness;
        auto member_ok = [&](const enode& n) {
            if (n.is_terminal()) return true;
            if (n.kind == node_kind::atom) return w.contains(n);
            if (n.kind == node_kind::triggered_constraint) return tc_ok.contains(n);
            return g.contains(n);
        };
        auto usable = [&](const enode& k) -> const support_set* {
            for (const auto& s : e.at(k)) {
                if (std::all_of(s.begin(), s.end(), member_ok)) return &s;
            }
            return nullptr;
        };

        // Atoms enter in stages; negative nodes are a greatest fixpoint over the atoms of
        // earlier stages, so positive dependencies can never close a loop.
        while (true) {
            g = negs;
            while (true) {
                std::set<enode> next;
                for (const auto& n : g) {
                    if (usable(n)) next.insert(n);
                }
                if (next == g) break;
                g = std::move(next);
            }
            for (const auto& n : g) {
                if (!witness.contains(n)) witness[n] = *usable(n);
            }
            std::vector<enode> added;
            for (const auto& a : atoms) {
                if (w.contains(a)) continue;
                if (const auto* s = usable(a)) {
                    witness[a] = *s;
                    added.push_back(a);
                }
            }
            if (added.empty()) break;
            w.insert(added.begin(), added.end());
        }

        std::set<enode> next_tc;
        for (const auto& t : tc_ok) {
            if (const auto* s = usable(t)) {
                next_tc.insert(t);
                witness[t] = *s;
            }
        }
        if (next_tc == tc_ok) {
            explainability out;
            out.nodes.insert(w.begin(), w.end());
            out.nodes.insert(g.begin(), g.end());
            out.nodes.insert(tc_ok.begin(), tc_ok.end());
            for (auto& [k, s] : witness) {
                if (out.nodes.contains(k)) out.witness[k] = s;
            }
            return out;
        }
        tc_ok = std::move(next_tc);
    }
}

explanation_graph graph_from_witness(const std::map<enode, support_set>& witness, const enode& root) {
    explanation_graph g;
    g.root = root;
    std::vector<enode> todo{root};
    g.nodes.insert(root);
    while (!todo.empty()) {
        auto n = todo.back();
        todo.pop_back();
        auto it = witness.find(n);
        if (it == witness.end()) continue;
        for (const auto& m : it->second) {
            g.edges.insert(eedge{n, m, label_for(m)});
            if (g.nodes.insert(m).second) todo.push_back(m);
        }
    }
    return g;
}

std::vector<explanation_graph> build_egraph(const support_table& table, const assumption_set& u, const enode& root,
                                            const build_options& options) {
    if (!table.contains(root)) {
        throw egraph_error(egraph_error::kind::unknown_literal, "no supports known for literal " + root.label());
    }
    auto e = with_assumptions(table, u);
    auto x = explainable_set(table, u);
    if (!x.nodes.contains(root)) {
        throw egraph_error(egraph_error::kind::no_valid_graph,
                           "literal " + root.label() + " has no valid explanation graph under the given assumptions");
    }

    std::vector<explanation_graph> graphs;
    std::map<enode, support_set> chosen;
    std::vector<enode> queue{root};
    std::set<enode> queued{root};
    std::size_t steps = 0;
    bool exhausted = false;

    std::function<void(std::size_t)> expand = [&](std::size_t i) {
        if (graphs.size() >= options.max_graphs || exhausted) return;
        while (i < queue.size() && (queue[i].is_terminal() || chosen.contains(queue[i]))) ++i;
        if (i == queue.size()) {
            graphs.push_back(graph_from_witness(chosen, root));
            return;
        }
        const enode n = queue[i];
        for (const auto& s : e.at(n)) {
            if (++steps > options.step_budget) {
                exhausted = true;
                return;
            }
            bool usable = std::all_of(s.begin(), s.end(), [&](const enode& m) {
                return m.is_terminal() || x.nodes.contains(m);
            });
            if (!usable) continue;
            chosen[n] = s;
            if (cycles_ok(adjacency_of(chosen))) {
                auto mark = queue.size();
                for (const auto& m : s) {
                    if (queued.insert(m).second) queue.push_back(m);
                }
                expand(i + 1);
                for (auto k = mark; k < queue.size(); ++k) queued.erase(queue[k]);
                queue.resize(mark);
            }
            chosen.erase(n);
            if (graphs.size() >= options.max_graphs || exhausted) return;
        }
    };
    expand(0);

    if (graphs.empty()) {
        auto g = graph_from_witness(x.witness, root);
        std::string why;
        if (!validate_egraph(g, table, u, &why)) {
            throw egraph_error(egraph_error::kind::no_valid_graph, "no valid graph found for " + root.label() + ": " + why);
        }
        graphs.push_back(std::move(g));
    }
    return graphs;
}

bool validate_egraph(const explanation_graph& g, const support_table& table, const assumption_set& u,
                     std::string* reason) {
    auto fail = [&](const std::string& why) {
        if (reason) *reason = why;
        return false;
    };
    auto e = with_assumptions(table, u);
    if (!g.nodes.contains(g.root)) return fail("root is not a node");

    std::map<enode, support_set> out;
    for (const auto& edge : g.edges) {
        if (!g.nodes.contains(edge.from) || !g.nodes.contains(edge.to)) {
            return fail("edge " + edge.from.label() + " -> " + edge.to.label() + " leaves the node set");
        }
        if (edge.label != label_for(edge.to)) {
            return fail("edge " + edge.from.label() + " -> " + edge.to.label() + " has the wrong label");
        }
        out[edge.from].insert(edge.to);
    }
    for (const auto& n : g.nodes) {
        auto it = out.find(n);
        if (n.is_terminal()) {
            if (it != out.end()) return fail("terminal " + n.label() + " has outgoing edges");
            continue;
        }
        const auto* sets = e.find(n);
        if (!sets) return fail("node " + n.label() + " has no supported sets");
        support_set targets = it == out.end() ? support_set{} : it->second;
        if (std::find(sets->begin(), sets->end(), targets) == sets->end()) {
            return fail("out-neighbours of " + n.label() + " are not one of its supported sets");
        }
    }

    std::set<enode> seen{g.root};
    std::vector<enode> todo{g.root};
    while (!todo.empty()) {
        auto n = todo.back();
        todo.pop_back();
        if (auto it = out.find(n); it != out.end()) {
            for (const auto& m : it->second) {
                if (seen.insert(m).second) todo.push_back(m);
            }
        }
    }
    if (seen.size() != g.nodes.size()) return fail("some nodes are unreachable from the root");

    adjacency adj;
    for (const auto& edge : g.edges) adj[edge.from].emplace_back(edge.to, edge.label);
    if (!cycles_ok(adj)) return fail("a cycle outside triggered constraints has a non-negative edge");
    return true;
}

std::string to_dot(const explanation_graph& g, bool ascii) {
    std::string out = "digraph explanation {\n";
    out += "  \"" + dot_escape(g.root.label(ascii)) + "\" [shape=box];\n";
    for (const auto& n : g.nodes) {
        if (n != g.root) out += "  \"" + dot_escape(n.label(ascii)) + "\";\n";
    }
    for (const auto& e : g.edges) {
        out += "  \"" + dot_escape(e.from.label(ascii)) + "\" -> \"" + dot_escape(e.to.label(ascii)) + "\" " +
               std::string(dot_style(e.label)) + ";\n";
    }
    return out + "}\n";
}

std::string node_id(const enode& n) {
    // FNV-1a over kind and label
    std::uint64_t h = 1469598103934665603ULL;
    auto feed = [&](std::string_view s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ULL;
        }
    };
    feed(kind_name(n.kind));
    feed(std::string_view("\0", 1));
    feed(n.label(false));
    char buf[20];
    std::snprintf(buf, sizeof buf, "n%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string to_json(const explanation_graph& g, bool ascii) {
    nlohmann::json doc;
    doc["root"] = node_id(g.root);
    auto nodes = nlohmann::json::array();
    for (const auto& n : g.nodes) {
        nodes.push_back({{"id", node_id(n)}, {"kind", kind_name(n.kind)}, {"label", n.label(ascii)}});
    }
    auto edges = nlohmann::json::array();
    for (const auto& e : g.edges) {
        edges.push_back({{"from", node_id(e.from)}, {"to", node_id(e.to)}, {"label", label_name(e.label)}});
    }
    doc["nodes"] = std::move(nodes);
    doc["edges"] = std::move(edges);
    return doc.dump(2) + "\n";
}

explanation_graph from_json(std::string_view text) {
    auto doc = nlohmann::json::parse(text);
    std::map<std::string, enode> by_id;
    explanation_graph g;
    for (const auto& n : doc.at("nodes")) {
        auto kind = kind_from_name(n.at("kind").get<std::string>());
        if (!kind) throw std::invalid_argument("unknown node kind " + n.at("kind").get<std::string>());
        auto node = parse_node(n.at("label").get<std::string>(), kind);
        by_id[n.at("id").get<std::string>()] = node;
        g.nodes.insert(node);
    }
    auto lookup = [&](const std::string& id) {
        auto it = by_id.find(id);
        if (it == by_id.end()) throw std::invalid_argument("unknown node id " + id);
        return it->second;
    };
    g.root = lookup(doc.at("root").get<std::string>());
    for (const auto& e : doc.at("edges")) {
        auto label = label_from_name(e.at("label").get<std::string>());
        if (!label) throw std::invalid_argument("unknown edge label " + e.at("label").get<std::string>());
        g.edges.insert(eedge{lookup(e.at("from").get<std::string>()), lookup(e.at("to").get<std::string>()), *label});
    }
    return g;
}

}  // namespace aspex
