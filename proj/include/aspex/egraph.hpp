#pragma once

#include "aspex/enode.hpp"

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aspex {

enum class edge_label { plus, minus, circ, bullet, diamond, oplus, oslash };

std::string_view label_name(edge_label l);
std::optional<edge_label> label_from_name(std::string_view name);
/// Edge labels are fixed by the kind of the target node.
edge_label label_for(const enode& target);

struct eedge {
    enode from;
    enode to;
    edge_label label = edge_label::plus;

    auto operator<=>(const eedge&) const = default;
};

struct explanation_graph {
    enode root;
    std::set<enode> nodes;
    std::set<eedge> edges;

    std::vector<enode> successors(const enode& n) const;
    bool operator==(const explanation_graph&) const = default;
};

class egraph_error : public std::runtime_error {
public:
    enum class kind { unknown_literal, no_valid_graph };

    egraph_error(kind k, const std::string& message) : std::runtime_error(message), kind_(k) {}
    kind code() const noexcept { return kind_; }

private:
    kind kind_;
};

using assumption_set = std::set<std::string>;

/// E[k] = [r ∪ c | r ∈ er[k], c ∈ ec[k]], a missing side counting as [∅].
support_table merge_supports(const support_table& er, const support_table& ec);

/// E with every assumed false atom u rewired to ~u : [{assume}].
support_table with_assumptions(const support_table& e, const assumption_set& u);

struct explainability {
    std::set<enode> nodes;                // every node that heads some valid graph
    std::map<enode, support_set> witness; // one usable support per node in `nodes`
};

/// Nodes of E that admit a valid explanation graph under U, together with a witness choice
/// from which such a graph can be read off.
explainability explainable_set(const support_table& e, const assumption_set& u);

struct build_options {
    std::size_t max_graphs = 64;
    std::size_t step_budget = 200000;
};

/// Valid graphs for root in deterministic order; the first one is the canonical explanation.
std::vector<explanation_graph> build_egraph(const support_table& e, const assumption_set& u, const enode& root,
                                            const build_options& options = {});

/// Support exactness, terminal sinks, label consistency, reachability, assumed atoms only to assume,
/// and no cycle outside triggered_constraint links unless all of its edges are negative.
bool validate_egraph(const explanation_graph& g, const support_table& e, const assumption_set& u,
                     std::string* reason = nullptr);

/// Graph read off a witness map, expanding from root.
explanation_graph graph_from_witness(const std::map<enode, support_set>& witness, const enode& root);

std::string to_dot(const explanation_graph& g, bool ascii = false);
std::string node_id(const enode& n);
std::string to_json(const explanation_graph& g, bool ascii = false);
explanation_graph from_json(std::string_view text);

}  // namespace aspex
