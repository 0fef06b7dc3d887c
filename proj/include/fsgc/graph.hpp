#pragma once

// Order graphs and their invariants (m, zeta_kappa, mu, mu_p), normalisation,
// and the divisor-tree structure behind the mu_p = 0 characterisation.

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "fsgc/numeric.hpp"

namespace fsgc {

struct OrderGraph {
    struct Vertex { std::string id; u64 order; };
    struct Edge { std::string id; std::string from, to; u64 order; };
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;

    const Vertex* find_vertex(const std::string& id) const;
    void validate() const;   // unique ids, positive orders, divisibility, connectivity
    bool is_tree() const;
    bool is_normalised() const;   // no edge shares its order with an endpoint
};

struct GroupType {
    u64 m = 0;
    std::map<u64, i64> zeta;   // indexed by the divisors of m

    bool operator==(const GroupType& o) const = default;
};

GroupType compute_type(const OrderGraph& g);
i64 free_rank(const GroupType& t);
i64 p_rank(const GroupType& t, u64 p);

OrderGraph normalise(const OrderGraph& g);
OrderGraph hecke_graph(u64 q);

// Unlabelled rooted tree; vertices are addressed by preorder index.
struct TreeShape {
    std::vector<TreeShape> children;

    size_t vertex_count() const;
    bool trivial() const { return children.empty(); }
    // root counts as a leaf when its degree is <= 1
    bool vertex_is_leaf(size_t preorder_index) const;
    bool rooted_at_leaf() const { return children.size() == 1; }
    std::string canonical() const;
};

struct DivisorNode {
    u64 label = 0;
    TreeShape shape;
    size_t glue_at = 0;   // preorder vertex index in the parent's shape; unused at the root
    std::vector<DivisorNode> children;
};

struct DivisorTree {
    DivisorNode root;
    u64 root_order = 0;
};

// Build the order tree described by (D, p). Structural violations (labels not
// coprime to p, divisor conditions, bad shapes, glue index out of range) and a
// result that fails p_rank = 0 or normalisation raise invalid_input.
OrderGraph generate_order_tree(const DivisorTree& d, u64 p);

struct RejectionWitness {
    std::string reason;
    std::string witness;   // offending vertex/edge/component, when there is one
};

using CheckResult = std::variant<DivisorTree, RejectionWitness>;

// The peeling procedure: on success returns a divisor tree plus assignment
// that regenerates g (up to relabelling); otherwise a named rejection.
CheckResult check_mup_zero_structure(const OrderGraph& g, u64 p);

// Canonical form of an order tree up to relabelling of vertices and edges.
std::string canonical_tree_string(const OrderGraph& g);

// Canonical form of a divisor tree; mask_root_label ignores the root's label
// (several labels can validly describe the same order tree).
std::string canonical_divisor_string(const DivisorTree& d, bool mask_root_label);

} // namespace fsgc
