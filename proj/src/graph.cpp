#include "fsgc/graph.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace fsgc {

const OrderGraph::Vertex* OrderGraph::find_vertex(const std::string& id) const {
    for (auto& v : vertices)
        if (v.id == id) return &v;
    return nullptr;
}

void OrderGraph::validate() const {
    check_input(!vertices.empty(), "graph has no vertices");
    std::set<std::string> vids, eids;
    for (auto& v : vertices) {
        check_input(v.order >= 1, "vertex order must be positive: " + v.id);
        check_input(vids.insert(v.id).second, "duplicate vertex id: " + v.id);
    }
    for (auto& e : edges) {
        check_input(e.order >= 1, "edge order must be positive: " + e.id);
        check_input(eids.insert(e.id).second, "duplicate edge id: " + e.id);
        for (const std::string* end : {&e.from, &e.to}) {
            const Vertex* v = find_vertex(*end);
            check_input(v != nullptr, "edge " + e.id + " references unknown vertex " + *end);
            check_input(v->order % e.order == 0,
                        "order of edge must divide order of endpoint: edge " + e.id +
                        " (order " + std::to_string(e.order) + ") at vertex " + v->id);
        }
    }
    // connectivity
    std::map<std::string, std::vector<std::string>> adj;
    for (auto& e : edges) {
        adj[e.from].push_back(e.to);
        adj[e.to].push_back(e.from);
    }
    std::set<std::string> seen;
    std::vector<std::string> stack{vertices.front().id};
    while (!stack.empty()) {
        std::string v = stack.back();
        stack.pop_back();
        if (!seen.insert(v).second) continue;
        for (auto& w : adj[v]) stack.push_back(w);
    }
    check_input(seen.size() == vertices.size(), "graph is disconnected");
}

bool OrderGraph::is_tree() const {
    return edges.size() + 1 == vertices.size();   // connected is checked by validate()
}

bool OrderGraph::is_normalised() const {
    for (auto& e : edges) {
        if (find_vertex(e.from)->order == e.order) return false;
        if (find_vertex(e.to)->order == e.order) return false;
    }
    return true;
}

GroupType compute_type(const OrderGraph& g) {
    g.validate();
    u64 m = 1;
    for (auto& v : g.vertices) m = std::lcm(m, v.order);
    GroupType t;
    t.m = m;
    for (u64 k : divisors_of(m)) {
        i64 z = 0;
        for (auto& e : g.edges)
            if (k % e.order == 0) ++z;
        for (auto& v : g.vertices)
            if (k % v.order == 0) --z;
        t.zeta[k] = z;
    }
    return t;
}

i64 free_rank(const GroupType& t) {
    i64 mu = 1;
    for (auto& [k, z] : t.zeta) mu += (i64)euler_phi(t.m / k) * z;
    return mu;
}

i64 p_rank(const GroupType& t, u64 p) {
    i64 mu = 1;
    for (auto& [k, z] : t.zeta)
        if (k % p == 0) mu += (i64)euler_phi(t.m / k) * z;
    check_internal(mu >= 0, "negative p-rank");
    if (mu == 0) {
        // mu_p = 0 forces zeta_m = -1 and zeta_kappa = 0 for p | kappa | m, kappa < m
        check_internal(t.zeta.at(t.m) == -1, "mu_p = 0 with zeta_m != -1");
        for (auto& [k, z] : t.zeta)
            if (k % p == 0 && k < t.m)
                check_internal(z == 0, "mu_p = 0 with nonzero zeta on a p-divisible divisor");
    }
    return mu;
}

OrderGraph normalise(const OrderGraph& g) {
    g.validate();
    OrderGraph h = g;
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < h.edges.size(); ++i) {
            const auto& e = h.edges[i];
            if (e.from == e.to) continue;   // loops are never contracted
            std::string drop, keep;
            if (h.find_vertex(e.from)->order == e.order) { drop = e.from; keep = e.to; }
            else if (h.find_vertex(e.to)->order == e.order) { drop = e.to; keep = e.from; }
            else continue;
            h.edges.erase(h.edges.begin() + (long)i);
            for (auto& f : h.edges) {
                if (f.from == drop) f.from = keep;
                if (f.to == drop) f.to = keep;
            }
            h.vertices.erase(std::find_if(h.vertices.begin(), h.vertices.end(),
                                          [&](auto& v) { return v.id == drop; }));
            changed = true;
            break;
        }
    }
    return h;
}

OrderGraph hecke_graph(u64 q) {
    check_input(q >= 3, "Hecke parameter must be >= 3");
    OrderGraph g;
    g.vertices = {{"q", q}, {"c2", 2}};
    g.edges = {{"e", "q", "c2", 1}};
    return g;
}

size_t TreeShape::vertex_count() const {
    size_t n = 1;
    for (auto& ch : children) n += ch.vertex_count();
    return n;
}

bool TreeShape::vertex_is_leaf(size_t idx) const {
    // walk preorder; degree of root = #children, of others = #children + 1
    std::function<const TreeShape*(const TreeShape&, size_t&)> walk =
        [&](const TreeShape& node, size_t& i) -> const TreeShape* {
            if (i == 0) return &node;
            --i;
            for (auto& ch : node.children) {
                const TreeShape* r = walk(ch, i);
                if (r) return r;
            }
            return nullptr;
        };
    size_t i = idx;
    const TreeShape* node = walk(*this, i);
    check_input(node != nullptr, "shape vertex index out of range");
    size_t deg = node->children.size() + (idx == 0 ? 0 : 1);
    return deg <= 1;
}

std::string TreeShape::canonical() const {
    std::vector<std::string> parts;
    for (auto& ch : children) parts.push_back(ch.canonical());
    std::sort(parts.begin(), parts.end());
    std::string s = "(";
    for (auto& q : parts) s += q;
    return s + ")";
}

namespace {

struct Builder {
    OrderGraph g;
    u64 p;
    size_t next_v = 0, next_e = 0;

    std::string add_vertex(u64 order) {
        std::string id = "v" + std::to_string(next_v++);
        g.vertices.push_back({id, order});
        return id;
    }
    void add_edge(const std::string& a, const std::string& b, u64 order) {
        g.edges.push_back({"e" + std::to_string(next_e++), a, b, order});
    }

    // Instantiate a shape whose root is the existing vertex root_id; edges get
    // order `label`, new vertices get order p*label. Returns preorder vertex ids.
    std::vector<std::string> instantiate(const TreeShape& sh, const std::string& root_id, u64 label) {
        std::vector<std::string> ids;
        std::function<void(const TreeShape&, const std::string&)> pre =
            [&](const TreeShape& node, const std::string& at) {
                ids.push_back(at);
                for (auto& ch : node.children) {
                    std::string w = add_vertex(p * label);
                    add_edge(at, w, label);
                    pre(ch, w);
                }
            };
        pre(sh, root_id);
        return ids;
    }
};

void validate_divisor_node(const DivisorNode& n, u64 p, bool is_root, bool tree_is_single_root) {
    check_input(n.label >= 1, "divisor-tree label must be positive");
    check_input(n.label % p != 0, "divisor-tree label must be coprime to p");
    if (!is_root) {
        check_input(n.shape.vertex_count() >= 2, "non-root vertices map to non-trivial trees");
        check_input(n.shape.rooted_at_leaf(), "non-root shapes must be rooted at a leaf");
    } else if (tree_is_single_root) {
        check_input(n.shape.vertex_count() >= 2,
                    "a single-root divisor tree must map to a non-trivial tree");
    }
    for (auto& ch : n.children) {
        check_input(ch.label < n.label && n.label % ch.label == 0,
                    "child label must properly divide parent label");
        check_input(ch.glue_at < n.shape.vertex_count(), "invalid gluing index");
        validate_divisor_node(ch, p, false, false);
    }
}

} // namespace

OrderGraph generate_order_tree(const DivisorTree& d, u64 p) {
    check_input(is_prime_u64(p), "p must be prime");
    validate_divisor_node(d.root, p, true, d.root.children.empty());
    check_input(d.root_order >= 1, "root order must be positive");

    Builder b{{}, p};
    std::string uroot = b.add_vertex(d.root_order);
    std::function<void(const DivisorNode&, const std::vector<std::string>&)> rec =
        [&](const DivisorNode& node, const std::vector<std::string>& ids) {
            for (auto& ch : node.children) {
                std::vector<std::string> child_ids = b.instantiate(ch.shape, ids[ch.glue_at], ch.label);
                rec(ch, child_ids);
            }
        };
    std::vector<std::string> root_ids = b.instantiate(d.root.shape, uroot, d.root.label);
    rec(d.root, root_ids);

    b.g.validate();
    check_input(b.g.is_normalised(), "generated tree is not normalised (root order collides)");
    GroupType t = compute_type(b.g);
    check_input(free_rank(t) >= 2, "generated tree has free rank < 2");
    check_input(p_rank(t, p) == 0, "root order does not yield p-rank 0");
    return b.g;
}

namespace {

// Smallest prime not equal to p (used to synthesise a valid root label when
// the root piece is a bare vertex whose coprime part ties with a child label).
u64 aux_prime(u64 p) { return p == 2 ? 3 : 2; }

u64 coprime_part(u64 n, u64 p) {
    while (n % p == 0) n /= p;
    return n;
}

struct PeelPiece {
    u64 label;
    TreeShape shape;
    std::vector<std::string> preorder_ids;   // graph vertex ids, preorder in shape
    std::string attach_id;                   // missing vertex id; empty for the root piece
    std::vector<size_t> child_pieces;
};

} // namespace

CheckResult check_mup_zero_structure(const OrderGraph& g_in, u64 p) {
    g_in.validate();
    check_input(is_prime_u64(p), "p must be prime");
    if (!g_in.is_normalised())
        return RejectionWitness{"not normalised", ""};
    GroupType t = compute_type(g_in);
    if (free_rank(t) < 2)
        return RejectionWitness{"free rank < 2", ""};
    if (!g_in.is_tree())
        return RejectionWitness{"graph is not a tree", ""};
    if (t.m % p != 0)
        return RejectionWitness{"p does not divide m", "m=" + std::to_string(t.m)};

    // Working copy as id sets.
    std::map<std::string, u64> vorder;
    for (auto& v : g_in.vertices) vorder[v.id] = v.order;
    std::map<std::string, OrderGraph::Edge> eset;
    for (auto& e : g_in.edges) eset[e.id] = e;

    std::vector<PeelPiece> pieces;
    std::map<std::string, size_t> piece_of_vertex;

    auto build_shape = [&](const std::vector<std::string>& comp_vertices,
                           const std::vector<const OrderGraph::Edge*>& comp_edges,
                           const std::string& root_id, PeelPiece& out) {
        std::map<std::string, std::vector<std::string>> adj;
        for (auto* e : comp_edges) {
            adj[e->from].push_back(e->to);
            adj[e->to].push_back(e->from);
        }
        for (auto& [k, lst] : adj) std::sort(lst.begin(), lst.end());
        out.preorder_ids.clear();
        std::function<TreeShape(const std::string&, const std::string&)> rec =
            [&](const std::string& at, const std::string& from) -> TreeShape {
                out.preorder_ids.push_back(at);
                TreeShape s;
                for (auto& w : adj[at])
                    if (w != from) s.children.push_back(rec(w, at));
                return s;
            };
        (void)comp_vertices;
        out.shape = rec(root_id, "");
    };

    while (!eset.empty()) {
        u64 m = UINT64_MAX;
        for (auto& [id, e] : eset) m = std::min(m, e.order);
        for (auto& [id, o] : vorder) m = std::min(m, o);
        if (m % p == 0)
            return RejectionWitness{"minimal order divisible by p", "m=" + std::to_string(m)};

        u64 pm = p * m;
        // S_{pm}: everything with order dividing pm
        std::vector<const OrderGraph::Edge*> sedges;
        std::set<std::string> svertices;
        bool covers_all_edges = true;
        for (auto& [id, e] : eset) {
            if (pm % e.order == 0) {
                if (e.order != m)
                    return RejectionWitness{"edge of unexpected order in S_pm", "edge " + e.id};
                sedges.push_back(&e);
            } else {
                covers_all_edges = false;
            }
        }
        for (auto& [id, o] : vorder) {
            if (pm % o == 0) {
                if (o != pm)
                    return RejectionWitness{"vertex of unexpected order in S_pm", "vertex " + id};
                svertices.insert(id);
            }
        }

        bool terminal = covers_all_edges && svertices.size() == vorder.size();

        // components of S_pm (edges of order m together with their order-pm vertices)
        std::map<std::string, std::vector<const OrderGraph::Edge*>> vadj;
        for (auto* e : sedges) {
            vadj[e->from].push_back(e);
            vadj[e->to].push_back(e);
        }
        std::set<const OrderGraph::Edge*> used;
        std::vector<std::pair<std::vector<const OrderGraph::Edge*>, std::set<std::string>>> comps;
        for (auto* e0 : sedges) {
            if (used.count(e0)) continue;
            std::vector<const OrderGraph::Edge*> ce;
            std::set<std::string> cv;
            std::vector<const OrderGraph::Edge*> stack{e0};
            used.insert(e0);
            while (!stack.empty()) {
                auto* e = stack.back();
                stack.pop_back();
                ce.push_back(e);
                for (const std::string* end : {&e->from, &e->to}) {
                    if (!svertices.count(*end)) continue;
                    if (!cv.insert(*end).second) continue;
                    for (auto* f : vadj[*end])
                        if (used.insert(f).second) stack.push_back(f);
                }
            }
            comps.emplace_back(std::move(ce), std::move(cv));
        }
        // deterministic processing order: by smallest vertex id in the component
        std::sort(comps.begin(), comps.end(), [](auto& a, auto& b) {
            auto ida = a.second.empty() ? a.first.front()->id : *a.second.begin();
            auto idb = b.second.empty() ? b.first.front()->id : *b.second.begin();
            return ida < idb;
        });

        if (terminal) {
            if (comps.size() != 1)
                return RejectionWitness{"terminal layer is disconnected", ""};
            auto& [ce, cv] = comps.front();
            PeelPiece piece;
            piece.label = m;
            std::string root_id = *std::min_element(cv.begin(), cv.end());
            std::vector<std::string> vs(cv.begin(), cv.end());
            build_shape(vs, ce, root_id, piece);
            for (auto& id : piece.preorder_ids) piece_of_vertex[id] = pieces.size();
            pieces.push_back(std::move(piece));
            vorder.clear();
            eset.clear();
            break;
        }

        for (auto& [ce, cv] : comps) {
            // exactly one incident vertex must be missing from the component
            std::set<std::string> missing;
            for (auto* e : ce)
                for (const std::string* end : {&e->from, &e->to})
                    if (!cv.count(*end)) missing.insert(*end);
            if (missing.size() != 1)
                return RejectionWitness{"component does not have exactly one missing vertex",
                                        "edge " + ce.front()->id};
            if (cv.size() != ce.size())
                return RejectionWitness{"component vertex/edge count mismatch",
                                        "edge " + ce.front()->id};
            PeelPiece piece;
            piece.label = m;
            piece.attach_id = *missing.begin();
            std::vector<std::string> vs(cv.begin(), cv.end());
            vs.push_back(piece.attach_id);
            build_shape(vs, ce, piece.attach_id, piece);
            // the shape is rooted at the attachment: its root must have degree 1
            if (!piece.shape.rooted_at_leaf())
                return RejectionWitness{"attachment vertex is interior to its own layer",
                                        "vertex " + piece.attach_id};
            for (auto& id : piece.preorder_ids)
                if (id != piece.attach_id) piece_of_vertex[id] = pieces.size();
            pieces.push_back(std::move(piece));
        }
        for (auto& [ce, cv] : comps) {
            for (auto* e : ce) eset.erase(e->id);
            for (auto& v : cv) vorder.erase(v);
        }
    }

    DivisorTree out;
    size_t root_piece;
    if (!vorder.empty()) {
        // bare-vertex terminal: the U-root alone remains
        if (vorder.size() != 1)
            return RejectionWitness{"peeling left a disconnected remainder", ""};
        auto [rid, rorder] = *vorder.begin();
        PeelPiece piece;
        piece.label = 0;   // synthesised below
        piece.shape = TreeShape{};
        piece.preorder_ids = {rid};
        piece_of_vertex[rid] = pieces.size();
        out.root_order = rorder;
        u64 max_child = 0, lcm_child = 1;
        for (auto& q : pieces)
            if (q.attach_id == rid) {
                max_child = std::max(max_child, q.label);
                lcm_child = std::lcm(lcm_child, q.label);
            }
        u64 lbl = coprime_part(rorder, p);
        if (lbl <= max_child || (max_child && lbl % lcm_child != 0))
            lbl = aux_prime(p) * lcm_child;
        piece.label = lbl;
        pieces.push_back(std::move(piece));
        root_piece = pieces.size() - 1;
    } else {
        root_piece = pieces.size() - 1;   // terminal-with-edges case, pushed last
        out.root_order = p * pieces[root_piece].label;
    }

    // assemble the divisor tree: children attach to the piece that owns their missing vertex
    for (size_t i = 0; i < pieces.size(); ++i) {
        if (i == root_piece) continue;
        auto it = piece_of_vertex.find(pieces[i].attach_id);
        check_internal(it != piece_of_vertex.end() && it->second > i,
                       "attachment resolves to an earlier layer");
        pieces[it->second].child_pieces.push_back(i);
    }
    std::function<DivisorNode(size_t)> emit = [&](size_t idx) {
        const PeelPiece& q = pieces[idx];
        DivisorNode n;
        n.label = q.label;
        n.shape = q.shape;
        for (size_t c : q.child_pieces) {
            DivisorNode ch = emit(c);
            const PeelPiece& cq = pieces[c];
            auto pos = std::find(q.preorder_ids.begin(), q.preorder_ids.end(), cq.attach_id);
            check_internal(pos != q.preorder_ids.end(), "attachment vertex not in parent piece");
            ch.glue_at = (size_t)(pos - q.preorder_ids.begin());
            n.children.push_back(std::move(ch));
        }
        return n;
    };
    out.root = emit(root_piece);
    return out;
}

std::string canonical_tree_string(const OrderGraph& g) {
    g.validate();
    check_input(g.is_tree(), "canonical form is defined for order trees");
    std::map<std::string, std::vector<std::pair<std::string, u64>>> adj;   // vertex -> (other, edge order)
    std::map<std::string, u64> ord;
    for (auto& v : g.vertices) ord[v.id] = v.order;
    for (auto& e : g.edges) {
        adj[e.from].push_back({e.to, e.order});
        adj[e.to].push_back({e.from, e.order});
    }
    std::function<std::string(const std::string&, const std::string&)> rec =
        [&](const std::string& at, const std::string& from) -> std::string {
            std::vector<std::string> parts;
            for (auto& [w, eo] : adj[at])
                if (w != from) parts.push_back("[" + std::to_string(eo) + rec(w, at) + "]");
            std::sort(parts.begin(), parts.end());
            std::string s = "(" + std::to_string(ord[at]);
            for (auto& q : parts) s += q;
            return s + ")";
        };
    std::string best;
    for (auto& v : g.vertices) {
        std::string s = rec(v.id, "");
        if (best.empty() || s < best) best = s;
    }
    return best;
}

std::string canonical_divisor_string(const DivisorTree& d, bool mask_root_label) {
    std::function<std::string(const DivisorNode&, bool)> rec =
        [&](const DivisorNode& n, bool is_root) -> std::string {
            std::vector<std::string> parts;
            for (auto& ch : n.children) parts.push_back(rec(ch, false));
            std::sort(parts.begin(), parts.end());
            std::string s = "{";
            s += (is_root && mask_root_label) ? "*" : std::to_string(n.label);
            s += ":" + n.shape.canonical();
            for (auto& q : parts) s += q;
            return s + "}";
        };
    return "order=" + std::to_string(mask_root_label ? 0 : d.root_order) + rec(d.root, true);
}

} // namespace fsgc
