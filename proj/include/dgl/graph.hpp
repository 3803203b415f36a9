// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dgl {

using node_id = std::uint32_t;
using NodeFunction = std::vector<double>; // one real value per node

// Finite weighted graph (X, b). Edges are stored once per unordered pair
// with u < v and strictly positive weight; symmetry of b is implicit.
// Immutable after construction; safe for concurrent reads.
class WeightedGraph {
public:
    // Validates and normalizes the edge list: rejects self-loops,
    // non-positive or non-finite weights, duplicate pairs, ids >= node_count.
    WeightedGraph(std::size_t node_count,
                  std::vector<node_id> edge_u,
                  std::vector<node_id> edge_v,
                  std::vector<double> edge_w,
                  std::vector<std::string> labels = {});

    std::size_t node_count() const { return n_; }
    std::size_t edge_count() const { return edge_w_.size(); }
    bool is_tree() const { return component_count_ == 1 && edge_count() + 1 == n_; }

    // edge arrays, sorted lexicographically by (u, v), u < v
    const std::vector<node_id>& edge_u() const { return edge_u_; }
    const std::vector<node_id>& edge_v() const { return edge_v_; }
    const std::vector<double>& edge_w() const { return edge_w_; }

    // symmetric adjacency in CSR form
    const std::vector<std::size_t>& adj_ptr() const { return adj_ptr_; }
    const std::vector<node_id>& adj_node() const { return adj_node_; }
    const std::vector<double>& adj_weight() const { return adj_w_; }

    // Deg(x) = sum_y b(x,y); 0 for isolated nodes
    double weighted_degree(node_id x) const;
    const std::vector<double>& degrees() const { return degree_; }

    std::size_t component_count() const { return component_count_; }
    const std::vector<node_id>& component_labels() const { return component_; }
    bool is_connected() const { return component_count_ == 1; }
    // throws validation_error when disconnected; `what` names the caller
    void require_connected(const std::string& what) const;

    const std::vector<std::string>& labels() const { return labels_; }

    void check_function(const NodeFunction& f, const std::string& what) const;
    node_id check_node(std::uint64_t x, const std::string& what) const;

private:
    std::size_t n_ = 0;
    std::vector<node_id> edge_u_, edge_v_;
    std::vector<double> edge_w_;
    std::vector<std::size_t> adj_ptr_;
    std::vector<node_id> adj_node_;
    std::vector<double> adj_w_;
    std::vector<double> degree_;
    std::vector<node_id> component_;
    std::size_t component_count_ = 0;
    std::vector<std::string> labels_;
};

// Strictly positive node weights with finite total.
struct Measure {
    std::vector<double> values;
    double total = 0.0;

    static Measure from_values(std::vector<double> values); // validates, sums
    double of_node(node_id x) const { return values[x]; }
    // m(X \ U) for a node subset given as a sorted-or-not id list
    double total_outside(const std::vector<node_id>& inside) const;
};

// partition of node ids into connected components (parts sorted, stable order)
std::vector<std::vector<node_id>> connected_components(const WeightedGraph& g);

// --- file I/O -------------------------------------------------------------
//
// Graph file: UTF-8 text, one edge per line "u v w"; '#' starts a comment;
// an optional header "#nodes N" fixes the node count (otherwise 1 + max id).
// Weights survive a save/load round trip bit-exactly.
WeightedGraph load_graph(const std::string& path);
void save_graph(const WeightedGraph& g, const std::string& path);
WeightedGraph parse_graph(const std::string& text, const std::string& origin = "<string>");
std::string format_graph(const WeightedGraph& g);

// Measure file: one line per node "v m".
Measure load_measure(const std::string& path, std::size_t node_count);
// Function file: one line per node "v value".
NodeFunction load_function(const std::string& path, std::size_t node_count);
// Set file: one node id per line.
std::vector<node_id> load_node_set(const std::string& path, std::size_t node_count);

// --- graph families --------------------------------------------------------
//
// Nested finite truncations standing in for infinite graphs. Node numbering
// is stable across levels: the level-k node set is a prefix of the
// level-(k+1) node set and every level-k edge persists with equal weight.
// (The cycle family is the documented exception: its closing edge moves
// with the level, so it cannot nest.)
enum class FamilyKind {
    path,                        // level k: k+1 nodes, k unit edges
    cycle,                       // level k: k nodes on a ring (k >= 3)
    star,                        // level k: center 0 plus k leaves
    complete,                    // level k: K_k
    binary_tree,                 // level k: complete binary tree of depth k
    spherically_symmetric_tree,  // nodes in generation g have base^(g+1) children
    from_file,                   // a fixed graph loaded from `path`
};

struct ExhaustionFamily {
    FamilyKind kind = FamilyKind::path;
    double base = 4.0;          // branching base for spherically_symmetric_tree
    std::string path;           // for from_file
    node_id root = 0;           // distinguished root, present at every level

    static ExhaustionFamily parse(const std::string& name, double base = 4.0,
                                  const std::string& file = "");
    std::string name() const;
};

WeightedGraph generate(const ExhaustionFamily& family, std::uint32_t level);

// hop depth from the root and per-depth sphere sizes (used by measure rules)
std::vector<std::uint32_t> hop_depths(const WeightedGraph& g, node_id root);
std::vector<std::size_t> sphere_sizes(const std::vector<std::uint32_t>& depths);

} // namespace dgl
