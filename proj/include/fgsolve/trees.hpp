#pragma once

#include <fgsolve/functional_graph.hpp>

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace fgsolve {

/// Finite in-tree: every edge points from a node to its parent.
///
/// Nodes are numbered level by level, so parent[v] < v for every v except
/// the root 0, whose parent is itself.
struct InTree
{
    std::vector<Node> parent;
    std::vector<std::uint32_t> level;
    /// Where each node comes from: a graph node for unrolls, the pair index
    /// i * |F2| + j for products.
    std::vector<Node> label;

    [[nodiscard]] auto size() const -> std::size_t { return parent.size(); }
    [[nodiscard]] auto height() const -> std::uint32_t { return level.empty() ? 0 : level.back(); }
    /// Nodes of level t, ascending.
    [[nodiscard]] auto nodes_at(std::uint32_t t) const -> std::vector<Node>;
};

/// The first t levels of the unroll of G from v: level i + 1 holds one node
/// (u, i + 1) for every predecessor u of a level-i node. Throws NotCyclic if
/// v is transient.
auto unroll_cut(const FunctionalGraph & g, Node v, std::uint32_t t) -> InTree;

/// Levels 0..t of an in-tree.
auto cut(const InTree & f, std::uint32_t t) -> InTree;

/// Layer-by-layer direct product rooted at (root1, root2).
auto intree_product(const InTree & f1, const InTree & f2) -> InTree;

/// Canonical code; equal iff the in-trees are isomorphic.
auto intree_code(const InTree & f) -> std::string;
auto intree_isomorphic(const InTree & a, const InTree & b) -> bool;

/// Closes the unroll of G from v into a cycle of length rho: the spine
/// v_1 .. v_rho keeps its finite side branches, the edge from v_{rho+1} is
/// dropped and the root is sent to v_rho. Throws NotCyclic if v is transient.
auto roll_unroll(const FunctionalGraph & g, Node v, std::uint32_t rho) -> FunctionalGraph;

/// Small directed graph for homomorphism counting.
struct Digraph
{
    std::size_t n = 0;
    std::vector<std::pair<Node, Node>> edges;
};

/// Edges point from child to parent; the root has no out-edge.
auto to_digraph(const InTree & f) -> Digraph;
/// Categorical (tensor) product; pair (i, j) is i * |h.n| + j.
auto tensor_product(const Digraph & g, const Digraph & h) -> Digraph;
/// Every digraph on n labelled nodes, self-loops allowed (2^(n*n) of them).
auto all_digraphs(std::size_t n) -> std::vector<Digraph>;

/// Number of edge-preserving maps V_G -> V_F. Throws SizeLimit when
/// |V_F|^|V_G| exceeds `budget`.
auto hom_count(const Digraph & g, const Digraph & f, std::uint64_t budget = std::uint64_t{1} << 24) -> std::uint64_t;

/// Graphviz rendering with edges toward the root.
auto to_dot(const InTree & f, const std::string & name = "T") -> std::string;

} // namespace fgsolve
