#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace fgsolve {

using Node = std::uint32_t;

/// A finite endofunction stored as its successor array.
class FunctionalGraph
{
public:
    FunctionalGraph() = default;
    /// Throws std::invalid_argument if some successor is out of range.
    explicit FunctionalGraph(std::vector<Node> successor);

    /// The cycle 0 -> 1 -> ... -> p-1 -> 0.
    static auto cycle(std::size_t p) -> FunctionalGraph;

    [[nodiscard]] auto size() const -> std::size_t { return succ_.size(); }
    [[nodiscard]] auto empty() const -> bool { return succ_.empty(); }
    [[nodiscard]] auto successor(Node v) const -> Node { return succ_[v]; }
    [[nodiscard]] auto successors() const -> std::span<const Node> { return succ_; }

    friend auto operator==(const FunctionalGraph &, const FunctionalGraph &) -> bool = default;

private:
    std::vector<Node> succ_;
};

/// One weakly connected component.
///
/// `nodes` is ascending; `depth` and `height` run parallel to it.
/// `cycle[0]` is the smallest cyclic node and `cycle[k+1] = f(cycle[k])`.
struct ComponentView
{
    std::size_t id = 0;
    std::vector<Node> nodes;
    std::vector<Node> cycle;
    std::vector<std::uint32_t> depth;
    std::vector<std::uint32_t> height;
    std::uint32_t h_max = 0;
};

/// Derived structure of a functional graph: predecessors, cycles, depths,
/// heights and components. Built in linear time and immutable afterwards.
class GraphStructure
{
public:
    static constexpr std::uint32_t not_cyclic = UINT32_MAX;

    explicit GraphStructure(FunctionalGraph g);

    [[nodiscard]] auto graph() const -> const FunctionalGraph & { return g_; }
    [[nodiscard]] auto size() const -> std::size_t { return g_.size(); }
    [[nodiscard]] auto successor(Node v) const -> Node { return g_.successor(v); }

    [[nodiscard]] auto predecessors(Node v) const -> std::span<const Node>
    {
        return {pred_.data() + pred_offset_[v], pred_.data() + pred_offset_[v + 1]};
    }
    [[nodiscard]] auto indegree(Node v) const -> std::uint32_t { return pred_offset_[v + 1] - pred_offset_[v]; }
    /// Predecessors that are not on a cycle.
    [[nodiscard]] auto transient_predecessors(Node v) const -> std::vector<Node>;

    [[nodiscard]] auto is_cyclic(Node v) const -> bool { return depth_[v] == 0; }
    [[nodiscard]] auto depth(Node v) const -> std::uint32_t { return depth_[v]; }
    [[nodiscard]] auto height(Node v) const -> std::uint32_t { return height_[v]; }
    [[nodiscard]] auto component_of(Node v) const -> std::size_t { return comp_[v]; }
    /// Index of v in its component's cycle, or not_cyclic.
    [[nodiscard]] auto cycle_position(Node v) const -> std::uint32_t { return cycle_pos_[v]; }
    /// The cyclic node at the root of v's in-tree.
    [[nodiscard]] auto root_of(Node v) const -> Node { return root_[v]; }

    [[nodiscard]] auto components() const -> const std::vector<ComponentView> & { return components_; }
    [[nodiscard]] auto component(std::size_t k) const -> const ComponentView & { return components_[k]; }

private:
    FunctionalGraph g_;
    std::vector<std::uint32_t> pred_offset_;
    std::vector<Node> pred_;
    std::vector<std::uint32_t> depth_;
    std::vector<std::uint32_t> height_;
    std::vector<std::size_t> comp_;
    std::vector<std::uint32_t> cycle_pos_;
    std::vector<Node> root_;
    std::vector<ComponentView> components_;
};

auto components(const FunctionalGraph & g) -> std::vector<ComponentView>;
auto predecessors(const FunctionalGraph & g, Node v) -> std::vector<Node>;

/// Product node (i, j) is linearised as i * |b| + j. OpenMP-parallel.
auto direct_product(const FunctionalGraph & a, const FunctionalGraph & b) -> FunctionalGraph;
/// Single-threaded reference for direct_product.
auto direct_product_serial(const FunctionalGraph & a, const FunctionalGraph & b) -> FunctionalGraph;
/// Disjoint union; b's nodes are shifted by |a|.
auto fg_sum(const FunctionalGraph & a, const FunctionalGraph & b) -> FunctionalGraph;

auto is_connected(const FunctionalGraph & g) -> bool;
/// Cycle length of a connected graph; throws std::invalid_argument otherwise.
auto cycle_length(const FunctionalGraph & g) -> std::size_t;

/// A subgraph together with the original index of each of its nodes.
struct Subgraph
{
    FunctionalGraph graph;
    std::vector<Node> original;
};

/// Keeps the nodes of depth <= h, renumbered in ascending original order.
auto truncate(const FunctionalGraph & g, std::uint32_t h) -> FunctionalGraph;
auto truncate_with_map(const GraphStructure & s, std::uint32_t h) -> Subgraph;
/// The component containing v, renumbered in ascending original order.
auto extract_component(const FunctionalGraph & g, Node v) -> Subgraph;
auto extract_component(const GraphStructure & s, Node v) -> Subgraph;

/// Isomorphism-invariant code: equal iff the graphs are isomorphic.
auto canonical_form(const FunctionalGraph & g) -> std::string;
auto canonical_form(const GraphStructure & s) -> std::string;
/// Canonical code of a single component.
auto component_code(const GraphStructure & s, const ComponentView & c) -> std::string;
auto isomorphic(const FunctionalGraph & a, const FunctionalGraph & b) -> bool;

// `.fg` text format: optional '#' comment lines, then n, then n successors.
auto read_fg(std::istream & in) -> FunctionalGraph;
auto parse_fg(const std::string & text) -> FunctionalGraph;
auto load_fg(const std::string & path) -> FunctionalGraph;
void write_fg(std::ostream & out, const FunctionalGraph & g);
auto to_fg_string(const FunctionalGraph & g) -> std::string;
void save_fg(const std::string & path, const FunctionalGraph & g);

/// Graphviz rendering; cyclic nodes are drawn as double circles.
auto to_dot(const FunctionalGraph & g, const std::string & name = "G") -> std::string;

} // namespace fgsolve
