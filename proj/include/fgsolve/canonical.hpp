#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fgsolve {

/// Children lists in compressed form: the children of v are
/// `child[offset[v] .. offset[v+1])`.
struct ForestView
{
    std::span<const std::uint32_t> offset;
    std::span<const std::uint32_t> child;
};

/// Ranks of rooted subtrees reachable from `roots`.
///
/// Two subtrees get the same rank iff they are isomorphic, and ranks order
/// subtrees by (height, sorted child ranks) so the order is the same in every
/// forest. Unreachable nodes get rank UINT32_MAX.
auto subtree_ranks(const ForestView & f, std::span<const std::uint32_t> roots) -> std::vector<std::uint32_t>;

/// Balanced-parenthesis code of the subtree at `root`, children in rank order.
auto tree_code(const ForestView & f, std::span<const std::uint32_t> rank, std::uint32_t root) -> std::string;

/// Start index of the lexicographically least rotation (Booth).
auto least_rotation(std::span<const std::uint32_t> seq) -> std::size_t;

} // namespace fgsolve
