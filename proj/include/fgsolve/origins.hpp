#pragma once

#include <fgsolve/functional_graph.hpp>

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

namespace fgsolve {

/// Origin label: the creation index of an X node, or minus_one.
using Label = std::int64_t;
inline constexpr Label minus_one = -1;

enum class HeightRule
{
    none,
    at_most,
    exactly,
};

/// One B node that an origin must receive: its indegree, and the bound on
/// its height implied by the A node it pairs with.
struct Requirement
{
    std::uint64_t degree = 0;
    HeightRule rule = HeightRule::none;
    std::uint32_t height = 0;
};

struct Candidate
{
    Node node = 0;
    std::uint64_t indegree = 0;
    std::uint32_t height = 0;
};

struct OriginConstraint
{
    Label origin = 0;
    std::vector<Requirement> required;
};

/// B nodes that share a parent origin, to be split among the origins below it.
struct AssignmentGroup
{
    std::vector<Candidate> candidates;
    std::vector<OriginConstraint> origins;
};

struct OriginAssignment
{
    std::uint32_t layer = 0;
    /// (B node, origin), ascending by node.
    std::vector<std::pair<Node, Label>> mapping;
};

/// Whether a B node of the given height may stand for the requirement.
auto height_filter(std::uint32_t candidate_height, const Requirement & requirement) -> bool;

/// Lazy, lexicographic enumeration of every complete origin assignment.
///
/// Each group is split into independent blocks by indegree; a block hands
/// its candidates (ascending) to its origins (ascending) one combination at a
/// time. Blocks of zero-indegree nodes are assigned once, without branching.
class AssignmentEnumerator
{
public:
    AssignmentEnumerator(std::vector<AssignmentGroup> groups, bool height_pruning, std::uint32_t layer = 0);
    ~AssignmentEnumerator();
    AssignmentEnumerator(AssignmentEnumerator &&) noexcept;
    auto operator=(AssignmentEnumerator &&) noexcept -> AssignmentEnumerator &;

    /// Writes the next assignment; false once the stream is exhausted.
    auto next(OriginAssignment & out) -> bool;
    /// Number of assignments yielded so far.
    [[nodiscard]] auto produced() const -> std::uint64_t { return produced_; }

private:
    struct Block;
    std::vector<std::unique_ptr<Block>> blocks_;
    std::uint32_t layer_ = 0;
    bool feasible_ = true;
    bool started_ = false;
    bool done_ = false;
    std::uint64_t produced_ = 0;
};

/// Materialises the whole stream (tests and small inputs only).
auto enumerate_assignments(std::vector<AssignmentGroup> groups, bool height_pruning, std::uint32_t layer = 0)
    -> std::vector<OriginAssignment>;

} // namespace fgsolve
