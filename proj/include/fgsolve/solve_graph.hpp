#pragma once

#include <fgsolve/functional_graph.hpp>
#include <fgsolve/origins.hpp>

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fgsolve {

enum class Algorithm
{
    naive,
    exact,
    exact_height,
};

auto algorithm_name(Algorithm a) -> std::string;
/// Accepts "naive", "exact" and "exact+height"; throws std::invalid_argument otherwise.
auto parse_algorithm(const std::string & name) -> Algorithm;

struct SolveOptions
{
    bool height_pruning = true;
    /// Stop at the first solution found.
    bool first_only = false;
    /// Search alignments concurrently.
    bool parallel = false;
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct SolveStats
{
    std::uint64_t explored_assignments = 0;
    std::uint64_t backtracks = 0;
    bool timed_out = false;
};

struct GraphSolution
{
    std::size_t alignment = 0;
    FunctionalGraph x;
};

struct SolveResult
{
    /// Pairwise non-isomorphic, by ascending alignment.
    std::vector<GraphSolution> solutions;
    SolveStats stats;
};

/// Connected X with cycle length p_x such that some component of A x X is
/// isomorphic to B. X is built layer by layer, and every B node is tagged
/// with the X node it projects to. A and B must be connected.
auto solve_graph(const FunctionalGraph & a, const FunctionalGraph & b, std::size_t p_x,
                 const SolveOptions & options = {}) -> SolveResult;

/// Reference solver: tries every wiring of every abstraction solution.
auto solve_graph_naive(const FunctionalGraph & a, const FunctionalGraph & b, std::size_t p_x,
                       const SolveOptions & options = {}) -> SolveResult;

/// Dispatch on the algorithm; exact_height forces height pruning on, exact forces it off.
auto solve(const FunctionalGraph & a, const FunctionalGraph & b, std::size_t p_x, Algorithm algorithm,
           SolveOptions options = {}) -> SolveResult;

/// Union over every compatible cycle length, deduplicated up to isomorphism.
auto solve_all(const FunctionalGraph & a, const FunctionalGraph & b, Algorithm algorithm,
               const SolveOptions & options = {}) -> SolveResult;

/// Every origin assignment offered for B layer `layer` (>= 1) at the last
/// point the search reached that layer, i.e. on the path of the solution
/// when one exists.
auto layer_assignments(const FunctionalGraph & a, const FunctionalGraph & b, std::size_t p_x, std::size_t alignment,
                       std::uint32_t layer, bool height_pruning) -> std::vector<OriginAssignment>;

/// For each component of A x X isomorphic to B, the least s such that the
/// component holds (cycle(A)[s], cycle(X)[0]). A and X must be connected.
auto matching_components(const FunctionalGraph & a, const FunctionalGraph & x, const FunctionalGraph & b)
    -> std::vector<std::size_t>;

} // namespace fgsolve
