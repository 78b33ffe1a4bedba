#pragma once

#include <fgsolve/tabstraction.hpp>

#include <cstddef>
#include <optional>
#include <vector>

namespace fgsolve {

struct AbstractionSolution
{
    std::size_t alignment = 0;
    TAbstraction tx;
};

/// All k with lcm(p_a, k) = p_b, ascending. Empty when p_a does not divide p_b.
auto compatible_cycle_lengths(std::size_t p_a, std::size_t p_b) -> std::vector<std::size_t>;

/// Reconstruct T^X column by column for one alignment; nullopt on contradiction.
/// Throws std::invalid_argument unless lcm(rows(ta), p_x) = rows(tb).
auto solve_abstraction_at(const TAbstraction & ta, const TAbstraction & tb, std::size_t p_x, std::size_t alignment)
    -> std::optional<TAbstraction>;

/// The first `columns` columns of T^X for one alignment, without the final
/// completeness checks; nullopt if a contradiction shows up in those columns.
auto solve_abstraction_prefix(const TAbstraction & ta, const TAbstraction & tb, std::size_t p_x,
                              std::size_t alignment, std::size_t columns) -> std::optional<TAbstraction>;

/// Every surviving (alignment, T^X), by ascending alignment. Alignments run in parallel.
auto solve_abstraction(const TAbstraction & ta, const TAbstraction & tb, std::size_t p_x)
    -> std::vector<AbstractionSolution>;
/// Single-threaded reference for solve_abstraction.
auto solve_abstraction_serial(const TAbstraction & ta, const TAbstraction & tb, std::size_t p_x)
    -> std::vector<AbstractionSolution>;

} // namespace fgsolve
