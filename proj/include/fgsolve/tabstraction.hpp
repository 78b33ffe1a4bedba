#pragma once

#include <fgsolve/functional_graph.hpp>
#include <fgsolve/multiset.hpp>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace fgsolve {

/// Node sets T_{r,h}: the transient nodes at depth h whose in-tree hangs
/// from the cyclic node cycle[r]. Rows are cycle positions, layers h >= 1.
class LayerMatrix
{
public:
    LayerMatrix() = default;
    LayerMatrix(std::size_t rows, std::uint32_t h_max);

    [[nodiscard]] auto rows() const -> std::size_t { return cells_.size(); }
    [[nodiscard]] auto h_max() const -> std::uint32_t { return h_max_; }
    /// Empty outside 1..h_max.
    [[nodiscard]] auto cell(std::size_t r, std::uint32_t h) const -> const std::vector<Node> &;
    auto cell_mut(std::size_t r, std::uint32_t h) -> std::vector<Node> &;

private:
    std::vector<std::vector<std::vector<Node>>> cells_;
    std::uint32_t h_max_ = 0;
};

auto layer_matrix(const GraphStructure & s, const ComponentView & c) -> LayerMatrix;

/// Matrix of indegree multisets. cell(r, 1) = [indegree of cycle[r]];
/// cell(r, h) = indegrees of LayerMatrix cell (r, h-1) for h > 1.
/// Cells outside the stored range read as empty.
class TAbstraction
{
public:
    TAbstraction() = default;
    TAbstraction(std::size_t rows, std::size_t columns);
    /// Rows given as lists of cells for h = 1, 2, ...; short rows are padded.
    explicit TAbstraction(const std::vector<std::vector<Multiset>> & rows);

    [[nodiscard]] auto rows() const -> std::size_t { return cells_.size(); }
    [[nodiscard]] auto columns() const -> std::size_t { return columns_; }

    /// h is 1-based.
    [[nodiscard]] auto cell(std::size_t r, std::size_t h) const -> const Multiset &;
    /// Row index taken modulo rows().
    [[nodiscard]] auto cell_mod(std::int64_t r, std::size_t h) const -> const Multiset &;
    /// Grows the column count when h > columns().
    void set(std::size_t r, std::size_t h, Multiset m);
    void resize_columns(std::size_t columns);
    /// Drops trailing columns whose cells are all empty.
    void trim();
    /// Row r of the result is row (r + k) mod rows() of this matrix.
    [[nodiscard]] auto rotated(std::size_t k) const -> TAbstraction;

    /// One row per line, columns padded to a common width.
    [[nodiscard]] auto to_string() const -> std::string;
    /// Rows separated by ';' or newlines, cells as bracket lists ("[]" or "∅" when empty).
    static auto parse(const std::string & text) -> TAbstraction;

    /// Equal row count and equal cells, treating missing columns as empty.
    friend auto operator==(const TAbstraction & a, const TAbstraction & b) -> bool;

private:
    std::vector<std::vector<Multiset>> cells_;
    std::size_t columns_ = 0;
};

auto t_abstraction(const GraphStructure & s, const ComponentView & c) -> TAbstraction;
/// Abstraction of a connected graph; throws std::invalid_argument otherwise.
auto t_abstraction(const FunctionalGraph & g) -> TAbstraction;
/// One abstraction per component, sorted by rendering.
auto t_abstractions(const FunctionalGraph & g) -> std::vector<TAbstraction>;

/// Equality up to a cyclic rotation of the rows.
auto equal_up_to_rotation(const TAbstraction & a, const TAbstraction & b) -> bool;

/// M1 = sum over j in [0, h) of TA[(r - j + i) mod pA, h - j].
auto m1_term(const TAbstraction & ta, std::size_t r, std::size_t h, std::size_t i) -> Multiset;
/// M2 = TA[(r + i) mod pA, h] (x) sum over j in [1, h) of TX[(r - j) mod pX, h - j].
auto m2_term(const TAbstraction & ta, const TAbstraction & tx, std::size_t r, std::size_t h, std::size_t i)
    -> Multiset;
/// TX[r mod pX, h] (x) M1 + M2: the cell (r, h) of the aligned product.
auto product_cell(const TAbstraction & ta, const TAbstraction & tx, std::size_t r, std::size_t h, std::size_t i)
    -> Multiset;

/// True iff TB is exactly the aligned product of TA and TX at alignment i.
auto abstraction_product_check(const TAbstraction & ta, const TAbstraction & tx, const TAbstraction & tb,
                               std::size_t i) -> bool;

} // namespace fgsolve
