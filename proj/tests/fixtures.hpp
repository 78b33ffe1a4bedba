#pragma once

// Graphs transcribed from the figures used as golden fixtures.

#include <fgsolve/functional_graph.hpp>

#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fixtures {

using fgsolve::FunctionalGraph;
using fgsolve::Node;

/// Build a graph from (node, successor) pairs on nodes 0..n-1.
inline auto from_edges(std::size_t n, std::initializer_list<std::pair<Node, Node>> edges) -> FunctionalGraph
{
    std::vector<Node> succ(n, 0);
    std::vector<bool> set(n, false);
    for (auto [u, v] : edges) {
        succ[u] = v;
        set[u] = true;
    }
    for (bool s : set)
        if (! s)
            throw std::logic_error("fixture leaves a node without successor");
    return FunctionalGraph(std::move(succ));
}

/// Figure "tabs": v1..v29 mapped to 0..28.
inline auto tabs_graph() -> FunctionalGraph
{
    return FunctionalGraph({
        1, 2, 3, 0,                 // v1..v4: the cycle
        0, 1, 1, 2, 2, 3, 3, 3, 3,  // v5..v13
        4, 5, 5, 6, 6, 7, 8, 11, 12, // v14..v22
        14, 15, 16, 18, 18, 18, 19, // v23..v29
    });
}

/// Figure 1: a 2-cycle component (nodes 0..6) and a 3-cycle component (7..17).
inline auto figure1_graph() -> FunctionalGraph
{
    return FunctionalGraph({
        1, 0, 0, 1, 1, 4, 4,
        8, 9, 7, 7, 8, 8, 9, 9, 10, 10, 11,
    });
}

/// Figure "2dds_1abs": two non-isomorphic graphs with equal t-abstractions.
inline auto two_dds_a() -> FunctionalGraph
{
    return FunctionalGraph({1, 0, 0, 0, 2, 3, 3, 5, 1, 1, 1, 9, 9});
}

inline auto two_dds_b() -> FunctionalGraph
{
    return FunctionalGraph({1, 0, 0, 0, 2, 3, 3, 4, 1, 1, 1, 9, 9});
}

/// Figure "prod": G with nodes 1..6 as 0..5, and G' with nodes a..i as 0..8.
inline auto prod_g() -> FunctionalGraph
{
    return FunctionalGraph({1, 0, 0, 0, 2, 1});
}

inline auto prod_g_prime() -> FunctionalGraph
{
    return FunctionalGraph({1, 2, 3, 0, 0, 4, 5, 3, 3});
}

/// The polynomial worked example: T^A (2 rows) and T^B (6 rows).
inline constexpr const char * poly_ta = "[2] [0] []; [5] [0,0,0,1] [0]";
inline constexpr const char * poly_tb =
    "[4] [0,0,10] [2] [1] [0,0,0,0,0,0,0,0] [0,0];"
    "[20] [0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,2] [0,0] [] [] [];"
    "[6] [0,0,0,0,5] [0,0,0,0,0] [] [] [];"
    "[10] [0,0,0,0,0,0,2,3,4] [0,0,0,0,0,0,0,0,5] [0,0,0,2,4] [0,0,0,0,0,5] [0,0,0,0,0];"
    "[8] [0,0,0,0,0,0,0] [] [] [] [];"
    "[15] [0,0,0,0,0,0,0,0,0,0,0,1,2,4] [0,0,0,0,0,0,0] [] [] []";
/// T^B with row 0, columns 3-6 recomputed from the aligned product of poly_ta and poly_tx.
inline constexpr const char * poly_tb_consistent =
    "[4] [0,0,10] [0,0,0,0,0,0,0,0,1,2] [0,0,10] [0,0,0,0,0,0,0,0,1,2] [0,0,0];"
    "[20] [0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,2] [0,0] [] [] [];"
    "[6] [0,0,0,0,5] [0,0,0,0,0] [] [] [];"
    "[10] [0,0,0,0,0,0,2,3,4] [0,0,0,0,0,0,0,0,5] [0,0,0,2,4] [0,0,0,0,0,5] [0,0,0,0,0];"
    "[8] [0,0,0,0,0,0,0] [] [] [] [];"
    "[15] [0,0,0,0,0,0,0,0,0,0,0,1,2,4] [0,0,0,0,0,0,0] [] [] []";
inline constexpr const char * poly_tx = "[2] [2] [0,1] [2] [0,1] [0]; [4] [0,0,0] [] [] [] []; [3] [0,1] [0] [] [] []";

/// Figure "ex_multiplesolutions": a 4-cycle with beards given per cyclic node.
inline auto bearded_cycle(std::initializer_list<std::size_t> beards) -> FunctionalGraph
{
    const auto p = beards.size();
    std::vector<Node> succ;
    for (std::size_t k = 0; k < p; ++k)
        succ.push_back(static_cast<Node>((k + 1) % p));
    std::size_t k = 0;
    for (auto b : beards) {
        for (std::size_t j = 0; j < b; ++j)
            succ.push_back(static_cast<Node>(k));
        ++k;
    }
    return FunctionalGraph(std::move(succ));
}

inline auto multi_a() -> FunctionalGraph { return bearded_cycle({0, 0, 1, 0}); }
inline auto multi_b() -> FunctionalGraph { return bearded_cycle({2, 1, 1, 1}); }
inline auto multi_x1() -> FunctionalGraph { return bearded_cycle({2, 0, 1, 1}); }
inline auto multi_x2() -> FunctionalGraph { return bearded_cycle({2, 1, 0, 1}); }
inline auto multi_x3() -> FunctionalGraph { return bearded_cycle({2, 1, 1, 0}); }

/// Figure "ex_algexp": A is a fixed point with a 2-chain.
inline auto algexp_a() -> FunctionalGraph { return FunctionalGraph({0, 0, 1}); }

/// X: 0 cyclic; 1,2 -> 0; 3,4 -> 1; 5 -> 2; red layer 6,7 -> 3, 8 -> 4, 9 -> 5.
inline auto algexp_x() -> FunctionalGraph { return FunctionalGraph({0, 0, 0, 1, 1, 2, 3, 3, 4, 5}); }

/// B: root 0, layer 1 nodes 1..5, layer 2 nodes 6..17, layer 3 nodes 18..29.
inline auto algexp_b() -> FunctionalGraph
{
    std::vector<Node> succ{0, 0, 0, 0, 0, 0};
    for (Node p : {0, 0, 0, 0, 1, 1, 2, 2, 2, 3, 3, 4})
        succ.push_back(1 + p);
    for (Node p : {0, 0, 0, 0, 1, 1, 2, 2, 3, 4, 4, 5})
        succ.push_back(6 + p);
    return FunctionalGraph(std::move(succ));
}

/// Figure "ex_algexp_height".
/// A: fixed point 0; a1 = 1 with child 3; a2 = 2 with children 4, 5; 6 -> 4.
inline auto height_a() -> FunctionalGraph { return FunctionalGraph({0, 0, 0, 1, 2, 2, 4}); }

/// X: fixed point 0; P = 1 with child Q = 3, Q with red child 4; R = 2 with children 5, 6.
inline auto height_x() -> FunctionalGraph { return FunctionalGraph({0, 0, 0, 1, 3, 2, 2}); }

/// B: fixed point 0 with eight children w0..w7 (nodes 1..8) as drawn.
inline auto height_b() -> FunctionalGraph
{
    std::vector<Node> succ(9, 0);
    const std::size_t degree[8] = {4, 2, 6, 2, 1, 3, 6, 3};
    std::vector<std::vector<Node>> kids(8);
    for (Node w = 0; w < 8; ++w)
        for (std::size_t k = 0; k < degree[w]; ++k) {
            kids[w].push_back(static_cast<Node>(succ.size()));
            succ.push_back(1 + w);
        }
    auto grow = [&](Node parent, std::size_t count) {
        for (std::size_t k = 0; k < count; ++k)
            succ.push_back(parent);
    };
    grow(kids[7][0], 3);
    grow(kids[7][1], 1);
    grow(kids[7][2], 2);
    grow(kids[2][0], 3);
    grow(kids[2][1], 1);
    grow(kids[2][2], 2);
    grow(kids[1][0], 1);
    return FunctionalGraph(std::move(succ));
}

/// Figure "ex_unroll": v1..v7 as 0..6; v1 <-> v2, v3 -> v1, v4, v5 -> v2, v6, v7 -> v5.
inline auto unroll_g() -> FunctionalGraph { return FunctionalGraph({1, 0, 0, 1, 1, 4, 4}); }

/// Figure "prod_unroll", left factor: v0..v5; v0 <-> v1, v2, v3 -> v0, v4 -> v1, v5 -> v3.
inline auto unroll_g1() -> FunctionalGraph { return FunctionalGraph({1, 0, 0, 0, 1, 3}); }

/// Right factor: u0..u6; u0 -> u2 -> u1 -> u0, u3, u4 -> u1, u5, u6 -> u2.
inline auto unroll_g2() -> FunctionalGraph { return FunctionalGraph({2, 0, 1, 1, 1, 2, 2}); }

/// Figure "eqroll", right: the 6-cycle with beards 2, 5, 8, 1, 8, 5 and three second-level beards.
inline auto eqroll_product() -> FunctionalGraph
{
    const std::size_t beards[6] = {2, 5, 8, 1, 8, 5};
    std::vector<Node> succ;
    for (Node k = 0; k < 6; ++k)
        succ.push_back((k + 1) % 6);
    std::vector<std::vector<Node>> beard(6);
    for (Node k = 0; k < 6; ++k)
        for (std::size_t j = 0; j < beards[k]; ++j) {
            beard[k].push_back(static_cast<Node>(succ.size()));
            succ.push_back(k);
        }
    for (int j = 0; j < 3; ++j)
        succ.push_back(beard[0][1]);
    for (int j = 0; j < 3; ++j)
        succ.push_back(beard[2][7]);
    succ.push_back(beard[4][5]);
    return FunctionalGraph(std::move(succ));
}

} // namespace fixtures
