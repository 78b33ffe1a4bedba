#include <doctest.h>

#include "fixtures.hpp"
#include "random_graphs.hpp"

#include <fgsolve/origins.hpp>
#include <fgsolve/solve_abstraction.hpp>
#include <fgsolve/solve_graph.hpp>

#include <map>
#include <set>

using namespace fgsolve;

namespace {

auto codes(const SolveResult & r) -> std::set<std::string>
{
    std::set<std::string> out;
    for (const auto & s : r.solutions)
        out.insert(canonical_form(s.x));
    return out;
}

auto origins_of(const OriginAssignment & a, const std::vector<Node> & nodes) -> std::vector<Label>
{
    std::map<Node, Label> m(a.mapping.begin(), a.mapping.end());
    std::vector<Label> out;
    for (auto v : nodes)
        out.push_back(m.at(v));
    return out;
}

// Layer 1 of the height figure, written out from the degree lists.
auto height_layer_groups() -> std::vector<AssignmentGroup>
{
    GraphStructure sb(fixtures::height_b());
    AssignmentGroup g;
    for (Node w = 1; w <= 8; ++w)
        g.candidates.push_back({w, sb.indegree(w), sb.height(w)});
    g.origins.push_back({minus_one, {{3, HeightRule::exactly, 1}, {6, HeightRule::exactly, 2}}});
    g.origins.push_back({1, {{2, HeightRule::at_most, 1}, {4, HeightRule::at_most, 2}, {6, HeightRule::none, 0}}});
    g.origins.push_back({2, {{1, HeightRule::at_most, 1}, {2, HeightRule::at_most, 2}, {3, HeightRule::none, 0}}});
    return {g};
}

// Every map from the positive-degree candidates to origins that meets the
// degree counts and admits a height matching.
auto brute_force_count(const AssignmentGroup & g, bool pruning) -> std::size_t
{
    std::vector<Candidate> active;
    for (const auto & c : g.candidates)
        if (c.indegree > 0)
            active.push_back(c);
    const auto k = g.origins.size();
    std::vector<std::size_t> pick(active.size(), 0);
    std::size_t count = 0;
    while (true) {
        bool ok = true;
        for (std::size_t o = 0; o < k && ok; ++o) {
            std::vector<Requirement> reqs;
            for (const auto & q : g.origins[o].required)
                if (q.degree > 0)
                    reqs.push_back(q);
            std::vector<const Candidate *> mine;
            for (std::size_t c = 0; c < active.size(); ++c)
                if (pick[c] == o)
                    mine.push_back(&active[c]);
            if (mine.size() != reqs.size()) {
                ok = false;
                break;
            }
            // Try every bijection; sizes here are tiny.
            std::vector<std::size_t> perm(reqs.size());
            for (std::size_t t = 0; t < perm.size(); ++t)
                perm[t] = t;
            bool any = false;
            do {
                bool fits = true;
                for (std::size_t t = 0; t < perm.size() && fits; ++t) {
                    const auto & q = reqs[perm[t]];
                    fits = mine[t]->indegree == q.degree && (! pruning || height_filter(mine[t]->height, q));
                }
                any = any || fits;
            } while (! any && std::next_permutation(perm.begin(), perm.end()));
            ok = any;
        }
        if (ok)
            ++count;
        std::size_t t = 0;
        while (t < pick.size() && ++pick[t] == k)
            pick[t++] = 0;
        if (t == pick.size())
            break;
    }
    return count;
}

} // namespace

TEST_CASE("height filter rules")
{
    CHECK(height_filter(5, {1, HeightRule::none, 0}));
    CHECK(height_filter(1, {1, HeightRule::at_most, 1}));
    CHECK_FALSE(height_filter(2, {1, HeightRule::at_most, 1}));
    CHECK(height_filter(2, {1, HeightRule::exactly, 2}));
    CHECK_FALSE(height_filter(1, {1, HeightRule::exactly, 2}));
    // Leaves pass any upper bound.
    CHECK(height_filter(0, {0, HeightRule::at_most, 0}));
}

TEST_CASE("height figure: eight assignments, one after pruning")
{
    const auto all = enumerate_assignments(height_layer_groups(), false);
    CHECK(all.size() == 8);
    const auto pruned = enumerate_assignments(height_layer_groups(), true);
    REQUIRE(pruned.size() == 1);
    CHECK(origins_of(pruned[0], {1, 2, 3, 4, 5, 6, 7, 8}) == std::vector<Label>{1, 2, -1, 1, 2, -1, 1, 2});

    // w6 (node 7) never takes -1, and w1 (node 2) never takes origin 1.
    for (const auto & a : enumerate_assignments(height_layer_groups(), true)) {
        const auto o = origins_of(a, {2, 7});
        CHECK(o[0] != 1);
        CHECK(o[1] != minus_one);
    }
}

TEST_CASE("the solver offers the same layer-one assignments")
{
    const auto a = fixtures::height_a();
    const auto b = fixtures::height_b();
    CHECK(layer_assignments(a, b, 1, 0, 1, false).size() == 8);
    const auto pruned = layer_assignments(a, b, 1, 0, 1, true);
    REQUIRE(pruned.size() == 1);
    CHECK(origins_of(pruned[0], {1, 2, 3, 4, 5, 6, 7, 8}) == std::vector<Label>{1, 2, -1, 1, 2, -1, 1, 2});
    CHECK(pruned[0].layer == 1);
}

TEST_CASE("algorithm example: two assignments on the red layer")
{
    // v0..v3 are nodes 6..9; both orders of the two degree-2 nodes remain.
    const auto offered = layer_assignments(fixtures::algexp_a(), fixtures::algexp_b(), 1, 0, 2, true);
    REQUIRE(offered.size() == 2);
    std::set<std::vector<Label>> seen;
    for (const auto & a : offered)
        seen.insert(origins_of(a, {6, 7, 8, 9}));
    CHECK(seen == std::set<std::vector<Label>>{{3, 3, 4, 4}, {3, 4, 3, 4}});
    // The degree-2 node under origin 2 and the leaves of the -1 part are forced.
    for (const auto & a : offered) {
        CHECK(origins_of(a, {10, 11}) == std::vector<Label>{5, 5});
    }
}

TEST_CASE("enumeration order and edge cases")
{
    SUBCASE("lexicographic by candidate combination")
    {
        AssignmentGroup g;
        for (Node w = 0; w < 4; ++w)
            g.candidates.push_back({w, 1, 0});
        g.origins.push_back({7, {{1}, {1}}});
        g.origins.push_back({8, {{1}, {1}}});
        const auto all = enumerate_assignments({g}, true);
        REQUIRE(all.size() == 6);
        CHECK(origins_of(all[0], {0, 1, 2, 3}) == std::vector<Label>{7, 7, 8, 8});
        CHECK(origins_of(all[1], {0, 1, 2, 3}) == std::vector<Label>{7, 8, 7, 8});
        CHECK(origins_of(all[5], {0, 1, 2, 3}) == std::vector<Label>{8, 8, 7, 7});
    }
    SUBCASE("leaves are placed once")
    {
        AssignmentGroup g;
        for (Node w = 0; w < 4; ++w)
            g.candidates.push_back({w, 0, 0});
        g.origins.push_back({1, {{0}, {0}}});
        g.origins.push_back({2, {{0}, {0}}});
        CHECK(enumerate_assignments({g}, true).size() == 1);
    }
    SUBCASE("degree mismatch yields nothing")
    {
        AssignmentGroup g;
        g.candidates.push_back({0, 2, 0});
        g.origins.push_back({1, {{3}}});
        CHECK(enumerate_assignments({g}, false).empty());
    }
    SUBCASE("independent groups multiply")
    {
        AssignmentGroup g;
        g.candidates = {{0, 1, 0}, {1, 1, 0}};
        g.origins = {{1, {{1}}}, {2, {{1}}}};
        auto h = g;
        h.candidates = {{5, 1, 0}, {6, 1, 0}};
        h.origins = {{3, {{1}}}, {4, {{1}}}};
        AssignmentEnumerator e({g, h}, true, 4);
        OriginAssignment a;
        std::size_t n = 0;
        while (e.next(a)) {
            ++n;
            CHECK(a.layer == 4);
            CHECK(a.mapping.size() == 4);
        }
        CHECK(n == 4);
        CHECK(e.produced() == 4);
        CHECK_FALSE(e.next(a));
    }
}

TEST_CASE("enumeration agrees with brute force on random groups")
{
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        AssignmentGroup g;
        const std::size_t origins = 1 + rng() % 3;
        Node next = 0;
        for (std::size_t o = 0; o < origins; ++o) {
            OriginConstraint c{static_cast<Label>(o == 0 ? minus_one : static_cast<Label>(o)), {}};
            const std::size_t k = rng() % 3;
            for (std::size_t j = 0; j < k; ++j) {
                const std::uint64_t d = rng() % 3;
                const auto rule = static_cast<HeightRule>(rng() % 3);
                // A leaf pairs with a leaf of A, so its required height is 0.
                c.required.push_back({d, rule, d == 0 ? 0U : static_cast<std::uint32_t>(rng() % 3)});
                g.candidates.push_back({next++, d, d == 0 ? 0U : static_cast<std::uint32_t>(1 + rng() % 3)});
            }
            g.origins.push_back(std::move(c));
        }
        std::shuffle(g.candidates.begin(), g.candidates.end(), rng);
        for (bool pruning : {false, true}) {
            const auto all = enumerate_assignments({g}, pruning);
            const auto expected = brute_force_count(g, pruning);
            CHECK(all.size() == expected);
            std::set<std::vector<std::pair<Node, Label>>> distinct;
            for (const auto & a : all)
                distinct.insert(a.mapping);
            CHECK(distinct.size() == all.size());
        }
    }
}

TEST_CASE("figures are reconstructed")
{
    SUBCASE("algorithm example")
    {
        const auto r = solve_graph(fixtures::algexp_a(), fixtures::algexp_b(), 1);
        REQUIRE(r.solutions.size() == 1);
        CHECK(isomorphic(r.solutions[0].x, fixtures::algexp_x()));
    }
    SUBCASE("height example")
    {
        for (bool pruning : {false, true}) {
            SolveOptions o;
            o.height_pruning = pruning;
            const auto r = solve_graph(fixtures::height_a(), fixtures::height_b(), 1, o);
            REQUIRE(r.solutions.size() == 1);
            CHECK(isomorphic(r.solutions[0].x, fixtures::height_x()));
        }
    }
    SUBCASE("three solutions")
    {
        const auto r = solve_graph(fixtures::multi_a(), fixtures::multi_b(), 4);
        CHECK(r.solutions.size() == 3);
        CHECK(codes(r) == std::set<std::string>{canonical_form(fixtures::multi_x1()),
                                                canonical_form(fixtures::multi_x2()),
                                                canonical_form(fixtures::multi_x3())});
        CHECK(codes(solve_graph_naive(fixtures::multi_a(), fixtures::multi_b(), 4)) == codes(r));
        for (const auto & s : r.solutions)
            CHECK(matching_components(fixtures::multi_a(), s.x, fixtures::multi_b()).size() == 1);
    }
}

TEST_CASE("incompatible cycle lengths and disconnected inputs")
{
    CHECK(solve_graph(fixtures::multi_a(), fixtures::multi_b(), 3).solutions.empty());
    CHECK(solve_graph(fixtures::multi_a(), fixtures::multi_b(), 0).solutions.empty());
    CHECK_THROWS_AS(solve_graph(fixtures::figure1_graph(), fixtures::multi_b(), 4), std::invalid_argument);
    CHECK_THROWS_AS(solve_graph_naive(fixtures::multi_a(), fixtures::figure1_graph(), 4), std::invalid_argument);
}

TEST_CASE("a past deadline reports a timeout")
{
    SolveOptions o;
    o.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
    const auto r = solve_graph(fixtures::algexp_a(), fixtures::algexp_b(), 1, o);
    CHECK(r.stats.timed_out);
    CHECK(r.solutions.empty());
    CHECK(solve_graph_naive(fixtures::algexp_a(), fixtures::algexp_b(), 1, o).stats.timed_out);
}

TEST_CASE("algorithm names")
{
    CHECK(parse_algorithm("naive") == Algorithm::naive);
    CHECK(parse_algorithm("exact") == Algorithm::exact);
    CHECK(parse_algorithm("exact+height") == Algorithm::exact_height);
    CHECK(algorithm_name(Algorithm::exact_height) == "exact+height");
    CHECK_THROWS_AS(parse_algorithm("fast"), std::invalid_argument);
}

TEST_CASE("matching components of a product")
{
    const auto a = FunctionalGraph::cycle(2);
    const auto x = FunctionalGraph::cycle(2);
    // Two 2-cycles: (a0, x0) and (a1, x0) lie in different components.
    CHECK(matching_components(a, x, FunctionalGraph::cycle(2)) == std::vector<std::size_t>{0, 1});
    CHECK(matching_components(a, x, FunctionalGraph::cycle(4)).empty());
}

TEST_CASE("exact, pruned and naive solvers agree on random products")
{
    std::mt19937_64 rng(43);
    int checked = 0;
    for (int trial = 0; trial < 250; ++trial) {
        const std::size_t pa = 1 + rng() % 3;
        const std::size_t px = 1 + rng() % 3;
        const auto a = testing_support::random_connected(rng, pa + rng() % 5, pa);
        const auto x = testing_support::random_connected(rng, px + rng() % 5, px);
        GraphStructure sa(a);
        GraphStructure sx(x);
        const auto p = direct_product(a, x);
        const auto b =
            testing_support::relabel(rng, extract_component(p, sa.component(0).cycle[0] * static_cast<Node>(x.size()) +
                                                                   sx.component(0).cycle[0])
                                              .graph);
        const auto pb = cycle_length(b);

        SolveOptions plain;
        plain.height_pruning = false;
        const auto exact = solve_graph(a, b, px, plain);
        const auto pruned = solve_graph(a, b, px);
        const auto naive = solve_graph_naive(a, b, px);
        CHECK(codes(exact) == codes(pruned));
        CHECK(codes(exact) == codes(naive));
        CHECK(codes(exact).count(canonical_form(x)) == 1);
        CHECK(exact.solutions.size() <= pa);
        CHECK(pruned.stats.explored_assignments <= exact.stats.explored_assignments);
        for (const auto & s : exact.solutions)
            CHECK_FALSE(matching_components(a, s.x, b).empty());

        SolveOptions par;
        par.parallel = true;
        CHECK(codes(solve_graph(a, b, px, par)) == codes(pruned));
        SolveOptions first;
        first.first_only = true;
        CHECK(solve_graph(a, b, px, first).solutions.size() == 1);

        CHECK(codes(solve_all(a, b, Algorithm::exact_height)) == codes(solve_all(a, b, Algorithm::naive)));
        CHECK(pb == std::lcm(pa, px));
        ++checked;
    }
    CHECK(checked == 250);
}
