#include <doctest.h>

#include "fixtures.hpp"

#include <fgsolve/errors.hpp>
#include <fgsolve/oracle.hpp>
#include <fgsolve/solve_graph.hpp>

#include <algorithm>
#include <filesystem>
#include <set>

using namespace fgsolve;

namespace {

auto codes(const std::vector<FunctionalGraph> & gs) -> std::set<std::string>
{
    std::set<std::string> out;
    for (const auto & g : gs)
        out.insert(canonical_form(g));
    return out;
}

auto codes(const SolveResult & r) -> std::set<std::string>
{
    std::set<std::string> out;
    for (const auto & s : r.solutions)
        out.insert(canonical_form(s.x));
    return out;
}

} // namespace

TEST_CASE("splitmix64 reference stream")
{
    SplitMix64 rng(0);
    CHECK(rng.next() == 0xe220a8397b1dcdafULL);
    CHECK(rng.next() == 0x6e789e6aa1b965f4ULL);
    SplitMix64 a(42);
    SplitMix64 b(42);
    for (int k = 0; k < 100; ++k)
        CHECK(a.uniform(7) == b.uniform(7));
    SplitMix64 c(1);
    std::vector<int> hits(5, 0);
    for (int k = 0; k < 5000; ++k)
        hits[c.uniform(5)] += 1;
    for (auto h : hits)
        CHECK(h > 850);
    CHECK_THROWS_AS(c.uniform(0), std::invalid_argument);
}

TEST_CASE("enumeration counts")
{
    const std::size_t arrays[] = {1, 4, 27, 256, 3125, 46656};
    const std::size_t classes[] = {1, 3, 7, 19, 47, 130};
    const std::size_t connected[] = {1, 2, 4, 9, 20, 51};
    for (std::size_t n = 1; n <= 6; ++n) {
        CAPTURE(n);
        CHECK(enumerate_fgs(n).size() == arrays[n - 1]);
        CHECK(enumerate_fgs(n, {.distinct = true}).size() == classes[n - 1]);
        CHECK(enumerate_fgs(n, {.connected_only = true, .distinct = true}).size() == connected[n - 1]);
    }
    // n = 2: loop with a tail, the 2-cycle, two loops.
    CHECK(codes(enumerate_fgs(2)) ==
          codes({FunctionalGraph({0, 0}), FunctionalGraph({1, 0}), FunctionalGraph({0, 1})}));
    // Connected 3-node classes by cycle length: 2 + 1 + 1.
    CHECK(enumerate_fgs(3, {.cycle_length = 1, .distinct = true}).size() == 2);
    CHECK(enumerate_fgs(3, {.cycle_length = 2, .distinct = true}).size() == 1);
    CHECK(enumerate_fgs(3, {.cycle_length = 3, .distinct = true}).size() == 1);
    CHECK(enumerate_fgs(0).empty());
    CHECK_THROWS_AS(enumerate_fgs(7), SizeLimit);

    std::size_t seen = 0;
    for_each_fg(4, {}, [&](const FunctionalGraph &) { return ++seen < 10; });
    CHECK(seen == 10);
}

TEST_CASE("oracle on trivial equations")
{
    const FunctionalGraph loop({0});
    for (std::size_t n = 1; n <= 5; ++n)
        for (const auto & b : enumerate_fgs(n, {.connected_only = true, .distinct = true})) {
            const auto found = oracle_solve(loop, b, 6);
            REQUIRE(found.size() == 1);
            CHECK(isomorphic(found[0], b));
        }

    const auto c4 = FunctionalGraph::cycle(4);
    const auto found = oracle_solve(FunctionalGraph::cycle(2), c4, 6);
    REQUIRE(found.size() == 1);
    CHECK(isomorphic(found[0], c4));

    CHECK(oracle_solve(loop, FunctionalGraph({0, 1}), 4).empty());
    CHECK_THROWS_AS(oracle_solve(loop, loop, 7), SizeLimit);
}

TEST_CASE("oracle pins the multiple-solutions figure")
{
    const auto found = oracle_solve_px(fixtures::multi_a(), fixtures::multi_b(), 4, 9);
    CHECK(found.size() == 3);
    CHECK(codes(found) == codes({fixtures::multi_x1(), fixtures::multi_x2(), fixtures::multi_x3()}));
    CHECK(codes(found) == codes(solve_graph(fixtures::multi_a(), fixtures::multi_b(), 4)));
    CHECK_THROWS_AS(oracle_solve_px(FunctionalGraph({0}), fixtures::algexp_b(), 1, 30, 1000), SizeLimit);
}

TEST_CASE("both oracles agree")
{
    SplitMix64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const auto a = random_connected_fg(rng, 1 + rng.uniform(3), 1, 3);
        const auto x = random_connected_fg(rng, 2 + rng.uniform(3), 1 + rng.uniform(2), 3);
        const auto b = extract_component(direct_product(a, x), 0).graph;
        if (b.size() > 6)
            continue;
        std::vector<FunctionalGraph> by_px;
        for (std::size_t px = 1; px <= 6; ++px)
            for (auto & g : oracle_solve_px(a, b, px, 6))
                by_px.push_back(std::move(g));
        CHECK(codes(by_px) == codes(oracle_solve(a, b, 6)));
        CHECK(codes(oracle_solve(a, b, 6)).count(canonical_form(x)) == 1);
    }
}

TEST_CASE("generator contract")
{
    SUBCASE("pure cycle")
    {
        const auto inst = gen_instance({.n_a = 3, .n_x = 5, .p_a = 3, .p_x = 5, .seed = 1});
        CHECK(inst.a == FunctionalGraph::cycle(3));
        CHECK(inst.x == FunctionalGraph::cycle(5));
        CHECK(isomorphic(inst.b, FunctionalGraph::cycle(15)));
    }
    SUBCASE("caps")
    {
        CHECK_THROWS_AS(gen_instance({.n_a = 4, .n_x = 3, .p_a = 3, .p_x = 3, .max_indegree = 1}), InfeasibleSpec);
        CHECK_THROWS_AS(gen_instance({.n_a = 2, .n_x = 3, .p_a = 3, .p_x = 3}), std::invalid_argument);
        CHECK_THROWS_AS(gen_instance({.n_a = 2, .n_x = 3, .p_a = 0, .p_x = 3}), std::invalid_argument);
        CHECK_THROWS_AS(gen_instance({.n_a = 2, .n_x = 3, .p_a = 1, .p_x = 1, .max_indegree = 0}),
                        std::invalid_argument);
        // Depth 1 under a 2-cycle with indegree 2 leaves room for two leaves only.
        CHECK_THROWS_AS(gen_instance({.n_a = 5, .n_x = 2, .p_a = 2, .p_x = 2, .max_indegree = 2, .height = 1}),
                        InfeasibleSpec);
    }
    SUBCASE("determinism")
    {
        const InstanceSpec spec{.n_a = 12, .n_x = 9, .p_a = 3, .p_x = 2, .max_indegree = 3, .seed = 99};
        const auto one = gen_instance(spec);
        const auto two = gen_instance(spec);
        CHECK(one.a == two.a);
        CHECK(one.x == two.x);
        CHECK(one.b == two.b);
        auto other = spec;
        other.seed = 100;
        CHECK_FALSE((gen_instance(other).a == one.a && gen_instance(other).x == one.x));
    }
    SUBCASE("random specs")
    {
        SplitMix64 rng(3);
        int infeasible = 0;
        for (int trial = 0; trial < 150; ++trial) {
            InstanceSpec spec;
            spec.p_a = 1 + rng.uniform(4);
            spec.p_x = 1 + rng.uniform(4);
            spec.n_a = spec.p_a + rng.uniform(7);
            spec.n_x = spec.p_x + rng.uniform(7);
            spec.max_indegree = 2 + static_cast<std::uint32_t>(rng.uniform(3));
            spec.height = static_cast<std::uint32_t>(rng.uniform(3)) + 2;
            spec.seed = rng.next();
            Instance inst;
            try {
                inst = gen_instance(spec);
            } catch (const InfeasibleSpec &) {
                ++infeasible;
                continue;
            }
            for (const auto * g : {&inst.a, &inst.x}) {
                GraphStructure s(*g);
                REQUIRE(s.components().size() == 1);
                for (Node v = 0; v < g->size(); ++v) {
                    CHECK(s.indegree(v) <= spec.max_indegree);
                    CHECK(s.depth(v) <= spec.height);
                }
            }
            CHECK(cycle_length(inst.a) == spec.p_a);
            CHECK(cycle_length(inst.x) == spec.p_x);
            CHECK(product_contains(inst.a, inst.x, inst.b));
            CHECK(codes(solve_graph(inst.a, inst.b, spec.p_x)).count(canonical_form(inst.x)) == 1);
        }
        CHECK(infeasible < 30);
    }
}

TEST_CASE("instance files")
{
    const auto dir = std::filesystem::temp_directory_path() / "fgsolve_test_oracle";
    std::filesystem::remove_all(dir);
    const InstanceSpec s1{.n_a = 6, .n_x = 5, .p_a = 2, .p_x = 3, .max_indegree = 3, .seed = 5};
    const InstanceSpec s2{.n_a = 4, .n_x = 4, .p_a = 1, .p_x = 2, .max_indegree = 2, .seed = 6, .height = 2};
    save_instance(dir.string(), "first", gen_instance(s1));
    save_instance(dir.string(), "second", gen_instance(s2));
    const auto back = load_instances(dir.string());
    REQUIRE(back.size() == 2);
    CHECK(back[0].first == "first");
    CHECK(back[1].first == "second");
    CHECK(back[0].second.spec == s1);
    CHECK(back[1].second.spec == s2);
    CHECK(back[1].second.b == gen_instance(s2).b);
    std::filesystem::remove_all(dir);

    CHECK(InstanceSpec::parse(s2.to_string()) == s2);
    CHECK(InstanceSpec::parse("seed=3 p_x=2").p_x == 2);
    CHECK_THROWS_AS(InstanceSpec::parse("seed=x"), ParseError);
    CHECK_THROWS_AS(InstanceSpec::parse("colour=3"), ParseError);
    CHECK_THROWS_AS(InstanceSpec::parse("seed"), ParseError);
    CHECK_THROWS_AS(load_instances(dir.string()), std::ios_base::failure);
}
