#pragma once

#include <fgsolve/functional_graph.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace fgsolve {

/// SplitMix64. Same sequence on every platform for a given seed.
class SplitMix64
{
public:
    explicit SplitMix64(std::uint64_t seed)
        : state_(seed)
    {
    }

    auto next() -> std::uint64_t;
    /// Uniform in [0, bound), bound > 0, by rejection.
    auto uniform(std::uint64_t bound) -> std::uint64_t;

private:
    std::uint64_t state_;
};

struct InstanceSpec
{
    std::size_t n_a = 0;
    std::size_t n_x = 0;
    std::size_t p_a = 1;
    std::size_t p_x = 1;
    /// Counts every predecessor, the cycle one included.
    std::uint32_t max_indegree = 2;
    std::uint64_t seed = 0;
    /// Deepest allowed transient node; 0 leaves depth free.
    std::uint32_t height = 0;

    /// Manifest form: `n_a=.. n_x=.. p_a=.. p_x=.. max_indegree=.. seed=.. height=..`.
    [[nodiscard]] auto to_string() const -> std::string;
    /// Inverse of to_string; keys may come in any order, missing keys keep defaults.
    static auto parse(const std::string & line) -> InstanceSpec;

    friend auto operator==(const InstanceSpec &, const InstanceSpec &) -> bool = default;
};

struct Instance
{
    InstanceSpec spec;
    FunctionalGraph a;
    FunctionalGraph x;
    /// Component of A x X holding (0, 0); both cycles start at node 0.
    FunctionalGraph b;
};

/// Connected graph on n nodes: the cycle 0 -> 1 -> .. -> p-1 -> 0, then each
/// further node attaches to a uniform eligible node (indegree below the cap,
/// depth below `height` when height > 0). Throws InfeasibleSpec when no node
/// is eligible and std::invalid_argument on p = 0, p > n or max_indegree = 0.
auto random_connected_fg(SplitMix64 & rng, std::size_t n, std::size_t p, std::uint32_t max_indegree,
                         std::uint32_t height = 0) -> FunctionalGraph;

/// A from the seed, then X from the same stream, then B.
auto gen_instance(const InstanceSpec & spec) -> Instance;

/// Writes `<stem>.A.fg`, `<stem>.X.fg`, `<stem>.B.fg` under `dir` and appends
/// `<stem> <spec>` to `dir/manifest.txt`. Throws std::ios_base::failure on I/O errors.
void save_instance(const std::string & dir, const std::string & stem, const Instance & instance);
/// Reads the manifest entries back, regenerating nothing.
auto load_instances(const std::string & dir) -> std::vector<std::pair<std::string, Instance>>;

struct EnumerateOptions
{
    bool connected_only = false;
    /// Keep only graphs with one cycle of this length (implies connected); 0 keeps all.
    std::size_t cycle_length = 0;
    /// One representative per isomorphism class.
    bool distinct = false;
};

/// Calls `visit` for every successor array on n nodes (n <= 6) passing the
/// filters, in lexicographic order; stops early when visit returns false.
/// Throws SizeLimit for n > 6.
void for_each_fg(std::size_t n, const EnumerateOptions & options,
                 const std::function<bool(const FunctionalGraph &)> & visit);
auto enumerate_fgs(std::size_t n, const EnumerateOptions & options = {}) -> std::vector<FunctionalGraph>;

/// Every connected X with at most max_n_x nodes, one per isomorphism class,
/// such that some component of A x X is isomorphic to B. Found by trying
/// every successor array. Throws SizeLimit for max_n_x > 6.
auto oracle_solve(const FunctionalGraph & a, const FunctionalGraph & b, std::size_t max_n_x)
    -> std::vector<FunctionalGraph>;

/// Same contract for one cycle length, over graphs larger than 6 nodes:
/// tries every successor array of the form "cycle 0..p_x-1, then each node
/// points to an earlier one", which reaches every connected graph up to
/// isomorphism. Throws SizeLimit when more than `budget` arrays would be tried.
auto oracle_solve_px(const FunctionalGraph & a, const FunctionalGraph & b, std::size_t p_x, std::size_t max_n_x,
                     std::uint64_t budget = 2'000'000) -> std::vector<FunctionalGraph>;

/// True iff some component of A x X is isomorphic to B.
auto product_contains(const FunctionalGraph & a, const FunctionalGraph & x, const FunctionalGraph & b) -> bool;

} // namespace fgsolve
