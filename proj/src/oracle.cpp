#include <fgsolve/oracle.hpp>

#include <fgsolve/errors.hpp>

#include <array>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fgsolve {

auto SplitMix64::next() -> std::uint64_t
{
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

auto SplitMix64::uniform(std::uint64_t bound) -> std::uint64_t
{
    if (bound == 0)
        throw std::invalid_argument("uniform needs a positive bound");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    while (true) {
        const auto v = next();
        if (v < limit)
            return v % bound;
    }
}

auto InstanceSpec::to_string() const -> std::string
{
    std::ostringstream os;
    os << "n_a=" << n_a << " n_x=" << n_x << " p_a=" << p_a << " p_x=" << p_x << " max_indegree=" << max_indegree
       << " seed=" << seed << " height=" << height;
    return os.str();
}

auto InstanceSpec::parse(const std::string & line) -> InstanceSpec
{
    InstanceSpec spec;
    std::istringstream in(line);
    std::string token;
    while (in >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected key=value, got '" + token + "'");
        const auto key = token.substr(0, eq);
        std::uint64_t value = 0;
        try {
            std::size_t used = 0;
            value = std::stoull(token.substr(eq + 1), &used);
            if (used != token.size() - eq - 1)
                throw std::invalid_argument(token);
        } catch (const std::exception &) {
            throw ParseError("bad number in '" + token + "'");
        }
        if (key == "n_a")
            spec.n_a = value;
        else if (key == "n_x")
            spec.n_x = value;
        else if (key == "p_a")
            spec.p_a = value;
        else if (key == "p_x")
            spec.p_x = value;
        else if (key == "max_indegree")
            spec.max_indegree = static_cast<std::uint32_t>(value);
        else if (key == "seed")
            spec.seed = value;
        else if (key == "height")
            spec.height = static_cast<std::uint32_t>(value);
        else
            throw ParseError("unknown key '" + key + "'");
    }
    return spec;
}

auto random_connected_fg(SplitMix64 & rng, std::size_t n, std::size_t p, std::uint32_t max_indegree,
                         std::uint32_t height) -> FunctionalGraph
{
    if (p == 0 || p > n)
        throw std::invalid_argument("cycle length must be in 1..n");
    if (max_indegree == 0)
        throw std::invalid_argument("max_indegree must be at least 1");
    std::vector<Node> succ(n);
    std::vector<std::uint32_t> indegree(n, 0);
    std::vector<std::uint32_t> depth(n, 0);
    for (std::size_t k = 0; k < p; ++k) {
        succ[k] = static_cast<Node>((k + 1) % p);
        indegree[succ[k]] += 1;
    }
    std::vector<Node> eligible;
    auto open = [&](Node v) {
        return indegree[v] < max_indegree && (height == 0 || depth[v] < height);
    };
    for (Node v = 0; v < p; ++v)
        if (open(v))
            eligible.push_back(v);
    for (auto k = static_cast<Node>(p); k < n; ++k) {
        if (eligible.empty())
            throw InfeasibleSpec("no node can take another predecessor");
        const auto pos = rng.uniform(eligible.size());
        const auto parent = eligible[pos];
        succ[k] = parent;
        depth[k] = depth[parent] + 1;
        indegree[parent] += 1;
        if (! open(parent)) {
            eligible[pos] = eligible.back();
            eligible.pop_back();
        }
        if (open(k))
            eligible.push_back(k);
    }
    return FunctionalGraph(std::move(succ));
}

auto gen_instance(const InstanceSpec & spec) -> Instance
{
    SplitMix64 rng(spec.seed);
    Instance out;
    out.spec = spec;
    out.a = random_connected_fg(rng, spec.n_a, spec.p_a, spec.max_indegree, spec.height);
    out.x = random_connected_fg(rng, spec.n_x, spec.p_x, spec.max_indegree, spec.height);
    out.b = extract_component(direct_product(out.a, out.x), 0).graph;
    return out;
}

void save_instance(const std::string & dir, const std::string & stem, const Instance & instance)
{
    const std::filesystem::path root(dir);
    std::error_code ec;
    std::filesystem::create_directories(root, ec);
    if (ec)
        throw std::ios_base::failure("cannot create " + dir + ": " + ec.message());
    save_fg((root / (stem + ".A.fg")).string(), instance.a);
    save_fg((root / (stem + ".X.fg")).string(), instance.x);
    save_fg((root / (stem + ".B.fg")).string(), instance.b);
    const auto manifest = (root / "manifest.txt").string();
    std::ofstream out(manifest, std::ios::app);
    out << stem << ' ' << instance.spec.to_string() << '\n';
    if (! out)
        throw std::ios_base::failure("write failed: " + manifest);
}

auto load_instances(const std::string & dir) -> std::vector<std::pair<std::string, Instance>>
{
    const std::filesystem::path root(dir);
    const auto manifest = (root / "manifest.txt").string();
    std::ifstream in(manifest);
    if (! in)
        throw std::ios_base::failure("cannot open " + manifest);
    std::vector<std::pair<std::string, Instance>> out;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string stem;
        if (! (ls >> stem))
            continue;
        std::string rest;
        std::getline(ls, rest);
        Instance inst;
        inst.spec = InstanceSpec::parse(rest);
        inst.a = load_fg((root / (stem + ".A.fg")).string());
        inst.x = load_fg((root / (stem + ".X.fg")).string());
        inst.b = load_fg((root / (stem + ".B.fg")).string());
        out.emplace_back(stem, std::move(inst));
    }
    return out;
}

namespace {

constexpr std::size_t max_enumerable = 6;

// Cycle length when g is connected, 0 otherwise.
auto single_cycle_length(const FunctionalGraph & g) -> std::size_t
{
    return is_connected(g) ? cycle_length(g) : 0;
}

} // namespace

void for_each_fg(std::size_t n, const EnumerateOptions & options,
                 const std::function<bool(const FunctionalGraph &)> & visit)
{
    if (n > max_enumerable)
        throw SizeLimit("enumeration is limited to 6 nodes");
    if (n == 0)
        return;
    std::vector<Node> succ(n, 0);
    std::set<std::string> seen;
    while (true) {
        FunctionalGraph g(succ);
        bool keep = true;
        if (options.connected_only || options.cycle_length != 0) {
            const auto p = single_cycle_length(g);
            keep = p != 0 && (options.cycle_length == 0 || p == options.cycle_length);
        }
        if (keep && options.distinct)
            keep = seen.insert(canonical_form(g)).second;
        if (keep && ! visit(g))
            return;
        std::size_t k = n;
        while (k > 0) {
            --k;
            if (++succ[k] < n)
                break;
            succ[k] = 0;
            if (k == 0)
                return;
        }
    }
}

auto enumerate_fgs(std::size_t n, const EnumerateOptions & options) -> std::vector<FunctionalGraph>
{
    std::vector<FunctionalGraph> out;
    for_each_fg(n, options, [&](const FunctionalGraph & g) {
        out.push_back(g);
        return true;
    });
    return out;
}

auto product_contains(const FunctionalGraph & a, const FunctionalGraph & x, const FunctionalGraph & b) -> bool
{
    GraphStructure s(direct_product_serial(a, x));
    const auto target = canonical_form(b);
    for (const auto & c : s.components())
        if (c.nodes.size() == b.size() && component_code(s, c) == target)
            return true;
    return false;
}

auto oracle_solve(const FunctionalGraph & a, const FunctionalGraph & b, std::size_t max_n_x)
    -> std::vector<FunctionalGraph>
{
    if (max_n_x > max_enumerable)
        throw SizeLimit("oracle_solve is limited to 6-node X");
    // Connected classes per size, built once from every successor array.
    static std::array<std::vector<FunctionalGraph>, max_enumerable + 1> classes;
    static std::once_flag built;
    std::call_once(built, [] {
        for (std::size_t n = 1; n <= max_enumerable; ++n)
            classes[n] = enumerate_fgs(n, {.connected_only = true, .distinct = true});
    });

    std::vector<FunctionalGraph> out;
    if (! is_connected(a) || ! is_connected(b))
        return out;
    const auto pa = cycle_length(a);
    const auto pb = cycle_length(b);
    for (std::size_t n = 1; n <= max_n_x; ++n)
        for (const auto & x : classes[n])
            if (std::lcm(pa, cycle_length(x)) == pb && product_contains(a, x, b))
                out.push_back(x);
    return out;
}

auto oracle_solve_px(const FunctionalGraph & a, const FunctionalGraph & b, std::size_t p_x, std::size_t max_n_x,
                     std::uint64_t budget) -> std::vector<FunctionalGraph>
{
    std::vector<FunctionalGraph> out;
    if (p_x == 0 || ! is_connected(a) || ! is_connected(b) || std::lcm(cycle_length(a), p_x) != cycle_length(b))
        return out;
    // Every component of A x X projects onto all of X.
    max_n_x = std::min(max_n_x, b.size());
    std::uint64_t total = 0;
    std::uint64_t arrays = 1;
    for (std::size_t n = p_x; n <= max_n_x; ++n) {
        if (n > p_x)
            arrays *= n - 1;
        total += arrays;
        if (total > budget)
            throw SizeLimit("oracle_solve_px beyond its budget");
    }

    std::set<std::string> seen;
    std::vector<Node> succ;
    auto check = [&] {
        FunctionalGraph x(succ);
        if (seen.insert(canonical_form(x)).second && product_contains(a, x, b))
            out.push_back(std::move(x));
    };
    for (std::size_t n = p_x; n <= max_n_x; ++n) {
        succ.assign(n, 0);
        for (std::size_t k = 0; k < p_x; ++k)
            succ[k] = static_cast<Node>((k + 1) % p_x);
        bool more = true;
        while (more) {
            check();
            more = false;
            for (std::size_t k = n; k-- > p_x;) {
                if (++succ[k] < k) {
                    more = true;
                    break;
                }
                succ[k] = 0;
            }
        }
    }
    return out;
}

} // namespace fgsolve
