#include <fgsolve/trees.hpp>

#include <fgsolve/canonical.hpp>
#include <fgsolve/errors.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fgsolve {

namespace {

struct Children
{
    std::vector<std::uint32_t> offset;
    std::vector<std::uint32_t> child;

    explicit Children(const InTree & f)
        : offset(f.size() + 1, 0)
    {
        for (Node v = 1; v < f.size(); ++v)
            ++offset[f.parent[v] + 1];
        for (std::size_t v = 0; v < f.size(); ++v)
            offset[v + 1] += offset[v];
        child.resize(f.size() > 0 ? f.size() - 1 : 0);
        auto fill = offset;
        for (Node v = 1; v < f.size(); ++v)
            child[fill[f.parent[v]]++] = v;
    }

    [[nodiscard]] auto of(Node v) const -> std::span<const std::uint32_t>
    {
        return {child.data() + offset[v], child.data() + offset[v + 1]};
    }
};

void push(InTree & f, Node parent, std::uint32_t level, Node label)
{
    f.parent.push_back(parent);
    f.level.push_back(level);
    f.label.push_back(label);
}

} // namespace

auto InTree::nodes_at(std::uint32_t t) const -> std::vector<Node>
{
    std::vector<Node> out;
    for (Node v = 0; v < size(); ++v)
        if (level[v] == t)
            out.push_back(v);
    return out;
}

auto unroll_cut(const FunctionalGraph & g, Node v, std::uint32_t t) -> InTree
{
    GraphStructure s(g);
    if (v >= g.size() || ! s.is_cyclic(v))
        throw NotCyclic("unroll_cut needs a cyclic node");
    InTree f;
    push(f, 0, 0, v);
    std::size_t begin = 0;
    for (std::uint32_t i = 0; i < t; ++i) {
        const auto end = f.size();
        for (auto k = begin; k < end; ++k)
            for (auto u : s.predecessors(f.label[k]))
                push(f, static_cast<Node>(k), i + 1, u);
        begin = end;
    }
    return f;
}

auto cut(const InTree & f, std::uint32_t t) -> InTree
{
    InTree out;
    for (Node v = 0; v < f.size() && f.level[v] <= t; ++v)
        push(out, f.parent[v], f.level[v], f.label[v]);
    return out;
}

auto intree_product(const InTree & f1, const InTree & f2) -> InTree
{
    InTree out;
    if (f1.size() == 0 || f2.size() == 0)
        return out;
    const Children c1(f1);
    const Children c2(f2);
    const auto n2 = static_cast<Node>(f2.size());
    std::vector<std::pair<Node, Node>> pair{{0, 0}};
    push(out, 0, 0, 0);
    for (std::size_t k = 0; k < pair.size(); ++k) {
        const auto [v, u] = pair[k];
        for (auto v2 : c1.of(v))
            for (auto u2 : c2.of(u)) {
                pair.emplace_back(v2, u2);
                push(out, static_cast<Node>(k), out.level[k] + 1, v2 * n2 + u2);
            }
    }
    return out;
}

auto intree_code(const InTree & f) -> std::string
{
    if (f.size() == 0)
        return {};
    const Children c(f);
    const ForestView view{c.offset, c.child};
    const std::uint32_t roots[] = {0};
    const auto rank = subtree_ranks(view, roots);
    return tree_code(view, rank, 0);
}

auto intree_isomorphic(const InTree & a, const InTree & b) -> bool
{
    return a.size() == b.size() && intree_code(a) == intree_code(b);
}

auto roll_unroll(const FunctionalGraph & g, Node v, std::uint32_t rho) -> FunctionalGraph
{
    GraphStructure s(g);
    if (v >= g.size() || ! s.is_cyclic(v))
        throw NotCyclic("roll_unroll needs a cyclic node");
    if (rho == 0)
        throw std::invalid_argument("roll length must be at least 1");
    const auto & cycle = s.component(s.component_of(v)).cycle;
    const auto p = cycle.size();
    const auto start = s.cycle_position(v);

    std::vector<Node> succ(rho);
    for (std::uint32_t k = 1; k < rho; ++k)
        succ[k] = k - 1;
    succ[0] = rho - 1;
    std::vector<std::pair<Node, Node>> stack; // (graph node, new parent)
    for (std::uint32_t k = 0; k < rho; ++k) {
        const auto w = cycle[(start + p - k % p) % p];
        for (auto u : s.transient_predecessors(w))
            stack.emplace_back(u, k);
        while (! stack.empty()) {
            const auto [u, parent] = stack.back();
            stack.pop_back();
            const auto id = static_cast<Node>(succ.size());
            succ.push_back(parent);
            for (auto x : s.predecessors(u))
                stack.emplace_back(x, id);
        }
    }
    return FunctionalGraph(std::move(succ));
}

auto to_digraph(const InTree & f) -> Digraph
{
    Digraph d{f.size(), {}};
    for (Node v = 1; v < f.size(); ++v)
        d.edges.emplace_back(v, f.parent[v]);
    return d;
}

auto tensor_product(const Digraph & g, const Digraph & h) -> Digraph
{
    Digraph d{g.n * h.n, {}};
    const auto m = static_cast<Node>(h.n);
    for (const auto & [a, b] : g.edges)
        for (const auto & [c, e] : h.edges)
            d.edges.emplace_back(a * m + c, b * m + e);
    return d;
}

auto all_digraphs(std::size_t n) -> std::vector<Digraph>
{
    if (n * n > 16)
        throw SizeLimit("all_digraphs is limited to 4 nodes");
    std::vector<Digraph> out;
    const std::uint32_t total = 1U << (n * n);
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        Digraph d{n, {}};
        for (std::size_t bit = 0; bit < n * n; ++bit)
            if ((mask >> bit) & 1U)
                d.edges.emplace_back(static_cast<Node>(bit / n), static_cast<Node>(bit % n));
        out.push_back(std::move(d));
    }
    return out;
}

auto hom_count(const Digraph & g, const Digraph & f, std::uint64_t budget) -> std::uint64_t
{
    std::uint64_t maps = 1;
    for (std::size_t k = 0; k < g.n; ++k) {
        if (f.n != 0 && maps > budget / f.n)
            throw SizeLimit("hom_count beyond the brute-force budget");
        maps *= f.n;
    }
    if (maps > budget)
        throw SizeLimit("hom_count beyond the brute-force budget");
    if (g.n == 0)
        return 1;
    if (f.n == 0)
        return 0;

    std::vector<std::uint8_t> adj(f.n * f.n, 0);
    for (const auto & [a, b] : f.edges)
        adj[a * f.n + b] = 1;
    // Edges checked once both endpoints are placed.
    std::vector<std::vector<std::pair<Node, Node>>> due(g.n);
    for (const auto & [a, b] : g.edges)
        due[std::max(a, b)].emplace_back(a, b);

    std::vector<Node> tau(g.n, 0);
    std::uint64_t count = 0;
    std::size_t k = 0;
    std::vector<bool> fresh(g.n, true);
    while (true) {
        if (fresh[k])
            fresh[k] = false;
        else if (++tau[k] == f.n) {
            tau[k] = 0;
            fresh[k] = true;
            if (k == 0)
                break;
            --k;
            continue;
        }
        bool ok = true;
        for (const auto & [a, b] : due[k])
            if (! adj[tau[a] * f.n + tau[b]]) {
                ok = false;
                break;
            }
        if (! ok)
            continue;
        if (k + 1 == g.n)
            ++count;
        else
            ++k;
    }
    return count;
}

auto to_dot(const InTree & f, const std::string & name) -> std::string
{
    std::ostringstream os;
    os << "digraph " << name << " {\n  rankdir=BT;\n";
    for (Node v = 0; v < f.size(); ++v)
        os << "  " << v << " [label=\"" << f.label[v] << "," << f.level[v] << "\"];\n";
    for (Node v = 1; v < f.size(); ++v)
        os << "  " << v << " -> " << f.parent[v] << ";\n";
    os << "}\n";
    return os.str();
}

} // namespace fgsolve
