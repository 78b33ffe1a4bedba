#include <fgsolve/functional_graph.hpp>

#include <fgsolve/canonical.hpp>
#include <fgsolve/errors.hpp>

#include <algorithm>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace fgsolve {

FunctionalGraph::FunctionalGraph(std::vector<Node> successor)
    : succ_(std::move(successor))
{
    if (succ_.size() > std::numeric_limits<Node>::max())
        throw std::invalid_argument("functional graph too large");
    for (auto s : succ_)
        if (s >= succ_.size())
            throw std::invalid_argument("successor " + std::to_string(s) + " out of range");
}

auto FunctionalGraph::cycle(std::size_t p) -> FunctionalGraph
{
    std::vector<Node> succ(p);
    for (std::size_t k = 0; k < p; ++k)
        succ[k] = static_cast<Node>((k + 1) % p);
    return FunctionalGraph(std::move(succ));
}

GraphStructure::GraphStructure(FunctionalGraph g)
    : g_(std::move(g))
{
    const auto n = static_cast<Node>(g_.size());

    pred_offset_.assign(n + 1, 0);
    for (Node v = 0; v < n; ++v)
        ++pred_offset_[g_.successor(v) + 1];
    std::partial_sum(pred_offset_.begin(), pred_offset_.end(), pred_offset_.begin());
    pred_.resize(n);
    {
        auto fill = pred_offset_;
        for (Node v = 0; v < n; ++v)
            pred_[fill[g_.successor(v)]++] = v;
    }

    // Peel leaves until only cycles remain.
    std::vector<std::uint32_t> remaining(n);
    std::vector<Node> queue;
    for (Node v = 0; v < n; ++v) {
        remaining[v] = indegree(v);
        if (remaining[v] == 0)
            queue.push_back(v);
    }
    std::vector<char> transient(n, 0);
    for (std::size_t k = 0; k < queue.size(); ++k) {
        const auto v = queue[k];
        transient[v] = 1;
        if (--remaining[g_.successor(v)] == 0)
            queue.push_back(g_.successor(v));
    }

    depth_.assign(n, 0);
    height_.assign(n, 0);
    comp_.assign(n, 0);
    cycle_pos_.assign(n, not_cyclic);
    root_.assign(n, 0);

    std::vector<Node> order;
    order.reserve(n);
    for (Node v = 0; v < n; ++v) {
        if (transient[v] || cycle_pos_[v] != not_cyclic)
            continue;
        ComponentView c;
        c.id = components_.size();
        Node u = v;
        do {
            cycle_pos_[u] = static_cast<std::uint32_t>(c.cycle.size());
            comp_[u] = c.id;
            root_[u] = u;
            c.cycle.push_back(u);
            order.push_back(u);
            u = g_.successor(u);
        } while (u != v);
        components_.push_back(std::move(c));
    }

    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto v = order[k];
        for (auto u : predecessors(v)) {
            if (! transient[u])
                continue;
            depth_[u] = depth_[v] + 1;
            comp_[u] = comp_[v];
            root_[u] = root_[v];
            order.push_back(u);
        }
    }

    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const auto v = *it;
        if (transient[v]) {
            auto & hs = height_[g_.successor(v)];
            hs = std::max(hs, height_[v] + 1);
        }
    }

    for (Node v = 0; v < n; ++v) {
        auto & c = components_[comp_[v]];
        c.nodes.push_back(v);
        c.depth.push_back(depth_[v]);
        c.height.push_back(height_[v]);
        c.h_max = std::max(c.h_max, depth_[v]);
    }
}

auto GraphStructure::transient_predecessors(Node v) const -> std::vector<Node>
{
    std::vector<Node> out;
    for (auto u : predecessors(v))
        if (! is_cyclic(u))
            out.push_back(u);
    return out;
}

auto components(const FunctionalGraph & g) -> std::vector<ComponentView>
{
    return GraphStructure(g).components();
}

auto predecessors(const FunctionalGraph & g, Node v) -> std::vector<Node>
{
    std::vector<Node> out;
    for (Node u = 0; u < g.size(); ++u)
        if (g.successor(u) == v)
            out.push_back(u);
    return out;
}

namespace {

void check_product_size(const FunctionalGraph & a, const FunctionalGraph & b)
{
    const auto n = static_cast<unsigned __int128>(a.size()) * b.size();
    if (n > std::numeric_limits<Node>::max())
        throw std::length_error("direct product too large");
}

} // namespace

auto direct_product(const FunctionalGraph & a, const FunctionalGraph & b) -> FunctionalGraph
{
    check_product_size(a, b);
    const auto na = static_cast<std::int64_t>(a.size());
    const auto nb = static_cast<Node>(b.size());
    std::vector<Node> succ(a.size() * b.size());
    const auto fa = a.successors();
    const auto fb = b.successors();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < na; ++i) {
        const Node base = fa[static_cast<std::size_t>(i)] * nb;
        Node * out = succ.data() + static_cast<std::size_t>(i) * nb;
        for (Node j = 0; j < nb; ++j)
            out[j] = base + fb[j];
    }
    return FunctionalGraph(std::move(succ));
}

auto direct_product_serial(const FunctionalGraph & a, const FunctionalGraph & b) -> FunctionalGraph
{
    check_product_size(a, b);
    const auto nb = static_cast<Node>(b.size());
    std::vector<Node> succ;
    succ.reserve(a.size() * b.size());
    for (Node i = 0; i < a.size(); ++i)
        for (Node j = 0; j < nb; ++j)
            succ.push_back(a.successor(i) * nb + b.successor(j));
    return FunctionalGraph(std::move(succ));
}

auto fg_sum(const FunctionalGraph & a, const FunctionalGraph & b) -> FunctionalGraph
{
    std::vector<Node> succ(a.successors().begin(), a.successors().end());
    const auto shift = static_cast<Node>(a.size());
    for (auto s : b.successors())
        succ.push_back(s + shift);
    return FunctionalGraph(std::move(succ));
}

auto is_connected(const FunctionalGraph & g) -> bool
{
    return ! g.empty() && GraphStructure(g).components().size() == 1;
}

auto cycle_length(const FunctionalGraph & g) -> std::size_t
{
    GraphStructure s(g);
    if (s.components().size() != 1)
        throw std::invalid_argument("cycle_length needs a connected functional graph");
    return s.component(0).cycle.size();
}

namespace {

auto induced(const FunctionalGraph & g, const std::vector<char> & keep) -> Subgraph
{
    Subgraph out;
    std::vector<Node> index(g.size(), 0);
    for (Node v = 0; v < g.size(); ++v)
        if (keep[v]) {
            index[v] = static_cast<Node>(out.original.size());
            out.original.push_back(v);
        }
    std::vector<Node> succ;
    succ.reserve(out.original.size());
    for (auto v : out.original)
        succ.push_back(index[g.successor(v)]);
    out.graph = FunctionalGraph(std::move(succ));
    return out;
}

} // namespace

auto truncate_with_map(const GraphStructure & s, std::uint32_t h) -> Subgraph
{
    std::vector<char> keep(s.size());
    for (Node v = 0; v < s.size(); ++v)
        keep[v] = s.depth(v) <= h;
    return induced(s.graph(), keep);
}

auto truncate(const FunctionalGraph & g, std::uint32_t h) -> FunctionalGraph
{
    return truncate_with_map(GraphStructure(g), h).graph;
}

auto extract_component(const GraphStructure & s, Node v) -> Subgraph
{
    std::vector<char> keep(s.size());
    const auto c = s.component_of(v);
    for (Node u = 0; u < s.size(); ++u)
        keep[u] = s.component_of(u) == c;
    return induced(s.graph(), keep);
}

auto extract_component(const FunctionalGraph & g, Node v) -> Subgraph
{
    return extract_component(GraphStructure(g), v);
}

namespace {

// In-trees of transient predecessors as a forest.
struct TransientForest
{
    std::vector<std::uint32_t> offset;
    std::vector<std::uint32_t> child;
    std::vector<std::uint32_t> rank;

    explicit TransientForest(const GraphStructure & s)
    {
        const auto n = static_cast<Node>(s.size());
        offset.assign(n + 1, 0);
        for (Node v = 0; v < n; ++v)
            if (! s.is_cyclic(v))
                ++offset[s.successor(v) + 1];
        std::partial_sum(offset.begin(), offset.end(), offset.begin());
        child.resize(offset[n]);
        auto fill = offset;
        for (Node v = 0; v < n; ++v)
            if (! s.is_cyclic(v))
                child[fill[s.successor(v)]++] = v;

        std::vector<std::uint32_t> roots;
        for (const auto & c : s.components())
            roots.insert(roots.end(), c.cycle.begin(), c.cycle.end());
        rank = subtree_ranks(view(), roots);
    }

    [[nodiscard]] auto view() const -> ForestView { return {offset, child}; }
};

auto code_of(const TransientForest & f, const ComponentView & c) -> std::string
{
    std::vector<std::uint32_t> seq;
    seq.reserve(c.cycle.size());
    for (auto v : c.cycle)
        seq.push_back(f.rank[v]);
    const auto start = least_rotation(seq);
    std::string out = "{";
    for (std::size_t k = 0; k < c.cycle.size(); ++k)
        out += tree_code(f.view(), f.rank, c.cycle[(start + k) % c.cycle.size()]);
    out += '}';
    return out;
}

} // namespace

auto component_code(const GraphStructure & s, const ComponentView & c) -> std::string
{
    TransientForest f(s);
    return code_of(f, c);
}

auto canonical_form(const GraphStructure & s) -> std::string
{
    TransientForest f(s);
    std::vector<std::string> codes;
    codes.reserve(s.components().size());
    for (const auto & c : s.components())
        codes.push_back(code_of(f, c));
    std::sort(codes.begin(), codes.end());
    std::string out;
    for (const auto & c : codes)
        out += c;
    return out;
}

auto canonical_form(const FunctionalGraph & g) -> std::string
{
    return canonical_form(GraphStructure(g));
}

auto isomorphic(const FunctionalGraph & a, const FunctionalGraph & b) -> bool
{
    return a.size() == b.size() && canonical_form(a) == canonical_form(b);
}

auto read_fg(std::istream & in) -> FunctionalGraph
{
    std::string line;
    std::string body;
    bool have_count = false;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos)
            continue;
        if (line[first] == '#')
            continue;
        if (! have_count) {
            std::istringstream ls(line);
            long long count = -1;
            std::string extra;
            if (! (ls >> count) || count < 0 || (ls >> extra))
                throw ParseError("expected a node count, got: " + line);
            n = static_cast<std::size_t>(count);
            have_count = true;
            if (n == 0)
                break;
            continue;
        }
        body += line;
        body += ' ';
    }
    if (! have_count)
        throw ParseError("missing node count");

    std::istringstream bs(body);
    std::vector<Node> succ;
    succ.reserve(n);
    std::string token;
    while (bs >> token) {
        std::size_t used = 0;
        unsigned long long value = 0;
        try {
            value = std::stoull(token, &used);
        } catch (const std::exception &) {
            throw ParseError("bad successor: " + token);
        }
        if (used != token.size() || token[0] == '-')
            throw ParseError("bad successor: " + token);
        if (value >= n)
            throw ParseError("successor " + token + " out of range");
        succ.push_back(static_cast<Node>(value));
    }
    if (succ.size() != n)
        throw ParseError("expected " + std::to_string(n) + " successors, got " + std::to_string(succ.size()));
    return FunctionalGraph(std::move(succ));
}

auto parse_fg(const std::string & text) -> FunctionalGraph
{
    std::istringstream in(text);
    return read_fg(in);
}

auto load_fg(const std::string & path) -> FunctionalGraph
{
    std::ifstream in(path);
    if (! in)
        throw std::ios_base::failure("cannot open " + path);
    return read_fg(in);
}

void write_fg(std::ostream & out, const FunctionalGraph & g)
{
    out << g.size() << '\n';
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (v > 0)
            out << ' ';
        out << g.successor(static_cast<Node>(v));
    }
    out << '\n';
}

auto to_fg_string(const FunctionalGraph & g) -> std::string
{
    std::ostringstream out;
    write_fg(out, g);
    return out.str();
}

void save_fg(const std::string & path, const FunctionalGraph & g)
{
    std::ofstream out(path);
    if (! out)
        throw std::ios_base::failure("cannot write " + path);
    write_fg(out, g);
    if (! out)
        throw std::ios_base::failure("write failed: " + path);
}

auto to_dot(const FunctionalGraph & g, const std::string & name) -> std::string
{
    GraphStructure s(g);
    std::ostringstream out;
    out << "digraph " << name << " {\n";
    for (Node v = 0; v < g.size(); ++v)
        if (s.is_cyclic(v))
            out << "  " << v << " [shape=doublecircle];\n";
    for (Node v = 0; v < g.size(); ++v)
        out << "  " << v << " -> " << g.successor(v) << ";\n";
    out << "}\n";
    return out.str();
}

} // namespace fgsolve
