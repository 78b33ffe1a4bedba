#include <fgsolve/solve_graph.hpp>

#include <fgsolve/origins.hpp>
#include <fgsolve/solve_abstraction.hpp>
#include <fgsolve/tabstraction.hpp>

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace fgsolve {

auto algorithm_name(Algorithm a) -> std::string
{
    switch (a) {
    case Algorithm::naive:
        return "naive";
    case Algorithm::exact:
        return "exact";
    case Algorithm::exact_height:
        return "exact+height";
    }
    return "exact";
}

auto parse_algorithm(const std::string & name) -> Algorithm
{
    if (name == "naive")
        return Algorithm::naive;
    if (name == "exact")
        return Algorithm::exact;
    if (name == "exact+height" || name == "exact-height")
        return Algorithm::exact_height;
    throw std::invalid_argument("unknown algorithm: " + name);
}

namespace {

constexpr Label unassigned = std::numeric_limits<Label>::min();

struct Timeout
{
};
struct Stopped
{
};

auto wrap(std::int64_t r, std::size_t p) -> std::size_t
{
    const auto m = static_cast<std::int64_t>(p);
    return static_cast<std::size_t>(((r % m) + m) % m);
}

auto require_connected(const GraphStructure & s, const char * what) -> const ComponentView &
{
    if (s.components().size() != 1)
        throw std::invalid_argument(std::string(what) + " must be a connected functional graph");
    return s.component(0);
}

// Code of the component of A x X that contains (a, x).
auto product_component_code(const FunctionalGraph & a, Node an, const FunctionalGraph & x, Node xn) -> std::string
{
    const auto p = direct_product_serial(a, x);
    const auto comp = extract_component(p, static_cast<Node>(an * x.size() + xn));
    return canonical_form(comp.graph);
}

// X under construction. Node labels are creation indices; cyclic nodes are 0..p-1.
class Builder
{
public:
    explicit Builder(std::size_t p)
        : rows_(p)
    {
        for (std::size_t r = 0; r < p; ++r) {
            succ_.push_back(static_cast<Node>((r + 1) % p));
            layer_.push_back(0);
            row_.push_back(static_cast<std::uint32_t>(r));
            degree_.push_back(0);
            kids_.emplace_back();
        }
        layers_.assign(p, std::vector<std::vector<Node>>(1));
        for (std::size_t r = 0; r < p; ++r)
            layers_[r][0].push_back(static_cast<Node>(r));
    }

    [[nodiscard]] auto size() const -> std::size_t { return succ_.size(); }
    [[nodiscard]] auto rows() const -> std::size_t { return rows_; }
    [[nodiscard]] auto nodes(std::size_t r, std::uint32_t h) const -> const std::vector<Node> &
    {
        static const std::vector<Node> none;
        return h < layers_[r].size() ? layers_[r][h] : none;
    }
    [[nodiscard]] auto kids(Node v) const -> const std::vector<Node> & { return kids_[v]; }
    [[nodiscard]] auto degree(Node v) const -> std::uint64_t { return degree_[v]; }
    void set_degree(Node v, std::uint64_t d) { degree_[v] = d; }

    void add(Node parent)
    {
        const auto v = static_cast<Node>(succ_.size());
        const auto r = row_[parent];
        const auto h = layer_[parent] + 1;
        succ_.push_back(parent);
        layer_.push_back(h);
        row_.push_back(r);
        degree_.push_back(0);
        kids_.emplace_back();
        kids_[parent].push_back(v);
        if (layers_[r].size() <= h)
            layers_[r].resize(h + 1);
        layers_[r][h].push_back(v);
    }

    // Removes every node created after `mark`.
    void rollback(std::size_t mark)
    {
        while (succ_.size() > mark) {
            const auto v = static_cast<Node>(succ_.size() - 1);
            kids_[succ_[v]].pop_back();
            layers_[row_[v]][layer_[v]].pop_back();
            succ_.pop_back();
            layer_.pop_back();
            row_.pop_back();
            degree_.pop_back();
            kids_.pop_back();
        }
    }

    [[nodiscard]] auto graph() const -> FunctionalGraph { return FunctionalGraph(succ_); }

private:
    std::size_t rows_;
    std::vector<Node> succ_;
    std::vector<std::uint32_t> layer_;
    std::vector<std::uint32_t> row_;
    std::vector<std::uint64_t> degree_;
    std::vector<std::vector<Node>> kids_;
    std::vector<std::vector<std::vector<Node>>> layers_;
};

class Context
{
public:
    Context(const FunctionalGraph & a, const FunctionalGraph & b, std::size_t p_x, const SolveOptions & options,
            std::atomic<bool> & stop)
        : sa(a)
        , sb(b)
        , ca(require_connected(sa, "A"))
        , cb(require_connected(sb, "B"))
        , la(layer_matrix(sa, ca))
        , lb(layer_matrix(sb, cb))
        , ta(t_abstraction(sa, ca))
        , tb(t_abstraction(sb, cb))
        , pa(ca.cycle.size())
        , pb(cb.cycle.size())
        , px(p_x)
        , options(options)
        , stop(stop)
    {
    }

    void prepare_truncations()
    {
        for (std::uint32_t h = 0; h <= ca.h_max; ++h) {
            a_trunc.push_back(truncate_with_map(sa, h));
            const auto & orig = a_trunc.back().original;
            std::vector<Node> pos;
            for (auto v : ca.cycle)
                pos.push_back(static_cast<Node>(std::lower_bound(orig.begin(), orig.end(), v) - orig.begin()));
            a_cycle.push_back(std::move(pos));
        }
        for (std::uint32_t h = 0; h <= cb.h_max; ++h)
            b_codes.push_back(canonical_form(truncate_with_map(sb, h).graph));
    }

    void poll() const
    {
        if (stop.load(std::memory_order_relaxed))
            throw Stopped{};
        if (options.deadline && std::chrono::steady_clock::now() >= *options.deadline)
            throw Timeout{};
    }

    // A nodes u with depth < h and f^(h-1)(u) = cycle[s].
    [[nodiscard]] auto m1_nodes(std::size_t s, std::uint32_t h) const -> std::vector<Node>
    {
        std::vector<Node> out;
        for (std::uint32_t j = 0; j < h; ++j) {
            const auto row = wrap(static_cast<std::int64_t>(s) - j, pa);
            const auto depth = h - 1 - j;
            if (depth == 0)
                out.push_back(ca.cycle[row]);
            else
                for (auto u : la.cell(row, depth))
                    out.push_back(u);
        }
        return out;
    }

    GraphStructure sa;
    GraphStructure sb;
    const ComponentView & ca;
    const ComponentView & cb;
    LayerMatrix la;
    LayerMatrix lb;
    TAbstraction ta;
    TAbstraction tb;
    std::size_t pa;
    std::size_t pb;
    std::size_t px;
    std::vector<Subgraph> a_trunc;
    std::vector<std::vector<Node>> a_cycle;
    std::vector<std::string> b_codes;
    const SolveOptions & options;
    std::atomic<bool> & stop;
};

class Search
{
public:
    Search(const Context & ctx, std::size_t alignment, SolveStats & stats)
        : c_(ctx)
        , i_(alignment)
        , stats_(stats)
        , x_(ctx.px)
        , tx_(ctx.px, 0)
        , origin_(ctx.sb.size(), unassigned)
    {
    }

    auto run() -> std::optional<FunctionalGraph>
    {
        step(1);
        return found_;
    }

    // Record the assignments offered for B layer `layer` along the search path.
    void probe(std::uint32_t layer, std::vector<OriginAssignment> & out)
    {
        probe_layer_ = layer;
        probe_ = &out;
    }

private:
    auto step(std::uint32_t h) -> bool
    {
        c_.poll();
        const auto mark = x_.size();
        bool ok = build_layer(h) && check_other_rows(h) && check_truncated(h);
        if (ok && x_.size() == mark) {
            ok = check_full();
            if (ok)
                found_ = x_.graph();
        } else if (ok) {
            ok = descend(h);
        }
        if (! ok)
            undo_layer(mark, h);
        return ok;
    }

    void undo_layer(std::size_t mark, std::uint32_t h)
    {
        x_.rollback(mark);
        for (std::size_t r = 0; r < c_.px; ++r) {
            for (auto v : x_.nodes(r, h - 1))
                x_.set_degree(v, 0);
            if (h <= tx_.columns())
                tx_.set(r, h, {});
        }
    }

    // Degrees of the X nodes at layer h-1 (column h of T^X), then their children.
    auto build_layer(std::uint32_t h) -> bool
    {
        for (std::size_t r = 0; r < c_.px; ++r) {
            const auto m1 = m1_term(c_.ta, r, h, i_);
            const auto m2 = m2_term(c_.ta, tx_, r, h, i_);
            const auto & parents = x_.nodes(r, h - 1);
            Multiset column;
            if (h <= 2) {
                auto m3 = c_.tb.cell(r, h).try_minus(m2);
                if (! m3)
                    return false;
                Multiset q;
                if (! m3->empty()) {
                    auto d = m3->try_divide(m1);
                    if (! d)
                        return false;
                    q = std::move(*d);
                }
                if (q.cardinality() != parents.size())
                    return false;
                if (h == 1 && q.max() == 0)
                    return false;
                assign_descending(q, parents);
                column = std::move(q);
            } else {
                std::map<Label, Multiset> parts;
                for (auto w : c_.lb.cell(r, h - 1))
                    parts[origin_[c_.sb.successor(w)]].add(c_.sb.indegree(w));
                if (parts[minus_one] != m2)
                    return false;
                std::size_t matched = 1;
                for (auto o : x_.nodes(r, h - 2)) {
                    const auto it = parts.find(o);
                    const auto & kids = x_.kids(o);
                    Multiset q;
                    if (it != parts.end()) {
                        ++matched;
                        if (! it->second.empty()) {
                            auto d = it->second.try_divide(m1);
                            if (! d)
                                return false;
                            q = std::move(*d);
                        }
                    }
                    if (q.cardinality() != kids.size())
                        return false;
                    assign_descending(q, kids);
                    column = column + q;
                }
                if (matched != parts.size())
                    return false;
            }
            tx_.set(r, h, std::move(column));
        }
        for (std::size_t r = 0; r < c_.px; ++r) {
            const auto parents = x_.nodes(r, h - 1);
            for (auto v : parents) {
                // A cyclic node's own cycle predecessor is not a new child.
                const auto extra = h == 1 ? x_.degree(v) - 1 : x_.degree(v);
                for (std::uint64_t k = 0; k < extra; ++k)
                    x_.add(v);
            }
        }
        return true;
    }

    void assign_descending(const Multiset & q, const std::vector<Node> & nodes)
    {
        std::size_t k = 0;
        const auto & counts = q.counts();
        for (auto it = counts.rbegin(); it != counts.rend(); ++it)
            for (std::size_t n = 0; n < it->second; ++n)
                x_.set_degree(nodes[k++], it->first);
    }

    [[nodiscard]] auto check_other_rows(std::uint32_t h) const -> bool
    {
        for (std::size_t r = c_.px; r < c_.pb; ++r)
            if (product_cell(c_.ta, tx_, r, h, i_) != c_.tb.cell(r, h))
                return false;
        return true;
    }

    [[nodiscard]] auto check_truncated(std::uint32_t h) const -> bool
    {
        const auto ha = std::min<std::size_t>(h, c_.a_trunc.size() - 1);
        const auto hb = std::min<std::size_t>(h, c_.b_codes.size() - 1);
        const auto x = x_.graph();
        return product_component_code(c_.a_trunc[ha].graph, c_.a_cycle[ha][i_], x, 0) == c_.b_codes[hb];
    }

    [[nodiscard]] auto check_full() const -> bool
    {
        const auto x = x_.graph();
        return product_component_code(c_.sa.graph(), c_.ca.cycle[i_], x, 0) == c_.b_codes.back();
    }

    auto requirement(std::uint64_t degree, Node u) const -> Requirement
    {
        if (c_.sa.is_cyclic(u))
            return {degree * c_.sa.indegree(u), HeightRule::none, 0};
        return {degree * c_.sa.indegree(u), HeightRule::at_most, c_.sa.height(u)};
    }

    // Origins for B layer h-1, then the next layer.
    auto descend(std::uint32_t h) -> bool
    {
        if (h == 1) {
            for (std::size_t r = 0; r < c_.px; ++r)
                origin_[c_.cb.cycle[r]] = static_cast<Label>(r);
            const bool ok = step(2);
            if (! ok)
                for (std::size_t r = 0; r < c_.px; ++r)
                    origin_[c_.cb.cycle[r]] = unassigned;
            return ok;
        }

        std::vector<AssignmentGroup> groups;
        std::vector<Node> forced;
        for (std::size_t r = 0; r < c_.px; ++r) {
            const auto s = (r + i_) % c_.pa;
            const auto u_nodes = c_.m1_nodes(s, h);
            auto candidate = [&](Node w) {
                return Candidate{w, c_.sb.indegree(w), c_.sb.height(w)};
            };
            auto constraint = [&](Node v) {
                OriginConstraint o{static_cast<Label>(v), {}};
                for (auto u : u_nodes)
                    o.required.push_back(requirement(x_.degree(v), u));
                return o;
            };
            if (h == 2) {
                AssignmentGroup g;
                for (auto w : c_.lb.cell(r, 1))
                    g.candidates.push_back(candidate(w));
                for (auto v : x_.kids(static_cast<Node>(r)))
                    g.origins.push_back(constraint(v));
                const auto prev = static_cast<Node>(wrap(static_cast<std::int64_t>(r) - 1, c_.px));
                OriginConstraint m{minus_one, {}};
                for (auto u : c_.la.cell(s, 1))
                    m.required.push_back(
                        {c_.sa.indegree(u) * x_.degree(prev), HeightRule::exactly, c_.sa.height(u)});
                g.origins.push_back(std::move(m));
                groups.push_back(std::move(g));
                continue;
            }
            std::map<Label, AssignmentGroup> by_parent;
            for (auto w : c_.lb.cell(r, h - 1)) {
                const auto o = origin_[c_.sb.successor(w)];
                if (o == minus_one)
                    forced.push_back(w);
                else
                    by_parent[o].candidates.push_back(candidate(w));
            }
            for (auto & [o, g] : by_parent) {
                for (auto v : x_.kids(static_cast<Node>(o)))
                    g.origins.push_back(constraint(v));
                groups.push_back(std::move(g));
            }
        }

        if (probe_ != nullptr && h - 1 == probe_layer_)
            *probe_ = enumerate_assignments(groups, c_.options.height_pruning, h - 1);
        for (auto w : forced)
            origin_[w] = minus_one;
        AssignmentEnumerator e(std::move(groups), c_.options.height_pruning, h - 1);
        OriginAssignment assignment;
        bool ok = false;
        while (true) {
            c_.poll();
            if (! e.next(assignment))
                break;
            ++stats_.explored_assignments;
            for (const auto & [w, o] : assignment.mapping)
                origin_[w] = o;
            if (step(h + 1)) {
                ok = true;
                break;
            }
            ++stats_.backtracks;
            for (const auto & [w, o] : assignment.mapping)
                origin_[w] = unassigned;
        }
        if (! ok)
            for (auto w : forced)
                origin_[w] = unassigned;
        return ok;
    }

    const Context & c_;
    std::size_t i_;
    SolveStats & stats_;
    Builder x_;
    TAbstraction tx_;
    std::vector<Label> origin_;
    std::optional<FunctionalGraph> found_;
    std::uint32_t probe_layer_ = 0;
    std::vector<OriginAssignment> * probe_ = nullptr;
};

// Every wiring of one abstraction solution.
class NaiveSearch
{
public:
    NaiveSearch(const Context & ctx, const AbstractionSolution & sol, SolveStats & stats)
        : c_(ctx)
        , sol_(sol)
        , stats_(stats)
        , x_(ctx.px)
    {
    }

    auto run() -> std::vector<FunctionalGraph>
    {
        for (std::size_t r = 0; r < c_.px; ++r) {
            const auto & cell = sol_.tx.cell(r, 1);
            if (cell.cardinality() != 1 || cell.max() == 0)
                return {};
            x_.set_degree(static_cast<Node>(r), cell.max());
            for (std::uint64_t k = 1; k < cell.max(); ++k)
                x_.add(static_cast<Node>(r));
        }
        wire(2, 0);
        return found_;
    }

private:
    // Returns true when the search should stop.
    auto wire(std::uint32_t h, std::size_t r) -> bool
    {
        c_.poll();
        if (r == c_.px)
            return wire(h + 1, 0);
        if (h > sol_.tx.columns()) {
            for (std::size_t row = 0; row < c_.px; ++row)
                if (! x_.nodes(row, h - 1).empty())
                    return false;
            return leaf();
        }
        const auto nodes = x_.nodes(r, h - 1);
        std::vector<std::uint64_t> values;
        for (const auto & [v, n] : sol_.tx.cell(r, h).counts())
            values.insert(values.end(), n, v);
        if (values.size() != nodes.size())
            return false;
        do {
            const auto mark = x_.size();
            for (std::size_t k = 0; k < nodes.size(); ++k) {
                x_.set_degree(nodes[k], values[k]);
                for (std::uint64_t n = 0; n < values[k]; ++n)
                    x_.add(nodes[k]);
            }
            const bool stop = wire(h, r + 1);
            x_.rollback(mark);
            if (stop)
                return true;
        } while (std::next_permutation(values.begin(), values.end()));
        return false;
    }

    auto leaf() -> bool
    {
        ++stats_.explored_assignments;
        auto x = x_.graph();
        if (! seen_.insert(canonical_form(x)).second)
            return false;
        if (product_component_code(c_.sa.graph(), c_.ca.cycle[sol_.alignment], x, 0) == c_.b_codes.back()) {
            found_.push_back(std::move(x));
            return c_.options.first_only;
        }
        ++stats_.backtracks;
        return false;
    }

    const Context & c_;
    const AbstractionSolution & sol_;
    SolveStats & stats_;
    Builder x_;
    std::set<std::string> seen_;
    std::vector<FunctionalGraph> found_;
};

void merge_stats(SolveStats & into, const SolveStats & s)
{
    into.explored_assignments += s.explored_assignments;
    into.backtracks += s.backtracks;
    into.timed_out = into.timed_out || s.timed_out;
}

// Keeps the first representative of each isomorphism class, by ascending alignment.
void collect(SolveResult & out, std::vector<std::vector<FunctionalGraph>> & per_alignment, bool first_only)
{
    std::set<std::string> seen;
    for (std::size_t i = 0; i < per_alignment.size(); ++i)
        for (auto & x : per_alignment[i]) {
            if (first_only && ! out.solutions.empty())
                return;
            if (seen.insert(canonical_form(x)).second)
                out.solutions.push_back({i, std::move(x)});
        }
}

template <typename Body>
void for_each_alignment(std::size_t n, bool parallel, Body body)
{
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::size_t i = 0; i < n; ++i)
            body(i);
    } else {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
    }
}

} // namespace

auto solve_graph(const FunctionalGraph & a, const FunctionalGraph & b, std::size_t p_x, const SolveOptions & options)
    -> SolveResult
{
    std::atomic<bool> stop{false};
    Context ctx(a, b, p_x, options, stop);
    SolveResult out;
    if (p_x == 0 || std::lcm(ctx.pa, p_x) != ctx.pb)
        return out;
    ctx.prepare_truncations();

    std::vector<std::vector<FunctionalGraph>> found(ctx.pa);
    std::vector<SolveStats> stats(ctx.pa);
    for_each_alignment(ctx.pa, options.parallel, [&](std::size_t i) {
        if (stop.load())
            return;
        try {
            if (! solve_abstraction_prefix(ctx.ta, ctx.tb, p_x, i, ctx.tb.columns()))
                return;
            Search s(ctx, i, stats[i]);
            if (auto x = s.run()) {
                found[i].push_back(std::move(*x));
                if (options.first_only)
                    stop = true;
            }
        } catch (const Timeout &) {
            stats[i].timed_out = true;
        } catch (const Stopped &) {
        }
    });
    for (const auto & s : stats)
        merge_stats(out.stats, s);
    collect(out, found, options.first_only);
    return out;
}

auto solve_graph_naive(const FunctionalGraph & a, const FunctionalGraph & b, std::size_t p_x,
                       const SolveOptions & options) -> SolveResult
{
    std::atomic<bool> stop{false};
    Context ctx(a, b, p_x, options, stop);
    SolveResult out;
    if (p_x == 0 || std::lcm(ctx.pa, p_x) != ctx.pb)
        return out;
    ctx.prepare_truncations();

    std::vector<std::vector<FunctionalGraph>> found(ctx.pa);
    std::vector<SolveStats> stats(ctx.pa);
    for_each_alignment(ctx.pa, options.parallel, [&](std::size_t i) {
        if (stop.load())
            return;
        try {
            auto tx = solve_abstraction_at(ctx.ta, ctx.tb, p_x, i);
            if (! tx)
                return;
            const AbstractionSolution sol{i, std::move(*tx)};
            NaiveSearch s(ctx, sol, stats[i]);
            found[i] = s.run();
            if (options.first_only && ! found[i].empty())
                stop = true;
        } catch (const Timeout &) {
            stats[i].timed_out = true;
        } catch (const Stopped &) {
        }
    });
    for (const auto & s : stats)
        merge_stats(out.stats, s);
    collect(out, found, options.first_only);
    return out;
}

auto solve(const FunctionalGraph & a, const FunctionalGraph & b, std::size_t p_x, Algorithm algorithm,
           SolveOptions options) -> SolveResult
{
    switch (algorithm) {
    case Algorithm::naive:
        return solve_graph_naive(a, b, p_x, options);
    case Algorithm::exact:
        options.height_pruning = false;
        return solve_graph(a, b, p_x, options);
    case Algorithm::exact_height:
        options.height_pruning = true;
        return solve_graph(a, b, p_x, options);
    }
    return {};
}

auto solve_all(const FunctionalGraph & a, const FunctionalGraph & b, Algorithm algorithm,
               const SolveOptions & options) -> SolveResult
{
    SolveResult out;
    std::set<std::string> seen;
    for (auto p_x : compatible_cycle_lengths(cycle_length(a), cycle_length(b))) {
        auto r = solve(a, b, p_x, algorithm, options);
        merge_stats(out.stats, r.stats);
        for (auto & s : r.solutions)
            if (seen.insert(canonical_form(s.x)).second)
                out.solutions.push_back(std::move(s));
        if (options.first_only && ! out.solutions.empty())
            break;
    }
    return out;
}

auto layer_assignments(const FunctionalGraph & a, const FunctionalGraph & b, std::size_t p_x, std::size_t alignment,
                       std::uint32_t layer, bool height_pruning) -> std::vector<OriginAssignment>
{
    std::atomic<bool> stop{false};
    SolveOptions options;
    options.height_pruning = height_pruning;
    Context ctx(a, b, p_x, options, stop);
    if (p_x == 0 || std::lcm(ctx.pa, p_x) != ctx.pb || alignment >= ctx.pa)
        return {};
    ctx.prepare_truncations();
    SolveStats stats;
    std::vector<OriginAssignment> out;
    Search s(ctx, alignment, stats);
    s.probe(layer, out);
    s.run();
    return out;
}

auto matching_components(const FunctionalGraph & a, const FunctionalGraph & x, const FunctionalGraph & b)
    -> std::vector<std::size_t>
{
    GraphStructure sa(a);
    GraphStructure sx(x);
    const auto & ca = require_connected(sa, "A");
    const auto & cx = require_connected(sx, "X");
    GraphStructure sp(direct_product(a, x));
    const auto target = canonical_form(b);
    std::map<std::size_t, std::size_t> least;
    for (std::size_t s = 0; s < ca.cycle.size(); ++s)
        least.emplace(sp.component_of(static_cast<Node>(ca.cycle[s] * x.size() + cx.cycle[0])), s);
    std::vector<std::size_t> out;
    for (const auto & [comp, s] : least)
        if (component_code(sp, sp.component(comp)) == target)
            out.push_back(s);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace fgsolve
