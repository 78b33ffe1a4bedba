#include <fgsolve/canonical.hpp>

#include <algorithm>
#include <cstdint>

namespace fgsolve {

namespace {

constexpr std::uint32_t unreached = UINT32_MAX;

auto sorted_child_ranks(const ForestView & f, std::span<const std::uint32_t> rank, std::uint32_t v)
    -> std::vector<std::uint32_t>
{
    std::vector<std::uint32_t> out;
    out.reserve(f.offset[v + 1] - f.offset[v]);
    for (auto k = f.offset[v]; k < f.offset[v + 1]; ++k)
        out.push_back(rank[f.child[k]]);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

auto subtree_ranks(const ForestView & f, std::span<const std::uint32_t> roots) -> std::vector<std::uint32_t>
{
    const std::size_t n = f.offset.size() - 1;
    std::vector<std::uint32_t> order;
    std::vector<char> seen(n, 0);
    order.reserve(n);
    for (auto r : roots)
        if (! seen[r]) {
            seen[r] = 1;
            order.push_back(r);
        }
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto v = order[k];
        for (auto e = f.offset[v]; e < f.offset[v + 1]; ++e) {
            const auto c = f.child[e];
            if (! seen[c]) {
                seen[c] = 1;
                order.push_back(c);
            }
        }
    }

    std::vector<std::uint32_t> height(n, 0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const auto v = *it;
        for (auto e = f.offset[v]; e < f.offset[v + 1]; ++e)
            height[v] = std::max(height[v], height[f.child[e]] + 1);
    }

    std::sort(order.begin(), order.end(), [&](auto a, auto b) {
        return height[a] != height[b] ? height[a] < height[b] : a < b;
    });

    std::vector<std::uint32_t> rank(n, unreached);
    std::uint32_t next_rank = 0;
    std::size_t lo = 0;
    while (lo < order.size()) {
        std::size_t hi = lo;
        while (hi < order.size() && height[order[hi]] == height[order[lo]])
            ++hi;
        std::vector<std::pair<std::vector<std::uint32_t>, std::uint32_t>> level;
        level.reserve(hi - lo);
        for (auto k = lo; k < hi; ++k)
            level.emplace_back(sorted_child_ranks(f, rank, order[k]), order[k]);
        std::sort(level.begin(), level.end());
        for (std::size_t k = 0; k < level.size(); ++k) {
            if (k > 0 && level[k].first != level[k - 1].first)
                ++next_rank;
            rank[level[k].second] = next_rank;
        }
        ++next_rank;
        lo = hi;
    }
    return rank;
}

auto tree_code(const ForestView & f, std::span<const std::uint32_t> rank, std::uint32_t root) -> std::string
{
    struct Frame
    {
        std::vector<std::uint32_t> kids;
        std::size_t next = 0;
    };
    auto frame_for = [&](std::uint32_t v) {
        Frame fr;
        fr.kids.assign(f.child.begin() + f.offset[v], f.child.begin() + f.offset[v + 1]);
        std::sort(fr.kids.begin(), fr.kids.end(), [&](auto a, auto b) { return rank[a] < rank[b]; });
        return fr;
    };

    std::string out = "(";
    std::vector<Frame> stack;
    stack.push_back(frame_for(root));
    while (! stack.empty()) {
        auto & top = stack.back();
        if (top.next == top.kids.size()) {
            out += ')';
            stack.pop_back();
            continue;
        }
        const auto c = top.kids[top.next++];
        out += '(';
        stack.push_back(frame_for(c));
    }
    return out;
}

auto least_rotation(std::span<const std::uint32_t> seq) -> std::size_t
{
    const std::size_t n = seq.size();
    if (n == 0)
        return 0;
    auto at = [&](std::size_t k) { return seq[k % n]; };
    std::vector<std::ptrdiff_t> fail(2 * n, -1);
    std::size_t k = 0;
    for (std::size_t j = 1; j < 2 * n; ++j) {
        const auto sj = at(j);
        auto i = fail[j - k - 1];
        while (i != -1 && sj != at(k + static_cast<std::size_t>(i + 1))) {
            if (sj < at(k + static_cast<std::size_t>(i + 1)))
                k = j - static_cast<std::size_t>(i + 1);
            i = fail[static_cast<std::size_t>(i)];
        }
        if (sj != at(k + static_cast<std::size_t>(i + 1))) {
            if (sj < at(k))
                k = j;
            fail[j - k] = -1;
        } else {
            fail[j - k] = i + 1;
        }
    }
    return k % n;
}

} // namespace fgsolve
