#include <fgsolve/origins.hpp>

#include <algorithm>
#include <map>

namespace fgsolve {

auto height_filter(std::uint32_t candidate_height, const Requirement & requirement) -> bool
{
    switch (requirement.rule) {
    case HeightRule::at_most:
        return candidate_height <= requirement.height;
    case HeightRule::exactly:
        return candidate_height == requirement.height;
    case HeightRule::none:
        break;
    }
    return true;
}

namespace {

// Kuhn's augmenting paths: can every chosen candidate take a distinct requirement?
class Matcher
{
public:
    Matcher(const std::vector<std::uint32_t> & heights, const std::vector<Requirement> & reqs)
        : heights_(heights)
        , reqs_(reqs)
        , owner_(reqs.size(), -1)
    {
    }

    auto perfect() -> bool
    {
        for (std::size_t c = 0; c < heights_.size(); ++c) {
            seen_.assign(reqs_.size(), false);
            if (! augment(c))
                return false;
        }
        return true;
    }

private:
    auto augment(std::size_t c) -> bool
    {
        for (std::size_t q = 0; q < reqs_.size(); ++q) {
            if (seen_[q] || ! height_filter(heights_[c], reqs_[q]))
                continue;
            seen_[q] = true;
            if (owner_[q] < 0 || augment(static_cast<std::size_t>(owner_[q]))) {
                owner_[q] = static_cast<std::ptrdiff_t>(c);
                return true;
            }
        }
        return false;
    }

    const std::vector<std::uint32_t> & heights_;
    const std::vector<Requirement> & reqs_;
    std::vector<std::ptrdiff_t> owner_;
    std::vector<bool> seen_;
};

} // namespace

struct AssignmentEnumerator::Block
{
    struct Slot
    {
        Label origin = 0;
        std::vector<Requirement> reqs;
    };

    std::vector<Candidate> cands;
    std::vector<Slot> slots;
    bool pruning = true;
    bool greedy = false;

    std::vector<std::vector<std::size_t>> avail;
    std::vector<std::vector<std::size_t>> comb;

    auto first() -> bool { return run(0, true); }

    auto next() -> bool
    {
        if (greedy || slots.empty())
            return false;
        return run(static_cast<std::ptrdiff_t>(slots.size()) - 1, false);
    }

    void write(std::vector<std::pair<Node, Label>> & out) const
    {
        for (std::size_t k = 0; k < slots.size(); ++k)
            for (auto pos : comb[k])
                out.emplace_back(cands[avail[k][pos]].node, slots[k].origin);
    }

private:
    auto run(std::ptrdiff_t k, bool fresh) -> bool
    {
        const auto n = static_cast<std::ptrdiff_t>(slots.size());
        while (true) {
            if (k < 0)
                return false;
            if (k == n)
                return true;
            const auto slot = static_cast<std::size_t>(k);
            if (fresh)
                init(slot);
            else if (! advance(slot)) {
                --k;
                continue;
            }
            if (valid(slot)) {
                ++k;
                fresh = true;
            } else {
                fresh = false;
            }
        }
    }

    void init(std::size_t k)
    {
        avail.resize(slots.size());
        comb.resize(slots.size());
        if (k == 0) {
            avail[0].resize(cands.size());
            for (std::size_t c = 0; c < cands.size(); ++c)
                avail[0][c] = c;
        } else {
            avail[k].clear();
            const auto & prev = avail[k - 1];
            const auto & taken = comb[k - 1];
            std::size_t t = 0;
            for (std::size_t pos = 0; pos < prev.size(); ++pos) {
                if (t < taken.size() && taken[t] == pos) {
                    ++t;
                    continue;
                }
                avail[k].push_back(prev[pos]);
            }
        }
        comb[k].resize(slots[k].reqs.size());
        for (std::size_t j = 0; j < comb[k].size(); ++j)
            comb[k][j] = j;
    }

    auto advance(std::size_t k) -> bool
    {
        auto & c = comb[k];
        const auto n = avail[k].size();
        const auto m = c.size();
        std::size_t j = m;
        while (j > 0) {
            --j;
            if (c[j] < n - m + j) {
                ++c[j];
                for (std::size_t t = j + 1; t < m; ++t)
                    c[t] = c[t - 1] + 1;
                return true;
            }
        }
        return false;
    }

    auto valid(std::size_t k) const -> bool
    {
        if (! pruning)
            return true;
        std::vector<std::uint32_t> heights;
        heights.reserve(comb[k].size());
        for (auto pos : comb[k])
            heights.push_back(cands[avail[k][pos]].height);
        return Matcher(heights, slots[k].reqs).perfect();
    }
};

AssignmentEnumerator::AssignmentEnumerator(std::vector<AssignmentGroup> groups, bool height_pruning,
                                           std::uint32_t layer)
    : layer_(layer)
{
    for (auto & g : groups) {
        std::map<std::uint64_t, std::unique_ptr<Block>> by_degree;
        auto block_for = [&](std::uint64_t d) -> Block & {
            auto & b = by_degree[d];
            if (! b) {
                b = std::make_unique<Block>();
                b->pruning = height_pruning;
                b->greedy = d == 0;
            }
            return *b;
        };
        std::sort(g.candidates.begin(), g.candidates.end(),
                  [](const Candidate & x, const Candidate & y) { return x.node < y.node; });
        for (const auto & c : g.candidates)
            block_for(c.indegree).cands.push_back(c);
        std::sort(g.origins.begin(), g.origins.end(),
                  [](const OriginConstraint & x, const OriginConstraint & y) { return x.origin < y.origin; });
        for (const auto & o : g.origins) {
            std::map<std::uint64_t, std::vector<Requirement>> split;
            for (const auto & q : o.required)
                split[q.degree].push_back(q);
            for (auto & [d, reqs] : split)
                block_for(d).slots.push_back({o.origin, std::move(reqs)});
        }
        for (auto & [d, b] : by_degree) {
            std::size_t wanted = 0;
            for (const auto & s : b->slots)
                wanted += s.reqs.size();
            if (wanted != b->cands.size())
                feasible_ = false;
            blocks_.push_back(std::move(b));
        }
    }
}

AssignmentEnumerator::~AssignmentEnumerator() = default;
AssignmentEnumerator::AssignmentEnumerator(AssignmentEnumerator &&) noexcept = default;
auto AssignmentEnumerator::operator=(AssignmentEnumerator &&) noexcept -> AssignmentEnumerator & = default;

auto AssignmentEnumerator::next(OriginAssignment & out) -> bool
{
    if (! feasible_ || done_)
        return false;
    bool ok = true;
    if (! started_) {
        started_ = true;
        for (auto & b : blocks_)
            if (! b->first()) {
                ok = false;
                break;
            }
    } else {
        // Odometer: advance the last block that can move, reset the ones after it.
        ok = false;
        for (std::size_t k = blocks_.size(); k-- > 0;) {
            if (blocks_[k]->next()) {
                for (std::size_t t = k + 1; t < blocks_.size(); ++t)
                    blocks_[t]->first();
                ok = true;
                break;
            }
        }
    }
    if (! ok) {
        done_ = true;
        return false;
    }
    out.layer = layer_;
    out.mapping.clear();
    for (const auto & b : blocks_)
        b->write(out.mapping);
    std::sort(out.mapping.begin(), out.mapping.end());
    ++produced_;
    return true;
}

auto enumerate_assignments(std::vector<AssignmentGroup> groups, bool height_pruning, std::uint32_t layer)
    -> std::vector<OriginAssignment>
{
    AssignmentEnumerator e(std::move(groups), height_pruning, layer);
    std::vector<OriginAssignment> out;
    OriginAssignment a;
    while (e.next(a))
        out.push_back(a);
    return out;
}

} // namespace fgsolve
