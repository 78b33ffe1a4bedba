#include <fgsolve/solve_abstraction.hpp>

#include <numeric>
#include <stdexcept>

namespace fgsolve {

auto compatible_cycle_lengths(std::size_t p_a, std::size_t p_b) -> std::vector<std::size_t>
{
    std::vector<std::size_t> out;
    if (p_a == 0 || p_b == 0 || p_b % p_a != 0)
        return out;
    for (std::size_t k = 1; k <= p_b; ++k)
        if (p_b % k == 0 && std::lcm(p_a, k) == p_b)
            out.push_back(k);
    return out;
}

namespace {

void check_shapes(const TAbstraction & ta, const TAbstraction & tb, std::size_t p_x)
{
    if (ta.rows() == 0 || p_x == 0 || std::lcm(ta.rows(), p_x) != tb.rows())
        throw std::invalid_argument("cycle lengths do not satisfy lcm(p_a, p_x) = p_b");
}

auto reconstruct(const TAbstraction & ta, const TAbstraction & tb, std::size_t p_x, std::size_t i,
                 std::size_t columns, bool complete) -> std::optional<TAbstraction>
{
    const std::size_t p_b = tb.rows();
    TAbstraction tx(p_x, columns);
    std::vector<std::int64_t> expected(p_x, 1);

    for (std::size_t h = 1; h <= columns; ++h) {
        for (std::size_t r = 0; r < p_b; ++r) {
            const auto m1 = m1_term(ta, r, h, i);
            const auto m2 = m2_term(ta, tx, r, h, i);
            if (r < p_x) {
                const auto m3 = tb.cell(r, h).try_minus(m2);
                if (! m3)
                    return std::nullopt;
                auto q = m3->try_divide(m1);
                if (! q || static_cast<std::int64_t>(q->cardinality()) != expected[r])
                    return std::nullopt;
                if (h == 1 && q->max() == 0)
                    return std::nullopt;
                tx.set(r, h, std::move(*q));
            } else if (tx.cell(r % p_x, h) * m1 + m2 != tb.cell(r, h)) {
                return std::nullopt;
            }
        }
        for (std::size_t r = 0; r < p_x; ++r)
            expected[r] = static_cast<std::int64_t>(tx.cell(r, h).total()) - (h == 1 ? 1 : 0);
    }

    if (! complete)
        return tx;
    for (auto e : expected)
        if (e != 0)
            return std::nullopt;
    tx.trim();
    if (! abstraction_product_check(ta, tx, tb, i))
        return std::nullopt;
    return tx;
}

} // namespace

auto solve_abstraction_at(const TAbstraction & ta, const TAbstraction & tb, std::size_t p_x, std::size_t alignment)
    -> std::optional<TAbstraction>
{
    check_shapes(ta, tb, p_x);
    return reconstruct(ta, tb, p_x, alignment, tb.columns(), true);
}

auto solve_abstraction_prefix(const TAbstraction & ta, const TAbstraction & tb, std::size_t p_x,
                              std::size_t alignment, std::size_t columns) -> std::optional<TAbstraction>
{
    check_shapes(ta, tb, p_x);
    return reconstruct(ta, tb, p_x, alignment, columns, false);
}

auto solve_abstraction(const TAbstraction & ta, const TAbstraction & tb, std::size_t p_x)
    -> std::vector<AbstractionSolution>
{
    check_shapes(ta, tb, p_x);
    const auto p_a = static_cast<std::int64_t>(ta.rows());
    std::vector<std::optional<TAbstraction>> slot(ta.rows());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < p_a; ++i)
        slot[static_cast<std::size_t>(i)] =
            reconstruct(ta, tb, p_x, static_cast<std::size_t>(i), tb.columns(), true);

    std::vector<AbstractionSolution> out;
    for (std::size_t i = 0; i < slot.size(); ++i)
        if (slot[i])
            out.push_back({i, std::move(*slot[i])});
    return out;
}

auto solve_abstraction_serial(const TAbstraction & ta, const TAbstraction & tb, std::size_t p_x)
    -> std::vector<AbstractionSolution>
{
    check_shapes(ta, tb, p_x);
    std::vector<AbstractionSolution> out;
    for (std::size_t i = 0; i < ta.rows(); ++i)
        if (auto tx = reconstruct(ta, tb, p_x, i, tb.columns(), true))
            out.push_back({i, std::move(*tx)});
    return out;
}

} // namespace fgsolve
