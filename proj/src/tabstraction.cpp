#include <fgsolve/tabstraction.hpp>

#include <fgsolve/errors.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace fgsolve {

namespace {

const std::vector<Node> no_nodes;
const Multiset no_degrees;

auto wrap(std::int64_t r, std::size_t p) -> std::size_t
{
    const auto m = static_cast<std::int64_t>(p);
    return static_cast<std::size_t>(((r % m) + m) % m);
}

} // namespace

LayerMatrix::LayerMatrix(std::size_t rows, std::uint32_t h_max)
    : cells_(rows, std::vector<std::vector<Node>>(h_max))
    , h_max_(h_max)
{
}

auto LayerMatrix::cell(std::size_t r, std::uint32_t h) const -> const std::vector<Node> &
{
    if (h == 0 || h > h_max_ || r >= cells_.size())
        return no_nodes;
    return cells_[r][h - 1];
}

auto LayerMatrix::cell_mut(std::size_t r, std::uint32_t h) -> std::vector<Node> &
{
    return cells_.at(r).at(h - 1);
}

auto layer_matrix(const GraphStructure & s, const ComponentView & c) -> LayerMatrix
{
    LayerMatrix m(c.cycle.size(), c.h_max);
    for (std::size_t r = 0; r < c.cycle.size(); ++r) {
        std::vector<Node> frontier{c.cycle[r]};
        for (std::uint32_t h = 1; h <= c.h_max && ! frontier.empty(); ++h) {
            std::vector<Node> next;
            for (auto v : frontier)
                for (auto u : s.predecessors(v))
                    if (! s.is_cyclic(u))
                        next.push_back(u);
            std::sort(next.begin(), next.end());
            m.cell_mut(r, h) = next;
            frontier = std::move(next);
        }
    }
    return m;
}

TAbstraction::TAbstraction(std::size_t rows, std::size_t columns)
    : cells_(rows, std::vector<Multiset>(columns))
    , columns_(columns)
{
}

TAbstraction::TAbstraction(const std::vector<std::vector<Multiset>> & rows)
    : cells_(rows)
{
    for (const auto & row : cells_)
        columns_ = std::max(columns_, row.size());
    for (auto & row : cells_)
        row.resize(columns_);
}

auto TAbstraction::cell(std::size_t r, std::size_t h) const -> const Multiset &
{
    if (h == 0 || h > columns_ || r >= cells_.size())
        return no_degrees;
    return cells_[r][h - 1];
}

auto TAbstraction::cell_mod(std::int64_t r, std::size_t h) const -> const Multiset &
{
    if (cells_.empty())
        return no_degrees;
    return cell(wrap(r, cells_.size()), h);
}

void TAbstraction::set(std::size_t r, std::size_t h, Multiset m)
{
    if (h == 0 || r >= cells_.size())
        throw std::out_of_range("TAbstraction::set outside the matrix");
    if (h > columns_)
        resize_columns(h);
    cells_[r][h - 1] = std::move(m);
}

void TAbstraction::resize_columns(std::size_t columns)
{
    columns_ = columns;
    for (auto & row : cells_)
        row.resize(columns_);
}

void TAbstraction::trim()
{
    auto column_empty = [&](std::size_t h) {
        return std::all_of(cells_.begin(), cells_.end(), [&](const auto & row) { return row[h - 1].empty(); });
    };
    std::size_t c = columns_;
    while (c > 0 && column_empty(c))
        --c;
    resize_columns(c);
}

auto TAbstraction::rotated(std::size_t k) const -> TAbstraction
{
    TAbstraction out(rows(), columns_);
    for (std::size_t r = 0; r < rows(); ++r)
        out.cells_[r] = cells_[(r + k) % rows()];
    return out;
}

auto equal_up_to_rotation(const TAbstraction & a, const TAbstraction & b) -> bool
{
    if (a.rows() != b.rows())
        return false;
    for (std::size_t k = 0; k < a.rows(); ++k)
        if (a.rotated(k) == b)
            return true;
    return a.rows() == 0;
}

auto TAbstraction::to_string() const -> std::string
{
    std::vector<std::size_t> width(columns_, 0);
    for (const auto & row : cells_)
        for (std::size_t h = 0; h < columns_; ++h)
            width[h] = std::max(width[h], row[h].to_string().size());
    std::string out;
    for (const auto & row : cells_) {
        std::string line;
        for (std::size_t h = 0; h < columns_; ++h) {
            auto text = row[h].to_string();
            if (h + 1 < columns_)
                text.resize(width[h] + 1, ' ');
            line += text;
        }
        while (! line.empty() && line.back() == ' ')
            line.pop_back();
        out += line;
        out += '\n';
    }
    return out;
}

auto TAbstraction::parse(const std::string & text) -> TAbstraction
{
    static const std::string empty_set = "\xE2\x88\x85"; // U+2205
    std::vector<std::vector<Multiset>> rows;
    std::vector<Multiset> row;
    bool row_open = false;
    std::size_t i = 0;
    auto close_row = [&] {
        if (row_open)
            rows.push_back(std::move(row));
        row.clear();
        row_open = false;
    };
    while (i < text.size()) {
        const char ch = text[i];
        if (ch == ';' || ch == '\n') {
            close_row();
            ++i;
        } else if (ch == ' ' || ch == '\t' || ch == '\r') {
            ++i;
        } else if (ch == '[') {
            const auto end = text.find(']', i);
            if (end == std::string::npos)
                throw ParseError("unterminated cell in abstraction");
            row.push_back(Multiset::parse(text.substr(i, end - i + 1)));
            row_open = true;
            i = end + 1;
        } else if (text.compare(i, empty_set.size(), empty_set) == 0) {
            row.emplace_back();
            row_open = true;
            i += empty_set.size();
        } else {
            throw ParseError(std::string("unexpected character in abstraction: ") + ch);
        }
    }
    close_row();
    return TAbstraction(rows);
}

auto operator==(const TAbstraction & a, const TAbstraction & b) -> bool
{
    if (a.rows() != b.rows())
        return false;
    const auto cols = std::max(a.columns(), b.columns());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t h = 1; h <= cols; ++h)
            if (a.cell(r, h) != b.cell(r, h))
                return false;
    return true;
}

auto t_abstraction(const GraphStructure & s, const ComponentView & c) -> TAbstraction
{
    const auto layers = layer_matrix(s, c);
    TAbstraction t(c.cycle.size(), c.h_max + 1);
    for (std::size_t r = 0; r < c.cycle.size(); ++r) {
        t.set(r, 1, Multiset::singleton(s.indegree(c.cycle[r])));
        for (std::uint32_t h = 2; h <= c.h_max + 1; ++h) {
            Multiset m;
            for (auto v : layers.cell(r, h - 1))
                m.add(s.indegree(v));
            t.set(r, h, std::move(m));
        }
    }
    return t;
}

auto t_abstraction(const FunctionalGraph & g) -> TAbstraction
{
    GraphStructure s(g);
    if (s.components().size() != 1)
        throw std::invalid_argument("t_abstraction needs a connected functional graph");
    return t_abstraction(s, s.component(0));
}

auto t_abstractions(const FunctionalGraph & g) -> std::vector<TAbstraction>
{
    GraphStructure s(g);
    std::vector<std::pair<std::string, TAbstraction>> keyed;
    for (const auto & c : s.components()) {
        auto t = t_abstraction(s, c);
        keyed.emplace_back(t.to_string(), std::move(t));
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto & x, const auto & y) { return x.first < y.first; });
    std::vector<TAbstraction> out;
    for (auto & [key, t] : keyed)
        out.push_back(std::move(t));
    return out;
}

auto m1_term(const TAbstraction & ta, std::size_t r, std::size_t h, std::size_t i) -> Multiset
{
    Multiset m;
    // Only cells with h - j <= columns contribute.
    const std::size_t first = h > ta.columns() ? h - ta.columns() : 0;
    for (std::size_t j = first; j < h; ++j)
        m = m + ta.cell_mod(static_cast<std::int64_t>(r + i) - static_cast<std::int64_t>(j), h - j);
    return m;
}

auto m2_term(const TAbstraction & ta, const TAbstraction & tx, std::size_t r, std::size_t h, std::size_t i)
    -> Multiset
{
    const auto & top = ta.cell_mod(static_cast<std::int64_t>(r + i), h);
    if (top.empty() || h < 2)
        return {};
    Multiset lower;
    const std::size_t first = h > tx.columns() ? std::max<std::size_t>(1, h - tx.columns()) : 1;
    for (std::size_t j = first; j < h; ++j)
        lower = lower + tx.cell_mod(static_cast<std::int64_t>(r) - static_cast<std::int64_t>(j), h - j);
    return top * lower;
}

auto product_cell(const TAbstraction & ta, const TAbstraction & tx, std::size_t r, std::size_t h, std::size_t i)
    -> Multiset
{
    return tx.cell_mod(static_cast<std::int64_t>(r), h) * m1_term(ta, r, h, i) + m2_term(ta, tx, r, h, i);
}

auto abstraction_product_check(const TAbstraction & ta, const TAbstraction & tx, const TAbstraction & tb,
                               std::size_t i) -> bool
{
    if (ta.rows() == 0 || tx.rows() == 0 || tb.rows() != std::lcm(ta.rows(), tx.rows()))
        return false;
    const auto cols = std::max({ta.columns(), tx.columns(), tb.columns()});
    for (std::size_t r = 0; r < tb.rows(); ++r)
        for (std::size_t h = 1; h <= cols; ++h)
            if (product_cell(ta, tx, r, h, i) != tb.cell(r, h))
                return false;
    return true;
}

} // namespace fgsolve
