#include <fgsolve/multiset.hpp>

#include <cctype>
#include <ostream>
#include <sstream>

namespace fgsolve {

Multiset::Multiset(std::initializer_list<Value> values)
{
    for (auto v : values)
        add(v);
}

auto Multiset::singleton(Value v) -> Multiset
{
    Multiset m;
    m.add(v);
    return m;
}

auto Multiset::repeated(Value v, Count times) -> Multiset
{
    Multiset m;
    m.add(v, times);
    return m;
}

void Multiset::add(Value v, Count times)
{
    if (times == 0)
        return;
    counts_[v] += times;
    cardinality_ += times;
}

auto Multiset::count(Value v) const -> Count
{
    auto it = counts_.find(v);
    return it == counts_.end() ? 0 : it->second;
}

auto Multiset::max() const -> Value
{
    if (counts_.empty())
        throw std::logic_error("max of an empty multiset");
    return counts_.rbegin()->first;
}

auto Multiset::total() const -> Value
{
    Value s = 0;
    for (auto [v, c] : counts_)
        s += v * c;
    return s;
}

auto Multiset::includes(const Multiset & other) const -> bool
{
    if (other.cardinality_ > cardinality_)
        return false;
    for (auto [v, c] : other.counts_)
        if (count(v) < c)
            return false;
    return true;
}

auto Multiset::plus(const Multiset & other) const -> Multiset
{
    Multiset r = *this;
    for (auto [v, c] : other.counts_)
        r.add(v, c);
    return r;
}

auto Multiset::subtract_in_place(const Multiset & other) -> bool
{
    if (! includes(other))
        return false;
    for (auto [v, c] : other.counts_) {
        auto it = counts_.find(v);
        it->second -= c;
        if (it->second == 0)
            counts_.erase(it);
    }
    cardinality_ -= other.cardinality_;
    return true;
}

auto Multiset::try_minus(const Multiset & other) const -> std::optional<Multiset>
{
    Multiset r = *this;
    if (! r.subtract_in_place(other))
        return std::nullopt;
    return r;
}

auto Multiset::minus(const Multiset & other) const -> Multiset
{
    auto r = try_minus(other);
    if (! r)
        throw NotIncluded(other.to_string() + " is not included in " + to_string());
    return std::move(*r);
}

auto Multiset::times(const Multiset & other) const -> Multiset
{
    Multiset r;
    for (auto [x, cx] : counts_)
        for (auto [y, cy] : other.counts_)
            r.add(x * y, cx * cy);
    return r;
}

auto Multiset::try_divide(const Multiset & divisor) const -> std::optional<Multiset>
{
    if (! divisor.has_positive())
        return std::nullopt;

    const Value d = divisor.max();
    Multiset rest = *this;
    Multiset quotient;
    while (rest.has_positive()) {
        const Value top = rest.max();
        if (top % d != 0)
            return std::nullopt;
        const Value y = top / d;
        // Subtract [y] (x) divisor without materialising it.
        for (auto [v, c] : divisor.counts_) {
            auto it = rest.counts_.find(v * y);
            if (it == rest.counts_.end() || it->second < c)
                return std::nullopt;
            it->second -= c;
            if (it->second == 0)
                rest.counts_.erase(it);
        }
        rest.cardinality_ -= divisor.cardinality_;
        quotient.add(y);
    }

    if (rest.cardinality_ % divisor.cardinality_ != 0)
        return std::nullopt;
    quotient.add(0, rest.cardinality_ / divisor.cardinality_);
    return quotient;
}

auto Multiset::divide(const Multiset & divisor) const -> Multiset
{
    auto q = try_divide(divisor);
    if (! q)
        throw NotDivisible(to_string() + " is not divisible by " + divisor.to_string());
    return std::move(*q);
}

auto Multiset::to_string() const -> std::string
{
    std::string s = "[";
    bool first = true;
    for (auto [v, c] : counts_)
        for (Count k = 0; k < c; ++k) {
            if (! first)
                s += ',';
            s += std::to_string(v);
            first = false;
        }
    s += ']';
    return s;
}

auto Multiset::parse(const std::string & text) -> Multiset
{
    Multiset m;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
    };
    skip_ws();
    if (i >= text.size() || text[i] != '[')
        throw ParseError("multiset must start with '[': " + text);
    ++i;
    skip_ws();
    if (i < text.size() && text[i] == ']')
        return m;
    while (true) {
        skip_ws();
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
            ++i;
        if (start == i)
            throw ParseError("expected a non-negative integer in " + text);
        m.add(std::stoull(text.substr(start, i - start)));
        skip_ws();
        if (i < text.size() && text[i] == ',') {
            ++i;
            continue;
        }
        if (i < text.size() && text[i] == ']')
            break;
        throw ParseError("malformed multiset: " + text);
    }
    return m;
}

auto operator<<(std::ostream & os, const Multiset & m) -> std::ostream &
{
    return os << m.to_string();
}

} // namespace fgsolve
