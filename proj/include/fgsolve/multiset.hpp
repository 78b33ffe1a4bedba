#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include <fgsolve/errors.hpp>

namespace fgsolve {

/// A finite multiset of non-negative integers, stored as value -> multiplicity.
///
/// Zero multiplicities are never stored, so two multisets compare equal iff
/// their count maps are equal. The maximum is available in O(1).
class Multiset
{
public:
    using Value = std::uint64_t;
    using Count = std::uint64_t;
    using Counts = std::map<Value, Count>;

    Multiset() = default;
    Multiset(std::initializer_list<Value> values);

    static auto singleton(Value v) -> Multiset;
    static auto repeated(Value v, Count times) -> Multiset;

    void add(Value v, Count times = 1);

    [[nodiscard]] auto cardinality() const -> Count { return cardinality_; }
    [[nodiscard]] auto empty() const -> bool { return cardinality_ == 0; }
    [[nodiscard]] auto count(Value v) const -> Count;
    [[nodiscard]] auto counts() const -> const Counts & { return counts_; }
    /// Largest element; the multiset must be non-empty.
    [[nodiscard]] auto max() const -> Value;
    /// Sum of all elements, with multiplicity.
    [[nodiscard]] auto total() const -> Value;
    [[nodiscard]] auto includes(const Multiset & other) const -> bool;
    [[nodiscard]] auto has_positive() const -> bool { return ! counts_.empty() && counts_.rbegin()->first > 0; }

    [[nodiscard]] auto plus(const Multiset & other) const -> Multiset;
    /// Multiplicity-wise difference; throws NotIncluded unless other is included in *this.
    [[nodiscard]] auto minus(const Multiset & other) const -> Multiset;
    [[nodiscard]] auto try_minus(const Multiset & other) const -> std::optional<Multiset>;
    /// The multiset of all pairwise products.
    [[nodiscard]] auto times(const Multiset & other) const -> Multiset;

    /// Exact division: returns q with q.times(divisor) == *this, or throws NotDivisible.
    ///
    /// Repeatedly peels max(*this) / max(divisor) off the dividend; once only
    /// zeros remain they are split evenly across the divisor's cardinality.
    [[nodiscard]] auto divide(const Multiset & divisor) const -> Multiset;
    [[nodiscard]] auto try_divide(const Multiset & divisor) const -> std::optional<Multiset>;

    /// Ascending bracket list, e.g. "[0,0,1,2]"; the empty multiset renders as "[]".
    [[nodiscard]] auto to_string() const -> std::string;
    static auto parse(const std::string & text) -> Multiset;

    friend auto operator==(const Multiset &, const Multiset &) -> bool = default;

private:
    auto subtract_in_place(const Multiset & other) -> bool;

    Counts counts_;
    Count cardinality_ = 0;
};

inline auto operator+(const Multiset & a, const Multiset & b) -> Multiset { return a.plus(b); }
inline auto operator-(const Multiset & a, const Multiset & b) -> Multiset { return a.minus(b); }
inline auto operator*(const Multiset & a, const Multiset & b) -> Multiset { return a.times(b); }

auto operator<<(std::ostream & os, const Multiset & m) -> std::ostream &;

} // namespace fgsolve
