#ifndef AMBIENTKIT_COMPOSITION_HPP
#define AMBIENTKIT_COMPOSITION_HPP

/*
  Compositions of a degree s into l ordered nonnegative parts, and the index
  sets I_s^l they form. Every coefficient family in the library is a function
  on one of these index sets, stored as a flat vector in enumeration order.

  Enumeration order is lexicographically descending on the parts, so
  (s,0,...,0) comes first and (0,...,0,s) last. Ranking is computed
  combinatorially and never needs a lookup table.
*/

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <vector>

#include <gmpxx.h>

namespace ambientkit {

class Composition {
public:
    Composition() = default;
    explicit Composition(std::vector<int> parts);
    Composition(std::initializer_list<int> parts);

    /// The all-zero composition with `slots` parts.
    static Composition zero(std::size_t slots);
    /// The composition s*e_j (1-based slot j).
    static Composition concentrated(std::size_t slots, std::size_t j, int s);

    const std::vector<int>& parts() const noexcept { return parts_; }
    int degree() const noexcept { return degree_; }
    std::size_t slots() const noexcept { return parts_.size(); }

    /// 1-based access, matching alpha_1 ... alpha_l.
    int operator()(std::size_t j) const { return parts_.at(j - 1); }
    int operator[](std::size_t i) const { return parts_[i]; }

    friend bool operator==(const Composition&, const Composition&) = default;
    friend std::strong_ordering operator<=>(const Composition& a, const Composition& b)
    {
        return a.parts_ <=> b.parts_;
    }

private:
    std::vector<int> parts_;
    int degree_ = 0;
};

std::ostream& operator<<(std::ostream& out, const Composition& alpha);

/// alpha + e_j; throws SlotOutOfRange unless 1 <= j <= slots.
Composition bump(const Composition& alpha, std::size_t j);

/// alpha - e_j; throws SlotOutOfRange for a bad slot and DegreeMismatch when
/// alpha_j == 0.
Composition unbump(const Composition& alpha, std::size_t j);

/// Applies a slot permutation: result[i] = alpha[perm[i]] (0-based).
Composition permuted(const Composition& alpha, const std::vector<std::size_t>& perm);

/// Binomial coefficient C(n, r) for small arguments; zero when r < 0 or r > n.
std::uint64_t binomial(std::int64_t n, std::int64_t r);

/// |I_s^l| = C(s+l-1, l-1); zero for negative s.
std::uint64_t composition_count(int s, std::size_t slots);

/// k! / prod alpha_i!. Throws DegreeMismatch when degree(alpha) != k.
mpz_class multinomial(int k, const Composition& alpha);

class IndexSet {
public:
    /// Enumerates I_s^l. Negative s yields the empty set (a truncated term of
    /// a chain complex). Throws SlotOutOfRange for l == 0.
    IndexSet(int degree, std::size_t slots);

    int degree() const noexcept { return degree_; }
    std::size_t slots() const noexcept { return slots_; }
    std::size_t size() const noexcept { return elements_.size(); }
    bool empty() const noexcept { return elements_.empty(); }

    const std::vector<Composition>& elements() const noexcept { return elements_; }
    auto begin() const noexcept { return elements_.begin(); }
    auto end() const noexcept { return elements_.end(); }

    bool contains(const Composition& alpha) const;
    /// Ordinal of alpha; throws NotInIndexSet on degree or slot mismatch.
    std::size_t rank(const Composition& alpha) const;
    /// Throws NotInIndexSet when i >= size().
    const Composition& unrank(std::size_t i) const;

    friend bool operator==(const IndexSet& a, const IndexSet& b)
    {
        return a.degree_ == b.degree_ && a.slots_ == b.slots_;
    }

private:
    int degree_;
    std::size_t slots_;
    std::vector<Composition> elements_;
};

} // namespace ambientkit

#endif
