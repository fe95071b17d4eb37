#include "ambientkit/composition.hpp"

#include <numeric>
#include <ostream>
#include <string>

#include "ambientkit/errors.hpp"

namespace ambientkit {

Composition::Composition(std::vector<int> parts) : parts_(std::move(parts))
{
    for (int p : parts_) {
        if (p < 0)
            throw DegreeMismatch("composition parts must be nonnegative");
    }
    degree_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

Composition::Composition(std::initializer_list<int> parts)
    : Composition(std::vector<int>(parts))
{
}

Composition Composition::zero(std::size_t slots)
{
    return Composition(std::vector<int>(slots, 0));
}

Composition Composition::concentrated(std::size_t slots, std::size_t j, int s)
{
    if (j < 1 || j > slots)
        throw SlotOutOfRange("slot " + std::to_string(j) + " outside 1.." + std::to_string(slots));
    std::vector<int> parts(slots, 0);
    parts[j - 1] = s;
    return Composition(std::move(parts));
}

std::ostream& operator<<(std::ostream& out, const Composition& alpha)
{
    out << '(';
    for (std::size_t i = 0; i < alpha.slots(); ++i)
        out << (i ? "," : "") << alpha[i];
    return out << ')';
}

Composition bump(const Composition& alpha, std::size_t j)
{
    if (j < 1 || j > alpha.slots())
        throw SlotOutOfRange("slot " + std::to_string(j) + " outside 1.." + std::to_string(alpha.slots()));
    std::vector<int> parts = alpha.parts();
    ++parts[j - 1];
    return Composition(std::move(parts));
}

Composition unbump(const Composition& alpha, std::size_t j)
{
    if (j < 1 || j > alpha.slots())
        throw SlotOutOfRange("slot " + std::to_string(j) + " outside 1.." + std::to_string(alpha.slots()));
    if (alpha(j) == 0)
        throw DegreeMismatch("cannot lower a zero part");
    std::vector<int> parts = alpha.parts();
    --parts[j - 1];
    return Composition(std::move(parts));
}

Composition permuted(const Composition& alpha, const std::vector<std::size_t>& perm)
{
    if (perm.size() != alpha.slots())
        throw SlotOutOfRange("permutation length does not match slot count");
    std::vector<int> parts(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i)
        parts[i] = alpha.parts().at(perm[i]);
    return Composition(std::move(parts));
}

std::uint64_t binomial(std::int64_t n, std::int64_t r)
{
    if (r < 0 || n < 0 || r > n)
        return 0;
    r = std::min(r, n - r);
    std::uint64_t result = 1;
    for (std::int64_t i = 1; i <= r; ++i)
        result = result * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
    return result;
}

std::uint64_t composition_count(int s, std::size_t slots)
{
    if (s < 0 || slots == 0)
        return 0;
    return binomial(s + static_cast<std::int64_t>(slots) - 1, static_cast<std::int64_t>(slots) - 1);
}

mpz_class multinomial(int k, const Composition& alpha)
{
    if (alpha.degree() != k)
        throw DegreeMismatch("multinomial(" + std::to_string(k) + ", alpha) with |alpha| = "
                             + std::to_string(alpha.degree()));
    mpz_class result;
    mpz_fac_ui(result.get_mpz_t(), static_cast<unsigned long>(k));
    for (int part : alpha.parts()) {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(part));
        result /= f;
    }
    return result;
}

namespace {

void enumerate_into(std::vector<int>& prefix, std::size_t slot, int remaining,
                    std::vector<Composition>& out)
{
    if (slot + 1 == prefix.size()) {
        prefix[slot] = remaining;
        out.emplace_back(prefix);
        return;
    }
    for (int part = remaining; part >= 0; --part) {
        prefix[slot] = part;
        enumerate_into(prefix, slot + 1, remaining - part, out);
    }
}

} // namespace

IndexSet::IndexSet(int degree, std::size_t slots) : degree_(degree), slots_(slots)
{
    if (slots == 0)
        throw SlotOutOfRange("index sets need at least one slot");
    if (degree < 0)
        return;
    elements_.reserve(composition_count(degree, slots));
    std::vector<int> prefix(slots, 0);
    enumerate_into(prefix, 0, degree, elements_);
}

bool IndexSet::contains(const Composition& alpha) const
{
    return alpha.slots() == slots_ && alpha.degree() == degree_ && degree_ >= 0;
}

std::size_t IndexSet::rank(const Composition& alpha) const
{
    if (!contains(alpha))
        throw NotInIndexSet("composition not in I_" + std::to_string(degree_) + "^"
                            + std::to_string(slots_));
    // Count the compositions preceding alpha: at each slot, every larger
    // choice of that part comes first.
    std::size_t r = 0;
    int remaining = degree_;
    for (std::size_t i = 0; i + 1 < slots_; ++i) {
        const std::size_t tail = slots_ - i - 1;
        for (int bigger = remaining; bigger > alpha[i]; --bigger)
            r += composition_count(remaining - bigger, tail);
        remaining -= alpha[i];
    }
    return r;
}

const Composition& IndexSet::unrank(std::size_t i) const
{
    if (i >= elements_.size())
        throw NotInIndexSet("ordinal " + std::to_string(i) + " out of range for a set of size "
                            + std::to_string(elements_.size()));
    return elements_[i];
}

} // namespace ambientkit
