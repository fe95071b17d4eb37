#ifndef AMBIENTKIT_RANDOM_BATTERY_HPP
#define AMBIENTKIT_RANDOM_BATTERY_HPP

/*
  Seeded generators for test batteries: rational weights and homogeneous
  polynomials. Draws use the raw mt19937_64 stream reduced modulo the range,
  so a seed produces the same battery on every platform.
*/

#include <cstdint>
#include <random>
#include <vector>

#include "ambientkit/polynomial.hpp"
#include "ambientkit/rational.hpp"

namespace ambientkit {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

/// AMBIENTKIT_SEED when set to an unsigned integer, kDefaultSeed otherwise.
std::uint64_t default_seed();

class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }
    /// Uniform-ish integer in [lo, hi].
    long uniform(long lo, long hi);

    /// p/q with p in [-40, 40], q in [3, 17], redrawn until 2w is not an integer.
    Rational generic_weight();
    std::vector<Rational> generic_weights(std::size_t count);

    /// Mixes integers, half-integers, fractions and (when given) the
    /// self-adjoint value, so non-generic points are well represented.
    std::vector<Rational> arbitrary_weights(std::size_t count, const Rational* fsa_value = nullptr);

    /// Homogeneous polynomial of the given degree; every monomial gets a
    /// coefficient from {-3..3}. Never returns zero.
    GradedPolynomial homogeneous(std::size_t variables, int degree);

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// All exponent vectors of total degree d in `variables` variables.
std::vector<Exponents> monomials_of_degree(std::size_t variables, int degree);

} // namespace ambientkit

#endif
