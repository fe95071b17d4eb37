#ifndef AMBIENTKIT_POLYNOMIAL_HPP
#define AMBIENTKIT_POLYNOMIAL_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "ambientkit/rational.hpp"

namespace ambientkit {

using Exponents = std::vector<int>;

/// Multivariate polynomial with rational coefficients in a fixed number of
/// variables x_0 ... x_{N-1}. Terms are kept in a sorted map with no zero
/// coefficients, so equality is structural.
class GradedPolynomial {
public:
    explicit GradedPolynomial(std::size_t variables = 0) : vars_(variables) {}

    static GradedPolynomial constant(std::size_t variables, const Rational& c);
    static GradedPolynomial variable(std::size_t variables, std::size_t i);
    /// Throws ShapeMismatch when exps.size() != variables.
    static GradedPolynomial monomial(std::size_t variables, Exponents exps, const Rational& c = Rational(1));

    std::size_t variables() const noexcept { return vars_; }
    const std::map<Exponents, Rational>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    void add_term(const Exponents& exps, const Rational& c);

    /// Highest total degree; -1 for the zero polynomial.
    int degree() const;
    /// The zero polynomial counts as homogeneous.
    bool is_homogeneous() const;
    /// Degree when homogeneous and nonzero.
    std::optional<int> homogeneous_degree() const;
    GradedPolynomial component(int degree) const;

    GradedPolynomial derivative(std::size_t i) const;
    /// Throws ShapeMismatch on a wrong point length.
    Rational evaluate(std::span<const Rational> point) const;

    GradedPolynomial& operator+=(const GradedPolynomial& o);
    GradedPolynomial& operator-=(const GradedPolynomial& o);
    GradedPolynomial& operator*=(const Rational& c);

    friend GradedPolynomial operator+(GradedPolynomial a, const GradedPolynomial& b) { return a += b; }
    friend GradedPolynomial operator-(GradedPolynomial a, const GradedPolynomial& b) { return a -= b; }
    friend GradedPolynomial operator-(GradedPolynomial a) { return a *= Rational(-1); }
    friend GradedPolynomial operator*(GradedPolynomial a, const Rational& c) { return a *= c; }
    friend GradedPolynomial operator*(const Rational& c, GradedPolynomial a) { return a *= c; }
    friend GradedPolynomial operator*(const GradedPolynomial& a, const GradedPolynomial& b);

    friend bool operator==(const GradedPolynomial&, const GradedPolynomial&) = default;

private:
    void check_compatible(const GradedPolynomial& o) const;

    std::size_t vars_;
    std::map<Exponents, Rational> terms_;
};

} // namespace ambientkit

#endif
