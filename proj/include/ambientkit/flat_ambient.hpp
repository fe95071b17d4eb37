#ifndef AMBIENTKIT_FLAT_AMBIENT_HPP
#define AMBIENTKIT_FLAT_AMBIENT_HPP

/*
  Flat ambient model: polynomials on R^{n+2} with the metric
  diag(-1, +1, ..., +1), so that

      Q = -x_0^2 + x_1^2 + ... + x_{n+1}^2,
      L = -(-d_0^2 + d_1^2 + ... + d_{n+1}^2)    (nonnegative in Riemannian signature),
      X = sum x_i d_i.

  Operators built from coefficient families are evaluated here symbolically,
  giving an oracle for tangentiality that is independent of the shift-operator
  linear algebra.
*/

#include <cstdint>
#include <string>
#include <vector>

#include "ambientkit/family_solver.hpp"
#include "ambientkit/polynomial.hpp"

namespace ambientkit {

class FlatModel {
public:
    /// Throws InvalidSpec for n < 1.
    explicit FlatModel(int n);

    int n() const noexcept { return n_; }
    std::size_t variables() const noexcept { return static_cast<std::size_t>(n_) + 2; }

    GradedPolynomial quadratic_form() const;
    GradedPolynomial laplacian(const GradedPolynomial& p) const;
    GradedPolynomial laplacian_power(const GradedPolynomial& p, int k) const;
    GradedPolynomial euler_operator(const GradedPolynomial& p) const;
    /// <grad p, grad q> = -d0p d0q + sum_i dip diq.
    GradedPolynomial gradient_pairing(const GradedPolynomial& p, const GradedPolynomial& q) const;

    /// Remainder of p on division by Q as a quadratic in x_0: every x_0^2 is
    /// replaced by x_1^2 + ... + x_{n+1}^2 until x_0 appears at most linearly.
    GradedPolynomial remainder_mod_Q(const GradedPolynomial& p) const;

    /// The point (1+|t|^2, 2t_1, ..., 2t_n, 1-|t|^2) on the null cone Q = 0.
    std::vector<Rational> cone_point(const std::vector<Rational>& t) const;

private:
    void check(const GradedPolynomial& p) const;

    int n_;
};

struct Sl2Check {
    bool holds = false;
    GradedPolynomial lhs;  ///< [L^k, Q] p
    GradedPolynomial rhs;  ///< -2k L^{k-1} (2X + n + 4 - 2k) p
};

/// Throws InvalidSpec for k < 1 and NonHomogeneousInput.
Sl2Check verify_sl2_commutator(const FlatModel& model, int k, const GradedPolynomial& p);

/// Evaluates the operator with coefficients A on homogeneous inputs. Throws
/// NonHomogeneousInput, InvariantModeUnsupported (l > 0), InvalidSpec (input
/// count) and ShapeMismatch (variable count).
GradedPolynomial apply_operator(const FlatModel& model, const CoefficientFamily& a,
                                const std::vector<GradedPolynomial>& inputs);

/// Sum of apply_operator over the descriptor's cyclic orderings.
GradedPolynomial apply_symmetrized(const FlatModel& model, const SymmetrizedOperator& op,
                                   const std::vector<GradedPolynomial>& inputs);

struct ProbeTrial {
    bool remainder_zero = false;   ///< D(.., Q v, ..) lies in the ideal (Q)
    bool commutator_zero = false;  ///< D(.., Q v, ..) == Q D(.., v, ..)
};

struct SlotProbe {
    std::size_t slot = 0;
    std::vector<ProbeTrial> trials;
    std::string first_failure;
    bool all_zero() const;
};

struct TangentialityReport {
    std::uint64_t seed = 0;
    std::vector<SlotProbe> slots;
    bool all_zero() const;
};

struct ProbeOptions {
    std::size_t trials = 25;
    std::uint64_t seed = 0;
    /// Refuse families outside ker d_1 (PreconditionViolated). Disabled only
    /// for mutation controls.
    bool require_kernel = true;
};

/// Probes the given 1-based slot; weights must be integers with w_j >= 2
/// (PreconditionViolated otherwise). The family's own weights are used.
SlotProbe tangentiality_probe(const FlatModel& model, const CoefficientFamily& a, std::size_t slot,
                              const ProbeOptions& options);

/// All slots in turn; slot j is seeded with seed + j.
TangentialityReport tangentiality_probe_all(const FlatModel& model, const CoefficientFamily& a,
                                            const ProbeOptions& options);

/// L(u1 u2 u3) + u2 u3 L u1 + u1 u3 L u2 + u1 u2 L u3
///   == u1 L(u2 u3) + u2 L(u1 u3) + u3 L(u1 u2).
bool verify_triple_product_identity(const FlatModel& model, const GradedPolynomial& u1,
                                    const GradedPolynomial& u2, const GradedPolynomial& u3);

struct SpanMeasurement {
    int n = 0;
    int k = 0;
    std::size_t members = 0;
    std::size_t triples = 0;
    std::size_t dimension = 0;
    std::uint64_t seed = 0;
};

/// Dimension of the span of the symmetrized kernel operators (Tri at the
/// self-adjoint weights) evaluated on `triples` seeded random input triples.
SpanMeasurement measure_symmetrized_span(int n, int k, std::size_t triples, std::uint64_t seed);

} // namespace ambientkit

#endif
