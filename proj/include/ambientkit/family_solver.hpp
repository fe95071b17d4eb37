#ifndef AMBIENTKIT_FAMILY_SOLVER_HPP
#define AMBIENTKIT_FAMILY_SOLVER_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ambientkit/composition.hpp"
#include "ambientkit/exact_matrix.hpp"
#include "ambientkit/operator_spec.hpp"

namespace ambientkit {

/// A rational-valued function on I_m^slots (m the spec's top degree), stored
/// in enumeration order.
class CoefficientFamily {
public:
    /// Throws IndexMismatch when values.size() != |I_m|.
    CoefficientFamily(OperatorSpec spec, WeightAssignment weights, std::vector<Rational> values);

    const OperatorSpec& spec() const noexcept { return spec_; }
    const WeightAssignment& weights() const noexcept { return weights_; }
    const IndexSet& index() const noexcept { return index_; }
    const std::vector<Rational>& values() const noexcept { return values_; }

    /// A_alpha; throws NotInIndexSet.
    const Rational& operator()(const Composition& alpha) const { return values_[index_.rank(alpha)]; }
    Rational& operator()(const Composition& alpha) { return values_[index_.rank(alpha)]; }

    friend bool operator==(const CoefficientFamily& a, const CoefficientFamily& b)
    {
        return a.spec_ == b.spec_ && a.weights_ == b.weights_ && a.values_ == b.values_;
    }

private:
    OperatorSpec spec_;
    WeightAssignment weights_;
    IndexSet index_;
    std::vector<Rational> values_;
};

struct FamilyBasis {
    OperatorSpec spec;
    WeightAssignment weights;
    std::vector<CoefficientFamily> members;
    /// Tri only: whether the weights lie in the generic set. Unset for the
    /// other families, which have no stated generic set.
    std::optional<bool> generic;
    bool boundary_constraints = false;

    std::size_t dimension() const noexcept { return members.size(); }
};

struct SolveOptions {
    /// Append the extra equalities needed at n = 2k: A at m e_j agree for
    /// j in {1,3,4,5} (Tri), {1,2,3} (OR_OUTER) and {3,4} (OR_INNER).
    bool boundary_constraints = false;
};

/// Guaranteed dimension of the solution space: k+1 (Tri), m+1 (Linear,
/// OR_INNER, OR_INNER2), 1 (OR_OUTER), m the top degree.
std::size_t family_lower_bound(const OperatorSpec& spec);

/// Matrix of d_1, plus the boundary rows when requested.
ExactMatrix solver_matrix(const OperatorSpec& spec, const WeightAssignment& w, SolveOptions options = {});

/// Kernel of d_1 in echelon-normalized form.
FamilyBasis solve_family(const OperatorSpec& spec, const WeightAssignment& w, SolveOptions options = {});

/// dim ker d_1 without building a basis.
std::size_t kernel_dimension(const OperatorSpec& spec, const WeightAssignment& w, SolveOptions options = {});

struct ResidualFamily {
    std::string name;             ///< "B1", "B2", ...
    std::vector<Rational> values; ///< over I_{m-1} in enumeration order
    bool is_zero() const;
};

struct RecurrenceReport {
    std::vector<ResidualFamily> residuals;
    bool all_zero() const;
    /// "B2 at (0,1,0,0,0) = 3/4" for the first nonzero residual, empty otherwise.
    std::string first_violation;
};

/// Evaluates the tangentiality recurrences directly from their closed-form
/// coefficients (no shift matrices involved). Throws IndexMismatch when A is
/// indexed for a different spec.
RecurrenceReport verify_recurrences(const OperatorSpec& spec, const WeightAssignment& w,
                                    const CoefficientFamily& a);

/// Alternating sum of the term dimensions of the complex for top degree m.
std::int64_t euler_characteristic(Family family, int top_degree);

/// Equal weights -(n-2k)/r for the family's r-1 inputs.
WeightAssignment fsa_weights(const OperatorSpec& spec);

struct SymmetryReport {
    bool recurrences_hold = true;  ///< the index-permutation recurrences
    bool swap_3_4 = false;         ///< A(a1,a2,a3,a4,a5) = A(a1,a2,a4,a3,a5)
    bool swap_1_5 = false;         ///< A(a1,...,a5)     = A(a5,a2,a3,a4,a1)
    bool prime = false;            ///< A(a) = A(a3,a2,a1,a5,a4)
    std::string first_violation;

    bool all_hold() const { return recurrences_hold && swap_3_4 && swap_1_5 && prime; }
};

/// The three permutation checks alone, for any Tri family.
SymmetryReport check_permutation_symmetries(const CoefficientFamily& a);

/// Full check for a Tri family at the self-adjoint weights with n > 2k:
/// evaluates the integer-coefficient recurrences first, then the
/// permutation symmetries. Throws PreconditionViolated on wrong family,
/// weights, or n <= 2k.
SymmetryReport verify_fsa_symmetries(const CoefficientFamily& a);

/// D'(u1,u2,u3) = D(u1,u2,u3) + D(u2,u3,u1) + D(u3,u1,u2).
struct SymmetrizedOperator {
    CoefficientFamily coefficients;
    /// Input orderings: the j-th summand feeds (u[o[0]], u[o[1]], u[o[2]]).
    std::array<std::array<std::size_t, 3>, 3> orderings{{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}};
};

/// Throws PreconditionViolated unless A is a Tri family at fsa weights.
SymmetrizedOperator symmetrize_family(const CoefficientFamily& a);

struct TwoSlotReport {
    bool hypothesis_holds = false;  ///< f(a1+1) A(a1+1,a2) = f(a2+1) A(a1,a2+1) on I_k^2
    bool symmetric = false;         ///< A(a1,a2) = A(a2,a1) on I_{k+1}^2
};

/// `values` is a function on I_{k+1}^2 in enumeration order. f is evaluated
/// on 1..k+1, the only arguments the hypothesis uses; a zero there throws
/// ZeroDenominator.
TwoSlotReport check_two_slot_symmetry(int k, std::span<const Rational> values,
                                      const std::function<Rational(int)>& f);

/// Closed-form OR_OUTER solution (l = 0, fsa weights):
///   A_a = prod_i P(k - a_i) / P(k)^2,  P(m) = (c)(c+1)...(c+m-1),  c = (n-2k)/6.
/// Throws PreconditionViolated when n <= 2k.
CoefficientFamily or_closed_form(int n, int k);

/// The same product without the n > 2k restriction. Defined whenever P(k) != 0,
/// which holds for every odd n; throws DegenerateWeight otherwise.
CoefficientFamily or_pochhammer_form(int n, int k);

struct GenericExactnessReport {
    bool generic = false;
    std::vector<std::string> genericity_failures;
    ExactnessReport at_first;      ///< ker d2 = im d1
    ExactnessReport at_second;     ///< ker d3 = im d2
    bool last_surjective = false;  ///< im d3 = F_{k-3}
    std::size_t kernel_dimension = 0;
    std::int64_t euler = 0;
    bool kernel_matches_euler = false;
    bool lower_bound_holds = false;

    bool all_exact() const
    {
        return at_first.exact && at_second.exact && last_surjective && kernel_matches_euler;
    }
};

/// Tri only (PreconditionViolated otherwise). Non-generic weights are
/// reported in genericity_failures and the checks still run.
GenericExactnessReport certify_generic_exactness(const OperatorSpec& spec, const WeightAssignment& w);

} // namespace ambientkit

#endif
