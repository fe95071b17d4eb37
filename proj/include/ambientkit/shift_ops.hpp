#ifndef AMBIENTKIT_SHIFT_OPS_HPP
#define AMBIENTKIT_SHIFT_OPS_HPP

/*
  Weighted shift operators F_j : F_s -> F_{s-1} on coefficient spaces, with

      (F_j A)_alpha = c_j(alpha) * A_{alpha + e_j},

  c_j an affine function of alpha and the weights that depends on the
  family, and the differentials d_1, d_2, d_3 assembled from them as block
  matrices. Matrices are indexed by the enumeration order of IndexSet;
  blocks are stacked top to bottom and left to right.
*/

#include <string>
#include <vector>

#include "ambientkit/composition.hpp"
#include "ambientkit/exact_matrix.hpp"
#include "ambientkit/operator_spec.hpp"

namespace ambientkit {

enum class ShiftVariant { F1, F2, F2Prime, F3, F4, F5 };

std::string_view variant_name(ShiftVariant v);

/// The slot a variant raises (F2' raises slot 2).
std::size_t variant_slot(ShiftVariant v);

bool variant_available(Family family, ShiftVariant v);

/// c_j(alpha) for alpha in the target index set. Throws VariantUnavailable
/// and IndexMismatch (wrong slot count).
Rational shift_coefficient(const OperatorSpec& spec, ShiftVariant variant, const Composition& alpha,
                           const WeightAssignment& w);

/// Matrix of F_j from I_s to I_{s-1}. Empty dimensions come out as zero-size
/// matrices, so s <= 0 is accepted.
ExactMatrix build_shift_matrix(const OperatorSpec& spec, ShiftVariant variant, int source_degree,
                               const WeightAssignment& w);

/// Highest level with a differential: 3 for Tri, 1 for Linear, 2 otherwise.
int max_level(Family family);

/// d_level, mapping (F_{m-level+1})^a to (F_{m-level})^b with m the top degree.
/// Throws LevelUnavailable.
ExactMatrix build_differential(const OperatorSpec& spec, int level, const WeightAssignment& w);

/// Number of stacked copies of F_{m-i} in the i-th term of the complex,
/// i = 0 .. max_level: Tri 1,3,3,1; Linear 1,1; OR families 1,2,1.
std::vector<int> complex_multiplicities(Family family);

struct RelationCheck {
    std::string relation;  ///< e.g. "F3 F2 = F2' F3"
    bool holds = false;
};

struct CommutationReport {
    int degree = 0;
    std::vector<RelationCheck> checks;
    bool all_hold() const;
};

/// Checks the commutation relations between shift operators that make the
/// differentials a complex: compositions take the inner operator at degree
/// s and the outer one at degree s - 1.
CommutationReport verify_commutation_relations(const OperatorSpec& spec, const WeightAssignment& w,
                                               int source_degree);

/// Right inverse G of F_j with rows alpha (alpha_j == 0) zero, mapping
/// I_{s-1} to I_s. Throws DegenerateWeight naming the first alpha whose
/// coefficient vanishes.
ExactMatrix right_inverse_matrix(const OperatorSpec& spec, ShiftVariant variant, int source_degree,
                                 const WeightAssignment& w);

} // namespace ambientkit

#endif
