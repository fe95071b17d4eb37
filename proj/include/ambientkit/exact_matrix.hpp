#ifndef AMBIENTKIT_EXACT_MATRIX_HPP
#define AMBIENTKIT_EXACT_MATRIX_HPP

/*
  Exact sparse matrices over the rationals, and the elimination kernels used
  to compute ranks, reduced row echelon forms and kernel bases.

  Elimination is fraction-free. Rows are first scaled to primitive integer
  vectors; small matrices (both dimensions below kDenseCutoff) go through a
  dense Bareiss pass with column-major pivot search (leftmost column, then
  smallest row index), larger ones through a sparse row-by-row reduction that
  removes the content of every combined row. Either way the echelon rows are
  then back-substituted in integers and normalized to rationals only at the
  end. The reduced row echelon form of a matrix is unique, so both paths
  return bit-identical results.
*/

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "ambientkit/rational.hpp"

namespace ambientkit {

struct MatrixEntry {
    std::size_t col;
    Rational value;

    friend bool operator==(const MatrixEntry&, const MatrixEntry&) = default;
};

using SparseRow = std::vector<MatrixEntry>;
using DenseVector = std::vector<Rational>;

class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols);

    static ExactMatrix identity(std::size_t n);
    static ExactMatrix from_dense(const std::vector<DenseVector>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t nonzeros() const noexcept;
    bool is_zero() const noexcept { return nonzeros() == 0; }

    /// Entry lookup; zero when nothing is stored.
    Rational at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, const Rational& value);
    void add_to(std::size_t r, std::size_t c, const Rational& value);

    /// Row r as (column, value) pairs in increasing column order.
    std::span<const MatrixEntry> row(std::size_t r) const { return data_.at(r); }

    /// Copies `block` (times `scale`) into this matrix with its top-left corner
    /// at (row_offset, col_offset), adding to whatever is already there.
    void add_block(std::size_t row_offset, std::size_t col_offset, const ExactMatrix& block,
                   const Rational& scale = Rational(1));

    std::vector<DenseVector> to_dense() const;
    DenseVector apply(std::span<const Rational> v) const;

    friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;
    friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b);
    friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<SparseRow> data_;
};

inline constexpr std::size_t kDenseCutoff = 64;

struct EchelonForm {
    ExactMatrix reduced;                     ///< rank nonzero rows first, leading entries 1
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_columns;  ///< increasing
};

struct KernelBasis {
    std::size_t ambient_dimension = 0;
    std::vector<DenseVector> vectors;  ///< first nonzero entry of each is 1

    std::size_t dimension() const noexcept { return vectors.size(); }
};

struct ExactnessReport {
    bool is_complex = false;     ///< outgoing * incoming == 0
    std::size_t rank_in = 0;     ///< dim im(incoming)
    std::size_t nullity_out = 0; ///< dim ker(outgoing)
    bool exact = false;          ///< is_complex and rank_in == nullity_out
};

enum class EliminationPath { Automatic, Dense, Sparse };

EchelonForm reduced_row_echelon(const ExactMatrix& m, EliminationPath path = EliminationPath::Automatic);

/// Rank via forward elimination only; cheaper than a full echelon form.
std::size_t rank(const ExactMatrix& m, EliminationPath path = EliminationPath::Automatic);

/// Free-variable back-substitution in column order; size == cols - rank.
KernelBasis kernel_basis(const ExactMatrix& m);

/// outer * inner; throws ShapeMismatch when outer.cols != inner.rows.
ExactMatrix compose(const ExactMatrix& outer, const ExactMatrix& inner);

/// Exactness of  . --incoming--> V --outgoing--> .  at V.
ExactnessReport certify_exactness(const ExactMatrix& incoming, const ExactMatrix& outgoing);

/// Rank of a list of vectors of equal length (rows of a matrix).
std::size_t span_dimension(const std::vector<DenseVector>& vectors);

} // namespace ambientkit

#endif
