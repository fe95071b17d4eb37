#include "ambientkit/exact_matrix.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "ambientkit/errors.hpp"

namespace ambientkit {

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows)
{
}

ExactMatrix ExactMatrix::identity(std::size_t n)
{
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.data_[i].push_back({i, Rational(1)});
    return m;
}

ExactMatrix ExactMatrix::from_dense(const std::vector<DenseVector>& rows)
{
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    ExactMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw ShapeMismatch("ragged dense matrix");
        for (std::size_t c = 0; c < cols; ++c) {
            if (rows[r][c] != 0)
                m.data_[r].push_back({c, rows[r][c]});
        }
    }
    return m;
}

std::size_t ExactMatrix::nonzeros() const noexcept
{
    std::size_t n = 0;
    for (const auto& row : data_)
        n += row.size();
    return n;
}

namespace {

template <typename Row>
auto find_col(Row& row, std::size_t c)
{
    return std::lower_bound(row.begin(), row.end(), c,
                            [](const MatrixEntry& e, std::size_t col) { return e.col < col; });
}

void check_bounds(std::size_t r, std::size_t c, std::size_t rows, std::size_t cols)
{
    if (r >= rows || c >= cols)
        throw ShapeMismatch("entry (" + std::to_string(r) + "," + std::to_string(c)
                            + ") outside a " + std::to_string(rows) + "x" + std::to_string(cols)
                            + " matrix");
}

} // namespace

Rational ExactMatrix::at(std::size_t r, std::size_t c) const
{
    check_bounds(r, c, rows_, cols_);
    const auto& row = data_[r];
    auto it = find_col(row, c);
    return it != row.end() && it->col == c ? it->value : Rational(0);
}

void ExactMatrix::set(std::size_t r, std::size_t c, const Rational& value)
{
    check_bounds(r, c, rows_, cols_);
    auto& row = data_[r];
    auto it = find_col(row, c);
    const bool present = it != row.end() && it->col == c;
    if (value == 0) {
        if (present)
            row.erase(it);
    } else if (present) {
        it->value = value;
    } else {
        row.insert(it, {c, value});
    }
}

void ExactMatrix::add_to(std::size_t r, std::size_t c, const Rational& value)
{
    if (value == 0)
        return;
    check_bounds(r, c, rows_, cols_);
    auto& row = data_[r];
    auto it = find_col(row, c);
    if (it != row.end() && it->col == c) {
        it->value += value;
        if (it->value == 0)
            row.erase(it);
    } else {
        row.insert(it, {c, value});
    }
}

void ExactMatrix::add_block(std::size_t row_offset, std::size_t col_offset,
                            const ExactMatrix& block, const Rational& scale)
{
    if (row_offset + block.rows() > rows_ || col_offset + block.cols() > cols_)
        throw ShapeMismatch("block does not fit");
    if (scale == 0)
        return;
    for (std::size_t r = 0; r < block.rows(); ++r) {
        for (const auto& e : block.data_[r])
            add_to(row_offset + r, col_offset + e.col, scale * e.value);
    }
}

std::vector<DenseVector> ExactMatrix::to_dense() const
{
    std::vector<DenseVector> out(rows_, DenseVector(cols_));
    for (std::size_t r = 0; r < rows_; ++r) {
        for (const auto& e : data_[r])
            out[r][e.col] = e.value;
    }
    return out;
}

DenseVector ExactMatrix::apply(std::span<const Rational> v) const
{
    if (v.size() != cols_)
        throw ShapeMismatch("vector length " + std::to_string(v.size()) + " vs "
                            + std::to_string(cols_) + " columns");
    DenseVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (const auto& e : data_[r])
            out[r] += e.value * v[e.col];
    }
    return out;
}

ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeMismatch("sum of differently shaped matrices");
    ExactMatrix out = a;
    out.add_block(0, 0, b);
    return out;
}

ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeMismatch("difference of differently shaped matrices");
    ExactMatrix out = a;
    out.add_block(0, 0, b, Rational(-1));
    return out;
}

ExactMatrix compose(const ExactMatrix& outer, const ExactMatrix& inner)
{
    if (outer.cols() != inner.rows())
        throw ShapeMismatch("cannot compose " + std::to_string(outer.rows()) + "x"
                            + std::to_string(outer.cols()) + " with "
                            + std::to_string(inner.rows()) + "x" + std::to_string(inner.cols()));
    ExactMatrix out(outer.rows(), inner.cols());
    DenseVector acc(inner.cols());
    std::vector<char> touched(inner.cols(), 0);
    std::vector<std::size_t> cols;
    for (std::size_t r = 0; r < outer.rows(); ++r) {
        cols.clear();
        for (const auto& e : outer.row(r)) {
            for (const auto& f : inner.row(e.col)) {
                if (!touched[f.col]) {
                    touched[f.col] = 1;
                    cols.push_back(f.col);
                    acc[f.col] = 0;
                }
                acc[f.col] += e.value * f.value;
            }
        }
        std::sort(cols.begin(), cols.end());
        for (std::size_t c : cols) {
            touched[c] = 0;
            if (acc[c] != 0)
                out.set(r, c, acc[c]);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Fraction-free elimination
// ---------------------------------------------------------------------------

namespace {

struct IntEntry {
    std::size_t col;
    Integer value;
};
using IntRow = std::vector<IntEntry>;

/// Divides out the content and makes the leading entry positive.
void make_primitive(IntRow& row)
{
    if (row.empty())
        return;
    Integer g = 0;
    for (const auto& e : row) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.value.get_mpz_t());
        if (g == 1)
            break;
    }
    if (row.front().value < 0)
        g = -g;
    if (g != 1) {
        for (auto& e : row)
            mpz_divexact(e.value.get_mpz_t(), e.value.get_mpz_t(), g.get_mpz_t());
    }
}

IntRow to_integer_row(std::span<const MatrixEntry> row)
{
    Integer lcm = 1;
    for (const auto& e : row)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), e.value.get_den_mpz_t());
    IntRow out;
    out.reserve(row.size());
    for (const auto& e : row)
        out.push_back({e.col, Integer(e.value.get_num() * (lcm / e.value.get_den()))});
    make_primitive(out);
    return out;
}

/// Returns b*target - a*source where a, b are the entries of target and
/// source at column `col`, divided by gcd(a, b); the entry at `col` cancels.
IntRow eliminate(const IntRow& target, const IntRow& source, std::size_t col)
{
    auto entry = [](const IntRow& row, std::size_t c) -> const Integer& {
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const IntEntry& e, std::size_t x) { return e.col < x; });
        return it->value;
    };
    Integer a = entry(target, col);
    Integer b = entry(source, col);
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(b.get_mpz_t(), b.get_mpz_t(), g.get_mpz_t());

    IntRow out;
    out.reserve(target.size() + source.size());
    auto t = target.begin();
    auto s = source.begin();
    Integer v;
    while (t != target.end() || s != source.end()) {
        if (s == source.end() || (t != target.end() && t->col < s->col)) {
            out.push_back({t->col, Integer(b * t->value)});
            ++t;
        } else if (t == target.end() || s->col < t->col) {
            out.push_back({s->col, Integer(-a * s->value)});
            ++s;
        } else {
            v = b * t->value;
            mpz_submul(v.get_mpz_t(), a.get_mpz_t(), s->value.get_mpz_t());
            if (v != 0)
                out.push_back({t->col, v});
            ++t;
            ++s;
        }
    }
    make_primitive(out);
    return out;
}

/// Echelon rows (primitive, strictly increasing leading columns).
using Echelon = std::vector<IntRow>;

Echelon sparse_forward(const ExactMatrix& m)
{
    std::vector<std::optional<IntRow>> pivot_at(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        IntRow row = to_integer_row(m.row(r));
        while (!row.empty()) {
            const std::size_t lead = row.front().col;
            if (!pivot_at[lead]) {
                pivot_at[lead] = std::move(row);
                break;
            }
            row = eliminate(row, *pivot_at[lead], lead);
        }
    }
    Echelon out;
    for (auto& p : pivot_at) {
        if (p)
            out.push_back(std::move(*p));
    }
    return out;
}

Echelon dense_bareiss(const ExactMatrix& m)
{
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        for (const auto& e : to_integer_row(m.row(r)))
            a[r][e.col] = e.value;
    }

    Integer previous = 1;
    std::size_t pivot_row = 0;
    std::vector<std::size_t> pivot_cols;
    for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
        std::size_t found = pivot_row;
        while (found < rows && a[found][c] == 0)
            ++found;
        if (found == rows)
            continue;
        std::swap(a[pivot_row], a[found]);
        const Integer& p = a[pivot_row][c];
        for (std::size_t i = pivot_row + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                Integer& x = a[i][j];
                x *= p;
                mpz_submul(x.get_mpz_t(), a[i][c].get_mpz_t(), a[pivot_row][j].get_mpz_t());
                mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), previous.get_mpz_t());
            }
            a[i][c] = 0;
        }
        previous = p;
        pivot_cols.push_back(c);
        ++pivot_row;
    }

    Echelon out;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) {
        IntRow row;
        for (std::size_t j = pivot_cols[i]; j < cols; ++j) {
            if (a[i][j] != 0)
                row.push_back({j, a[i][j]});
        }
        make_primitive(row);
        out.push_back(std::move(row));
    }
    return out;
}

Echelon forward(const ExactMatrix& m, EliminationPath path)
{
    if (path == EliminationPath::Automatic)
        path = (m.rows() < kDenseCutoff && m.cols() < kDenseCutoff) ? EliminationPath::Dense
                                                                      : EliminationPath::Sparse;
    return path == EliminationPath::Dense ? dense_bareiss(m) : sparse_forward(m);
}

/// Clears every entry above each pivot, bottom-up.
void back_substitute(Echelon& rows)
{
    for (std::size_t i = rows.size(); i-- > 0;) {
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            const std::size_t col = rows[j].front().col;
            auto it = std::lower_bound(rows[i].begin(), rows[i].end(), col,
                                       [](const IntEntry& e, std::size_t x) { return e.col < x; });
            if (it != rows[i].end() && it->col == col)
                rows[i] = eliminate(rows[i], rows[j], col);
        }
    }
}

} // namespace

EchelonForm reduced_row_echelon(const ExactMatrix& m, EliminationPath path)
{
    Echelon rows = forward(m, path);
    back_substitute(rows);

    EchelonForm out;
    out.rank = rows.size();
    out.reduced = ExactMatrix(m.rows(), m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Integer& lead = rows[i].front().value;
        out.pivot_columns.push_back(rows[i].front().col);
        for (const auto& e : rows[i]) {
            Rational v(e.value, lead);
            v.canonicalize();
            out.reduced.set(i, e.col, v);
        }
    }
    return out;
}

std::size_t rank(const ExactMatrix& m, EliminationPath path)
{
    return forward(m, path).size();
}

KernelBasis kernel_basis(const ExactMatrix& m)
{
    const EchelonForm ech = reduced_row_echelon(m);
    KernelBasis basis;
    basis.ambient_dimension = m.cols();

    std::vector<char> is_pivot(m.cols(), 0);
    for (std::size_t c : ech.pivot_columns)
        is_pivot[c] = 1;

    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        DenseVector v(m.cols());
        v[free] = 1;
        for (std::size_t i = 0; i < ech.rank; ++i)
            v[ech.pivot_columns[i]] = -ech.reduced.at(i, free);
        auto first = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
        const Rational scale = *first;
        if (scale != 1) {
            for (auto& x : v)
                x /= scale;
        }
        basis.vectors.push_back(std::move(v));
    }
    return basis;
}

ExactnessReport certify_exactness(const ExactMatrix& incoming, const ExactMatrix& outgoing)
{
    ExactnessReport report;
    report.is_complex = compose(outgoing, incoming).is_zero();
    report.rank_in = rank(incoming);
    report.nullity_out = outgoing.cols() - rank(outgoing);
    report.exact = report.is_complex && report.rank_in == report.nullity_out;
    return report;
}

std::size_t span_dimension(const std::vector<DenseVector>& vectors)
{
    if (vectors.empty())
        return 0;
    return rank(ExactMatrix::from_dense(vectors));
}

} // namespace ambientkit
