#include "ambientkit/shift_ops.hpp"

#include <sstream>

#include "ambientkit/errors.hpp"

namespace ambientkit {

std::string_view variant_name(ShiftVariant v)
{
    switch (v) {
    case ShiftVariant::F1: return "F1";
    case ShiftVariant::F2: return "F2";
    case ShiftVariant::F2Prime: return "F2'";
    case ShiftVariant::F3: return "F3";
    case ShiftVariant::F4: return "F4";
    case ShiftVariant::F5: return "F5";
    }
    return "?";
}

std::size_t variant_slot(ShiftVariant v)
{
    switch (v) {
    case ShiftVariant::F1: return 1;
    case ShiftVariant::F2:
    case ShiftVariant::F2Prime: return 2;
    case ShiftVariant::F3: return 3;
    case ShiftVariant::F4: return 4;
    case ShiftVariant::F5: return 5;
    }
    return 0;
}

bool variant_available(Family family, ShiftVariant v)
{
    switch (v) {
    case ShiftVariant::F1:
    case ShiftVariant::F2:
    case ShiftVariant::F3: return true;
    case ShiftVariant::F2Prime: return family == Family::Tri || family == Family::OrInner2;
    case ShiftVariant::F4: return family_slots(family) >= 4;
    case ShiftVariant::F5: return family == Family::Tri;
    }
    return false;
}

Rational shift_coefficient(const OperatorSpec& spec, ShiftVariant variant, const Composition& alpha,
                           const WeightAssignment& w)
{
    const Family family = spec.family();
    if (!variant_available(family, variant))
        throw VariantUnavailable(std::string(variant_name(variant)) + " is not defined for "
                                 + std::string(family_name(family)));
    if (alpha.slots() != spec.slots())
        throw IndexMismatch("composition has " + std::to_string(alpha.slots()) + " slots, "
                            + std::string(family_name(family)) + " uses "
                            + std::to_string(spec.slots()));

    const Rational half_n = ratio(spec.n(), 2);
    const Rational total = w.total();
    const int k = spec.k();
    auto a = [&alpha](std::size_t j) { return alpha(j); };

    // Common to every family: the outermost Laplacian.
    if (variant == ShiftVariant::F1)
        return half_n + total - 2 * k + a(1) + 1;

    switch (family) {
    case Family::Tri:
        switch (variant) {
        case ShiftVariant::F2: return half_n + w(1) + w(2) - a(2) - 2 * a(3) - 2 * a(4) - 1;
        case ShiftVariant::F2Prime: return half_n + w(1) + w(2) - a(2) - 2 * a(3) - 2 * a(4) - 3;
        case ShiftVariant::F3: return half_n + w(1) - a(3) - 1;
        case ShiftVariant::F4: return half_n + w(2) - a(4) - 1;
        case ShiftVariant::F5: return half_n + w(3) - a(5) - 1;
        default: break;
        }
        break;
    case Family::Linear:
        switch (variant) {
        case ShiftVariant::F2: return half_n + total - 2 * spec.l2() - a(2) - 2 * a(3) - 1;
        case ShiftVariant::F3: return half_n + total - a(3) - 1;
        default: break;
        }
        break;
    case Family::OrOuter:
        switch (variant) {
        case ShiftVariant::F2: return half_n + w(1) - a(2) - 1;
        case ShiftVariant::F3: return half_n + w(2) - a(3) - 1;
        default: break;
        }
        break;
    case Family::OrInner:
        switch (variant) {
        case ShiftVariant::F2: return half_n + w(1) - a(2) - 1;
        case ShiftVariant::F3: return half_n + w(2) - 2 * spec.l() - a(3) - 2 * a(4) - 1;
        case ShiftVariant::F4: return half_n + w(2) - a(4) - 1;
        default: break;
        }
        break;
    case Family::OrInner2:
        switch (variant) {
        case ShiftVariant::F2: return half_n + total - a(2) - 2 * a(3) - 2 * a(4) - 1;
        case ShiftVariant::F2Prime: return half_n + total - a(2) - 2 * a(3) - 2 * a(4) - 3;
        case ShiftVariant::F3: return half_n + w(1) - a(3) - 1;
        case ShiftVariant::F4: return half_n + w(2) - a(4) - 1;
        default: break;
        }
        break;
    }
    throw VariantUnavailable(std::string(variant_name(variant)));
}

ExactMatrix build_shift_matrix(const OperatorSpec& spec, ShiftVariant variant, int source_degree,
                               const WeightAssignment& w)
{
    if (!variant_available(spec.family(), variant))
        throw VariantUnavailable(std::string(variant_name(variant)) + " is not defined for "
                                 + std::string(family_name(spec.family())));
    const IndexSet source(source_degree, spec.slots());
    const IndexSet target(source_degree - 1, spec.slots());
    const std::size_t slot = variant_slot(variant);

    ExactMatrix m(target.size(), source.size());
    for (std::size_t r = 0; r < target.size(); ++r) {
        const Composition& alpha = target.unrank(r);
        m.set(r, source.rank(bump(alpha, slot)), shift_coefficient(spec, variant, alpha, w));
    }
    return m;
}

int max_level(Family family)
{
    switch (family) {
    case Family::Tri: return 3;
    case Family::Linear: return 1;
    default: return 2;
    }
}

std::vector<int> complex_multiplicities(Family family)
{
    switch (family) {
    case Family::Tri: return {1, 3, 3, 1};
    case Family::Linear: return {1, 1};
    default: return {1, 2, 1};
    }
}

namespace {

using V = ShiftVariant;

/// One block entry: a signed sum of shift operators.
using Term = std::vector<std::pair<int, ShiftVariant>>;
using BlockLayout = std::vector<std::vector<Term>>;

Term plus(std::initializer_list<ShiftVariant> vs)
{
    Term t;
    for (auto v : vs)
        t.emplace_back(1, v);
    return t;
}

Term minus(std::initializer_list<ShiftVariant> vs)
{
    Term t;
    for (auto v : vs)
        t.emplace_back(-1, v);
    return t;
}

Term diff(ShiftVariant a, ShiftVariant b) { return {{1, a}, {-1, b}}; }

BlockLayout layout(Family family, int level)
{
    switch (family) {
    case Family::Tri:
        if (level == 1)
            return {{plus({V::F1, V::F2, V::F3})},
                    {plus({V::F1, V::F2, V::F4})},
                    {plus({V::F1, V::F5})}};
        if (level == 2)
            return {{minus({V::F1, V::F5}), plus({V::F1, V::F5}), diff(V::F3, V::F4)},
                    {plus({V::F1, V::F5}), {}, minus({V::F1, V::F2, V::F3})},
                    {minus({V::F1, V::F2Prime, V::F4}), plus({V::F1, V::F2Prime, V::F3}), {}}};
        return {{plus({V::F1, V::F2Prime, V::F3}), diff(V::F3, V::F4), minus({V::F1, V::F5})}};
    case Family::Linear:
        return {{plus({V::F1, V::F2, V::F3})}};
    case Family::OrOuter:
        if (level == 1)
            return {{plus({V::F1, V::F2})}, {plus({V::F1, V::F3})}};
        return {{plus({V::F1, V::F3}), minus({V::F1, V::F2})}};
    case Family::OrInner:
        if (level == 1)
            return {{plus({V::F1, V::F2})}, {plus({V::F1, V::F3, V::F4})}};
        return {{plus({V::F1, V::F3, V::F4}), minus({V::F1, V::F2})}};
    case Family::OrInner2:
        if (level == 1)
            return {{plus({V::F1, V::F2, V::F3})}, {plus({V::F1, V::F2, V::F4})}};
        return {{plus({V::F1, V::F2Prime, V::F4}), minus({V::F1, V::F2Prime, V::F3})}};
    }
    return {};
}

} // namespace

ExactMatrix build_differential(const OperatorSpec& spec, int level, const WeightAssignment& w)
{
    if (level < 1 || level > max_level(spec.family()))
        throw LevelUnavailable("d" + std::to_string(level) + " does not exist for "
                               + std::string(family_name(spec.family())));

    const int source_degree = spec.top_degree() - (level - 1);
    const std::size_t slots = spec.slots();
    const std::size_t block_cols = composition_count(source_degree, slots);
    const std::size_t block_rows = composition_count(source_degree - 1, slots);
    const BlockLayout blocks = layout(spec.family(), level);

    // Each variant's matrix is built once and reused across blocks.
    std::vector<std::pair<ShiftVariant, ExactMatrix>> cache;
    auto shift = [&](ShiftVariant v) -> const ExactMatrix& {
        for (const auto& [key, m] : cache) {
            if (key == v)
                return m;
        }
        cache.emplace_back(v, build_shift_matrix(spec, v, source_degree, w));
        return cache.back().second;
    };

    ExactMatrix d(blocks.size() * block_rows, blocks.front().size() * block_cols);
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        for (std::size_t bj = 0; bj < blocks[bi].size(); ++bj) {
            for (const auto& [sign, v] : blocks[bi][bj])
                d.add_block(bi * block_rows, bj * block_cols, shift(v), Rational(sign));
        }
    }
    return d;
}

bool CommutationReport::all_hold() const
{
    for (const auto& c : checks) {
        if (!c.holds)
            return false;
    }
    return true;
}

CommutationReport verify_commutation_relations(const OperatorSpec& spec, const WeightAssignment& w,
                                               int source_degree)
{
    CommutationReport report;
    report.degree = source_degree;
    const Family family = spec.family();

    auto at = [&](ShiftVariant v, int s) { return build_shift_matrix(spec, v, s, w); };
    // a_outer * b_inner == c_outer * d_inner
    auto check = [&](ShiftVariant a, ShiftVariant b, ShiftVariant c, ShiftVariant d) {
        const ExactMatrix lhs = compose(at(a, source_degree - 1), at(b, source_degree));
        const ExactMatrix rhs = compose(at(c, source_degree - 1), at(d, source_degree));
        std::ostringstream name;
        if (a == d && b == c)
            name << "[" << variant_name(a) << ", " << variant_name(b) << "] = 0";
        else
            name << variant_name(a) << " " << variant_name(b) << " = " << variant_name(c) << " "
                 << variant_name(d);
        report.checks.push_back({name.str(), lhs == rhs});
    };
    auto commute = [&](ShiftVariant a, ShiftVariant b) { check(a, b, b, a); };

    switch (family) {
    case Family::Tri: {
        const ShiftVariant plain[] = {V::F1, V::F3, V::F4, V::F5};
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = i + 1; j < 4; ++j)
                commute(plain[i], plain[j]);
        }
        commute(V::F1, V::F2);
        commute(V::F5, V::F2);
        check(V::F3, V::F2, V::F2Prime, V::F3);
        check(V::F4, V::F2, V::F2Prime, V::F4);
        break;
    }
    case Family::Linear:
        commute(V::F1, V::F2);
        commute(V::F1, V::F3);
        break;
    case Family::OrOuter:
        commute(V::F1, V::F2);
        commute(V::F1, V::F3);
        commute(V::F2, V::F3);
        break;
    case Family::OrInner:
        commute(V::F1, V::F2);
        commute(V::F1, V::F3);
        commute(V::F1, V::F4);
        commute(V::F2, V::F3);
        commute(V::F2, V::F4);
        break;
    case Family::OrInner2:
        commute(V::F1, V::F2);
        commute(V::F1, V::F3);
        commute(V::F1, V::F4);
        commute(V::F3, V::F4);
        check(V::F3, V::F2, V::F2Prime, V::F3);
        check(V::F4, V::F2, V::F2Prime, V::F4);
        break;
    }
    return report;
}

ExactMatrix right_inverse_matrix(const OperatorSpec& spec, ShiftVariant variant, int source_degree,
                                 const WeightAssignment& w)
{
    if (!variant_available(spec.family(), variant))
        throw VariantUnavailable(std::string(variant_name(variant)) + " is not defined for "
                                 + std::string(family_name(spec.family())));
    const IndexSet source(source_degree, spec.slots());
    const IndexSet target(source_degree - 1, spec.slots());
    const std::size_t slot = variant_slot(variant);

    // (G A)_beta = A_{beta - e_j} / c_j(beta - e_j) when beta_j > 0, else 0.
    ExactMatrix g(source.size(), target.size());
    for (std::size_t c = 0; c < target.size(); ++c) {
        const Composition& alpha = target.unrank(c);
        const Rational coeff = shift_coefficient(spec, variant, alpha, w);
        if (coeff == 0) {
            std::ostringstream msg;
            msg << variant_name(variant) << " coefficient vanishes at alpha = " << alpha;
            throw DegenerateWeight(msg.str());
        }
        g.set(source.rank(bump(alpha, slot)), c, Rational(1) / coeff);
    }
    return g;
}

} // namespace ambientkit
