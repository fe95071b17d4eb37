#include "ambientkit/family_solver.hpp"

#include <sstream>

#include "ambientkit/errors.hpp"
#include "ambientkit/shift_ops.hpp"

namespace ambientkit {

CoefficientFamily::CoefficientFamily(OperatorSpec spec, WeightAssignment weights, std::vector<Rational> values)
    : spec_(std::move(spec)),
      weights_(std::move(weights)),
      index_(spec_.top_degree(), spec_.slots()),
      values_(std::move(values))
{
    if (values_.size() != index_.size())
        throw IndexMismatch(describe(spec_) + " needs " + std::to_string(index_.size())
                            + " coefficients, got " + std::to_string(values_.size()));
}

std::size_t family_lower_bound(const OperatorSpec& spec)
{
    switch (spec.family()) {
    case Family::Tri: return static_cast<std::size_t>(spec.k()) + 1;
    case Family::OrOuter: return 1;
    default: return static_cast<std::size_t>(spec.top_degree()) + 1;
    }
}

namespace {

std::vector<std::size_t> boundary_slots(Family family)
{
    switch (family) {
    case Family::Tri: return {1, 3, 4, 5};
    case Family::OrOuter: return {1, 2, 3};
    case Family::OrInner: return {3, 4};
    default: return {};
    }
}

} // namespace

ExactMatrix solver_matrix(const OperatorSpec& spec, const WeightAssignment& w, SolveOptions options)
{
    ExactMatrix d1 = build_differential(spec, 1, w);
    if (!options.boundary_constraints)
        return d1;

    const std::vector<std::size_t> slots = boundary_slots(spec.family());
    if (slots.size() < 2)
        return d1;
    const int m = spec.top_degree();
    const IndexSet top(m, spec.slots());
    ExactMatrix out(d1.rows() + slots.size() - 1, d1.cols());
    out.add_block(0, 0, d1);
    for (std::size_t i = 0; i + 1 < slots.size(); ++i) {
        const std::size_t r = d1.rows() + i;
        out.add_to(r, top.rank(Composition::concentrated(spec.slots(), slots[i], m)), Rational(1));
        out.add_to(r, top.rank(Composition::concentrated(spec.slots(), slots[i + 1], m)), Rational(-1));
    }
    return out;
}

FamilyBasis solve_family(const OperatorSpec& spec, const WeightAssignment& w, SolveOptions options)
{
    FamilyBasis basis{spec, w, {}, std::nullopt, options.boundary_constraints};
    if (spec.family() == Family::Tri)
        basis.generic = tri_weights_generic(w);
    for (DenseVector& v : kernel_basis(solver_matrix(spec, w, options)).vectors)
        basis.members.emplace_back(spec, w, std::move(v));
    return basis;
}

std::size_t kernel_dimension(const OperatorSpec& spec, const WeightAssignment& w, SolveOptions options)
{
    const ExactMatrix m = solver_matrix(spec, w, options);
    return m.cols() - rank(m);
}

bool ResidualFamily::is_zero() const
{
    for (const auto& v : values) {
        if (v != 0)
            return false;
    }
    return true;
}

bool RecurrenceReport::all_zero() const
{
    for (const auto& r : residuals) {
        if (!r.is_zero())
            return false;
    }
    return true;
}

RecurrenceReport verify_recurrences(const OperatorSpec& spec, const WeightAssignment& w,
                                    const CoefficientFamily& a)
{
    if (a.spec().family() != spec.family() || a.index() != IndexSet(spec.top_degree(), spec.slots()))
        throw IndexMismatch("coefficient family is indexed for " + describe(a.spec()) + ", expected "
                            + describe(spec));
    if (w.size() != spec.arity())
        throw IndexMismatch("weight count does not match " + describe(spec));

    const Rational h = ratio(spec.n(), 2);
    const Rational wt = w.total();
    const int k = spec.k();
    const int l = spec.l();
    const IndexSet lower(spec.top_degree() - 1, spec.slots());

    struct Recurrence {
        std::string name;
        std::vector<std::pair<std::size_t, Rational>> terms;  // (slot, coefficient)
    };

    RecurrenceReport report;
    std::vector<std::vector<Rational>> values;
    bool first = true;
    for (const Composition& al : lower) {
        auto x = [&al](std::size_t j) { return al(j); };
        const Rational outer = h + wt - 2 * k + x(1) + 1;
        std::vector<Recurrence> rs;
        switch (spec.family()) {
        case Family::Tri: {
            const Rational mid = h + w(1) + w(2) - x(2) - 2 * x(3) - 2 * x(4) - 1;
            rs = {{"B1", {{3, h + w(1) - x(3) - 1}, {1, outer}, {2, mid}}},
                  {"B2", {{4, h + w(2) - x(4) - 1}, {1, outer}, {2, mid}}},
                  {"B3", {{5, h + w(3) - x(5) - 1}, {1, outer}}}};
            break;
        }
        case Family::Linear:
            rs = {{"B1", {{3, h + wt - x(3) - 1}, {1, outer}, {2, h + wt - 2 * spec.l2() - 2 * x(3) - x(2) - 1}}}};
            break;
        case Family::OrOuter:
            rs = {{"B1", {{2, h + w(1) - x(2) - 1}, {1, outer}}},
                  {"B2", {{3, h + w(2) - x(3) - 1}, {1, outer}}}};
            break;
        case Family::OrInner:
            rs = {{"B1", {{2, h + w(1) - x(2) - 1}, {1, outer}}},
                  {"B2", {{4, h + w(2) - x(4) - 1}, {1, outer}, {3, h + w(2) - 2 * l - x(3) - 2 * x(4) - 1}}}};
            break;
        case Family::OrInner2: {
            const Rational mid = h + wt - x(2) - 2 * x(3) - 2 * x(4) - 1;
            rs = {{"B1", {{3, h + w(1) - x(3) - 1}, {1, outer}, {2, mid}}},
                  {"B2", {{4, h + w(2) - x(4) - 1}, {1, outer}, {2, mid}}}};
            break;
        }
        }
        if (first) {
            for (const auto& r : rs)
                report.residuals.push_back({r.name, {}});
            first = false;
        }
        for (std::size_t i = 0; i < rs.size(); ++i) {
            Rational sum = 0;
            for (const auto& [slot, c] : rs[i].terms)
                sum += c * a(bump(al, slot));
            if (sum != 0 && report.first_violation.empty()) {
                std::ostringstream msg;
                msg << rs[i].name << " at " << al << " = " << format_rational(sum);
                report.first_violation = msg.str();
            }
            report.residuals[i].values.push_back(std::move(sum));
        }
    }
    return report;
}

std::int64_t euler_characteristic(Family family, int top_degree)
{
    const std::vector<int> mult = complex_multiplicities(family);
    const std::size_t slots = family_slots(family);
    std::int64_t chi = 0;
    for (std::size_t i = 0; i < mult.size(); ++i) {
        const auto term = static_cast<std::int64_t>(mult[i])
                          * static_cast<std::int64_t>(composition_count(top_degree - static_cast<int>(i), slots));
        chi += (i % 2 == 0) ? term : -term;
    }
    return chi;
}

WeightAssignment fsa_weights(const OperatorSpec& spec)
{
    const Rational value = Rational(2 * spec.k() - spec.n()) / static_cast<long>(spec.arity() + 1);
    return WeightAssignment(spec, std::vector<Rational>(spec.arity(), value));
}

namespace {

void require_tri(const CoefficientFamily& a, const char* what)
{
    if (a.spec().family() != Family::Tri)
        throw PreconditionViolated(std::string(what) + " needs a TRI family, got "
                                   + std::string(family_name(a.spec().family())));
}

void require_fsa(const CoefficientFamily& a, const char* what)
{
    require_tri(a, what);
    if (!(a.weights() == fsa_weights(a.spec())))
        throw PreconditionViolated(std::string(what) + " needs the self-adjoint weights -(n-2k)/4");
}

} // namespace

SymmetryReport check_permutation_symmetries(const CoefficientFamily& a)
{
    require_tri(a, "check_permutation_symmetries");
    SymmetryReport report;
    struct Perm {
        bool SymmetryReport::*flag;
        const char* name;
        std::vector<std::size_t> map;
    };
    const Perm perms[] = {{&SymmetryReport::swap_3_4, "swap 3<->4", {0, 1, 3, 2, 4}},
                          {&SymmetryReport::swap_1_5, "swap 1<->5", {4, 1, 2, 3, 0}},
                          {&SymmetryReport::prime, "alpha'", {2, 1, 0, 4, 3}}};
    for (const auto& p : perms) {
        bool holds = true;
        for (const Composition& al : a.index()) {
            if (a(al) != a(permuted(al, p.map))) {
                holds = false;
                if (report.first_violation.empty()) {
                    std::ostringstream msg;
                    msg << p.name << " fails at " << al;
                    report.first_violation = msg.str();
                }
                break;
            }
        }
        report.*(p.flag) = holds;
    }
    return report;
}

SymmetryReport verify_fsa_symmetries(const CoefficientFamily& a)
{
    require_fsa(a, "verify_fsa_symmetries");
    const int n = a.spec().n();
    const int k = a.spec().k();
    if (n <= 2 * k)
        throw PreconditionViolated("verify_fsa_symmetries needs n > 2k (n = " + std::to_string(n)
                                   + ", k = " + std::to_string(k) + ")");

    // Integer-coefficient recurrences satisfied by kernel elements at these weights.
    bool recurrences = true;
    std::string violation;
    for (const Composition& al : IndexSet(k - 1, 5)) {
        auto c = [&](std::size_t j) { return Rational(n + 2 * k - 4 * al(j) - 4); };
        auto at = [&](std::size_t j) { return a(bump(al, j)); };
        const Rational r1 = c(3) * at(3) - c(4) * at(4);
        const Rational r2 = c(5) * at(5) - c(1) * at(1);
        const Rational r3 = c(3) * at(3) - c(1) * at(1)
                            + 4 * Rational(al(1) - al(3) - al(4) + al(5)) * at(2);
        if (r1 != 0 || r2 != 0 || r3 != 0) {
            recurrences = false;
            std::ostringstream msg;
            msg << "index recurrence fails at " << al;
            violation = msg.str();
            break;
        }
    }

    SymmetryReport report = check_permutation_symmetries(a);
    report.recurrences_hold = recurrences;
    if (!recurrences)
        report.first_violation = violation;
    return report;
}

SymmetrizedOperator symmetrize_family(const CoefficientFamily& a)
{
    require_fsa(a, "symmetrize_family");
    return SymmetrizedOperator{a};
}

TwoSlotReport check_two_slot_symmetry(int k, std::span<const Rational> values,
                                      const std::function<Rational(int)>& f)
{
    const IndexSet top(k + 1, 2);
    if (values.size() != top.size())
        throw IndexMismatch("expected " + std::to_string(top.size()) + " values on I_{k+1}^2, got "
                            + std::to_string(values.size()));
    std::vector<Rational> fv(static_cast<std::size_t>(k) + 2);
    for (int i = 1; i <= k + 1; ++i) {
        fv[i] = f(i);
        if (fv[i] == 0)
            throw ZeroDenominator("f(" + std::to_string(i) + ") = 0");
    }
    auto at = [&](int a1, int a2) -> const Rational& { return values[top.rank(Composition{a1, a2})]; };

    TwoSlotReport report;
    report.hypothesis_holds = true;
    for (const Composition& al : IndexSet(k, 2)) {
        if (fv[al(1) + 1] * at(al(1) + 1, al(2)) != fv[al(2) + 1] * at(al(1), al(2) + 1)) {
            report.hypothesis_holds = false;
            break;
        }
    }
    report.symmetric = true;
    for (const Composition& al : top) {
        if (at(al(1), al(2)) != at(al(2), al(1))) {
            report.symmetric = false;
            break;
        }
    }
    return report;
}

CoefficientFamily or_closed_form(int n, int k)
{
    if (n <= 2 * k)
        throw PreconditionViolated("closed form needs n > 2k (n = " + std::to_string(n) + ", k = "
                                   + std::to_string(k) + ")");
    return or_pochhammer_form(n, k);
}

CoefficientFamily or_pochhammer_form(int n, int k)
{
    const OperatorSpec spec = OperatorSpec::or_family(Family::OrOuter, n, k, 0);
    const Rational c = ratio(n - 2 * k, 6);

    // rising[m] = c (c+1) ... (c+m-1)
    std::vector<Rational> rising(static_cast<std::size_t>(k) + 1);
    rising[0] = 1;
    for (int m = 1; m <= k; ++m)
        rising[m] = rising[m - 1] * (c + m - 1);
    if (rising[k] == 0)
        throw DegenerateWeight("P(k) vanishes for n = " + std::to_string(n) + ", k = " + std::to_string(k));

    const IndexSet index(k, 3);
    std::vector<Rational> values;
    values.reserve(index.size());
    const Rational denom = rising[k] * rising[k];
    for (const Composition& al : index)
        values.push_back(rising[k - al(1)] * rising[k - al(2)] * rising[k - al(3)] / denom);
    return CoefficientFamily(spec, fsa_weights(spec), std::move(values));
}

GenericExactnessReport certify_generic_exactness(const OperatorSpec& spec, const WeightAssignment& w)
{
    if (spec.family() != Family::Tri)
        throw PreconditionViolated("generic exactness is only stated for TRI");

    GenericExactnessReport report;
    report.genericity_failures = genericity_failures(w);
    report.generic = report.genericity_failures.empty();

    const ExactMatrix d1 = build_differential(spec, 1, w);
    const ExactMatrix d2 = build_differential(spec, 2, w);
    const ExactMatrix d3 = build_differential(spec, 3, w);
    report.at_first = certify_exactness(d1, d2);
    report.at_second = certify_exactness(d2, d3);
    report.last_surjective = rank(d3) == d3.rows();
    report.kernel_dimension = d1.cols() - rank(d1);
    report.euler = euler_characteristic(Family::Tri, spec.k());
    report.kernel_matches_euler = static_cast<std::int64_t>(report.kernel_dimension) == report.euler;
    report.lower_bound_holds = report.kernel_dimension >= family_lower_bound(spec);
    return report;
}

} // namespace ambientkit
