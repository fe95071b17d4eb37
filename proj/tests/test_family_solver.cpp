#include <doctest.h>

#include "ambientkit/errors.hpp"
#include "ambientkit/family_solver.hpp"
#include "ambientkit/random_battery.hpp"
#include "ambientkit/shift_ops.hpp"

using namespace ambientkit;

namespace {

WeightAssignment uniform(const OperatorSpec& spec, const Rational& v)
{
    return WeightAssignment(spec, std::vector<Rational>(spec.arity(), v));
}

bool in_kernel(const CoefficientFamily& a, const WeightAssignment& w)
{
    for (const auto& x : build_differential(a.spec(), 1, w).apply(a.values())) {
        if (x != 0)
            return false;
    }
    return true;
}

Rational factorial(int n)
{
    Rational f = 1;
    for (int i = 2; i <= n; ++i)
        f *= i;
    return f;
}

} // namespace

TEST_CASE("solve_family examples")
{
    const OperatorSpec k0 = OperatorSpec::tri(5, 0);
    const FamilyBasis trivial = solve_family(k0, uniform(k0, ratio(1, 3)));
    REQUIRE(trivial.dimension() == 1);
    CHECK(trivial.members[0].values() == std::vector<Rational>{Rational(1)});

    const OperatorSpec spec = OperatorSpec::tri(5, 2);
    const FamilyBasis basis = solve_family(spec, uniform(spec, ratio(1, 3)));
    CHECK(basis.dimension() == 3);
    REQUIRE(basis.generic.has_value());
    CHECK(*basis.generic);

    const OperatorSpec orouter = OperatorSpec::or_family(Family::OrOuter, 7, 2, 0);
    const FamilyBasis ob = solve_family(orouter, uniform(orouter, Rational(-1)));
    CHECK(ob.dimension() >= 1);
    CHECK_FALSE(ob.generic.has_value());

    for (const auto& a : basis.members)
        CHECK(in_kernel(a, basis.weights));
    std::vector<DenseVector> vs;
    for (const auto& a : basis.members)
        vs.push_back(a.values());
    CHECK(span_dimension(vs) == basis.dimension());
}

TEST_CASE("TRI k=1 kernel at generic weights has two vectors")
{
    const OperatorSpec spec = OperatorSpec::tri(7, 1);
    CHECK(solve_family(spec, WeightAssignment(spec, {ratio(1, 3), ratio(2, 5), ratio(1, 7)})).dimension() == 2);
}

TEST_CASE("CoefficientFamily validates size")
{
    const OperatorSpec spec = OperatorSpec::tri(5, 1);
    CHECK_THROWS_AS(CoefficientFamily(spec, uniform(spec, Rational(0)), std::vector<Rational>(4)), IndexMismatch);
}

TEST_CASE("recurrences agree with the matrix encoding")
{
    RandomSource rng(21);
    std::vector<OperatorSpec> specs;
    for (int k = 0; k <= 3; ++k) {
        specs.push_back(OperatorSpec::tri(5, k));
        for (int l = 0; l <= k; ++l) {
            specs.push_back(OperatorSpec::or_family(Family::OrOuter, 7, k, l));
            specs.push_back(OperatorSpec::or_family(Family::OrInner, 5, k, l));
            specs.push_back(OperatorSpec::or_family(Family::OrInner2, 3, k, l));
            specs.push_back(OperatorSpec::linear(5, k, l - l / 2, l / 2));
        }
    }
    for (const auto& spec : specs) {
        CAPTURE(describe(spec));
        for (int t = 0; t < 3; ++t) {
            const WeightAssignment w(spec, rng.arbitrary_weights(spec.arity()));
            for (const auto& a : solve_family(spec, w).members)
                CHECK(verify_recurrences(spec, w, a).all_zero());

            // Random vectors: residual zero iff d1 A = 0, and the residuals
            // equal d1 A entry by entry (blocks in the same order).
            const IndexSet index(spec.top_degree(), spec.slots());
            std::vector<Rational> values;
            for (std::size_t i = 0; i < index.size(); ++i)
                values.emplace_back(rng.uniform(-3, 3));
            const CoefficientFamily a(spec, w, values);
            const RecurrenceReport rep = verify_recurrences(spec, w, a);
            const DenseVector image = build_differential(spec, 1, w).apply(values);
            DenseVector flat;
            for (const auto& r : rep.residuals)
                flat.insert(flat.end(), r.values.begin(), r.values.end());
            CHECK(flat == image);
            CHECK(rep.all_zero() == in_kernel(a, w));
        }
    }
}

TEST_CASE("recurrence report examples")
{
    const OperatorSpec spec = OperatorSpec::tri(5, 2);
    const WeightAssignment w(spec, {ratio(1, 3), ratio(2, 5), ratio(1, 7)});
    const IndexSet index(2, 5);
    const CoefficientFamily ones(spec, w, std::vector<Rational>(index.size(), Rational(1)));
    const RecurrenceReport rep = verify_recurrences(spec, w, ones);
    CHECK_FALSE(rep.all_zero());
    REQUIRE(rep.residuals.size() == 3);
    // B3 at alpha = 0 with A = 1: (n/2 + w3 - 1) + (n/2 + w - 2k + 1).
    const std::size_t at_e1 = IndexSet(1, 5).rank(Composition{1, 0, 0, 0, 0});
    CHECK(rep.residuals[2].values[at_e1] == Rational(5) + w.total() + w(3) - 4 + 1);
    CHECK_FALSE(rep.first_violation.empty());

    const OperatorSpec k0 = OperatorSpec::tri(5, 0);
    CHECK(verify_recurrences(k0, uniform(k0, Rational(1)), CoefficientFamily(k0, uniform(k0, Rational(1)), {Rational(5)}))
              .all_zero());

    const OperatorSpec other = OperatorSpec::tri(5, 1);
    CHECK_THROWS_AS(verify_recurrences(other, uniform(other, Rational(1)), ones), IndexMismatch);
}

TEST_CASE("euler characteristic")
{
    CHECK(euler_characteristic(Family::Tri, 2) == 3);
    CHECK(euler_characteristic(Family::Tri, 0) == 1);
    for (int m = 0; m <= 50; ++m) {
        // Independent evaluation from the binomial formula.
        auto c = [](int s, int l) -> std::int64_t {
            return s < 0 ? 0 : static_cast<std::int64_t>(binomial(s + l - 1, l - 1));
        };
        CHECK(c(m, 5) - 3 * c(m - 1, 5) + 3 * c(m - 2, 5) - c(m - 3, 5) == m + 1);
        CHECK(euler_characteristic(Family::Tri, m) == m + 1);
        CHECK(euler_characteristic(Family::Linear, m) == m + 1);
        CHECK(euler_characteristic(Family::OrOuter, m) == 1);
        CHECK(euler_characteristic(Family::OrInner, m) == m + 1);
        CHECK(euler_characteristic(Family::OrInner2, m) == m + 1);
    }
}

TEST_CASE("fsa weights")
{
    CHECK(fsa_weights(OperatorSpec::tri(5, 2)).values() == std::vector<Rational>(3, ratio(-1, 4)));
    CHECK(fsa_weights(OperatorSpec::or_family(Family::OrOuter, 7, 2, 0)).values()
          == std::vector<Rational>(2, Rational(-1)));
    CHECK(fsa_weights(OperatorSpec::linear(6, 3, 0, 0)).values() == std::vector<Rational>{Rational(0)});
}

TEST_CASE("fsa symmetries")
{
    for (int n = 5; n <= 9; ++n) {
        for (int k = 0; 2 * k < n && k <= 3; ++k) {
            const OperatorSpec spec = OperatorSpec::tri(n, k);
            for (const auto& a : solve_family(spec, fsa_weights(spec)).members) {
                const SymmetryReport rep = verify_fsa_symmetries(a);
                CAPTURE(describe(spec));
                CHECK(rep.all_hold());
            }
        }
    }

    // Away from the self-adjoint point swap 3<->4 fails for some member.
    const OperatorSpec spec = OperatorSpec::tri(5, 1);
    const WeightAssignment w(spec, {ratio(1, 3), ratio(2, 5), ratio(1, 7)});
    bool some_fail = false;
    for (const auto& a : solve_family(spec, w).members)
        some_fail = some_fail || !check_permutation_symmetries(a).swap_3_4;
    CHECK(some_fail);
    CHECK_THROWS_AS(verify_fsa_symmetries(solve_family(spec, w).members[0]), PreconditionViolated);

    const OperatorSpec boundary = OperatorSpec::tri(6, 3);
    CHECK_THROWS_AS(verify_fsa_symmetries(solve_family(boundary, fsa_weights(boundary)).members[0]),
                    PreconditionViolated);
}

TEST_CASE("symmetrize_family")
{
    const OperatorSpec spec = OperatorSpec::tri(5, 1);
    const FamilyBasis basis = solve_family(spec, fsa_weights(spec));
    const SymmetrizedOperator op = symmetrize_family(basis.members[0]);
    CHECK(op.orderings[1] == std::array<std::size_t, 3>{1, 2, 0});
    const WeightAssignment w(spec, {ratio(1, 3), ratio(2, 5), ratio(1, 7)});
    CHECK_THROWS_AS(symmetrize_family(solve_family(spec, w).members[0]), PreconditionViolated);
}

TEST_CASE("two-slot symmetry")
{
    for (int k = 0; k <= 6; ++k) {
        const IndexSet top(k + 1, 2);
        std::vector<Rational> constant(top.size(), ratio(5, 3));
        auto one = [](int) { return Rational(1); };
        const TwoSlotReport c = check_two_slot_symmetry(k, constant, one);
        CHECK(c.hypothesis_holds);
        CHECK(c.symmetric);

        std::vector<Rational> inv_fact;
        for (const auto& a : top)
            inv_fact.push_back(1 / (factorial(a(1)) * factorial(a(2))));
        const TwoSlotReport f = check_two_slot_symmetry(k, inv_fact, [](int i) { return Rational(i); });
        CHECK(f.hypothesis_holds);
        CHECK(f.symmetric);
    }

    // Property: whenever the hypothesis holds, symmetry follows.
    RandomSource rng(4);
    for (int t = 0; t < 200; ++t) {
        const int k = static_cast<int>(rng.uniform(0, 4));
        std::vector<Rational> fv;
        for (int i = 0; i <= k + 1; ++i) {
            long v = 0;
            while (v == 0)
                v = rng.uniform(-5, 5);
            fv.emplace_back(v);
        }
        // Build A satisfying the hypothesis from A(k+1, 0) by the recurrence.
        const IndexSet top(k + 1, 2);
        std::vector<Rational> values(top.size());
        values[0] = Rational(rng.uniform(1, 9));
        for (std::size_t i = 1; i < top.size(); ++i) {
            const Composition a = top.unrank(i);  // (a1, a2) with a2 >= 1
            const Composition prev{a(1) + 1, a(2) - 1};
            values[i] = fv[a(1) + 1] * values[top.rank(prev)] / fv[a(2)];
        }
        auto f = [&fv](int i) { return fv[i]; };
        const TwoSlotReport rep = check_two_slot_symmetry(k, values, f);
        CHECK(rep.hypothesis_holds);
        CHECK(rep.symmetric);

        // A random perturbation breaks the hypothesis.
        if (top.size() > 1) {
            values[1] += 1;
            CHECK_FALSE(check_two_slot_symmetry(k, values, f).hypothesis_holds);
        }
    }

    const std::vector<Rational> two(2, Rational(1));
    CHECK_THROWS_AS(check_two_slot_symmetry(0, two, [](int) { return Rational(0); }), ZeroDenominator);
}

TEST_CASE("closed-form OR_OUTER family")
{
    for (int n : {5, 7, 9, 11}) {
        for (int k = 0; 2 * k < n && k <= 4; ++k) {
            const CoefficientFamily a = or_closed_form(n, k);
            CHECK(a(Composition{k, 0, 0}) == 1);
            CHECK(verify_recurrences(a.spec(), a.weights(), a).all_zero());
            CHECK(in_kernel(a, a.weights()));
            for (const auto& al : a.index()) {
                CHECK(a(al) == a(permuted(al, {1, 0, 2})));
                CHECK(a(al) == a(permuted(al, {2, 1, 0})));
            }
        }
    }
    // n = 7, k = 2: c = 1/2, A(1,1,0) = P(1)^2 P(2) / P(2)^2 = (1/4) / (3/4).
    CHECK(or_closed_form(7, 2)(Composition{1, 1, 0}) == ratio(1, 3));
    CHECK_THROWS_AS(or_closed_form(6, 3), PreconditionViolated);

    // Odd n below 2k: the product is still finite and still solves the recurrences.
    for (auto [n, k] : {std::pair{5, 3}, std::pair{5, 4}, std::pair{7, 4}, std::pair{3, 5}}) {
        CHECK_THROWS_AS(or_closed_form(n, k), PreconditionViolated);
        const CoefficientFamily a = or_pochhammer_form(n, k);
        CHECK(verify_recurrences(a.spec(), a.weights(), a).all_zero());
        CHECK(a(Composition{k, 0, 0}) == 1);
    }
    CHECK(or_pochhammer_form(9, 2) == or_closed_form(9, 2));
    CHECK_THROWS_AS(or_pochhammer_form(6, 3), DegenerateWeight);
}

TEST_CASE("generic exactness")
{
    const OperatorSpec spec = OperatorSpec::tri(5, 2);
    const GenericExactnessReport rep = certify_generic_exactness(spec, uniform(spec, ratio(1, 3)));
    CHECK(rep.generic);
    CHECK(rep.all_exact());
    CHECK(rep.kernel_dimension == 3);

    const GenericExactnessReport k0 = certify_generic_exactness(OperatorSpec::tri(5, 0), uniform(OperatorSpec::tri(5, 0), ratio(1, 3)));
    CHECK(k0.all_exact());

    const GenericExactnessReport integer = certify_generic_exactness(spec, uniform(spec, Rational(0)));
    CHECK_FALSE(integer.generic);
    CHECK(integer.genericity_failures.size() == 3);
    CHECK(integer.kernel_dimension >= 3);
    CHECK(integer.lower_bound_holds);

    const OperatorSpec orf = OperatorSpec::or_family(Family::OrOuter, 5, 2, 0);
    CHECK_THROWS_AS(certify_generic_exactness(orf, uniform(orf, ratio(1, 3))), PreconditionViolated);
}

TEST_CASE("boundary constraints at n = 2k")
{
    const OperatorSpec spec = OperatorSpec::tri(6, 3);
    const WeightAssignment w = fsa_weights(spec);
    const FamilyBasis plain = solve_family(spec, w);
    const FamilyBasis constrained = solve_family(spec, w, {true});
    CHECK(constrained.boundary_constraints);
    CHECK(constrained.dimension() <= plain.dimension());
    for (const auto& a : constrained.members) {
        CHECK(in_kernel(a, w));
        const Rational first = a(Composition::concentrated(5, 1, 3));
        for (std::size_t j : {3, 4, 5})
            CHECK(a(Composition::concentrated(5, j, 3)) == first);
    }
    // LIN has no boundary equations.
    const OperatorSpec lin = OperatorSpec::linear(6, 3, 0, 0);
    CHECK(solve_family(lin, fsa_weights(lin), {true}).dimension() == solve_family(lin, fsa_weights(lin)).dimension());
}

TEST_CASE("kernel dimension sweep at generic weights")
{
    RandomSource rng(77);
    for (int n : {3, 5, 7}) {
        for (int k = 0; k <= 4; ++k) {
            const OperatorSpec spec = OperatorSpec::tri(n, k);
            for (int t = 0; t < 5; ++t) {
                const WeightAssignment w(spec, rng.generic_weights(3));
                CHECK(kernel_dimension(spec, w) == static_cast<std::size_t>(k) + 1);
                CHECK(solve_family(spec, w).dimension() == static_cast<std::size_t>(k) + 1);
            }
            const WeightAssignment arb(spec, rng.arbitrary_weights(3));
            CHECK(kernel_dimension(spec, arb) >= static_cast<std::size_t>(k) + 1);
        }
    }
}

TEST_CASE("lower bounds for LIN and OR families")
{
    RandomSource rng(78);
    for (int k = 0; k <= 3; ++k) {
        for (int l = 0; l <= k; ++l) {
            for (Family f : {Family::OrOuter, Family::OrInner, Family::OrInner2}) {
                const OperatorSpec spec = OperatorSpec::or_family(f, 5, k, l);
                const WeightAssignment w(spec, rng.arbitrary_weights(2));
                CHECK(kernel_dimension(spec, w) >= family_lower_bound(spec));
            }
            const OperatorSpec lin = OperatorSpec::linear(5, k, l, 0);
            CHECK(kernel_dimension(lin, WeightAssignment(lin, rng.arbitrary_weights(1))) >= family_lower_bound(lin));
        }
    }
    CHECK(family_lower_bound(OperatorSpec::or_family(Family::OrOuter, 5, 3, 1)) == 1);
    CHECK(family_lower_bound(OperatorSpec::or_family(Family::OrInner, 5, 3, 1)) == 3);
    CHECK(family_lower_bound(OperatorSpec::linear(5, 3, 1, 1)) == 2);
}
