#include <doctest.h>

#include "ambientkit/errors.hpp"
#include "ambientkit/flat_ambient.hpp"
#include "ambientkit/random_battery.hpp"
#include "ambientkit/shift_ops.hpp"

using namespace ambientkit;

namespace {

GradedPolynomial x(const FlatModel& m, std::size_t i) { return GradedPolynomial::variable(m.variables(), i); }
GradedPolynomial c(const FlatModel& m, long v) { return GradedPolynomial::constant(m.variables(), Rational(v)); }

// Term-by-term evaluation of the TRI operator with no grouping or caching.
GradedPolynomial naive_tri(const FlatModel& m, const CoefficientFamily& a, const GradedPolynomial& u,
                           const GradedPolynomial& v, const GradedPolynomial& w)
{
    const int k = a.spec().k();
    GradedPolynomial out(m.variables());
    for (const auto& al : a.index()) {
        const Rational coef = Rational(multinomial(k, al)) * a(al);
        const GradedPolynomial uv = m.laplacian_power(u, al(3)) * m.laplacian_power(v, al(4));
        const GradedPolynomial inner = m.laplacian_power(uv, al(2)) * m.laplacian_power(w, al(5));
        out += coef * m.laplacian_power(inner, al(1));
    }
    return out;
}

CoefficientFamily random_family(const OperatorSpec& spec, RandomSource& rng)
{
    std::vector<Rational> values;
    for (std::size_t i = 0; i < composition_count(spec.top_degree(), spec.slots()); ++i)
        values.push_back(ratio(rng.uniform(-5, 5), rng.uniform(1, 4)));
    return CoefficientFamily(spec, WeightAssignment(spec, std::vector<Rational>(spec.arity(), Rational(2))), values);
}

} // namespace

TEST_CASE("quadratic form and Laplacian conventions")
{
    const FlatModel one(1);
    GradedPolynomial q(3);
    q.add_term({2, 0, 0}, Rational(-1));
    q.add_term({0, 2, 0}, Rational(1));
    q.add_term({0, 0, 2}, Rational(1));
    CHECK(one.quadratic_form() == q);

    for (int n = 1; n <= 5; ++n) {
        const FlatModel m(n);
        CHECK(m.laplacian(x(m, 0) * x(m, 0)) == c(m, 2));
        CHECK(m.laplacian(x(m, 1) * x(m, 1)) == c(m, -2));
        CHECK(m.laplacian(c(m, 7)).is_zero());
        CHECK(m.laplacian(m.quadratic_form()) == c(m, -2 * (n + 2)));
        CHECK(m.euler_operator(m.quadratic_form()) == Rational(2) * m.quadratic_form());
        CHECK(m.euler_operator(c(m, 3)).is_zero());
    }
    CHECK_THROWS_AS(FlatModel(0), InvalidSpec);
}

TEST_CASE("Euler operator and product rule on random polynomials")
{
    RandomSource rng(3);
    for (int t = 0; t < 40; ++t) {
        const FlatModel m(1 + t % 4);
        const int dp = static_cast<int>(rng.uniform(0, 4));
        const auto p = rng.homogeneous(m.variables(), dp);
        const auto q = rng.homogeneous(m.variables(), static_cast<int>(rng.uniform(0, 4)));
        CHECK(m.euler_operator(p) == Rational(dp) * p);
        const auto Q = m.quadratic_form();
        CHECK(m.euler_operator(Q * p) == Rational(2) * Q * p + Q * m.euler_operator(p));
        CHECK(m.laplacian(p * q) == m.laplacian(p) * q + p * m.laplacian(q) - Rational(2) * m.gradient_pairing(p, q));
        CHECK(m.laplacian(p + q) == m.laplacian(p) + m.laplacian(q));
    }
}

TEST_CASE("polynomial basics")
{
    const FlatModel m(2);
    const auto p = x(m, 0) * x(m, 1) + c(m, 1);
    CHECK_FALSE(p.is_homogeneous());
    CHECK(p.degree() == 2);
    CHECK_FALSE(p.homogeneous_degree().has_value());
    CHECK(p.component(2) == x(m, 0) * x(m, 1));
    CHECK((p - p).is_zero());
    CHECK(GradedPolynomial(4).is_homogeneous());
    const std::vector<Rational> pt{Rational(2), Rational(3), Rational(0), Rational(1)};
    CHECK(p.evaluate(pt) == 7);
    CHECK(p.derivative(0) == x(m, 1));
    CHECK_THROWS_AS(p * GradedPolynomial(3), ShapeMismatch);
}

TEST_CASE("sl2 commutator identity")
{
    for (int n = 1; n <= 4; ++n) {
        const FlatModel m(n);
        const Sl2Check gate = verify_sl2_commutator(m, 1, c(m, 1));
        CHECK(gate.holds);
        CHECK(gate.lhs == c(m, -2 * (n + 2)));
        for (int d = 0; d <= 4; ++d) {
            for (const auto& e : monomials_of_degree(m.variables(), d))
                CHECK(verify_sl2_commutator(m, 1, GradedPolynomial::monomial(m.variables(), e)).holds);
        }
    }
    RandomSource rng(11);
    const FlatModel m3(3);
    for (int t = 0; t < 50; ++t)
        CHECK(verify_sl2_commutator(m3, 3, rng.homogeneous(m3.variables(), static_cast<int>(rng.uniform(0, 6)))).holds);
    CHECK_THROWS_AS(verify_sl2_commutator(m3, 1, x(m3, 0) + c(m3, 1)), NonHomogeneousInput);

    // A wrong constant in place of n + 4 - 2k is detected.
    const auto p = x(m3, 0) * x(m3, 1);
    const auto q = m3.quadratic_form();
    const auto lhs = m3.laplacian(q * p) - q * m3.laplacian(p);
    CHECK_FALSE(lhs == Rational(-2) * (Rational(2) * m3.euler_operator(p) + Rational(3 + 3) * p));
}

TEST_CASE("remainder modulo Q")
{
    const FlatModel m(2);
    const auto q = m.quadratic_form();
    const auto x1 = x(m, 1);
    CHECK(m.remainder_mod_Q(q * x1 * x1 * x1).is_zero());
    CHECK(m.remainder_mod_Q(x(m, 0) * x(m, 0)) == x(m, 1) * x(m, 1) + x(m, 2) * x(m, 2) + x(m, 3) * x(m, 3));

    RandomSource rng(12);
    for (int t = 0; t < 30; ++t) {
        const FlatModel mm(1 + t % 3);
        const auto p = rng.homogeneous(mm.variables(), static_cast<int>(rng.uniform(0, 3)));
        const auto r = rng.homogeneous(mm.variables(), static_cast<int>(rng.uniform(0, 4)));
        const auto in_ideal = p * mm.quadratic_form();
        CHECK(mm.remainder_mod_Q(in_ideal + r) == mm.remainder_mod_Q(r));
        CHECK(mm.remainder_mod_Q(in_ideal).is_zero());
        const auto rem = mm.remainder_mod_Q(r);
        for (const auto& [e, coef] : rem.terms())
            CHECK(e[0] <= 1);

        // Independent check on rational points of the null cone.
        bool vanishes = true;
        for (int s = 0; s < 8; ++s) {
            std::vector<Rational> tt;
            for (int i = 0; i < mm.n(); ++i)
                tt.push_back(ratio(rng.uniform(-9, 9), rng.uniform(1, 7)));
            const auto pt = mm.cone_point(tt);
            CHECK(mm.quadratic_form().evaluate(pt) == 0);
            CHECK(in_ideal.evaluate(pt) == 0);
            vanishes = vanishes && r.evaluate(pt) == 0;
        }
        CHECK(vanishes == rem.is_zero());
    }
}

TEST_CASE("apply_operator agrees with naive evaluation")
{
    RandomSource rng(13);
    const FlatModel m(3);
    for (int k = 0; k <= 2; ++k) {
        const OperatorSpec spec = OperatorSpec::tri(3, k);
        for (int t = 0; t < 3; ++t) {
            const CoefficientFamily a = random_family(spec, rng);
            const auto u = rng.homogeneous(m.variables(), 2);
            const auto v = rng.homogeneous(m.variables(), 3);
            const auto w = rng.homogeneous(m.variables(), 2);
            const auto out = apply_operator(m, a, {u, v, w});
            CHECK(out == naive_tri(m, a, u, v, w));
            if (!out.is_zero())
                CHECK(out.homogeneous_degree() == 7 - 2 * k);
        }
    }
}

TEST_CASE("apply_operator examples")
{
    const FlatModel m(3);
    RandomSource rng(14);
    const auto u = rng.homogeneous(m.variables(), 2);
    const auto v = rng.homogeneous(m.variables(), 1);
    const auto w = rng.homogeneous(m.variables(), 3);

    const OperatorSpec k0 = OperatorSpec::tri(3, 0);
    const CoefficientFamily c0(k0, WeightAssignment(k0, std::vector<Rational>(3, Rational(1))), {ratio(5, 2)});
    CHECK(apply_operator(m, c0, {u, v, w}) == ratio(5, 2) * (u * v * w));

    // Degree bookkeeping at weights (2,2,2), k = 1.
    const OperatorSpec k1 = OperatorSpec::tri(3, 1);
    const WeightAssignment w2(k1, std::vector<Rational>(3, Rational(2)));
    for (const auto& a : solve_family(k1, w2).members) {
        const auto out = apply_operator(m, a, {rng.homogeneous(5, 2), rng.homogeneous(5, 2), rng.homogeneous(5, 2)});
        if (!out.is_zero())
            CHECK(out.homogeneous_degree() == 4);
    }

    // Concentrating A on k e3 at w1 = k - n/2 gives L^k u when v = w = 1.
    for (int n : {3, 4}) {
        const FlatModel mn(n);
        for (int k = 1; k <= 2; ++k) {
            const OperatorSpec spec = OperatorSpec::tri(n, k);
            const WeightAssignment wg(spec, {Rational(k) - ratio(n, 2), ratio(1, 3), ratio(2, 7)});
            std::vector<Rational> values(composition_count(k, 5));
            values[IndexSet(k, 5).rank(Composition::concentrated(5, 3, k))] = 1;
            const CoefficientFamily a(spec, wg, values);
            for (const auto& r : build_differential(spec, 1, wg).apply(a.values()))
                CHECK(r == 0);
            const auto uu = rng.homogeneous(mn.variables(), 4);
            const auto one = c(mn, 1);
            CHECK(apply_operator(mn, a, {uu, one, one}) == mn.laplacian_power(uu, k));
        }
    }

    // Error paths.
    CHECK_THROWS_AS(apply_operator(m, c0, {u + c(m, 1), v, w}), NonHomogeneousInput);
    CHECK_THROWS_AS(apply_operator(m, c0, {u, v}), InvalidSpec);
    const OperatorSpec lin = OperatorSpec::linear(3, 2, 1, 0);
    const CoefficientFamily al(lin, WeightAssignment(lin, {Rational(2)}), std::vector<Rational>(3, Rational(1)));
    CHECK_THROWS_AS(apply_operator(m, al, {u}), InvariantModeUnsupported);
}

TEST_CASE("OR and LIN operators against direct formulas")
{
    const FlatModel m(3);
    RandomSource rng(15);
    const auto u = rng.homogeneous(m.variables(), 3);
    const auto v = rng.homogeneous(m.variables(), 2);
    const int k = 2;
    for (Family f : {Family::OrOuter, Family::OrInner, Family::OrInner2}) {
        const OperatorSpec spec = OperatorSpec::or_family(f, 3, k, 0);
        const CoefficientFamily a = random_family(spec, rng);
        GradedPolynomial want(m.variables());
        for (const auto& al : a.index()) {
            const Rational coef = Rational(multinomial(k, al)) * a(al);
            GradedPolynomial inner(m.variables());
            if (f == Family::OrOuter)
                inner = m.laplacian_power(u, al(2)) * m.laplacian_power(v, al(3));
            else if (f == Family::OrInner)
                inner = m.laplacian_power(u, al(2)) * m.laplacian_power(m.laplacian_power(v, al(4)), al(3));
            else
                inner = m.laplacian_power(m.laplacian_power(u, al(3)) * m.laplacian_power(v, al(4)), al(2));
            want += coef * m.laplacian_power(inner, al(1));
        }
        CHECK(apply_operator(m, a, {u, v}) == want);
    }
    const OperatorSpec lin = OperatorSpec::linear(3, 2, 0, 0);
    const CoefficientFamily a = random_family(lin, rng);
    Rational total = 0;
    for (const auto& al : a.index())
        total += Rational(multinomial(2, al)) * a(al);
    CHECK(apply_operator(m, a, {u}) == total * m.laplacian_power(u, 2));
}

TEST_CASE("tangentiality probe")
{
    const FlatModel m(3);
    for (int k = 0; k <= 1; ++k) {
        const OperatorSpec spec = OperatorSpec::tri(3, k);
        const WeightAssignment w(spec, std::vector<Rational>(3, Rational(2)));
        const FamilyBasis basis = solve_family(spec, w);
        for (const auto& a : basis.members) {
            const TangentialityReport rep = tangentiality_probe_all(m, a, {6, 40, true});
            CHECK(rep.all_zero());
            CHECK(rep.slots.size() == 3);
        }
        if (k == 1) {
            std::vector<Rational> values = basis.members[0].values();
            values[0] += 1;
            const CoefficientFamily mutated(spec, w, values);
            CHECK_THROWS_AS(tangentiality_probe(m, mutated, 1, {3, 1, true}), PreconditionViolated);
            CHECK_FALSE(tangentiality_probe_all(m, mutated, {6, 1, false}).all_zero());
        }
    }
    const OperatorSpec spec = OperatorSpec::tri(3, 1);
    const WeightAssignment low(spec, {Rational(1), Rational(2), Rational(2)});
    const FamilyBasis b = solve_family(spec, low);
    CHECK_THROWS_AS(tangentiality_probe(m, b.members[0], 1, {2, 1, true}), PreconditionViolated);
    CHECK_THROWS_AS(tangentiality_probe(m, b.members[0], 4, {2, 1, true}), SlotOutOfRange);
    const WeightAssignment frac(spec, {ratio(5, 2), Rational(2), Rational(2)});
    CHECK_THROWS_AS(tangentiality_probe(m, solve_family(spec, frac).members[0], 2, {2, 1, true}),
                    PreconditionViolated);
}

TEST_CASE("triple product identity")
{
    const FlatModel m(2);
    CHECK(verify_triple_product_identity(m, c(m, 1), c(m, 1), c(m, 1)));
    CHECK(verify_triple_product_identity(m, x(m, 0), x(m, 1), x(m, 2)));
    RandomSource rng(16);
    for (int t = 0; t < 30; ++t) {
        const FlatModel mm(1 + t % 3);
        CHECK(verify_triple_product_identity(mm, rng.homogeneous(mm.variables(), static_cast<int>(rng.uniform(0, 4))),
                                             rng.homogeneous(mm.variables(), static_cast<int>(rng.uniform(0, 4))),
                                             rng.homogeneous(mm.variables(), static_cast<int>(rng.uniform(0, 4)))));
    }
    // The literal reading with u2 repeated is not an identity.
    const auto u1 = x(m, 0) * x(m, 0);
    const auto u2 = x(m, 1);
    const auto u3 = x(m, 2) * x(m, 2);
    const auto lhs = m.laplacian(u1 * u2 * u2) + u2 * u3 * m.laplacian(u1) + u1 * u3 * m.laplacian(u2)
                     + u1 * u2 * m.laplacian(u3);
    const auto rhs = u1 * m.laplacian(u2 * u3) + u2 * m.laplacian(u1 * u3) + u3 * m.laplacian(u1 * u2);
    CHECK_FALSE(lhs == rhs);
}

TEST_CASE("symmetrized operator")
{
    const FlatModel m(5);
    const OperatorSpec spec = OperatorSpec::tri(5, 1);
    const FamilyBasis basis = solve_family(spec, fsa_weights(spec));
    RandomSource rng(17);
    const auto u = rng.homogeneous(m.variables(), 2);
    const auto v = rng.homogeneous(m.variables(), 1);
    const auto w = rng.homogeneous(m.variables(), 2);
    for (const auto& a : basis.members) {
        const SymmetrizedOperator op = symmetrize_family(a);
        CHECK(apply_symmetrized(m, op, {u, u, u}) == Rational(3) * apply_operator(m, a, {u, u, u}));
        CHECK(apply_symmetrized(m, op, {u, v, w}) == apply_symmetrized(m, op, {v, w, u}));
        CHECK(apply_symmetrized(m, op, {u, v, w}) == apply_symmetrized(m, op, {w, u, v}));
    }
    const OperatorSpec k0 = OperatorSpec::tri(5, 0);
    const CoefficientFamily one(k0, fsa_weights(k0), {Rational(1)});
    CHECK(apply_symmetrized(m, symmetrize_family(one), {u, v, w}) == Rational(3) * (u * v * w));

    const SpanMeasurement span = measure_symmetrized_span(5, 1, 5, 3);
    CHECK(span.members == 2);
    CHECK(span.dimension <= 2);
}
