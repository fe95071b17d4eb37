#include "ambientkit/flat_ambient.hpp"

#include <map>
#include <sstream>

#include "ambientkit/errors.hpp"
#include "ambientkit/random_battery.hpp"
#include "ambientkit/shift_ops.hpp"

namespace ambientkit {

FlatModel::FlatModel(int n) : n_(n)
{
    if (n < 1)
        throw InvalidSpec("flat model needs n >= 1");
}

void FlatModel::check(const GradedPolynomial& p) const
{
    if (p.variables() != variables())
        throw ShapeMismatch("polynomial in " + std::to_string(p.variables()) + " variables, model has "
                            + std::to_string(variables()));
}

GradedPolynomial FlatModel::quadratic_form() const
{
    GradedPolynomial q(variables());
    for (std::size_t i = 0; i < variables(); ++i) {
        Exponents e(variables(), 0);
        e[i] = 2;
        q.add_term(e, Rational(i == 0 ? -1 : 1));
    }
    return q;
}

GradedPolynomial FlatModel::laplacian(const GradedPolynomial& p) const
{
    check(p);
    GradedPolynomial out(variables());
    for (const auto& [e, c] : p.terms()) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] < 2)
                continue;
            Exponents d = e;
            d[i] -= 2;
            const int sign = i == 0 ? 1 : -1;
            out.add_term(d, c * (sign * e[i] * (e[i] - 1)));
        }
    }
    return out;
}

GradedPolynomial FlatModel::laplacian_power(const GradedPolynomial& p, int k) const
{
    GradedPolynomial out = p;
    for (int i = 0; i < k && !out.is_zero(); ++i)
        out = laplacian(out);
    check(out);
    return out;
}

GradedPolynomial FlatModel::euler_operator(const GradedPolynomial& p) const
{
    check(p);
    GradedPolynomial out(variables());
    for (const auto& [e, c] : p.terms()) {
        int d = 0;
        for (int x : e)
            d += x;
        out.add_term(e, c * d);
    }
    return out;
}

GradedPolynomial FlatModel::gradient_pairing(const GradedPolynomial& p, const GradedPolynomial& q) const
{
    check(p);
    check(q);
    GradedPolynomial out(variables());
    for (std::size_t i = 0; i < variables(); ++i) {
        GradedPolynomial t = p.derivative(i) * q.derivative(i);
        if (i == 0)
            out -= t;
        else
            out += t;
    }
    return out;
}

GradedPolynomial FlatModel::remainder_mod_Q(const GradedPolynomial& p) const
{
    check(p);
    GradedPolynomial cur = p;
    for (;;) {
        bool reduced = false;
        GradedPolynomial next(variables());
        for (const auto& [e, c] : cur.terms()) {
            if (e[0] < 2) {
                next.add_term(e, c);
                continue;
            }
            reduced = true;
            // x0^2 = sum_{i>=1} x_i^2 modulo Q
            for (std::size_t i = 1; i < variables(); ++i) {
                Exponents d = e;
                d[0] -= 2;
                d[i] += 2;
                next.add_term(d, c);
            }
        }
        if (!reduced)
            return next;
        cur = std::move(next);
    }
}

std::vector<Rational> FlatModel::cone_point(const std::vector<Rational>& t) const
{
    if (t.size() != static_cast<std::size_t>(n_))
        throw ShapeMismatch("cone parameter needs " + std::to_string(n_) + " coordinates");
    Rational s = 0;
    for (const auto& x : t)
        s += x * x;
    std::vector<Rational> point;
    point.push_back(1 + s);
    for (const auto& x : t)
        point.push_back(2 * x);
    point.push_back(1 - s);
    return point;
}

Sl2Check verify_sl2_commutator(const FlatModel& model, int k, const GradedPolynomial& p)
{
    if (k < 1)
        throw InvalidSpec("commutator identity needs k >= 1");
    if (!p.is_homogeneous())
        throw NonHomogeneousInput("commutator identity is checked on homogeneous polynomials");
    const GradedPolynomial q = model.quadratic_form();
    Sl2Check out;
    out.lhs = model.laplacian_power(q * p, k) - q * model.laplacian_power(p, k);
    const GradedPolynomial inner = Rational(2) * model.euler_operator(p) + Rational(model.n() + 4 - 2 * k) * p;
    out.rhs = Rational(-2 * k) * model.laplacian_power(inner, k - 1);
    out.holds = out.lhs == out.rhs;
    return out;
}

namespace {

void check_inputs(const FlatModel& model, const CoefficientFamily& a, const std::vector<GradedPolynomial>& inputs)
{
    const OperatorSpec& spec = a.spec();
    if (spec.l() != 0)
        throw InvariantModeUnsupported("the flat model carries no curvature invariants; l must be 0 for "
                                       + describe(spec));
    if (inputs.size() != spec.arity())
        throw InvalidSpec(describe(spec) + " takes " + std::to_string(spec.arity()) + " inputs, got "
                          + std::to_string(inputs.size()));
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (inputs[i].variables() != model.variables())
            throw ShapeMismatch("input " + std::to_string(i + 1) + " has the wrong variable count");
        if (!inputs[i].is_homogeneous())
            throw NonHomogeneousInput("input " + std::to_string(i + 1) + " is not homogeneous");
    }
}

std::vector<GradedPolynomial> powers(const FlatModel& model, const GradedPolynomial& p, int m)
{
    std::vector<GradedPolynomial> out{p};
    for (int i = 1; i <= m; ++i)
        out.push_back(model.laplacian(out.back()));
    return out;
}

} // namespace

GradedPolynomial apply_operator(const FlatModel& model, const CoefficientFamily& a,
                                const std::vector<GradedPolynomial>& inputs)
{
    check_inputs(model, a, inputs);
    const int m = a.spec().top_degree();
    const std::size_t vars = model.variables();

    std::map<Exponents, Rational> coeff;
    for (const Composition& al : a.index()) {
        const Rational c = Rational(multinomial(m, al)) * a(al);
        if (c != 0)
            coeff.emplace(al.parts(), c);
    }
    auto c_at = [&](std::vector<int> al) -> const Rational* {
        auto it = coeff.find(al);
        return it == coeff.end() ? nullptr : &it->second;
    };

    const auto lu = powers(model, inputs[0], m);
    GradedPolynomial out(vars);

    switch (a.spec().family()) {
    case Family::Linear: {
        Rational total = 0;
        for (const auto& [al, c] : coeff)
            total += c;
        return total * lu[m];
    }
    case Family::Tri: {
        const auto lv = powers(model, inputs[1], m);
        const auto lw = powers(model, inputs[2], m);
        std::map<std::pair<int, int>, GradedPolynomial> uv;
        auto product = [&](int i, int j) -> const GradedPolynomial& {
            auto it = uv.find({i, j});
            if (it == uv.end())
                it = uv.emplace(std::make_pair(i, j), lu[i] * lv[j]).first;
            return it->second;
        };
        for (int a1 = 0; a1 <= m; ++a1) {
            GradedPolynomial t(vars);
            for (int a2 = 0; a1 + a2 <= m; ++a2) {
                for (int a5 = 0; a1 + a2 + a5 <= m; ++a5) {
                    const int r = m - a1 - a2 - a5;
                    GradedPolynomial s(vars);
                    for (int a3 = 0; a3 <= r; ++a3) {
                        if (const Rational* c = c_at({a1, a2, a3, r - a3, a5}))
                            s += *c * product(a3, r - a3);
                    }
                    if (!s.is_zero())
                        t += model.laplacian_power(s, a2) * lw[a5];
                }
            }
            out += model.laplacian_power(t, a1);
        }
        return out;
    }
    case Family::OrOuter:
    case Family::OrInner:
    case Family::OrInner2: {
        const auto lv = powers(model, inputs[1], m);
        const Family f = a.spec().family();
        // Group by the total number of outer Laplacians.
        std::vector<GradedPolynomial> inner(static_cast<std::size_t>(m) + 1, GradedPolynomial(vars));
        for (const auto& [al, c] : coeff) {
            if (f == Family::OrOuter)
                inner[al[0]] += c * (lu[al[1]] * lv[al[2]]);
            else if (f == Family::OrInner)
                inner[al[0]] += c * (lu[al[1]] * lv[al[2] + al[3]]);
            else
                inner[al[0] + al[1]] += c * (lu[al[2]] * lv[al[3]]);
        }
        for (int i = 0; i <= m; ++i)
            out += model.laplacian_power(inner[i], i);
        return out;
    }
    }
    return out;
}

GradedPolynomial apply_symmetrized(const FlatModel& model, const SymmetrizedOperator& op,
                                   const std::vector<GradedPolynomial>& inputs)
{
    if (inputs.size() != 3)
        throw InvalidSpec("symmetrized operator takes 3 inputs");
    GradedPolynomial out(model.variables());
    for (const auto& o : op.orderings)
        out += apply_operator(model, op.coefficients, {inputs[o[0]], inputs[o[1]], inputs[o[2]]});
    return out;
}

bool SlotProbe::all_zero() const
{
    for (const auto& t : trials) {
        if (!t.remainder_zero || !t.commutator_zero)
            return false;
    }
    return true;
}

bool TangentialityReport::all_zero() const
{
    for (const auto& s : slots) {
        if (!s.all_zero())
            return false;
    }
    return true;
}

namespace {

std::vector<int> integer_degrees(const CoefficientFamily& a)
{
    std::vector<int> out;
    for (const Rational& w : a.weights().values()) {
        if (!is_integer(w) || w < 0)
            throw PreconditionViolated("polynomial oracle needs nonnegative integer weights, got "
                                       + format_rational(w));
        out.push_back(static_cast<int>(w.get_num().get_si()));
    }
    return out;
}

} // namespace

SlotProbe tangentiality_probe(const FlatModel& model, const CoefficientFamily& a, std::size_t slot,
                              const ProbeOptions& options)
{
    const OperatorSpec& spec = a.spec();
    if (options.require_kernel) {
        const DenseVector image = build_differential(spec, 1, a.weights()).apply(a.values());
        for (const auto& v : image) {
            if (v != 0)
                throw PreconditionViolated("coefficient family is not in ker d1 at its weights");
        }
    }
    const std::vector<int> deg = integer_degrees(a);
    if (slot < 1 || slot > deg.size())
        throw SlotOutOfRange("slot " + std::to_string(slot) + " for " + describe(spec));
    if (deg[slot - 1] < 2)
        throw PreconditionViolated("slot " + std::to_string(slot) + " needs weight >= 2");

    RandomSource rng(options.seed);
    const GradedPolynomial q = model.quadratic_form();
    SlotProbe probe;
    probe.slot = slot;
    for (std::size_t t = 0; t < options.trials; ++t) {
        std::vector<GradedPolynomial> plain;
        for (std::size_t i = 0; i < deg.size(); ++i)
            plain.push_back(rng.homogeneous(model.variables(), i + 1 == slot ? deg[i] - 2 : deg[i]));
        std::vector<GradedPolynomial> with_q = plain;
        with_q[slot - 1] = q * plain[slot - 1];

        const GradedPolynomial d = apply_operator(model, a, with_q);
        ProbeTrial trial;
        trial.remainder_zero = model.remainder_mod_Q(d).is_zero();
        trial.commutator_zero = d == q * apply_operator(model, a, plain);
        if ((!trial.remainder_zero || !trial.commutator_zero) && probe.first_failure.empty())
            probe.first_failure = "slot " + std::to_string(slot) + " trial " + std::to_string(t)
                                  + (trial.remainder_zero ? ": commutator nonzero" : ": nonzero remainder");
        probe.trials.push_back(trial);
    }
    return probe;
}

TangentialityReport tangentiality_probe_all(const FlatModel& model, const CoefficientFamily& a,
                                            const ProbeOptions& options)
{
    TangentialityReport report;
    report.seed = options.seed;
    for (std::size_t j = 1; j <= a.spec().arity(); ++j) {
        ProbeOptions o = options;
        o.seed = options.seed + j;
        report.slots.push_back(tangentiality_probe(model, a, j, o));
    }
    return report;
}

bool verify_triple_product_identity(const FlatModel& model, const GradedPolynomial& u1,
                                    const GradedPolynomial& u2, const GradedPolynomial& u3)
{
    const GradedPolynomial u12 = u1 * u2;
    const GradedPolynomial u13 = u1 * u3;
    const GradedPolynomial u23 = u2 * u3;
    const GradedPolynomial lhs = model.laplacian(u12 * u3) + u23 * model.laplacian(u1)
                                 + u13 * model.laplacian(u2) + u12 * model.laplacian(u3);
    const GradedPolynomial rhs = u1 * model.laplacian(u23) + u2 * model.laplacian(u13) + u3 * model.laplacian(u12);
    return lhs == rhs;
}

SpanMeasurement measure_symmetrized_span(int n, int k, std::size_t triples, std::uint64_t seed)
{
    const OperatorSpec spec = OperatorSpec::tri(n, k);
    const FamilyBasis basis = solve_family(spec, fsa_weights(spec));
    const FlatModel model(n);

    SpanMeasurement out{n, k, basis.dimension(), triples, 0, seed};
    RandomSource rng(seed);
    std::vector<std::vector<GradedPolynomial>> battery;
    for (std::size_t t = 0; t < triples; ++t) {
        std::vector<GradedPolynomial> in;
        for (int i = 0; i < 3; ++i)
            in.push_back(rng.homogeneous(model.variables(), static_cast<int>(rng.uniform(0, 2))));
        battery.push_back(std::move(in));
    }

    // Column per (triple, monomial) that occurs in some output.
    std::vector<std::map<std::pair<std::size_t, Exponents>, Rational>> rows;
    std::map<std::pair<std::size_t, Exponents>, std::size_t> columns;
    for (const auto& member : basis.members) {
        const SymmetrizedOperator op = symmetrize_family(member);
        auto& row = rows.emplace_back();
        for (std::size_t t = 0; t < battery.size(); ++t) {
            const GradedPolynomial image = apply_symmetrized(model, op, battery[t]);
            for (const auto& [e, c] : image.terms()) {
                row.emplace(std::make_pair(t, e), c);
                columns.emplace(std::make_pair(t, e), 0);
            }
        }
    }
    std::size_t next = 0;
    for (auto& [key, idx] : columns)
        idx = next++;
    std::vector<DenseVector> vectors;
    for (const auto& row : rows) {
        DenseVector v(columns.size());
        for (const auto& [key, c] : row)
            v[columns.at(key)] = c;
        vectors.push_back(std::move(v));
    }
    out.dimension = vectors.empty() ? 0 : span_dimension(vectors);
    return out;
}

} // namespace ambientkit
