#include "ambientkit/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ambientkit/acceptance.hpp"
#include "ambientkit/errors.hpp"
#include "ambientkit/flat_ambient.hpp"
#include "ambientkit/random_battery.hpp"
#include "ambientkit/serialize.hpp"
#include "ambientkit/shift_ops.hpp"

namespace ambientkit {

namespace {

const std::vector<std::string> kCommands = {"dims",     "solve",           "verify-complex",    "exactness",
                                            "verify-symmetry", "verify-or", "oracle-commutator", "oracle-tangential",
                                            "report"};

struct RunConfig {
    std::string command;
    std::string family = "TRI";
    std::optional<int> n;
    std::optional<int> k;
    std::optional<int> l;
    std::optional<int> l1;
    std::optional<int> l2;
    std::string weights;
    bool fsa = false;
    std::uint64_t seed = default_seed();
    std::size_t trials = 25;
    std::string format = "json";
    std::string out_path;
    bool allow_hypothesis_violation = false;
    bool boundary_constraints = false;
};

int required(const std::optional<int>& v, const char* flag)
{
    if (!v)
        throw InvalidSpec(std::string("--") + flag + " is required for this command");
    return *v;
}

OperatorSpec build_spec(const RunConfig& c)
{
    const Family family = parse_family(c.family);
    const int n = required(c.n, "n");
    const int k = required(c.k, "k");
    SpecOptions opts{c.allow_hypothesis_violation};
    switch (family) {
    case Family::Tri:
        if (c.l.value_or(0) != 0 || c.l1 || c.l2)
            throw InvalidSpec("TRI takes no invariant weight");
        return OperatorSpec::tri(n, k, opts);
    case Family::Linear:
        if (c.l)
            throw InvalidSpec("LIN takes --l1 and --l2, not --l");
        return OperatorSpec::linear(n, k, c.l1.value_or(0), c.l2.value_or(0), opts);
    default:
        if (c.l1 || c.l2)
            throw InvalidSpec(c.family + " takes --l, not --l1/--l2");
        return OperatorSpec::or_family(family, n, k, c.l.value_or(0), opts);
    }
}

WeightAssignment build_weights(const RunConfig& c, const OperatorSpec& spec)
{
    if (c.fsa) {
        if (!c.weights.empty())
            throw InvalidSpec("--fsa and --weights are mutually exclusive");
        return fsa_weights(spec);
    }
    if (c.weights.empty())
        throw InvalidSpec("--weights (or --fsa) is required for this command");
    std::vector<Rational> values;
    std::stringstream in(c.weights);
    std::string item;
    while (std::getline(in, item, ','))
        values.push_back(parse_rational(item));
    if (!c.weights.empty() && c.weights.back() == ',')
        throw ParseError("trailing comma in --weights");
    return WeightAssignment(spec, values);
}

Json config_json(const RunConfig& c, const std::optional<OperatorSpec>& spec,
                 const std::optional<WeightAssignment>& w)
{
    Json j{{"command", c.command}, {"seed", c.seed}, {"trials", c.trials}, {"format", c.format}};
    if (spec)
        j["spec"] = spec_json(*spec);
    if (w) {
        j["weights"] = to_json(*w);
        if (spec && spec->family() == Family::Tri)
            j["genericity_failures"] = genericity_failures(*w);
    }
    if (c.fsa)
        j["fsa"] = true;
    if (c.boundary_constraints)
        j["boundary_constraints"] = true;
    return j;
}

struct Outcome {
    bool passed = true;
    Json result = Json::object();
    /// Written verbatim instead of a run report (solve).
    std::optional<std::string> raw;
};

Json symmetry_suite(const FamilyBasis& basis, bool& passed)
{
    Json members = Json::array();
    for (const auto& a : basis.members) {
        const SymmetryReport rep = verify_fsa_symmetries(a);
        passed = passed && rep.all_hold();
        members.push_back({{"recurrences", rep.recurrences_hold},
                           {"swap_3_4", rep.swap_3_4},
                           {"swap_1_5", rep.swap_1_5},
                           {"prime", rep.prime},
                           {"counterexample", rep.first_violation}});
    }
    return members;
}

bool wants_symmetry(const RunConfig& c, const OperatorSpec& spec)
{
    return c.fsa && spec.family() == Family::Tri && spec.n() > 2 * spec.k();
}

Outcome run_dims(const RunConfig& c, const OperatorSpec& spec, const WeightAssignment& w)
{
    Outcome o;
    const std::size_t dim = kernel_dimension(spec, w, {c.boundary_constraints});
    const std::size_t bound = family_lower_bound(spec);
    o.result = {{"dimension", dim},
                {"lower_bound", bound},
                {"euler_characteristic", euler_characteristic(spec.family(), spec.top_degree())}};
    o.passed = dim >= bound;
    if (spec.family() == Family::Tri) {
        const bool generic = tri_weights_generic(w);
        o.result["generic"] = generic;
        if (generic && !c.boundary_constraints)
            o.passed = o.passed && dim == static_cast<std::size_t>(spec.k()) + 1;
    } else {
        o.result["generic"] = nullptr;
    }
    if (wants_symmetry(c, spec))
        o.result["symmetries"] = symmetry_suite(solve_family(spec, w, {c.boundary_constraints}), o.passed);
    return o;
}

Outcome run_solve(const RunConfig& c, const OperatorSpec& spec, const WeightAssignment& w)
{
    Outcome o;
    const FamilyBasis basis = solve_family(spec, w, {c.boundary_constraints});
    o.passed = basis.dimension() >= family_lower_bound(spec);
    for (const auto& a : basis.members)
        o.passed = o.passed && verify_recurrences(spec, w, a).all_zero();
    if (wants_symmetry(c, spec))
        symmetry_suite(basis, o.passed);
    o.raw = c.format == "csv" ? to_csv(basis) : dump(to_json(basis));
    return o;
}

Outcome run_verify_complex(const OperatorSpec& spec, const WeightAssignment& w)
{
    Outcome o;
    Json checks = Json::array();
    for (int level = 1; level < max_level(spec.family()); ++level) {
        const bool zero =
            compose(build_differential(spec, level + 1, w), build_differential(spec, level, w)).is_zero();
        o.passed = o.passed && zero;
        checks.push_back({{"composition", "d" + std::to_string(level + 1) + " d" + std::to_string(level)},
                          {"zero", zero}});
    }
    o.result = {{"checks", checks}};
    return o;
}

Outcome run_exactness(const OperatorSpec& spec, const WeightAssignment& w)
{
    Outcome o;
    const GenericExactnessReport rep = certify_generic_exactness(spec, w);
    auto junction = [](const ExactnessReport& e) {
        return Json{{"is_complex", e.is_complex}, {"rank_in", e.rank_in}, {"nullity_out", e.nullity_out},
                    {"exact", e.exact}};
    };
    o.result = {{"generic", rep.generic},
                {"genericity_failures", rep.genericity_failures},
                {"ker_d2_eq_im_d1", junction(rep.at_first)},
                {"ker_d3_eq_im_d2", junction(rep.at_second)},
                {"d3_surjective", rep.last_surjective},
                {"kernel_dimension", rep.kernel_dimension},
                {"euler_characteristic", rep.euler},
                {"lower_bound_holds", rep.lower_bound_holds}};
    // Away from the generic set only the lower bound is guaranteed.
    o.passed = rep.generic ? rep.all_exact() : rep.lower_bound_holds;
    return o;
}

Outcome run_verify_symmetry(const RunConfig& c, const OperatorSpec& spec, const WeightAssignment& w)
{
    Outcome o;
    const FamilyBasis basis = solve_family(spec, w, {c.boundary_constraints});
    if (basis.members.empty())
        throw PreconditionViolated("empty kernel");
    o.result = {{"members", symmetry_suite(basis, o.passed)}};
    return o;
}

Outcome run_verify_or(const OperatorSpec& spec)
{
    Outcome o;
    if (spec.family() != Family::OrOuter || spec.l() != 0)
        throw InvalidSpec("verify-or needs --family OR_OUTER with l = 0");
    const CoefficientFamily a = or_closed_form(spec.n(), spec.k());
    const RecurrenceReport rep = verify_recurrences(a.spec(), a.weights(), a);
    const bool normalized = a(Composition::concentrated(3, 1, spec.k())) == 1;
    o.passed = rep.all_zero() && normalized;
    o.result = {{"family", to_json(a)},
                {"weights", to_json(a.weights())},
                {"residuals_zero", rep.all_zero()},
                {"normalized", normalized},
                {"counterexample", rep.first_violation}};
    return o;
}

Outcome run_oracle_commutator(const RunConfig& c)
{
    Outcome o;
    const int n = required(c.n, "n");
    const int k = required(c.k, "k");
    const FlatModel model(n);
    RandomSource rng(c.seed);
    std::vector<GradedPolynomial> battery;
    for (int d = 0; d <= 5; ++d) {
        for (const auto& e : monomials_of_degree(model.variables(), d))
            battery.push_back(GradedPolynomial::monomial(model.variables(), e));
    }
    for (std::size_t t = 0; t < c.trials; ++t)
        battery.push_back(rng.homogeneous(model.variables(), static_cast<int>(rng.uniform(0, 5))));
    std::size_t failures = 0;
    for (const auto& p : battery) {
        if (!verify_sl2_commutator(model, k, p).holds) {
            if (failures == 0)
                o.result["counterexample"] = to_json(p);
            ++failures;
        }
    }
    o.passed = failures == 0;
    o.result["checked"] = battery.size();
    o.result["failures"] = failures;
    return o;
}

Outcome run_oracle_tangential(const RunConfig& c, const OperatorSpec& spec, const WeightAssignment& w)
{
    Outcome o;
    const FamilyBasis basis = solve_family(spec, w, {c.boundary_constraints});
    const FlatModel model(spec.n());
    Json members = Json::array();
    for (std::size_t m = 0; m < basis.members.size(); ++m) {
        const TangentialityReport rep =
            tangentiality_probe_all(model, basis.members[m], {c.trials, c.seed + 10 * m, true});
        Json slots = Json::array();
        for (const auto& s : rep.slots) {
            std::size_t zero = 0;
            for (const auto& t : s.trials)
                zero += t.remainder_zero && t.commutator_zero;
            slots.push_back({{"slot", s.slot}, {"trials", s.trials.size()}, {"zero", zero},
                             {"first_failure", s.first_failure}});
        }
        o.passed = o.passed && rep.all_zero();
        members.push_back({{"member", m}, {"seed", rep.seed}, {"slots", slots}});
    }
    o.result = {{"members", members}};
    return o;
}

int write_output(const RunConfig& c, const std::string& text, std::ostream& out, std::ostream& err)
{
    if (c.out_path.empty()) {
        out << text;
        return kExitPass;
    }
    std::ofstream file(c.out_path, std::ios::binary);
    file << text;
    if (!file) {
        err << "error: cannot write " << c.out_path << "\n";
        return kExitUsage;
    }
    return kExitPass;
}

} // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    RunConfig c;
    CLI::App app{"Coefficient families of conformally covariant ambient operators", "ambientkit"};
    app.add_option("command", c.command, "Command to run")->required()->check(CLI::IsMember(kCommands));
    app.add_option("--family", c.family, "TRI, LIN, OR_OUTER, OR_INNER or OR_INNER2");
    app.add_option("--n", c.n, "Dimension");
    app.add_option("--k", c.k, "Order");
    auto* l = app.add_option("--l", c.l, "Invariant weight (OR families)");
    app.add_option("--l1", c.l1, "First invariant weight (LIN)")->excludes(l);
    app.add_option("--l2", c.l2, "Second invariant weight (LIN)")->excludes(l);
    app.add_option("--weights", c.weights, "Comma-separated exact rationals");
    app.add_flag("--fsa", c.fsa, "Use the formally self-adjoint weights and run the symmetry suite");
    app.add_option("--seed", c.seed, "Random seed (default AMBIENTKIT_SEED)");
    app.add_option("--trials", c.trials, "Trial count")->check(CLI::PositiveNumber);
    app.add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", c.out_path, "Output path (default stdout)");
    app.add_flag("--allow-hypothesis-violation", c.allow_hypothesis_violation, "Permit even n < 2k");
    app.add_flag("--boundary-constraints", c.boundary_constraints, "Add the n = 2k boundary equations");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        if (c.format == "csv" && c.command != "solve")
            throw InvalidSpec("--format csv is only available for solve");

        if (c.command == "report") {
            const auto results = run_acceptance(c.seed, [&err](const CriterionResult& r) {
                err << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.name << "\n";
            });
            const Json report = acceptance_report(results, c.seed);
            const int io = write_output(c, dump(report), out, err);
            if (io != kExitPass)
                return io;
            return report["all_passed"].get<bool>() ? kExitPass : kExitFailure;
        }

        std::optional<OperatorSpec> spec;
        std::optional<WeightAssignment> w;
        Outcome o;
        if (c.command == "oracle-commutator") {
            o = run_oracle_commutator(c);
        } else if (c.command == "verify-or") {
            if (c.family == "TRI")
                c.family = "OR_OUTER";
            spec = build_spec(c);
            o = run_verify_or(*spec);
        } else {
            spec = build_spec(c);
            if (c.command == "verify-symmetry" && c.weights.empty())
                c.fsa = true;
            w = build_weights(c, *spec);
            if (c.command == "dims")
                o = run_dims(c, *spec, *w);
            else if (c.command == "solve")
                o = run_solve(c, *spec, *w);
            else if (c.command == "verify-complex")
                o = run_verify_complex(*spec, *w);
            else if (c.command == "exactness")
                o = run_exactness(*spec, *w);
            else if (c.command == "verify-symmetry")
                o = run_verify_symmetry(c, *spec, *w);
            else
                o = run_oracle_tangential(c, *spec, *w);
        }

        std::string text;
        if (o.raw) {
            text = *o.raw;
        } else {
            const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
            Json report{{"tool", "ambientkit"},
                        {"version", kToolVersion},
                        {"config", config_json(c, spec, w)},
                        {"passed", o.passed},
                        {"result", o.result},
                        {"timings_ms", {{"total", static_cast<long>(ms.count())}}}};
            if (spec && spec->hypothesis_violated())
                report["warnings"] = Json::array({"even n < 2k: dimension guarantees do not apply"});
            text = dump(report);
        }
        const int io = write_output(c, text, out, err);
        if (io != kExitPass)
            return io;
        if (!o.passed)
            err << "FAIL: " << c.command << " verdict failed\n";
        return o.passed ? kExitPass : kExitFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

} // namespace ambientkit
