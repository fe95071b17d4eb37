#include "ambientkit/serialize.hpp"

#include <sstream>

#include "ambientkit/errors.hpp"

namespace ambientkit {

namespace {

Rational rational_field(const Json& j)
{
    if (!j.is_string())
        throw ParseError("expected a rational string, got " + j.dump());
    return parse_rational(j.get<std::string>());
}

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string("missing field '") + key + "'");
    return j.at(key);
}

int int_field(const Json& j, const char* key)
{
    const Json& v = field(j, key);
    if (!v.is_number_integer())
        throw ParseError(std::string("field '") + key + "' must be an integer");
    return v.get<int>();
}

} // namespace

Json to_json(const Composition& alpha) { return Json(alpha.parts()); }

Json to_json(const ExactMatrix& m)
{
    Json entries = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (const auto& e : m.row(r))
            entries.push_back(Json::array({r, e.col, format_rational(e.value)}));
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

ExactMatrix matrix_from_json(const Json& j)
{
    try {
        ExactMatrix m(field(j, "rows").get<std::size_t>(), field(j, "cols").get<std::size_t>());
        for (const Json& e : field(j, "entries")) {
            if (!e.is_array() || e.size() != 3)
                throw ParseError("matrix entry must be [row, col, value]");
            const auto r = e[0].get<std::size_t>();
            const auto c = e[1].get<std::size_t>();
            if (r >= m.rows() || c >= m.cols())
                throw ParseError("matrix entry out of range");
            m.set(r, c, rational_field(e[2]));
        }
        return m;
    } catch (const Json::exception& ex) {
        throw ParseError(ex.what());
    }
}

Json to_json(const GradedPolynomial& p)
{
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms())
        terms.push_back({{"exps", e}, {"coef", format_rational(c)}});
    return terms;
}

GradedPolynomial polynomial_from_json(const Json& j, std::size_t variables)
{
    if (!j.is_array())
        throw ParseError("polynomial must be a term list");
    GradedPolynomial p(variables);
    try {
        for (const Json& t : j) {
            auto e = field(t, "exps").get<Exponents>();
            if (e.size() != variables)
                throw ParseError("exponent vector has the wrong length");
            p.add_term(e, rational_field(field(t, "coef")));
        }
    } catch (const Json::exception& ex) {
        throw ParseError(ex.what());
    }
    return p;
}

Json to_json(const CoefficientFamily& a)
{
    Json entries = Json::array();
    for (std::size_t i = 0; i < a.index().size(); ++i)
        entries.push_back({{"alpha", to_json(a.index().unrank(i))}, {"value", format_rational(a.values()[i])}});
    return {{"entries", entries}};
}

Json to_json(const WeightAssignment& w)
{
    Json out = Json::array();
    for (const auto& v : w.values())
        out.push_back(format_rational(v));
    return out;
}

Json spec_json(const OperatorSpec& spec)
{
    Json j{{"family", family_name(spec.family())}, {"n", spec.n()}, {"k", spec.k()}};
    if (spec.family() == Family::Linear) {
        j["l1"] = spec.l1();
        j["l2"] = spec.l2();
    } else if (spec.family() != Family::Tri) {
        j["l"] = spec.l();
    }
    if (spec.hypothesis_violated())
        j["hypothesis_violated"] = true;
    return j;
}

Json to_json(const FamilyBasis& basis)
{
    Json j = spec_json(basis.spec);
    j["weights"] = to_json(basis.weights);
    j["generic"] = basis.generic ? Json(*basis.generic) : Json(nullptr);
    Json members = Json::array();
    for (const auto& m : basis.members)
        members.push_back(to_json(m));
    j["basis"] = members;
    if (basis.boundary_constraints)
        j["boundary_constraints"] = true;
    return j;
}

FamilyBasis family_basis_from_json(const Json& j)
{
    try {
        const Family family = parse_family(field(j, "family").get<std::string>());
        const int n = int_field(j, "n");
        const int k = int_field(j, "k");
        SpecOptions opts;
        opts.allow_hypothesis_violation = j.value("hypothesis_violated", false);
        const OperatorSpec spec = family == Family::Tri ? OperatorSpec::tri(n, k, opts)
                                  : family == Family::Linear
                                      ? OperatorSpec::linear(n, k, int_field(j, "l1"), int_field(j, "l2"), opts)
                                      : OperatorSpec::or_family(family, n, k, int_field(j, "l"), opts);
        std::vector<Rational> weights;
        for (const Json& w : field(j, "weights"))
            weights.push_back(rational_field(w));
        const WeightAssignment wa(spec, weights);

        FamilyBasis basis{spec, wa, {}, std::nullopt, j.value("boundary_constraints", false)};
        if (const Json& g = field(j, "generic"); g.is_boolean())
            basis.generic = g.get<bool>();

        const IndexSet index(spec.top_degree(), spec.slots());
        for (const Json& member : field(j, "basis")) {
            std::vector<Rational> values(index.size());
            std::vector<bool> seen(index.size(), false);
            for (const Json& e : field(member, "entries")) {
                const Composition alpha(field(e, "alpha").get<std::vector<int>>());
                const std::size_t r = index.rank(alpha);
                values[r] = rational_field(field(e, "value"));
                seen[r] = true;
            }
            for (bool s : seen) {
                if (!s)
                    throw IndexMismatch("family entry list does not cover the index set");
            }
            basis.members.emplace_back(spec, wa, std::move(values));
        }
        return basis;
    } catch (const Json::exception& ex) {
        throw ParseError(ex.what());
    }
}

std::string to_csv(const FamilyBasis& basis)
{
    std::ostringstream out;
    out << "member";
    for (std::size_t j = 1; j <= basis.spec.slots(); ++j)
        out << ",a" << j;
    out << ",value\n";
    for (std::size_t m = 0; m < basis.members.size(); ++m) {
        const CoefficientFamily& a = basis.members[m];
        for (std::size_t i = 0; i < a.index().size(); ++i) {
            out << m;
            for (int p : a.index().unrank(i).parts())
                out << ',' << p;
            out << ",\"" << format_rational(a.values()[i]) << "\"\n";
        }
    }
    return out.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

} // namespace ambientkit
