#include "ambientkit/polynomial.hpp"

#include <numeric>

#include "ambientkit/errors.hpp"

namespace ambientkit {

namespace {

int total(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

} // namespace

GradedPolynomial GradedPolynomial::constant(std::size_t variables, const Rational& c)
{
    GradedPolynomial p(variables);
    p.add_term(Exponents(variables, 0), c);
    return p;
}

GradedPolynomial GradedPolynomial::variable(std::size_t variables, std::size_t i)
{
    if (i >= variables)
        throw ShapeMismatch("variable x" + std::to_string(i) + " out of range");
    Exponents e(variables, 0);
    e[i] = 1;
    return monomial(variables, std::move(e));
}

GradedPolynomial GradedPolynomial::monomial(std::size_t variables, Exponents exps, const Rational& c)
{
    if (exps.size() != variables)
        throw ShapeMismatch("exponent vector has " + std::to_string(exps.size()) + " entries, expected "
                            + std::to_string(variables));
    GradedPolynomial p(variables);
    p.add_term(exps, c);
    return p;
}

void GradedPolynomial::add_term(const Exponents& exps, const Rational& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(exps, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

int GradedPolynomial::degree() const
{
    int d = -1;
    for (const auto& [e, c] : terms_)
        d = std::max(d, total(e));
    return d;
}

bool GradedPolynomial::is_homogeneous() const
{
    if (terms_.empty())
        return true;
    const int d = total(terms_.begin()->first);
    for (const auto& [e, c] : terms_) {
        if (total(e) != d)
            return false;
    }
    return true;
}

std::optional<int> GradedPolynomial::homogeneous_degree() const
{
    if (terms_.empty() || !is_homogeneous())
        return std::nullopt;
    return total(terms_.begin()->first);
}

GradedPolynomial GradedPolynomial::component(int degree) const
{
    GradedPolynomial out(vars_);
    for (const auto& [e, c] : terms_) {
        if (total(e) == degree)
            out.terms_.emplace(e, c);
    }
    return out;
}

GradedPolynomial GradedPolynomial::derivative(std::size_t i) const
{
    if (i >= vars_)
        throw ShapeMismatch("variable x" + std::to_string(i) + " out of range");
    GradedPolynomial out(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[i] == 0)
            continue;
        Exponents d = e;
        --d[i];
        out.add_term(d, c * e[i]);
    }
    return out;
}

Rational GradedPolynomial::evaluate(std::span<const Rational> point) const
{
    if (point.size() != vars_)
        throw ShapeMismatch("point has " + std::to_string(point.size()) + " coordinates, expected "
                            + std::to_string(vars_));
    Rational sum = 0;
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < vars_; ++i) {
            for (int j = 0; j < e[i]; ++j)
                t *= point[i];
        }
        sum += t;
    }
    return sum;
}

void GradedPolynomial::check_compatible(const GradedPolynomial& o) const
{
    if (o.vars_ != vars_)
        throw ShapeMismatch("polynomials in " + std::to_string(vars_) + " and " + std::to_string(o.vars_)
                            + " variables");
}

GradedPolynomial& GradedPolynomial::operator+=(const GradedPolynomial& o)
{
    check_compatible(o);
    for (const auto& [e, c] : o.terms_)
        add_term(e, c);
    return *this;
}

GradedPolynomial& GradedPolynomial::operator-=(const GradedPolynomial& o)
{
    check_compatible(o);
    for (const auto& [e, c] : o.terms_)
        add_term(e, -c);
    return *this;
}

GradedPolynomial& GradedPolynomial::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_)
        v *= c;
    return *this;
}

GradedPolynomial operator*(const GradedPolynomial& a, const GradedPolynomial& b)
{
    a.check_compatible(b);
    GradedPolynomial out(a.vars_);
    Exponents e(a.vars_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < a.vars_; ++i)
                e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

} // namespace ambientkit
