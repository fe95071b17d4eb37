#include "ambientkit/rational.hpp"

#include <cctype>

#include "ambientkit/errors.hpp"

namespace ambientkit {

namespace {

bool is_integer_literal(std::string_view s)
{
    if (!s.empty() && (s.front() == '-' || s.front() == '+'))
        s.remove_prefix(1);
    if (s.empty())
        return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    }
    return true;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                                  : text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-'
        || den.front() == '+')
        throw ParseError("not an exact rational: '" + std::string(text) + "'");

    const Integer p{std::string(num.front() == '+' ? num.substr(1) : num)};
    const Integer q{std::string(den)};
    if (q == 0)
        throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

Rational ratio(long p, long q)
{
    if (q == 0)
        throw ZeroDenominator("ratio with zero denominator");
    Rational r{Integer(p), Integer(q)};
    r.canonicalize();
    return r;
}

std::string format_rational(const Rational& value)
{
    return value.get_str();
}

bool is_integer(const Rational& value)
{
    return value.get_den() == 1;
}

} // namespace ambientkit
