#include "ambientkit/random_battery.hpp"

#include <cstdlib>
#include <string>

namespace ambientkit {

std::uint64_t default_seed()
{
    const char* env = std::getenv("AMBIENTKIT_SEED");
    if (env == nullptr || *env == '\0')
        return kDefaultSeed;
    try {
        std::size_t used = 0;
        const std::string text(env);
        const unsigned long long v = std::stoull(text, &used);
        if (used == text.size())
            return v;
    } catch (const std::exception&) {
    }
    return kDefaultSeed;
}

long RandomSource::uniform(long lo, long hi)
{
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(engine_() % span);
}

Rational RandomSource::generic_weight()
{
    for (;;) {
        const Rational w = ratio(uniform(-40, 40), uniform(3, 17));
        if (!is_integer(Rational(2 * w)))
            return w;
    }
}

std::vector<Rational> RandomSource::generic_weights(std::size_t count)
{
    std::vector<Rational> out;
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(generic_weight());
    return out;
}

std::vector<Rational> RandomSource::arbitrary_weights(std::size_t count, const Rational* fsa_value)
{
    std::vector<Rational> out;
    const long kinds = fsa_value != nullptr ? 4 : 3;
    for (std::size_t i = 0; i < count; ++i) {
        switch (uniform(0, kinds - 1)) {
        case 0: out.emplace_back(uniform(-6, 6)); break;
        case 1: out.push_back(ratio(2 * uniform(-6, 6) + 1, 2)); break;
        case 2: out.push_back(ratio(uniform(-40, 40), uniform(1, 17))); break;
        default: out.push_back(*fsa_value); break;
        }
    }
    return out;
}

std::vector<Exponents> monomials_of_degree(std::size_t variables, int degree)
{
    std::vector<Exponents> out;
    if (variables == 0 || degree < 0)
        return out;
    Exponents e(variables, 0);
    // Recursive fill of the first variables, remainder in the last.
    auto fill = [&](auto&& self, std::size_t i, int left) -> void {
        if (i + 1 == variables) {
            e[i] = left;
            out.push_back(e);
            return;
        }
        for (int v = left; v >= 0; --v) {
            e[i] = v;
            self(self, i + 1, left - v);
        }
    };
    fill(fill, 0, degree);
    return out;
}

GradedPolynomial RandomSource::homogeneous(std::size_t variables, int degree)
{
    GradedPolynomial p(variables);
    const auto monos = monomials_of_degree(variables, degree);
    for (const auto& e : monos)
        p.add_term(e, Rational(uniform(-3, 3)));
    if (p.is_zero())
        p.add_term(monos[static_cast<std::size_t>(uniform(0, static_cast<long>(monos.size()) - 1))], Rational(1));
    return p;
}

} // namespace ambientkit
