#include "sba/rational.hpp"

#include "sba/error.hpp"

namespace sba {

std::string to_string(const Rational& q)
{
    Rational c = q;
    c.canonicalize();
    if (c.get_den() == 1)
        return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational parse_rational(const std::string& text)
{
    Rational q;
    if (text.empty() || q.set_str(text, 10) != 0)
        throw Error(ErrorCode::parse_error, "not a rational: '" + text + "'");
    if (q.get_den() == 0)
        throw Error(ErrorCode::parse_error, "zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
}

Integer lcm_of_denominators(std::span<const Rational> values)
{
    Integer l = 1;
    for (const auto& v : values)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    return l;
}

}  // namespace sba
