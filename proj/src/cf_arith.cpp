#include "sba/cf_arith.hpp"

#include "sba/divisibility.hpp"
#include "sba/error.hpp"

namespace sba {

namespace {

void require_linear_divided(const Scale& s)
{
    if (!s.linear())
        throw Error(ErrorCode::not_linear, "scale is not linearly ordered");
    if (auto bad = is_divided(s.scaling()))
        throw Error(ErrorCode::not_divided, "scale is not divided: " + s.scaling().algebra().format(bad->x) +
                                                " vs " + s.scaling().algebra().format(bad->y));
}

ContinuedFraction expand(const Scale& s, ClassId num, ClassId den)
{
    ContinuedFraction cf;
    ClassId a = den;
    ClassId b = num;
    const ClassId zero = s.zero();
    while (true) {
        std::int64_t n = 0;
        for (Partial next = s.sub(b, a); next.defined(); next = s.sub(b, a)) {
            b = *next;
            ++n;
        }
        cf.entries.push_back(n);
        if (b == zero)
            return cf;
        std::swap(a, b);
        if (cf.entries.size() > static_cast<std::size_t>(s.size()) + 1)
            throw Error(ErrorCode::inconsistent_scale, "expansion does not terminate");
    }
}

CanonicalMeasure measure_unchecked(const Scale& s)
{
    CanonicalMeasure mu;
    mu.value.resize(s.size());
    for (ClassId c = 0; c < s.size(); ++c)
        mu.value[c] = expand(s, c, s.one()).value();
    for (ClassId a = 0; a < s.size(); ++a) {
        for (ClassId b = 0; b < s.size(); ++b) {
            const Partial sum = s.add(a, b);
            if (sum.defined() && mu.value[*sum] != mu.value[a] + mu.value[b])
                throw Error(ErrorCode::inconsistent_scale, "canonical measure is not additive at " + s.name(a) +
                                                               " + " + s.name(b));
        }
        if (a > 0 && !(mu.value[a - 1] < mu.value[a]))
            throw Error(ErrorCode::inconsistent_scale, "canonical measure is not increasing");
    }
    return mu;
}

}  // namespace

Rational ContinuedFraction::value() const
{
    if (entries.empty())
        return 0;
    // h/k convergents
    Integer h1 = 1, h2 = 0, k1 = 0, k2 = 1;
    for (auto a : entries) {
        const Integer h = Integer(static_cast<long>(a)) * h1 + h2;
        const Integer k = Integer(static_cast<long>(a)) * k1 + k2;
        h2 = h1;
        h1 = h;
        k2 = k1;
        k1 = k;
    }
    Rational q(h1, k1);
    q.canonicalize();
    return q;
}

std::string ContinuedFraction::to_string() const
{
    std::string out = "[";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i == 1)
            out += "; ";
        else if (i > 1)
            out += ", ";
        out += std::to_string(entries[i]);
    }
    return out + "]";
}

ContinuedFraction continued_fraction(const Scale& s, ClassId num, ClassId den)
{
    if (num < 0 || den < 0 || num >= s.size() || den >= s.size())
        throw Error(ErrorCode::invalid_argument, "class out of range");
    if (den == s.zero())
        throw Error(ErrorCode::zero_denominator, "denominator is the zero class");
    require_linear_divided(s);
    return expand(s, num, den);
}

CanonicalMeasure canonical_measure(const Scale& s)
{
    require_linear_divided(s);
    return measure_unchecked(s);
}

std::optional<ClassId> scale_multiply(const Scale& s, ClassId a, ClassId b)
{
    const CanonicalMeasure mu = canonical_measure(s);
    const Rational p = mu.value.at(a) * mu.value.at(b);
    for (ClassId c = 0; c < s.size(); ++c)
        if (mu.value[c] == p)
            return c;
    return std::nullopt;
}

Rational conditional_probability(const Scaling& s, Mask x, Mask z)
{
    if (z == 0 || s.class_of(z) == s.zero_class())
        throw Error(ErrorCode::condition_on_zero, "conditioning element has zero probability");
    const Restriction r = restrict_to(s, z);
    const Scale sub(r.scaling);
    const CanonicalMeasure mu = canonical_measure(sub);
    return mu.value[r.scaling.class_of(r.compress(x & z))];
}

ProductRuleReport verify_product_rule(const Scaling& s, Mask x, Mask z)
{
    ProductRuleReport rep;
    const Scale whole(s);
    const CanonicalMeasure mu = canonical_measure(whole);
    const Mask xz = x & z;
    rep.joint = mu.value[s.class_of(xz)];
    rep.marginal = mu.value[s.class_of(z)];
    rep.conditional = conditional_probability(s, x, z);

    const Restriction r = restrict_to(s, z);
    const Scale sub(r.scaling);
    rep.joint_over_marginal = expand(whole, s.class_of(xz), s.class_of(z));
    rep.conditional_over_one = expand(sub, r.scaling.class_of(r.compress(xz)), sub.one());

    if (rep.joint != rep.conditional * rep.marginal)
        rep.failure = "P(x and z) = " + to_string(rep.joint) + " but P(x|z) P(z) = " +
                      to_string(rep.conditional * rep.marginal);
    else if (rep.joint_over_marginal != rep.conditional_over_one)
        rep.failure = "expansions differ: " + rep.joint_over_marginal.to_string() + " vs " +
                      rep.conditional_over_one.to_string();
    rep.ok = rep.failure.empty();
    return rep;
}

Mask UnitRefinement::embed(Mask x) const
{
    Mask out = 0;
    for (std::size_t t = 0; t < atom_units.size(); ++t)
        if (x >> t & 1u)
            out |= atom_units[t];
    return out;
}

UnitRefinement unit_refinement(const Algebra& alg, std::span<const Rational> given)
{
    std::vector<Rational> measure(given.begin(), given.end());
    for (auto& q : measure)
        q.canonicalize();
    const int n = alg.atom_count();
    if (static_cast<int>(measure.size()) != n)
        throw Error(ErrorCode::invalid_argument, "measure does not give one mass per atom");
    Rational total = 0;
    for (const auto& q : measure) {
        if (sgn(q) <= 0)
            throw Error(ErrorCode::nonpositive_mass, "mass " + to_string(q) + " is not positive");
        total += q;
    }
    if (total != 1)
        throw Error(ErrorCode::invalid_argument, "masses sum to " + to_string(total) + ", not 1");
    const Integer q = lcm_of_denominators(measure);
    if (q > Algebra::max_atoms)
        throw Error(ErrorCode::unsupported_size, "refinement needs " + q.get_str() + " units");
    const int units = static_cast<int>(q.get_si());
    std::vector<std::string> labels;
    std::vector<Mask> units_of(n, 0);
    for (int t = 0; t < n; ++t) {
        const Rational p = measure[t] * q;
        const long count = p.get_num().get_si();
        for (long j = 0; j < count; ++j) {
            units_of[t] |= Mask{1} << labels.size();
            labels.push_back(alg.labels()[t] + "." + std::to_string(j + 1));
        }
    }
    Algebra fine = Algebra::powerset(std::move(labels));
    const std::vector<std::vector<Rational>> uniform = {std::vector<Rational>(units, Rational(1, units))};
    return UnitRefinement{scaling_from_measures(fine, uniform), std::move(units_of)};
}

}  // namespace sba
