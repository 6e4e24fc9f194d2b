#include "sba/catalog.hpp"

#include "sba/divisibility.hpp"
#include "sba/error.hpp"

namespace sba {

Algebra letter_algebra(int n)
{
    if (n < 1 || n > Algebra::max_atoms)
        throw Error(ErrorCode::size_out_of_range, "atom count " + std::to_string(n) + " outside 1..16");
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i)
        labels.emplace_back(1, static_cast<char>('a' + i));
    return Algebra::powerset(std::move(labels));
}

Scaling middlescale()
{
    // masks: a=1 b=2 c=4
    enum { zero, alpha, beta, gamma, delta, one };
    const std::vector<ClassId> cls = {zero, alpha, alpha, beta, gamma, delta, delta, one};
    const std::vector<std::pair<ClassId, ClassId>> order = {{zero, alpha}, {alpha, beta}, {alpha, gamma},
                                                            {beta, delta}, {gamma, delta}, {delta, one}};
    return build_scaling(letter_algebra(3), cls, order);
}

Scaling linear_middlescale()
{
    enum { zero, alpha, beta, gamma, delta, one };
    const std::vector<ClassId> cls = {zero, alpha, alpha, beta, gamma, delta, delta, one};
    const std::vector<std::pair<ClassId, ClassId>> order = {
        {zero, alpha}, {alpha, beta}, {beta, gamma}, {gamma, delta}, {delta, one}};
    return build_scaling(letter_algebra(3), cls, order);
}

Scaling quasicomplement()
{
    enum { zero, alpha, beta, gamma, delta, epsilon, one };
    const std::vector<ClassId> cls = {zero, alpha, beta, gamma, gamma, delta, epsilon, one};
    const std::vector<std::pair<ClassId, ClassId>> order = {{zero, alpha},  {zero, beta},   {alpha, gamma},
                                                            {beta, gamma},  {gamma, delta}, {gamma, epsilon},
                                                            {delta, one},   {epsilon, one}};
    return build_scaling(letter_algebra(3), cls, order);
}

Scaling balanced()
{
    Algebra alg = letter_algebra(3);
    std::vector<ClassId> cls(alg.size());
    std::vector<std::pair<ClassId, ClassId>> order;
    for (Mask x = 0; x <= alg.full_mask(); ++x) {
        cls[x] = static_cast<ClassId>(x);
        for (Mask y = 0; y <= alg.full_mask(); ++y)
            if (popcount(x) < popcount(y))
                order.emplace_back(x, y);
    }
    return build_scaling(alg, cls, order);
}

Scaling poset6()
{
    const std::vector<std::pair<Mask, Mask>> gens = {{1, 2}, {1, 4}, {2, 5}};
    return closure_scaling(letter_algebra(3), gens);
}

Scaling two_point()
{
    return build_scaling(letter_algebra(2), std::vector<ClassId>{0, 1, 2, 3},
                         std::vector<std::pair<ClassId, ClassId>>{{0, 1}, {1, 2}, {2, 3}});
}

Scaling uniform_scaling(int n)
{
    Algebra alg = letter_algebra(n);
    const std::vector<std::vector<Rational>> m = {std::vector<Rational>(n, Rational(1, n))};
    return scaling_from_measures(alg, m);
}

std::vector<std::string> builtin_names()
{
    return {"middlescale", "linear-middlescale", "quasicomplement", "balanced", "poset6", "kps", "two-point",
            "uniform2",    "uniform3",           "uniform4",        "boolean2", "boolean3"};
}

std::optional<Scaling> builtin(std::string_view name)
{
    if (name == "middlescale")
        return middlescale();
    if (name == "linear-middlescale")
        return linear_middlescale();
    if (name == "quasicomplement")
        return quasicomplement();
    if (name == "balanced")
        return balanced();
    if (name == "poset6")
        return poset6();
    if (name == "kps")
        return kps_example();
    if (name == "two-point")
        return two_point();
    if (name.starts_with("uniform") && name.size() == 8 && name[7] >= '1' && name[7] <= '9')
        return uniform_scaling(name[7] - '0');
    if (name.starts_with("boolean") && name.size() == 8 && name[7] >= '1' && name[7] <= '9')
        return identity_scaling(letter_algebra(name[7] - '0'));
    return std::nullopt;
}

}  // namespace sba
