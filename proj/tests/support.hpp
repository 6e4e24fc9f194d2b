#pragma once

#include "sba/census.hpp"
#include "sba/nonarch.hpp"
#include "sba/rational.hpp"
#include "sba/scaling.hpp"

#include <random>
#include <vector>

namespace sba::check {

/// Seeded source for the property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin() { return uniform(0, 1) == 1; }
    Mask mask(const Algebra& alg) { return static_cast<Mask>(uniform(0, static_cast<int>(alg.full_mask()))); }
    Mask submask(Mask of)
    {
        Mask m = 0;
        for (Mask bit = 1; bit && bit <= of; bit <<= 1)
            if ((of & bit) && coin())
                m |= bit;
        return m;
    }

    /// Positive masses with total 1 and denominators up to `den`.
    std::vector<Rational> measure(int atoms, int den = 12)
    {
        std::vector<int> w(atoms);
        int total = 0;
        for (auto& v : w)
            total += v = uniform(1, den);
        std::vector<Rational> m;
        for (int v : w)
            m.emplace_back(v, total);
        for (auto& q : m)
            q.canonicalize();
        return m;
    }

    /// Same, but with a total of at most 16 units.
    std::vector<Rational> small_measure(int atoms)
    {
        std::vector<int> w(atoms, 1);
        for (int extra = uniform(0, 16 - atoms); extra > 0; --extra)
            ++w[uniform(0, atoms - 1)];
        int total = 0;
        for (int v : w)
            total += v;
        std::vector<Rational> m;
        for (int v : w) {
            m.emplace_back(v, total);
            m.back().canonicalize();
        }
        return m;
    }

    template <class T>
    const T& pick(const std::vector<T>& v)
    {
        return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))];
    }

private:
    std::mt19937_64 rng_;
};

/// Every representative of the n = 2 and n = 3 census plus the n = 4 linear
/// one-to-one ones, computed once.
inline const std::vector<Scaling>& census_pool()
{
    static const std::vector<Scaling> pool = [] {
        std::vector<Scaling> out;
        for (int n : {2, 3})
            for (const auto& e : enumerate_scalings(n).representatives)
                out.push_back(e.scaling);
        for (const auto& e : enumerate_scalings(4, {true, true}).representatives)
            out.push_back(e.scaling);
        return out;
    }();
    return pool;
}

/// Canonical n/d; mpq arithmetic on uncanonical values is unreliable.
inline Rational q(long n, long d = 1)
{
    Rational r(n, d);
    r.canonicalize();
    return r;
}

inline Rational mass_of(const std::vector<Rational>& m, Mask x)
{
    Rational v = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (x >> i & 1u)
            v += m[i];
    return v;
}

/// Random periodic set: period up to 8, up to 12 exceptional leading terms.
inline UPSet random_upset(Gen& g)
{
    const int p = g.uniform(1, 8);
    std::vector<bool> res(p), prefix(g.uniform(0, 12));
    for (std::size_t i = 0; i < res.size(); ++i)
        res[i] = g.coin();
    for (std::size_t i = 0; i < prefix.size(); ++i)
        prefix[i] = g.coin();
    return UPSet::make(res, prefix);
}

/// Continued fraction of a nonnegative rational by Euclid's algorithm.
inline std::vector<std::int64_t> euclid(const Rational& r)
{
    std::vector<std::int64_t> out;
    Integer p = r.get_num(), d = r.get_den();
    while (true) {
        const Integer whole = p / d;
        out.push_back(whole.get_si());
        const Integer rest = p - whole * d;
        if (rest == 0)
            break;
        p = d;
        d = rest;
    }
    return out;
}

}  // namespace sba::check
