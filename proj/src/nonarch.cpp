#include "sba/nonarch.hpp"

#include "sba/error.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace sba {

namespace {

constexpr std::uint64_t max_period = std::uint64_t{1} << 20;

std::string list(const std::vector<std::uint64_t>& v)
{
    std::string out = "{";
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? "," : "") + std::to_string(v[i]);
    return out + "}";
}

}  // namespace

UPSet::UPSet(std::vector<bool> residues, std::vector<bool> prefix)
    : residues_(std::move(residues)), prefix_(std::move(prefix))
{
}

UPSet UPSet::make(std::vector<bool> residues, std::vector<bool> prefix)
{
    const std::size_t p = residues.size();
    if (p == 0)
        throw Error(ErrorCode::invalid_argument, "period must be at least 1");
    if (p > max_period)
        throw Error(ErrorCode::unsupported_size, "period " + std::to_string(p) + " is too large");
    for (std::size_t d = 1; d <= p; ++d) {
        if (p % d != 0)
            continue;
        bool periodic = true;
        for (std::size_t i = d; i < p && periodic; ++i)
            periodic = residues[i] == residues[i % d];
        if (periodic) {
            residues.resize(d);
            break;
        }
    }
    while (!prefix.empty() && prefix.back() == residues[(prefix.size() - 1) % residues.size()])
        prefix.pop_back();
    return UPSet(std::move(residues), std::move(prefix));
}

UPSet UPSet::empty() { return UPSet({false}, {}); }
UPSet UPSet::naturals() { return UPSet({true}, {}); }
UPSet UPSet::evens() { return residue(0, 2); }
UPSet UPSet::odds() { return residue(1, 2); }

UPSet UPSet::residue(std::uint64_t r, std::uint64_t p)
{
    if (p == 0 || r >= p)
        throw Error(ErrorCode::invalid_argument, "residue must lie in 0..p-1");
    if (p > max_period)
        throw Error(ErrorCode::unsupported_size, "period " + std::to_string(p) + " is too large");
    std::vector<bool> res(p, false);
    res[r] = true;
    return make(std::move(res), {});
}

UPSet UPSet::finite(std::span<const std::uint64_t> members)
{
    std::vector<bool> prefix;
    for (auto m : members) {
        if (m >= max_period)
            throw Error(ErrorCode::unsupported_size, "member " + std::to_string(m) + " is too large");
        if (m >= prefix.size())
            prefix.resize(m + 1, false);
        prefix[m] = true;
    }
    return make({false}, std::move(prefix));
}

UPSet UPSet::tail(std::uint64_t n)
{
    if (n >= max_period)
        throw Error(ErrorCode::unsupported_size, "tail start is too large");
    return make({true}, std::vector<bool>(n, false));
}

bool UPSet::contains(std::uint64_t n) const
{
    return n < prefix_.size() ? prefix_[n] : residues_[n % residues_.size()];
}

bool UPSet::is_finite() const { return std::none_of(residues_.begin(), residues_.end(), [](bool b) { return b; }); }

std::uint64_t UPSet::size() const
{
    if (!is_finite())
        throw Error(ErrorCode::invalid_argument, "set is infinite");
    return static_cast<std::uint64_t>(std::count(prefix_.begin(), prefix_.end(), true));
}

std::vector<std::uint64_t> UPSet::first(std::size_t k) const
{
    std::vector<std::uint64_t> out;
    const bool finite_set = is_finite();
    for (std::uint64_t n = 0; out.size() < k; ++n) {
        if (finite_set && n >= prefix_.size())
            break;
        if (contains(n))
            out.push_back(n);
    }
    return out;
}

UPSet UPSet::core() const { return UPSet(residues_, {}); }

template <class Op>
UPSet UPSet::combine(const UPSet& o, Op op) const
{
    const std::uint64_t l = std::lcm(period(), o.period());
    if (l > max_period)
        throw Error(ErrorCode::unsupported_size, "combined period is too large");
    const std::uint64_t t = std::max(threshold(), o.threshold());
    std::vector<bool> res(l);
    for (std::uint64_t r = 0; r < l; ++r)
        res[r] = op(residues_[r % period()], o.residues_[r % o.period()]);
    std::vector<bool> prefix(t);
    for (std::uint64_t n = 0; n < t; ++n)
        prefix[n] = op(contains(n), o.contains(n));
    return make(std::move(res), std::move(prefix));
}

UPSet UPSet::unite(const UPSet& o) const { return combine(o, [](bool a, bool b) { return a || b; }); }
UPSet UPSet::intersect(const UPSet& o) const { return combine(o, [](bool a, bool b) { return a && b; }); }
UPSet UPSet::minus(const UPSet& o) const { return combine(o, [](bool a, bool b) { return a && !b; }); }

UPSet UPSet::complement() const
{
    std::vector<bool> res(residues_.size());
    std::vector<bool> prefix(prefix_.size());
    for (std::size_t i = 0; i < res.size(); ++i)
        res[i] = !residues_[i];
    for (std::size_t i = 0; i < prefix.size(); ++i)
        prefix[i] = !prefix_[i];
    return UPSet(std::move(res), std::move(prefix));
}

std::string UPSet::to_string() const
{
    std::vector<std::uint64_t> plus, minus;
    for (std::uint64_t n = 0; n < prefix_.size(); ++n) {
        const bool periodic = residues_[n % residues_.size()];
        if (prefix_[n] && !periodic)
            plus.push_back(n);
        if (!prefix_[n] && periodic)
            minus.push_back(n);
    }
    if (is_finite())
        return list(plus);
    std::string out;
    if (period() == 1) {
        out = "N";
    } else {
        out = "(";
        bool first_residue = true;
        for (std::uint64_t r = 0; r < period(); ++r)
            if (residues_[r]) {
                out += (first_residue ? "" : ",") + std::to_string(r);
                first_residue = false;
            }
        out += " mod " + std::to_string(period()) + ")";
    }
    if (!plus.empty())
        out += " + " + list(plus);
    if (!minus.empty())
        out += " - " + list(minus);
    return out;
}

std::optional<std::uint64_t> difference_cardinality(const UPSet& a, const UPSet& b)
{
    const UPSet d = a.minus(b);
    if (!d.is_finite())
        return std::nullopt;
    return d.size();
}

UPSetOps upset_ops(const UPSet& a, const UPSet& b)
{
    return {a.unite(b), a.intersect(b), a.complement(), a.minus(b), difference_cardinality(a, b)};
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    UPSet parse()
    {
        UPSet v = expr();
        skip();
        if (pos_ != s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw Error(ErrorCode::parse_error, what + " at column " + std::to_string(pos_ + 1));
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c))
            fail(std::string("expected '") + c + "'");
    }

    std::uint64_t number()
    {
        skip();
        const std::size_t start = pos_;
        std::uint64_t v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + static_cast<std::uint64_t>(s_[pos_] - '0');
            if (v >= max_period)
                fail("number too large");
            ++pos_;
        }
        if (pos_ == start)
            fail("expected a number");
        return v;
    }

    // "(r1,r2 mod p)" as printed by to_string; the '(' is already consumed
    std::optional<UPSet> residue_list()
    {
        const std::size_t start = pos_;
        skip();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            return std::nullopt;
        std::vector<std::uint64_t> residues{number()};
        while (accept(','))
            residues.push_back(number());
        skip();
        if (s_.substr(pos_, 3) != "mod") {
            pos_ = start;
            return std::nullopt;
        }
        pos_ += 3;
        const std::uint64_t p = number();
        expect(')');
        if (p == 0)
            fail("period must be positive");
        std::vector<bool> res(p, false);
        for (auto r : residues) {
            if (r >= p)
                fail("residue " + std::to_string(r) + " is not below " + std::to_string(p));
            res[r] = true;
        }
        return UPSet::make(std::move(res), {});
    }

    UPSet expr()
    {
        UPSet v = difference();
        while (accept('|'))
            v = v.unite(difference());
        return v;
    }

    UPSet difference()
    {
        UPSet v = conjunction();
        while (true) {
            if (accept('-'))
                v = v.minus(conjunction());
            else if (accept('+'))
                v = v.unite(conjunction());
            else
                return v;
        }
    }

    UPSet conjunction()
    {
        UPSet v = unary();
        while (accept('&'))
            v = v.intersect(unary());
        return v;
    }

    UPSet unary()
    {
        if (accept('~'))
            return unary().complement();
        return primary();
    }

    UPSet primary()
    {
        skip();
        if (accept('(')) {
            if (auto listed = residue_list())
                return *listed;
            UPSet v = expr();
            expect(')');
            return v;
        }
        if (accept('{')) {
            std::vector<std::uint64_t> members;
            if (!accept('}')) {
                do
                    members.push_back(number());
                while (accept(','));
                expect('}');
            }
            return UPSet::finite(members);
        }
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            const std::uint64_t p = number();
            expect('n');
            std::uint64_t r = 0;
            if (pos_ + 1 < s_.size() && s_[pos_] == '+' && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
                ++pos_;
                r = number();
            }
            if (p == 0)
                fail("period must be positive");
            return UPSet::residue(r % p, p);
        }
        std::string word;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_])))
            word += s_[pos_++];
        if (word == "evens")
            return UPSet::evens();
        if (word == "odds")
            return UPSet::odds();
        if (word == "N")
            return UPSet::naturals();
        if (word == "empty")
            return UPSet::empty();
        if (word == "tail") {
            expect('(');
            const std::uint64_t n = number();
            expect(')');
            return UPSet::tail(n);
        }
        if (word.empty())
            fail("expected a set");
        fail("unknown set '" + word + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

UPSet parse_upset(std::string_view text) { return Parser(text).parse(); }

std::string GalaxyValue::to_string() const
{
    return "core=" + core.to_string() + " offset=" + (offset > 0 ? "+" : "") + std::to_string(offset);
}

GalaxyValue value_of(const UPSet& a)
{
    GalaxyValue v{a.core(), 0};
    v.offset = static_cast<std::int64_t>(a.minus(v.core).size()) - static_cast<std::int64_t>(v.core.minus(a).size());
    return v;
}

UPSet representative(const GalaxyValue& v)
{
    if (v.core != v.core.core())
        throw Error(ErrorCode::invalid_argument, "core must be purely periodic");
    if (v.offset >= 0) {
        const auto extra = v.core.complement().first(static_cast<std::size_t>(v.offset));
        if (extra.size() != static_cast<std::size_t>(v.offset))
            throw Error(ErrorCode::invalid_argument, "no set has value " + v.to_string());
        return v.core.unite(UPSet::finite(extra));
    }
    const auto drop = v.core.first(static_cast<std::size_t>(-v.offset));
    if (drop.size() != static_cast<std::size_t>(-v.offset))
        throw Error(ErrorCode::invalid_argument, "no set has value " + v.to_string());
    return v.core.minus(UPSet::finite(drop));
}

std::string to_string(Order o)
{
    switch (o) {
    case Order::lt: return "lt";
    case Order::eq: return "eq";
    case Order::gt: return "gt";
    case Order::incomparable: return "incomparable";
    }
    return "?";
}

Order nonarch_compare(const UPSet& a, const UPSet& b)
{
    const auto ab = difference_cardinality(a, b);
    const auto ba = difference_cardinality(b, a);
    if (!ab && !ba)
        return Order::incomparable;
    if (!ba)
        return Order::lt;
    if (!ab)
        return Order::gt;
    return *ab < *ba ? Order::lt : *ab > *ba ? Order::gt : Order::eq;
}

Order compare(const GalaxyValue& a, const GalaxyValue& b)
{
    if (a.core == b.core)
        return a.offset < b.offset ? Order::lt : a.offset > b.offset ? Order::gt : Order::eq;
    if (a.core.subset_of(b.core))
        return Order::lt;
    if (b.core.subset_of(a.core))
        return Order::gt;
    return Order::incomparable;
}

std::optional<GalaxyValue> predecessor(const GalaxyValue& v)
{
    if (v.core.is_finite() && v.offset <= 0)
        return std::nullopt;
    return GalaxyValue{v.core, v.offset - 1};
}

std::optional<GalaxyValue> successor(const GalaxyValue& v)
{
    if (v.core == UPSet::naturals() && v.offset >= 0)
        return std::nullopt;
    return GalaxyValue{v.core, v.offset + 1};
}

UPSet disjoint_family_member(int k)
{
    if (k < 1 || k > 20)
        throw Error(ErrorCode::invalid_argument, "family index must lie in 1..20");
    const std::uint64_t p = std::uint64_t{1} << k;
    return UPSet::residue((p >> 1) - 1, p);
}

InfinitesimalReport is_infinitesimal(const GalaxyValue& v, int witness_members)
{
    InfinitesimalReport r;
    if (v.core.is_finite()) {
        r.infinitesimal = true;
        for (int k = 1; k <= witness_members; ++k)
            r.witness.push_back(disjoint_family_member(k));
        r.argument = "the sets {n : n = 2^(k-1)-1 mod 2^k}, k = 1, 2, ..., are pairwise disjoint and infinite, "
                     "so each has a value above every finite-core value";
        return r;
    }
    r.argument = "any set with value at least " + v.to_string() + " contains all but finitely many of " +
                 v.core.to_string() + ", so any two such sets intersect and no disjoint family lies above it";
    return r;
}

UPSet divided_witness(const UPSet& a, const UPSet& b)
{
    if (nonarch_compare(a, b) != Order::lt)
        throw Error(ErrorCode::invalid_argument, "divided_witness needs the first set strictly below the second");
    const GalaxyValue target = value_of(a);
    UPSet x = b.intersect(target.core);
    const std::int64_t have = value_of(x).offset;
    if (have < target.offset) {
        const auto add = b.minus(x).first(static_cast<std::size_t>(target.offset - have));
        x = x.unite(UPSet::finite(add));
    } else if (have > target.offset) {
        const auto drop = x.first(static_cast<std::size_t>(have - target.offset));
        x = x.minus(UPSet::finite(drop));
    }
    if (value_of(x) != target || !x.subset_of(b) || x == b)
        throw Error(ErrorCode::inconsistent_scale, "could not trim " + b.to_string() + " down to " + target.to_string());
    return x;
}

DiscontinuityReport discontinuity_witness(std::span<const std::uint64_t> sample, std::uint64_t partial_sums)
{
    static const std::uint64_t default_sample[] = {0, 10, 1000};
    if (sample.empty())
        sample = default_sample;
    DiscontinuityReport r;
    const GalaxyValue bottom = value_of(UPSet::empty());
    r.lower_bound = GalaxyValue{UPSet::empty(), 5};
    r.bound_above_meet = compare(bottom, r.lower_bound) == Order::lt;
    r.bound_holds = true;
    std::uint64_t largest = 0;
    for (auto n : sample) {
        r.sampled.push_back(n);
        largest = std::max(largest, n);
        const Order o = compare(r.lower_bound, value_of(UPSet::tail(n)));
        r.bound_holds = r.bound_holds && (o == Order::lt || o == Order::eq);
    }
    // k never lies in the tail starting at k+1, so the chain meets in ∅
    bool excluded = true;
    for (std::uint64_t k = 0; k <= largest && excluded; ++k)
        excluded = !UPSet::tail(k + 1).contains(k);
    r.meet = UPSet::empty();
    r.meet_value_is_empty = excluded && value_of(r.meet) == bottom;

    const GalaxyValue below_top{UPSet::naturals(), -1};
    r.partial_sums = partial_sums;
    r.partial_sums_finite = true;
    for (std::uint64_t m = 0; m <= partial_sums; ++m) {
        std::vector<std::uint64_t> first(m);
        std::iota(first.begin(), first.end(), 0);
        const GalaxyValue sum = value_of(UPSet::finite(first));
        r.partial_sums_finite = r.partial_sums_finite && sum.core.is_finite() && compare(sum, below_top) == Order::lt;
    }
    r.text = "value of {} + 5 = " + r.lower_bound.to_string() + " lies below every sampled tail and above the value "
             "of their meet {}; singleton partial sums stay below value of N - 1";
    return r;
}

GalaxyShiftWitness galaxy_shift_witness()
{
    GalaxyShiftWitness w{UPSet::empty(), UPSet::naturals(), UPSet::evens(), {}, {}, false};
    const UPSet moved = value_of(w.x).core;
    auto shift = [&](GalaxyValue v) {
        if (v.core == moved)
            ++v.offset;
        return v;
    };
    const UPSet complement = w.a.unite(w.b.minus(w.x));
    w.shifted_complement = shift(value_of(complement));
    const UPSet shifted_x = representative(shift(value_of(w.x)));
    w.complement_of_shift = value_of(w.a.unite(w.b.minus(shifted_x)));
    w.breaks = w.shifted_complement != w.complement_of_shift;
    return w;
}

}  // namespace sba
