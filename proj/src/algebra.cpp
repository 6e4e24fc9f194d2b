#include "sba/algebra.hpp"

#include "sba/error.hpp"

#include <algorithm>
#include <atomic>
#include <set>

namespace sba {

namespace {

std::atomic<std::uint64_t> next_algebra_id{1};

void require_same(const Element& x, const Element& y)
{
    if (x.algebra != y.algebra)
        throw Error(ErrorCode::mixed_algebra, "operands belong to different algebras");
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
        s.remove_suffix(1);
    return s;
}

}  // namespace

Algebra Algebra::powerset(std::vector<std::string> labels)
{
    if (labels.empty() || static_cast<int>(labels.size()) > max_atoms)
        throw Error(ErrorCode::size_out_of_range,
                    "atom count " + std::to_string(labels.size()) + " outside 1.." + std::to_string(max_atoms));
    std::set<std::string> seen;
    for (const auto& l : labels) {
        if (l.empty())
            throw Error(ErrorCode::invalid_argument, "empty atom label");
        if (!seen.insert(l).second)
            throw Error(ErrorCode::duplicate_label, "atom label '" + l + "' repeated");
    }
    auto impl = std::make_shared<Impl>(Impl{std::move(labels), next_algebra_id++});
    return Algebra(std::move(impl));
}

Element Algebra::element(Mask bits) const
{
    if (bits > full_mask())
        throw Error(ErrorCode::invalid_argument, "mask " + std::to_string(bits) + " outside the algebra");
    return Element{bits, full_mask(), id()};
}

Element Algebra::atom(int i) const
{
    if (i < 0 || i >= atom_count())
        throw Error(ErrorCode::invalid_argument, "atom index " + std::to_string(i) + " out of range");
    return element(Mask{1} << i);
}

std::vector<Element> Algebra::atoms() const
{
    std::vector<Element> out;
    for (int i = 0; i < atom_count(); ++i)
        out.push_back(atom(i));
    return out;
}

int Algebra::atom_index(std::string_view label) const
{
    const auto& ls = labels();
    auto it = std::find(ls.begin(), ls.end(), label);
    return it == ls.end() ? -1 : static_cast<int>(it - ls.begin());
}

Element Algebra::parse(std::string_view text) const
{
    text = trim(text);
    if (text == "0")
        return zero();
    if (text == "1")
        return one();
    if (!text.empty() && text.front() == '{') {
        if (text.back() != '}')
            throw Error(ErrorCode::parse_error, "unterminated set '" + std::string(text) + "'");
        text = text.substr(1, text.size() - 2);
    }
    Mask bits = 0;
    while (!trim(text).empty()) {
        auto comma = text.find(',');
        auto item = trim(text.substr(0, comma));
        int i = atom_index(item);
        if (i < 0)
            throw Error(ErrorCode::parse_error, "unknown atom '" + std::string(item) + "'");
        bits |= Mask{1} << i;
        if (comma == std::string_view::npos)
            break;
        text.remove_prefix(comma + 1);
    }
    return element(bits);
}

Element Algebra::from_labels(std::span<const std::string> names) const
{
    Mask bits = 0;
    for (const auto& n : names) {
        int i = atom_index(n);
        if (i < 0)
            throw Error(ErrorCode::parse_error, "unknown atom '" + n + "'");
        bits |= Mask{1} << i;
    }
    return element(bits);
}

std::vector<std::string> Algebra::labels_of(Mask bits) const
{
    std::vector<std::string> out;
    for (int i = 0; i < atom_count(); ++i)
        if (bits >> i & 1u)
            out.push_back(labels()[i]);
    return out;
}

std::string Algebra::format(Mask bits) const
{
    std::string out = "{";
    bool first = true;
    for (const auto& l : labels_of(bits)) {
        if (!first)
            out += ",";
        out += l;
        first = false;
    }
    return out + "}";
}

Element meet(const Element& x, const Element& y)
{
    require_same(x, y);
    return Element{x.bits & y.bits, x.full, x.algebra};
}

Element join(const Element& x, const Element& y)
{
    require_same(x, y);
    return Element{x.bits | y.bits, x.full, x.algebra};
}

Element complement(const Element& x) { return Element{x.full & ~x.bits, x.full, x.algebra}; }

bool leq(const Element& x, const Element& y)
{
    require_same(x, y);
    return is_submask(x.bits, y.bits);
}

bool lt(const Element& x, const Element& y) { return leq(x, y) && x.bits != y.bits; }

LatticeOps lattice_ops(const Element& x, const Element& y)
{
    return {meet(x, y), join(x, y), complement(x), leq(x, y), lt(x, y)};
}

Element relative_complement(const Element& x, const Element& a, const Element& b)
{
    require_same(x, a);
    require_same(x, b);
    if (!is_submask(a.bits, x.bits) || !is_submask(x.bits, b.bits))
        throw Error(ErrorCode::outside_interval, "element is not inside [a,b]");
    return Element{relative_complement_mask(x.bits, a.bits, b.bits), x.full, x.algebra};
}

bool TwoValuedHom::operator()(const Element& y) const
{
    if (kind != HomKind::principal)
        throw Error(ErrorCode::invalid_argument, "nonprincipal homomorphisms are not evaluable on finite algebras");
    return leq(atom, y);
}

std::vector<TwoValuedHom> two_valued_homomorphisms(const Algebra& alg)
{
    std::vector<TwoValuedHom> out;
    for (const auto& a : alg.atoms())
        out.push_back({HomKind::principal, a});
    return out;
}

}  // namespace sba
