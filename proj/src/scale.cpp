#include "sba/scale.hpp"

#include "sba/error.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace sba {

namespace {

void record(std::vector<Partial>& table, std::size_t cell, ClassId value, const char* what)
{
    if (table[cell].defined() && *table[cell] != value)
        throw Error(ErrorCode::inconsistent_scale, std::string(what) + " depends on the choice of witnesses");
    table[cell] = Partial::of(value);
}

}  // namespace

Scale::Scale(Scaling s) : scaling_(std::move(s)), k_(scaling_.class_count())
{
    const Mask full = scaling_.algebra().full_mask();
    const std::size_t cells = static_cast<std::size_t>(k_) * k_;
    comp_.assign(k_, -1);
    for (Mask x = 0; x <= full; ++x) {
        const ClassId c = scaling_.class_of(x);
        const ClassId n = scaling_.class_of(full & ~x);
        if (comp_[c] >= 0 && comp_[c] != n)
            throw Error(ErrorCode::inconsistent_scale, "complement depends on the choice of witness");
        comp_[c] = n;
    }
    add_.assign(cells, Partial());
    dual_.assign(cells, Partial());
    for (Mask x = 0; x <= full; ++x) {
        const ClassId cx = scaling_.class_of(x);
        const Mask rest = full & ~x;
        // y ranges over subsets of ∼x for addition, supersets of ∼x for the dual
        for (Mask y = rest;; y = (y - 1) & rest) {
            record(add_, cell(cx, scaling_.class_of(y)), scaling_.class_of(x | y), "sum");
            if (y == 0)
                break;
        }
        Mask t = x;
        while (true) {
            const Mask y = rest | t;
            record(dual_, cell(cx, scaling_.class_of(y)), scaling_.class_of(x & y), "dual sum");
            if (t == 0)
                break;
            t = (t - 1) & x;
        }
    }
    for (ClassId a = 0; a < k_; ++a)
        for (ClassId b = 0; b < k_; ++b) {
            auto& sum = add_[cell(a, b)];
            if (!sum.defined())
                sum = Partial::undefined(le(a, comp_[b]) ? Undefined::question : Undefined::boxtimes);
            auto& dual = dual_[cell(a, b)];
            if (!dual.defined())
                dual = Partial::undefined(le(comp_[b], a) ? Undefined::question : Undefined::boxtimes);
        }
}

Partial Scale::relative_complement(ClassId eta, ClassId lo, ClassId hi) const
{
    if (!le(lo, eta) || !le(eta, hi))
        throw Error(ErrorCode::outside_interval, "class is not inside the interval");
    std::optional<ClassId> found;
    for (Mask x : scaling_.members(eta)) {
        for (Mask a = x;; a = (a - 1) & x) {
            if (scaling_.class_of(a) == lo) {
                const Mask outside = scaling_.algebra().full_mask() & ~x;
                for (Mask extra = outside;; extra = (extra - 1) & outside) {
                    const Mask b = x | extra;
                    if (scaling_.class_of(b) == hi) {
                        const ClassId v = scaling_.class_of(relative_complement_mask(x, a, b));
                        if (found && *found != v)
                            throw Error(ErrorCode::inconsistent_scale,
                                        "relative complement depends on the choice of witnesses");
                        found = v;
                    }
                    if (extra == 0)
                        break;
                }
            }
            if (a == 0)
                break;
        }
    }
    return found ? Partial::of(*found) : Partial::undefined(Undefined::question);
}

CellCounts count_cells(const Scale& s, TableOp op)
{
    CellCounts c;
    for (ClassId a = 0; a < s.size(); ++a)
        for (ClassId b = 0; b < s.size(); ++b) {
            const Partial p = s.apply(op, a, b);
            if (p.defined())
                ++c.defined;
            else if (p.reason() == Undefined::question)
                ++c.question;
            else
                ++c.boxtimes;
        }
    return c;
}

std::string unicode_name(const std::string& name)
{
    static const std::map<std::string, std::string> greek = {
        {"alpha", "α"}, {"beta", "β"},    {"gamma", "γ"},   {"delta", "δ"}, {"epsilon", "ε"}, {"zeta", "ζ"},
        {"eta", "η"},   {"theta", "θ"},   {"iota", "ι"},    {"kappa", "κ"}, {"lambda", "λ"},  {"mu", "μ"},
        {"nu", "ν"},    {"xi", "ξ"},      {"omicron", "ο"}, {"pi", "π"},    {"rho", "ρ"},     {"sigma", "σ"},
        {"tau", "τ"},   {"upsilon", "υ"}, {"phi", "φ"},     {"chi", "χ"},   {"psi", "ψ"},     {"omega", "ω"}};
    auto it = greek.find(name);
    return it == greek.end() ? name : it->second;
}

std::string render_table(const Scale& s, TableOp op, bool unicode)
{
    const int k = s.size();
    auto label = [&](ClassId c) { return unicode ? unicode_name(s.name(c)) : s.name(c); };
    auto cell_text = [&](ClassId a, ClassId b) -> std::string {
        const Partial p = s.apply(op, a, b);
        if (p.defined())
            return label(*p);
        if (p.reason() == Undefined::question)
            return "?";
        return unicode ? "⊠" : "X";
    };
    // width in code points so unicode output stays aligned
    auto width = [](const std::string& t) {
        std::size_t w = 0;
        for (unsigned char ch : t)
            if ((ch & 0xC0) != 0x80)
                ++w;
        return w;
    };
    std::vector<std::vector<std::string>> grid(k + 1, std::vector<std::string>(k + 1));
    grid[0][0] = op == TableOp::add ? "+" : (unicode ? "⊕" : "(+)");
    for (ClassId c = 0; c < k; ++c) {
        grid[0][c + 1] = label(c);
        grid[c + 1][0] = label(c);
    }
    for (ClassId a = 0; a < k; ++a)
        for (ClassId b = 0; b < k; ++b)
            grid[a + 1][b + 1] = cell_text(a, b);
    std::vector<std::size_t> col(k + 1, 0);
    for (const auto& row : grid)
        for (int j = 0; j <= k; ++j)
            col[j] = std::max(col[j], width(row[j]));
    std::ostringstream out;
    for (const auto& row : grid) {
        std::string line;
        for (int j = 0; j <= k; ++j) {
            line += row[j];
            if (j < k)
                line += std::string(col[j] - width(row[j]) + 1, ' ');
        }
        while (!line.empty() && line.back() == ' ')
            line.pop_back();
        out << line << '\n';
    }
    return out.str();
}

MapReport verify_scale_map(const Scale& source, const Scale& target, std::span<const ClassId> f)
{
    MapReport r;
    const int k = source.size();
    if (static_cast<int>(f.size()) != k) {
        r.problems.push_back("map does not cover every source class");
        return r;
    }
    for (ClassId c = 0; c < k; ++c)
        if (f[c] < 0 || f[c] >= target.size()) {
            r.problems.push_back("image of " + source.name(c) + " is not a target class");
            return r;
        }
    for (ClassId a = 0; a < k; ++a)
        for (ClassId b = 0; b < k; ++b)
            if (source.lt(a, b) && !target.lt(f[a], f[b]))
                r.problems.push_back("not strictly increasing: " + source.name(a) + " < " + source.name(b) +
                                     " but images " + target.name(f[a]) + ", " + target.name(f[b]));
    for (ClassId lo = 0; lo < k; ++lo)
        for (ClassId hi = 0; hi < k; ++hi) {
            if (!source.le(lo, hi))
                continue;
            for (ClassId eta = 0; eta < k; ++eta) {
                if (!source.le(lo, eta) || !source.le(eta, hi))
                    continue;
                const Partial here = source.relative_complement(eta, lo, hi);
                if (!here.defined())
                    continue;
                if (!target.le(f[lo], f[eta]) || !target.le(f[eta], f[hi])) {
                    r.problems.push_back("interval [" + source.name(lo) + "," + source.name(hi) +
                                         "] is not carried to an interval");
                    continue;
                }
                const Partial there = target.relative_complement(f[eta], f[lo], f[hi]);
                if (!there.defined() || *there != f[*here])
                    r.problems.push_back("relative complement of " + source.name(eta) + " in [" +
                                         source.name(lo) + "," + source.name(hi) + "] is not preserved");
            }
        }
    return r;
}

}  // namespace sba
