#pragma once

#include "sba/scaling.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace sba {

enum class Undefined : std::int8_t {
    boxtimes,  // the order already rules the value out
    question,  // order permits it but no witnesses exist
};

/// A class id or the reason it does not exist.
class Partial {
public:
    Partial() = default;
    static Partial of(ClassId c) { return Partial(c); }
    static Partial undefined(Undefined why) { return Partial(why == Undefined::boxtimes ? -1 : -2); }

    bool defined() const { return code_ >= 0; }
    explicit operator bool() const { return defined(); }
    ClassId operator*() const { return code_; }
    Undefined reason() const { return code_ == -1 ? Undefined::boxtimes : Undefined::question; }

    friend bool operator==(const Partial&, const Partial&) = default;

private:
    explicit Partial(std::int32_t code) : code_(code) {}
    std::int32_t code_ = -2;
};

enum class TableOp { add, dual_add };

/// The image of a scaling with its partial arithmetic. The addition and
/// dual-addition tables are filled from every disjoint (resp. co-disjoint)
/// pair of elements; conflicting witnesses throw inconsistent_scale.
class Scale {
public:
    explicit Scale(Scaling s);

    const Scaling& scaling() const { return scaling_; }
    int size() const { return k_; }
    ClassId zero() const { return scaling_.zero_class(); }
    ClassId one() const { return scaling_.one_class(); }
    bool lt(ClassId a, ClassId b) const { return scaling_.lt(a, b); }
    bool le(ClassId a, ClassId b) const { return scaling_.le(a, b); }
    bool linear() const { return scaling_.linear(); }
    const std::string& name(ClassId c) const { return scaling_.name(c); }

    ClassId complement(ClassId c) const { return comp_[c]; }

    /// rho(x ∨ y) for disjoint witnesses.
    Partial add(ClassId a, ClassId b) const { return add_[cell(a, b)]; }
    /// rho(x ∧ y) for witnesses with x ∨ y = 1.
    Partial dual_add(ClassId a, ClassId b) const { return dual_[cell(a, b)]; }
    /// a − b = a ⊕ ∼b.
    Partial sub(ClassId a, ClassId b) const { return dual_add(a, complement(b)); }
    Partial apply(TableOp op, ClassId a, ClassId b) const { return op == TableOp::add ? add(a, b) : dual_add(a, b); }

    /// ∼eta relative to [lo,hi], from witnesses a ≤ x ≤ b. Throws
    /// outside_interval unless lo ≤ eta ≤ hi.
    Partial relative_complement(ClassId eta, ClassId lo, ClassId hi) const;

private:
    std::size_t cell(ClassId a, ClassId b) const { return static_cast<std::size_t>(a) * k_ + b; }

    Scaling scaling_;
    int k_;
    std::vector<ClassId> comp_;
    std::vector<Partial> add_;
    std::vector<Partial> dual_;
};

struct CellCounts {
    int defined = 0;
    int question = 0;
    int boxtimes = 0;
};

CellCounts count_cells(const Scale& s, TableOp op);

/// Text grid with margins in class order. Undefined cells print as "?" or
/// "X" ("⊠" and greek class names with `unicode`).
std::string render_table(const Scale& s, TableOp op, bool unicode = false);

/// Greek rendering of a default ascii class name ("alpha" → "α").
std::string unicode_name(const std::string& name);

struct MapReport {
    std::vector<std::string> problems;
    bool ok() const { return problems.empty(); }
};

/// Checks that f (indexed by source class) is strictly increasing and
/// preserves additive relative complementation wherever the source defines it.
MapReport verify_scale_map(const Scale& source, const Scale& target, std::span<const ClassId> f);

}  // namespace sba
