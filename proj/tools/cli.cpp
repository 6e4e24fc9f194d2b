#include "sba/cli.hpp"

#include "sba/belief.hpp"
#include "sba/catalog.hpp"
#include "sba/census.hpp"
#include "sba/cf_arith.hpp"
#include "sba/divisibility.hpp"
#include "sba/document.hpp"
#include "sba/error.hpp"
#include "sba/nonarch.hpp"
#include "sba/scale.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <ostream>

namespace sba::cli {

namespace {

/// Bad input, reported on stderr with exit 2.
struct InputError {
    std::string what;
};

bool is_input_error(ErrorCode c)
{
    switch (c) {
    case ErrorCode::duplicate_label:
    case ErrorCode::size_out_of_range:
    case ErrorCode::mixed_algebra:
    case ErrorCode::outside_interval:
    case ErrorCode::invalid_argument:
    case ErrorCode::unsupported_size:
    case ErrorCode::parse_error:
    case ErrorCode::cycle_in_order:
        return true;
    default:
        return false;
    }
}

Scaling load(const std::string& file, bool verify)
{
    if (std::filesystem::is_regular_file(file))
        return to_scaling(load_document(file), verify);
    std::string name = std::filesystem::path(file).filename().string();
    if (name.size() > 5 && name.ends_with(".json"))
        name.resize(name.size() - 5);
    if (auto s = builtin(name))
        return *s;
    std::string known;
    for (const auto& n : builtin_names())
        known += " " + n;
    throw InputError{"'" + file + "' is neither a file nor a builtin scaling (builtins:" + known + ")"};
}

ClassId resolve_class(const Scaling& s, const std::string& text)
{
    if (auto c = s.find_class(text))
        return *c;
    for (ClassId c = 0; c < s.class_count(); ++c)
        if (unicode_name(s.name(c)) == text)
            return c;
    try {
        return s.class_of(s.algebra().parse(text));
    } catch (const Error&) {
        throw InputError{"unknown class '" + text + "'"};
    }
}

Mask resolve_set(const Scaling& s, const std::string& text)
{
    try {
        return s.algebra().parse(text).bits;
    } catch (const Error& e) {
        throw InputError{e.what()};
    }
}

std::string comparison_text(const Algebra& alg, const Comparison& c, const char* rel)
{
    return "m(" + alg.format(c.lesser) + ") " + rel + " m(" + alg.format(c.greater) + ")";
}

void print_certificate(std::ostream& out, const Algebra& alg, const ConstraintSystem& cs, const Certificate& cert)
{
    out << "certificate (multipliers summing the rows to 0 < 0):\n";
    for (const auto& [row, k] : cert.strict)
        out << "  " << k.get_str() << " x " << comparison_text(alg, cs.strict[row], "<") << "\n";
    for (const auto& [atom, k] : cert.positivity)
        out << "  " << k.get_str() << " x m({" << alg.labels()[atom] << "}) > 0\n";
    for (const auto& [row, k] : cert.equal)
        out << "  " << k.get_str() << " x " << comparison_text(alg, cs.equal[row], "=") << "\n";
    out << "certificate check: " << (cert.verify(cs) ? "valid" : "INVALID") << "\n";
}

template <class T>
std::string tuple_text(const std::vector<T>& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ", ";
        if constexpr (std::is_same_v<T, Rational>)
            s += to_string(v[i]);
        else if constexpr (std::is_same_v<T, Integer>)
            s += v[i].get_str();
        else
            s += std::to_string(v[i]);
    }
    return s + ")";
}

int cmd_check(const std::string& file, std::ostream& out)
{
    const Scaling s = load(file, false);
    const AxiomReport r = verify_axioms(s);
    if (r.ok()) {
        out << "PASS: valid scaling, " << s.class_count() << " classes\n";
        return 0;
    }
    out << "FAIL: " << r.violation_count << " violations\n";
    for (const auto& v : r.witnesses)
        out << "  " << describe(s, v) << "\n";
    return 1;
}

int cmd_export(const std::string& file, std::ostream& out)
{
    out << serialize_document(to_document(load(file, true)));
    return 0;
}

int cmd_table(const std::string& file, const std::string& op, bool unicode, std::ostream& out)
{
    const Scale scale(load(file, true));
    const TableOp t = op == "add" ? TableOp::add : TableOp::dual_add;
    out << render_table(scale, t, unicode);
    const CellCounts c = count_cells(scale, t);
    out << "defined " << c.defined << ", ? " << c.question << ", " << (unicode ? "⊠ " : "X ") << c.boxtimes << "\n";
    return 0;
}

int cmd_divided(const std::string& file, std::ostream& out)
{
    const Scaling s = load(file, true);
    if (auto cx = is_divided(s)) {
        const auto& alg = s.algebra();
        out << "NOT DIVIDED: " << alg.format(cx->x) << " (" << s.name(s.class_of(cx->x)) << ") < " << alg.format(cx->y)
            << " (" << s.name(s.class_of(cx->y)) << ") but no proper subset of " << alg.format(cx->y)
            << " lies in class " << s.name(s.class_of(cx->x)) << "\n";
        return 1;
    }
    out << "DIVIDED\n";
    return 0;
}

int cmd_measure(const std::string& file, std::ostream& out)
{
    const Scaling s = load(file, true);
    const auto& alg = s.algebra();
    const ConstraintSystem cs = build_constraints(s);
    const MeasureResult r = find_agreeing_measure(cs);
    if (r.measurable()) {
        out << "FEASIBLE\n";
        for (int i = 0; i < alg.atom_count(); ++i)
            out << "  m({" << alg.labels()[i] << "}) = " << to_string(r.measure->mass[i]) << "\n";
        out << "margin " << to_string(r.slack) << "\n";
        return 0;
    }
    out << "INFEASIBLE\n";
    print_certificate(out, alg, cs, *r.certificate);
    return 1;
}

int cmd_divide(const std::string& file, std::ostream& out)
{
    const Scaling s = load(file, true);
    const auto& alg = s.algebra();
    const DivisionResult r = construct_division(s);
    if (!r.divisible()) {
        out << "INDIVISIBLE\n";
        print_certificate(out, alg, build_constraints(s), *r.certificate);
        return 1;
    }
    const Division& d = *r.division;
    out << "DIVISIBLE\nvertices:\n";
    for (std::size_t i = 0; i < d.vertices.rows.size(); ++i)
        out << "  " << tuple_text(d.vertices.rows[i]) << "  lcd " << d.vertices.denominators[i].get_str() << "\n";
    out << "copies per atom:\n";
    for (int a = 0; a < alg.atom_count(); ++a)
        out << "  " << alg.labels()[a] << " -> " << tuple_text(d.sigma[a]) << "\n";
    out << "class sizes " << tuple_text(d.class_sizes) << "\n";
    if (d.expanded) {
        out << "expanded algebra " << d.expanded_labels.size() << " atoms, " << d.expanded->class_count()
            << " classes, " << (is_divided(*d.expanded) ? "not divided" : "divided") << "\n";
    } else {
        out << "expanded algebra " << d.expanded_labels.size() << " atoms (not materialized)\n";
    }
    return 0;
}

int cmd_kleene(const std::string& file, std::ostream& out)
{
    const Scaling s = load(file, true);
    const auto& alg = s.algebra();
    const TupleRep rep = kleene_tuple_representation(s);
    out << "blocks:";
    for (const auto& block : rep.partition) {
        Mask m = 0;
        for (int a : block)
            m |= Mask{1} << a;
        out << " " << alg.format(m);
    }
    out << "\n";
    for (ClassId c = 0; c < s.class_count(); ++c)
        out << "  " << s.name(c) << " = " << tuple_text(rep.rep(s.representative(c))) << "\n";
    return 0;
}

int cmd_census(int n, bool one_to_one, bool linear, bool list, std::ostream& out)
{
    const CensusResult r = enumerate_scalings(n, {one_to_one, linear});
    const CensusCounts& c = r.counts;
    const CensusCounts& l = r.labeled;
    out << "n = " << n << "\n";
    out << "one-to-one: " << c.one_to_one_total << " (" << c.one_to_one_linear << " linear)\n";
    if (!one_to_one)
        out << "many-to-one: " << c.many_to_one_total << " (" << c.many_to_one_linear << " linear)\n";
    out << "total: " << c.total() << "\n";
    out << "with atoms labeled: one-to-one " << l.one_to_one_total << " (" << l.one_to_one_linear << " linear)";
    if (!one_to_one)
        out << ", many-to-one " << l.many_to_one_total << " (" << l.many_to_one_linear << " linear)";
    out << "\n";
    if (list)
        for (const auto& e : r.representatives)
            out << "  " << (e.one_to_one ? "1-1 " : "m-1 ") << (e.linear ? "linear  " : "partial ") << e.encoding << "\n";
    return 0;
}

int cmd_kps(std::ostream& out)
{
    const Scaling s = kps_example();
    const auto& alg = s.algebra();
    out << "generators:\n";
    for (auto [lo, hi] : kps_generators())
        out << "  " << alg.format(lo) << " < " << alg.format(hi) << "\n";
    const AxiomReport axioms = verify_axioms(s);
    out << "axioms: " << (axioms.ok() ? "PASS" : "FAIL") << ", " << s.class_count() << " classes\n";
    const ConstraintSystem cs = build_constraints(s);
    const MeasureResult m = find_agreeing_measure(cs);
    out << "measure: " << (m.measurable() ? "FEASIBLE" : "INFEASIBLE") << "\n";
    if (m.certificate)
        print_certificate(out, alg, cs, *m.certificate);
    const DivisionResult d = construct_division(s);
    out << "division: " << (d.divisible() ? "DIVISIBLE" : "INDIVISIBLE") << "\n";
    return axioms.ok() && !m.measurable() && !d.divisible() ? 0 : 1;
}

int cmd_cf(const std::string& file, const std::string& num, const std::string& den, std::ostream& out)
{
    const Scale scale(load(file, true));
    const ClassId a = resolve_class(scale.scaling(), num);
    const ClassId b = resolve_class(scale.scaling(), den);
    const ContinuedFraction cf = continued_fraction(scale, a, b);
    out << cf.to_string() << " = " << to_string(cf.value()) << "\n";
    return 0;
}

int cmd_multiply(const std::string& file, const std::string& x, const std::string& y, std::ostream& out)
{
    const Scale scale(load(file, true));
    const ClassId a = resolve_class(scale.scaling(), x);
    const ClassId b = resolve_class(scale.scaling(), y);
    if (auto c = scale_multiply(scale, a, b)) {
        out << scale.name(a) << " * " << scale.name(b) << " = " << scale.name(*c) << "\n";
        return 0;
    }
    const CanonicalMeasure mu = canonical_measure(scale);
    out << "UNDEFINED: " << scale.name(a) << " * " << scale.name(b) << " has measure "
        << to_string(mu.value[a] * mu.value[b]) << ", which no class takes\n";
    return 1;
}

int cmd_prodrule(const std::string& file, const std::string& x, const std::string& z, std::ostream& out)
{
    const Scaling s = load(file, true);
    const ProductRuleReport r = verify_product_rule(s, resolve_set(s, x), resolve_set(s, z));
    out << "P(x ^ z) = " << to_string(r.joint) << "\n";
    out << "P(x | z) = " << to_string(r.conditional) << "\n";
    out << "P(z) = " << to_string(r.marginal) << "\n";
    out << "cf(P(x ^ z) / P(z)) = " << r.joint_over_marginal.to_string() << "\n";
    out << "cf(P(x | z) / 1) = " << r.conditional_over_one.to_string() << "\n";
    if (r.ok) {
        out << "PASS\n";
        return 0;
    }
    out << "FAIL: " << r.failure << "\n";
    return 1;
}

int cmd_axioms(const std::string& file, std::ostream& out)
{
    const Scaling s = load(file, true);
    const Algebra& alg = s.algebra();
    const int size = static_cast<int>(alg.size());
    Preorder p(size);
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j)
            if (s.le(s.class_of(static_cast<Mask>(i)), s.class_of(static_cast<Mask>(j))))
                p.set_le(i, j);
    const BeliefSystem bs = canonical_belief_system(alg, p);
    const BeliefReport r = check_axioms(bs);
    for (Axiom a : all_axioms)
        out << to_string(a) << ": " << (r.count(a) == 0 ? "holds" : std::to_string(r.count(a)) + " violations") << "\n";
    for (const auto& f : r.findings)
        out << "  " << describe(bs, f) << "\n";
    out << (r.ok() ? "PASS" : "FAIL") << "\n";
    return r.ok() ? 0 : 1;
}

UPSet upset_arg(const std::string& text)
{
    try {
        return parse_upset(text);
    } catch (const Error& e) {
        throw InputError{e.what()};
    }
}

int cmd_nonarch(const std::string& sub, const std::vector<std::string>& operands, std::ostream& out)
{
    auto need = [&](std::size_t k) {
        if (operands.size() != k)
            throw InputError{"demo-nonarch " + sub + " takes " + std::to_string(k) + " operand(s)"};
    };
    if (sub == "compare") {
        need(2);
        const UPSet a = upset_arg(operands[0]), b = upset_arg(operands[1]);
        out << to_string(nonarch_compare(a, b)) << "\n";
        out << "  " << value_of(a).to_string() << "\n  " << value_of(b).to_string() << "\n";
        return 0;
    }
    if (sub == "ops") {
        need(2);
        const UPSetOps r = upset_ops(upset_arg(operands[0]), upset_arg(operands[1]));
        out << "union " << r.unite.to_string() << "\n";
        out << "intersection " << r.intersect.to_string() << "\n";
        out << "complement " << r.complement.to_string() << "\n";
        out << "difference " << r.difference.to_string() << "\n";
        out << "|difference| " << (r.difference_cardinality ? std::to_string(*r.difference_cardinality) : "infinite")
            << "\n";
        return 0;
    }
    if (sub == "value") {
        need(1);
        out << value_of(upset_arg(operands[0])).to_string() << "\n";
        return 0;
    }
    if (sub == "infinitesimal") {
        need(1);
        const InfinitesimalReport r = is_infinitesimal(value_of(upset_arg(operands[0])));
        out << (r.infinitesimal ? "INFINITESIMAL" : "NOT INFINITESIMAL") << "\n" << r.argument << "\n";
        for (const auto& w : r.witness)
            out << "  " << w.to_string() << "\n";
        return r.infinitesimal ? 0 : 1;
    }
    if (sub == "witness") {
        need(2);
        const UPSet a = upset_arg(operands[0]), b = upset_arg(operands[1]);
        if (nonarch_compare(a, b) != Order::lt) {
            out << "UNDEFINED: first set is not strictly below the second\n";
            return 1;
        }
        out << divided_witness(a, b).to_string() << "\n";
        return 0;
    }
    if (sub == "discontinuity") {
        need(0);
        const DiscontinuityReport r = discontinuity_witness();
        out << r.text << "\n";
        out << "bound below sampled tails: " << (r.bound_holds ? "yes" : "no") << "\n";
        out << "bound above value of the meet: " << (r.bound_above_meet ? "yes" : "no") << "\n";
        out << "meet has the value of {}: " << (r.meet_value_is_empty ? "yes" : "no") << "\n";
        out << "first " << r.partial_sums << " singleton partial sums stay finite: "
            << (r.partial_sums_finite ? "yes" : "no") << "\n";
        out << (r.ok() ? "PASS" : "FAIL") << "\n";
        return r.ok() ? 0 : 1;
    }
    if (sub == "shift") {
        need(0);
        const GalaxyShiftWitness w = galaxy_shift_witness();
        out << "x = " << w.x.to_string() << " in [" << w.a.to_string() << ", " << w.b.to_string() << "]\n";
        out << "shift of complement " << w.shifted_complement.to_string() << "\n";
        out << "complement of shift " << w.complement_of_shift.to_string() << "\n";
        out << (w.breaks ? "shift does not preserve relative complements" : "shift preserves this complement") << "\n";
        return 0;
    }
    if (sub == "family") {
        need(1);
        int k = 0;
        try {
            k = std::stoi(operands[0]);
        } catch (const std::exception&) {
            throw InputError{"family size must be an integer"};
        }
        for (int i = 1; i <= k; ++i)
            out << "  " << disjoint_family_member(i).to_string() << "\n";
        return 0;
    }
    throw InputError{"unknown demo '" + sub + "' (compare, ops, value, infinitesimal, witness, discontinuity, shift, family)"};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Finite scalings: axioms, arithmetic, measurability and division"};
    app.name("sba");
    app.require_subcommand(1);

    std::string file, op = "add", num, den, x, y, z, demo;
    std::vector<std::string> operands;
    bool unicode = false, one_to_one = false, linear = false, list = false;
    int n = 3;
    std::function<int()> action;

    auto with_file = [&](const char* name, const char* help) {
        auto* sc = app.add_subcommand(name, help);
        sc->add_option("FILE", file, "scaling document or builtin name")->required();
        return sc;
    };

    with_file("check", "verify the scaling axioms")->callback([&] { action = [&] { return cmd_check(file, out); }; });
    with_file("export", "print the scaling as a normal-form document")->callback([&] {
        action = [&] { return cmd_export(file, out); };
    });
    auto* table = with_file("table", "addition or dual addition table");
    table->add_option("--op", op, "add or dualadd")->check(CLI::IsMember({"add", "dualadd"}));
    table->add_flag("--unicode", unicode, "greek names and the boxed times sign");
    table->callback([&] { action = [&] { return cmd_table(file, op, unicode, out); }; });
    with_file("divided", "test whether the scaling is divided")->callback([&] {
        action = [&] { return cmd_divided(file, out); };
    });
    with_file("measure", "search for an agreeing measure")->callback([&] {
        action = [&] { return cmd_measure(file, out); };
    });
    with_file("divide", "construct a division")->callback([&] { action = [&] { return cmd_divide(file, out); }; });
    with_file("kleene", "count tuple representation of a divided scaling")->callback([&] {
        action = [&] { return cmd_kleene(file, out); };
    });
    auto* census = app.add_subcommand("census", "count scalings up to isomorphism");
    census->add_option("--n", n, "number of atoms")->required();
    census->add_flag("--one-to-one", one_to_one);
    census->add_flag("--linear", linear);
    census->add_flag("--list", list, "print every representative");
    census->callback([&] { action = [&] { return cmd_census(n, one_to_one, linear, list, out); }; });
    app.add_subcommand("kps", "the five-atom scaling with no agreeing measure")->callback([&] {
        action = [&] { return cmd_kps(out); };
    });
    auto* cf = with_file("cf", "continued fraction of one class over another");
    cf->add_option("--num", num)->required();
    cf->add_option("--den", den)->required();
    cf->callback([&] { action = [&] { return cmd_cf(file, num, den, out); }; });
    auto* mul = with_file("multiply", "product of two classes");
    mul->add_option("--x", x)->required();
    mul->add_option("--y", y)->required();
    mul->callback([&] { action = [&] { return cmd_multiply(file, x, y, out); }; });
    auto* pr = with_file("prodrule", "check P(x ^ z) = P(x | z) P(z)");
    pr->add_option("--x", x)->required();
    pr->add_option("--z", z)->required();
    pr->callback([&] { action = [&] { return cmd_prodrule(file, x, z, out); }; });
    with_file("axioms", "belief axioms of the induced conditional orderings")->callback([&] {
        action = [&] { return cmd_axioms(file, out); };
    });
    auto* na = app.add_subcommand("demo-nonarch", "ultimately periodic subsets of N modulo finite sets");
    na->add_option("SUBCMD", demo, "compare, ops, value, infinitesimal, witness, discontinuity, shift, family")
        ->required();
    na->add_option("OPERANDS", operands, "set expressions such as evens, {1,2}, 4n+1, tail(3), ~A & B");
    na->callback([&] { action = [&] { return cmd_nonarch(demo, operands, out); }; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        return action();
    } catch (const InputError& e) {
        err << "error: " << e.what << "\n";
        return 2;
    } catch (const Error& e) {
        if (is_input_error(e.code())) {
            err << "error: " << e.what() << "\n";
            return 2;
        }
        out << "FAIL: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace sba::cli
