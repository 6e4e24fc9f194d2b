#include "sba/document.hpp"

#include "sba/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace sba {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void field_error(const std::string& path, const std::string& what)
{
    throw Error(ErrorCode::parse_error, "field " + path + ": " + what);
}

std::string line_column(std::string_view text, std::size_t byte)
{
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

std::string as_string(const json& j, const std::string& path)
{
    if (!j.is_string())
        field_error(path, "expected a string");
    return j.get<std::string>();
}

}  // namespace

ScalingDocument parse_document(std::string_view text)
{
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::string what = e.what();
        if (auto p = what.find("parse error at"); p != std::string::npos)
            what = what.substr(what.find(':', p) + 2);
        throw Error(ErrorCode::parse_error, line_column(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + what);
    }
    if (!root.is_object())
        field_error("(root)", "expected an object");
    for (const auto& key : {"atoms", "classes", "order"})
        if (!root.contains(key))
            field_error(key, "missing");
    for (auto it = root.begin(); it != root.end(); ++it)
        if (it.key() != "atoms" && it.key() != "classes" && it.key() != "order")
            field_error(it.key(), "unknown field");

    ScalingDocument doc;
    const json& atoms = root["atoms"];
    if (!atoms.is_array())
        field_error("atoms", "expected an array");
    for (std::size_t i = 0; i < atoms.size(); ++i)
        doc.atoms.push_back(as_string(atoms[i], "atoms[" + std::to_string(i) + "]"));

    const json& classes = root["classes"];
    if (!classes.is_object())
        field_error("classes", "expected an object");
    for (auto it = classes.begin(); it != classes.end(); ++it) {
        const std::string path = "classes." + it.key();
        if (!it.value().is_array())
            field_error(path, "expected an array of subsets");
        std::vector<std::vector<std::string>> subsets;
        for (std::size_t i = 0; i < it.value().size(); ++i) {
            const json& sub = it.value()[i];
            const std::string sp = path + "[" + std::to_string(i) + "]";
            if (!sub.is_array())
                field_error(sp, "expected an array of atom names");
            std::vector<std::string> names;
            for (std::size_t k = 0; k < sub.size(); ++k)
                names.push_back(as_string(sub[k], sp + "[" + std::to_string(k) + "]"));
            subsets.push_back(std::move(names));
        }
        doc.classes.emplace_back(it.key(), std::move(subsets));
    }

    const json& order = root["order"];
    if (!order.is_array())
        field_error("order", "expected an array of pairs");
    for (std::size_t i = 0; i < order.size(); ++i) {
        const std::string path = "order[" + std::to_string(i) + "]";
        if (!order[i].is_array() || order[i].size() != 2)
            field_error(path, "expected [lesser, greater]");
        doc.order.emplace_back(as_string(order[i][0], path + "[0]"), as_string(order[i][1], path + "[1]"));
    }
    return doc;
}

std::string serialize_document(const ScalingDocument& doc)
{
    // hand-rolled so subsets stay on one line
    auto quote = [](const std::string& s) { return json(s).dump(); };
    std::ostringstream out;
    out << "{\n  \"atoms\": [";
    for (std::size_t i = 0; i < doc.atoms.size(); ++i)
        out << (i ? ", " : "") << quote(doc.atoms[i]);
    out << "],\n  \"classes\": {";
    for (std::size_t c = 0; c < doc.classes.size(); ++c) {
        out << (c ? "," : "") << "\n    " << quote(doc.classes[c].first) << ": [";
        const auto& subsets = doc.classes[c].second;
        for (std::size_t i = 0; i < subsets.size(); ++i) {
            out << (i ? ", " : "") << "[";
            for (std::size_t k = 0; k < subsets[i].size(); ++k)
                out << (k ? ", " : "") << quote(subsets[i][k]);
            out << "]";
        }
        out << "]";
    }
    out << (doc.classes.empty() ? "" : "\n  ") << "},\n  \"order\": [";
    for (std::size_t i = 0; i < doc.order.size(); ++i)
        out << (i ? "," : "") << "\n    [" << quote(doc.order[i].first) << ", " << quote(doc.order[i].second) << "]";
    out << (doc.order.empty() ? "" : "\n  ") << "]\n}\n";
    return out.str();
}

Scaling to_scaling(const ScalingDocument& doc, bool verify)
{
    if (doc.atoms.empty() || static_cast<int>(doc.atoms.size()) > Algebra::max_atoms)
        field_error("atoms", "need between 1 and " + std::to_string(Algebra::max_atoms) + " atoms");
    Algebra alg = [&] {
        try {
            return Algebra::powerset(doc.atoms);
        } catch (const Error& e) {
            field_error("atoms", e.what());
        }
    }();

    std::map<std::string, ClassId> id_of;
    std::vector<std::string> names;
    std::vector<ClassId> class_of(alg.size(), -1);
    for (const auto& [name, subsets] : doc.classes) {
        const std::string path = "classes." + name;
        if (!id_of.emplace(name, static_cast<ClassId>(names.size())).second)
            field_error(path, "duplicate class name");
        const ClassId id = static_cast<ClassId>(names.size());
        names.push_back(name);
        if (subsets.empty())
            field_error(path, "class has no subsets");
        for (std::size_t i = 0; i < subsets.size(); ++i) {
            const std::string sp = path + "[" + std::to_string(i) + "]";
            Mask bits = 0;
            for (const auto& atom : subsets[i]) {
                const int a = alg.atom_index(atom);
                if (a < 0)
                    field_error(sp, "unknown atom '" + atom + "'");
                if (bits >> a & 1u)
                    field_error(sp, "atom '" + atom + "' repeated");
                bits |= Mask{1} << a;
            }
            if (class_of[bits] >= 0)
                field_error(sp, "subset " + alg.format(bits) + " already in class " + names[class_of[bits]]);
            class_of[bits] = id;
        }
    }
    for (Mask x = 0; x < alg.size(); ++x)
        if (class_of[x] < 0)
            field_error("classes", "subset " + alg.format(x) + " is in no class");

    std::vector<std::pair<ClassId, ClassId>> pairs;
    for (std::size_t i = 0; i < doc.order.size(); ++i) {
        const auto& [lo, hi] = doc.order[i];
        auto a = id_of.find(lo), b = id_of.find(hi);
        if (a == id_of.end())
            field_error("order[" + std::to_string(i) + "][0]", "unknown class '" + lo + "'");
        if (b == id_of.end())
            field_error("order[" + std::to_string(i) + "][1]", "unknown class '" + hi + "'");
        pairs.emplace_back(a->second, b->second);
    }
    if (verify)
        return build_scaling(alg, class_of, pairs, names);

    Poset order(static_cast<int>(names.size()));
    for (auto [a, b] : pairs)
        order.set(a, b);
    order.close();
    if (int p = order.reflexive_point(); p >= 0)
        throw Error(ErrorCode::cycle_in_order, "class " + names[p] + " lies on a cycle");
    return Scaling::assemble(alg, std::move(class_of), std::move(order), names);
}

ScalingDocument to_document(const Scaling& s)
{
    const Algebra& alg = s.algebra();
    ScalingDocument doc;
    doc.atoms = alg.labels();
    for (ClassId c = 0; c < s.class_count(); ++c) {
        std::vector<Mask> masks(s.members(c).begin(), s.members(c).end());
        std::sort(masks.begin(), masks.end());
        std::vector<std::vector<std::string>> subsets;
        for (Mask m : masks)
            subsets.push_back(alg.labels_of(m));
        doc.classes.emplace_back(s.name(c), std::move(subsets));
    }
    auto covers = s.order().covers();
    std::sort(covers.begin(), covers.end());
    for (auto [a, b] : covers)
        doc.order.emplace_back(s.name(a), s.name(b));
    return doc;
}

ScalingDocument load_document(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::parse_error, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_document(buf.str());
    } catch (const Error& e) {
        throw Error(e.code(), path + ": " + std::string(e.what()).substr(to_string(e.code()).size() + 2));
    }
}

}  // namespace sba
