#include "qcalc/printed.hpp"

#include <cstdio>
#include <fstream>

namespace qcalc {

namespace {

nlohmann::json read_doc(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw DataValidationError("cannot open formula file " + path);
    try {
        auto doc = nlohmann::json::parse(in);
        if (doc.value("format", "") != "qcalc-printed-formulas" || doc.value("version", 0) != 1)
            throw DataValidationError("unsupported formula file format");
        return doc;
    } catch (const nlohmann::json::exception& e) {
        throw DataValidationError(std::string("malformed formula file: ") + e.what());
    }
}

Triple parse_triple(const std::string& s)
{
    Triple t{};
    if (std::sscanf(s.c_str(), "%d,%d,%d", &t[0], &t[1], &t[2]) != 3)
        throw DataValidationError("bad row label '" + s + "'");
    return t;
}

Unknown parse_unknown(const std::string& s)
{
    Unknown u;
    if (std::sscanf(s.c_str(), "%d,%d", &u.first, &u.second) != 2)
        throw DataValidationError("bad unknown label '" + s + "'");
    return u;
}

template <class F>
auto parsed(const std::string& where, F f)
{
    try {
        return f();
    } catch (const ParseError& e) {
        throw DataValidationError(where + ": " + e.what());
    }
}

PrintedVector read_vector(const nlohmann::json& j, const Bindings& b, const std::string& where)
{
    PrintedVector v;
    v.prefactor = parsed(where, [&] { return parse_field(j.at("prefactor").get<std::string>(), b); });
    for (auto& [key, val] : j.at("terms").items()) {
        parse_pair_label(key);
        v.terms[key] = parsed(where, [&] { return parse_field(val.get<std::string>(), b); });
    }
    return v;
}

}  // namespace

Vec<FieldElem> PrintedVector::value() const
{
    Vec<FieldElem> v(16);
    for (auto& [key, x] : terms) {
        auto [i, j] = parse_pair_label(key);
        v[pair_index(i, j)] += prefactor * x;
    }
    return v;
}

std::string default_printed_path() { return std::string(QCALC_DATA_DIR) + "/printed_formulas.json"; }

std::string triple_label(const Triple& t)
{
    return "(" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + ")";
}

PrintedFormulas load_printed(const std::string& path, const Bindings& b)
{
    auto doc = read_doc(path);
    PrintedFormulas p;
    try {
        for (auto& c : doc.at("nabla0")) p.nabla0.push_back(read_vector(c, b, "nabla0 " + c.at("column").get<std::string>()));
        if (p.nabla0.size() != 4) throw DataValidationError("expected four nabla0 displays");
        for (auto& d : doc.at("decompositions")) {
            PrintedDecomposition dec;
            dec.vector = d.at("vector").get<std::string>();
            for (auto& part : d.at("parts"))
                dec.parts.push_back({part.at("group").get<std::string>(), read_vector(part, b, "decomposition " + dec.vector)});
            p.decompositions.push_back(std::move(dec));
        }
        for (auto& r : doc.at("lemma_rows")) {
            PrintedRow row;
            row.row = parse_triple(r.at("row").get<std::string>());
            row.text = r.at("lhs").get<std::string>();
            row.lhs = parsed("row " + triple_label(row.row), [&] { return parse_linear(row.text, b); });
            row.note = r.value("note", "");
            p.lemma_rows.push_back(std::move(row));
        }
        for (auto& s : doc.at("subsystems")) {
            PrintedSubsystem sub;
            sub.label = s.at("label").get<std::string>();
            for (auto& r : s.at("rows")) sub.rows.push_back(parse_triple(r.get<std::string>()));
            for (auto& u : s.at("unknowns")) sub.unknowns.push_back(parse_unknown(u.get<std::string>()));
            if (!s.at("paper_value").is_null())
                sub.paper_value = parsed(sub.label, [&] { return parse_field(s.at("paper_value").get<std::string>(), b); });
            sub.exact = s.value("exact", false);
            for (auto& t : s.at("printed")) {
                sub.printed_text.push_back(t.get<std::string>());
                sub.printed.push_back(parsed(sub.label, [&] { return parse_linear(sub.printed_text.back(), b); }));
            }
            p.subsystems.push_back(std::move(sub));
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataValidationError(std::string("malformed formula file: ") + e.what());
    }
    return p;
}

Mat<FieldElem> printed_matrix(const PrintedSubsystem& s)
{
    Mat<FieldElem> m(s.printed.size(), s.unknowns.size());
    for (std::size_t i = 0; i < s.printed.size(); ++i)
        for (std::size_t j = 0; j < s.unknowns.size(); ++j) {
            auto it = s.printed[i].coeff.find(s.unknowns[j]);
            if (it != s.printed[i].coeff.end()) m(i, j) = it->second;
        }
    return m;
}

std::vector<DisplayCheck> check_nabla0_displays(const Calculus<FieldElem>& c, const PrintedFormulas& p, Sign sign)
{
    Mat<FieldElem> n0 = build_nabla0(c, sign);
    FieldElem e(sign_value(sign));
    std::vector<DisplayCheck> out;
    for (std::size_t i = 0; i < 4; ++i) {
        DisplayCheck d;
        d.column = e_labels()[i];
        d.computed = n0.column(i);
        d.printed = p.nabla0[i].value();
        for (auto& x : d.printed) x *= e;
        d.match = d.computed == d.printed;
        out.push_back(std::move(d));
    }
    return out;
}

bool DecompositionCheck::pass() const
{
    if (!sums_to_vector) return false;
    for (auto& [g, ok] : group_match)
        if (!ok) return false;
    return true;
}

DecompositionCheck check_decomposition(const Calculus<FieldElem>& c, const PrintedDecomposition& d)
{
    DecompositionCheck r;
    r.vector = d.vector;
    auto [i, j] = parse_pair_label(d.vector);
    Vec<FieldElem> x(16);
    x[pair_index(i, j)] = FieldElem(1);
    std::map<std::string, Vec<FieldElem>> groups;
    Vec<FieldElem> total(16);
    for (auto& part : d.parts) {
        Vec<FieldElem> v = part.v.value();
        auto& g = groups.try_emplace(part.group, Vec<FieldElem>(16)).first->second;
        for (std::size_t a = 0; a < 16; ++a) {
            g[a] += v[a];
            total[a] += v[a];
        }
    }
    r.sums_to_vector = total == x;
    for (auto& [name, v] : groups) {
        const Mat<FieldElem>* proj = name == "sym"        ? &c.br.p1
                                     : name == "minus_q2" ? &c.br.p2
                                     : name == "minus_qm2" ? &c.br.p3
                                                           : nullptr;
        if (!proj) throw DataValidationError("unknown decomposition group '" + name + "'");
        r.group_match[name] = (*proj) * x == v;
    }
    return r;
}

}  // namespace qcalc
