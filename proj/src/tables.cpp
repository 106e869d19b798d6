#include "qcalc/calculus.hpp"

#include <fstream>

namespace qcalc {

namespace {

nlohmann::json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw DataValidationError("cannot open table file " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw DataValidationError(std::string("malformed table file: ") + e.what());
    }
}

template <class F>
auto guarded(F f)
{
    try {
        return f();
    } catch (const nlohmann::json::exception& e) {
        throw DataValidationError(std::string("malformed table file: ") + e.what());
    } catch (const ParseError& e) {
        throw DataValidationError(std::string("bad table entry: ") + e.what());
    }
}

const nlohmann::json& find_variant(const nlohmann::json& doc, const std::string& name)
{
    for (auto& v : doc.at("variants"))
        if (v.at("name") == name) return v;
    throw DataValidationError("unknown table variant '" + name + "'");
}

}  // namespace

std::pair<std::size_t, std::size_t> parse_pair_label(const std::string& key)
{
    if (key.size() != 5 || key[0] != 'w' || key[2] != '*' || key[3] != 'w' || key[1] < '1' || key[1] > '4' ||
        key[4] < '1' || key[4] > '4')
        throw DataValidationError("bad basis label '" + key + "'");
    return {std::size_t(key[1] - '1'), std::size_t(key[4] - '1')};
}

namespace {

std::vector<Vec<FieldElem>> read_vectors(const nlohmann::json& arr, const Bindings& b, const std::string& what)
{
    std::vector<Vec<FieldElem>> out;
    for (std::size_t n = 0; n < arr.size(); ++n) {
        Vec<FieldElem> v(16);
        for (auto& [key, val] : arr[n].items()) {
            auto [i, j] = parse_pair_label(key);
            try {
                v[pair_index(i, j)] += parse_field(val.get<std::string>(), b);
            } catch (const ParseError& e) {
                throw DataValidationError(what + "[" + std::to_string(n) + "]: " + e.what());
            }
        }
        out.push_back(std::move(v));
    }
    return out;
}

EigenData<FieldElem> load_variant(const nlohmann::json& doc, const std::string& variant)
{
    if (doc.value("format", "") != "qcalc-eigen-tables" || doc.value("version", 0) != 1)
        throw DataValidationError("unsupported table file format");
    const auto& v = find_variant(doc, variant);
    Bindings b = Bindings::with_t(parse_field(v.at("t").get<std::string>()));
    EigenData<FieldElem> d;
    d.variant = variant;
    d.q = FieldElem::q();
    d.s = FieldElem::s();
    d.ev1 = read_vectors(v.at("eigen_1"), b, "eigen_1");
    d.evm = read_vectors(v.at("eigen_minus_q2"), b, "eigen_minus_q2");
    d.evi = read_vectors(v.at("eigen_minus_qm2"), b, "eigen_minus_qm2");
    d.nu = read_vectors(doc.at("nu"), b, "nu");
    if (d.ev1.size() != 10 || d.evm.size() != 3 || d.evi.size() != 3 || d.nu.size() != 10)
        throw DataValidationError("table sizes must be 10, 3, 3 and 10");
    return d;
}

}  // namespace

std::string default_table_path() { return std::string(QCALC_DATA_DIR) + "/eigen_tables.json"; }

std::vector<std::string> table_variants(const std::string& path)
{
    auto doc = read_json(path);
    return guarded([&] {
        std::vector<std::string> out;
        for (auto& v : doc.at("variants")) out.push_back(v.at("name").get<std::string>());
        return out;
    });
}

FieldElem variant_t(const std::string& path, const std::string& variant)
{
    auto doc = read_json(path);
    return guarded([&] { return parse_field(find_variant(doc, variant).at("t").get<std::string>()); });
}

EigenData<FieldElem> load_eigen_data(const std::string& path, const std::string& variant)
{
    auto doc = read_json(path);
    return guarded([&] { return load_variant(doc, variant); });
}

EigenData<Rat> evaluate(const EigenData<FieldElem>& d, const Point& p)
{
    EigenData<Rat> e;
    e.variant = d.variant;
    e.q = p.q;
    e.s = p.s;
    auto ev = [&](const std::vector<Vec<FieldElem>>& vs) {
        std::vector<Vec<Rat>> out;
        for (auto& v : vs) out.push_back(evaluate(v, p));
        return out;
    };
    e.ev1 = ev(d.ev1);
    e.evm = ev(d.evm);
    e.evi = ev(d.evi);
    e.nu = ev(d.nu);
    return e;
}

}  // namespace qcalc
