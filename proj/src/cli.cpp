#include "qcalc/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace qcalc {

namespace {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using ojson = nlohmann::ordered_json;

std::string table_path(const RunConfig& cfg)
{
    return cfg.data_dir.empty() ? default_table_path() : cfg.data_dir + "/eigen_tables.json";
}

std::string formula_path(const RunConfig& cfg)
{
    return cfg.data_dir.empty() ? default_printed_path() : cfg.data_dir + "/printed_formulas.json";
}

void emit(const RunConfig& cfg, const ojson& j, std::ostream& out)
{
    std::string text = j.dump(2) + "\n";
    if (cfg.out == "-") {
        out << text << std::flush;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + cfg.out);
    f << text;
}

struct Ledger {
    std::vector<Property> items;

    void add(std::string name, bool ok) { items.push_back({std::move(name), ok}); }
    bool pass() const
    {
        for (auto& p : items)
            if (!p.pass) return false;
        return true;
    }
    ojson json() const
    {
        ojson a = ojson::array();
        for (auto& p : items) a.push_back({{"name", p.name}, {"pass", p.pass}});
        return a;
    }
};

template <class S>
bool projectors_complete(const Braiding<S>& b)
{
    const std::size_t n = b.sigma.rows;
    Mat<S> id = Mat<S>::identity(n);
    if (b.p1 + b.p2 + b.p3 != id) return false;
    const Mat<S>* ps[] = {&b.p1, &b.p2, &b.p3};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Mat<S> m = (*ps[i]) * (*ps[j]);
            if (i == j ? m != *ps[i] : !m.is_zero()) return false;
        }
    return true;
}

struct Loaded {
    std::string variant;
    FieldElem t_binding;
    Calculus<FieldElem> calc;
    PrintedFormulas printed;
};

Loaded load(const RunConfig& cfg)
{
    Loaded l;
    l.variant = resolve_variant(table_path(cfg), cfg.variant, cfg.t0, cfg.k0);
    l.t_binding = variant_t(table_path(cfg), l.variant);
    l.calc = make_calculus(load_eigen_data(table_path(cfg), l.variant));
    l.printed = load_printed(formula_path(cfg), Bindings::with_t(l.t_binding));
    return l;
}

ojson header(const std::string& command, const RunConfig& cfg, const Loaded& l)
{
    ojson j;
    j["command"] = command;
    j["variant"] = l.variant;
    j["variant_requested"] = cfg.variant;
    j["sign"] = sign_name(cfg.sign);
    j["t_binding"] = l.t_binding.str();
    j["specialization"] = {{"t", rat_str(cfg.t0)}, {"k", rat_str(cfg.k0)}};
    return j;
}

void calculus_properties(const Calculus<FieldElem>& c, Ledger& led, ojson& rep)
{
    led.add("eigenvectors_independent", true);
    led.add("minimal_polynomial", check_minimal_polynomial(c.br.sigma, c.data.q).pass());
    BraidResult br = braid_check(c.br.sigma);
    led.add("braid_equation", br.pass);
    if (br.witness) rep["braid_witness"] = triple_label(*br.witness);
    led.add("psym_equals_eigenprojector", build_psym(c.br.sigma, c.data.q) == c.br.p1);
    led.add("projectors_complete", projectors_complete(c.br));
}

void connection_properties(const Loaded& l, Sign sign, Ledger& led, ojson& rep)
{
    const auto& c = l.calc;
    auto displays = check_nabla0_displays(c, l.printed, sign);
    bool all = true;
    ojson dj = ojson::array();
    for (auto& d : displays) {
        all = all && d.match;
        dj.push_back({{"column", d.column}, {"match", d.match}});
    }
    rep["nabla0_displays"] = dj;
    led.add("nabla0_displays", all);

    ojson decs = ojson::array();
    for (auto& d : l.printed.decompositions) {
        DecompositionCheck r = check_decomposition(c, d);
        ojson groups;
        for (auto& [g, ok] : r.group_match) groups[g] = ok;
        decs.push_back({{"vector", r.vector}, {"sums_to_vector", r.sums_to_vector}, {"groups", groups}});
        led.add("decomposition " + r.vector, r.pass());
    }
    rep["decompositions"] = decs;

    Mat<FieldElem> n0 = build_nabla0(c, sign);
    led.add("torsion_nabla0_zero", torsion(c, n0, sign).is_zero());

    auto basis = metric_basis(c);
    bool inv = basis.size() == 10;
    for (auto& g : basis) inv = inv && sigma_invariant(c, g);
    led.add("metric_basis_sigma_invariant", inv);

    ExampleMetric ex;
    try {
        ex = example_metric(basis);
    } catch (const SingularMetric&) {
        led.add("example_metric_nondegenerate", false);
        return;
    }
    led.add("example_metric_nondegenerate", !det(ex.g).is_zero());
    rep["example_metric"] = {{"coefficients", ex.coeffs}, {"det", det(ex.g).str()}};
    try {
        auto lc = levi_civita(c, ex.g, sign);
        led.add("levi_civita_torsion_zero", lc.torsion.is_zero());
        led.add("levi_civita_compatible", lc.pi0.is_zero());
    } catch (const PhiSingular&) {
        led.add("levi_civita_torsion_zero", false);
        led.add("levi_civita_compatible", false);
    }
    led.add("phi_kernel_trivial", rank(phi_g(c, psym23_matrix(c), ex.g)) == 40);
}

int verify_symbolic(const RunConfig& cfg, std::ostream& out)
{
    Loaded l = load(cfg);
    Ledger led;
    ojson extra;
    calculus_properties(l.calc, led, extra);
    connection_properties(l, cfg.sign, led, extra);

    CertifyOptions opt{l.variant, cfg.sign, cfg.t0, cfg.k0};
    Certificate cert = certify(l.calc, l.printed, l.t_binding, opt);
    for (auto& p : cert.properties) led.add(p.name, p.pass);

    ojson rep = header("verify", cfg, l);
    rep["mode"] = "symbolic";
    ojson cj = to_json(cert);
    for (auto& [key, val] : cj.items())
        if (!rep.contains(key) && key != "properties") rep[key] = val;
    for (auto& [key, val] : extra.items()) rep[key] = val;
    rep["properties"] = led.json();
    rep["pass"] = led.pass();
    emit(cfg, rep, out);
    return led.pass() ? exit_ok : exit_property;
}

bool displays_at(const Calculus<Rat>& c, const PrintedFormulas& p, Sign sign, const Point& pt)
{
    Mat<Rat> n0 = build_nabla0(c, sign);
    Rat e = sign_value(sign);
    for (std::size_t i = 0; i < 4; ++i) {
        Vec<Rat> v = evaluate(p.nabla0[i].value(), pt);
        for (auto& x : v) x *= e;
        if (v != n0.column(i)) return false;
    }
    return true;
}

bool decomposition_at(const Calculus<Rat>& c, const PrintedDecomposition& d, const Point& pt)
{
    auto [i, j] = parse_pair_label(d.vector);
    Vec<Rat> x(16);
    x[pair_index(i, j)] = 1;
    std::map<std::string, Vec<Rat>> groups;
    Vec<Rat> total(16);
    for (auto& part : d.parts) {
        Vec<Rat> v = evaluate(part.v.value(), pt);
        auto& g = groups.try_emplace(part.group, Vec<Rat>(16)).first->second;
        for (std::size_t a = 0; a < 16; ++a) {
            g[a] += v[a];
            total[a] += v[a];
        }
    }
    if (total != x) return false;
    for (auto& [name, v] : groups) {
        const Mat<Rat>& proj = name == "sym" ? c.br.p1 : name == "minus_q2" ? c.br.p2 : c.br.p3;
        if (proj * x != v) return false;
    }
    return true;
}

int verify_eval(const RunConfig& cfg, std::ostream& out)
{
    Loaded l = load(cfg);
    auto basis = metric_basis(l.calc);
    std::optional<ExampleMetric> ex;
    try {
        ex = example_metric(basis);
    } catch (const SingularMetric&) {
    }

    std::vector<std::string> names;
    std::map<std::string, bool> ok;
    auto add = [&](const std::string& n, bool v) {
        if (!ok.count(n)) {
            names.push_back(n);
            ok[n] = true;
        }
        ok[n] = ok[n] && v;
    };
    ojson points = ojson::array();
    for (int u = 2; u <= 6; ++u) {
        Point pt = Point::pythagorean(Rat(u), cfg.t0, cfg.k0);
        points.push_back({{"u", u}, {"q", rat_str(pt.q)}, {"s", rat_str(pt.s)}});
        Calculus<Rat> c = make_calculus(evaluate(l.calc.data, pt));
        add("minimal_polynomial", check_minimal_polynomial(c.br.sigma, c.data.q).pass());
        add("braid_equation", braid_check(c.br.sigma).pass);
        add("psym_equals_eigenprojector", build_psym(c.br.sigma, c.data.q) == c.br.p1);
        add("projectors_complete", projectors_complete(c.br));
        add("nabla0_displays", displays_at(c, l.printed, cfg.sign, pt));
        for (auto& d : l.printed.decompositions) add("decomposition " + d.vector, decomposition_at(c, d, pt));
        Mat<Rat> n0 = build_nabla0(c, cfg.sign);
        add("torsion_nabla0_zero", torsion(c, n0, cfg.sign).is_zero());
        auto rb = metric_basis(c);
        bool inv = rb.size() == 10;
        for (auto& g : rb) inv = inv && sigma_invariant(c, g);
        add("metric_basis_sigma_invariant", inv);
        Mat<Rat> p23 = psym23_matrix(c);
        if (ex) {
            Mat<Rat> g = evaluate(ex->g, pt);
            add("example_metric_nondegenerate", !is_zero(det(g)));
            try {
                auto lc = levi_civita(c, g, cfg.sign);
                add("levi_civita_torsion_zero", lc.torsion.is_zero());
                add("levi_civita_compatible", lc.pi0.is_zero());
            } catch (const std::domain_error&) {
                add("levi_civita_torsion_zero", false);
                add("levi_civita_compatible", false);
            }
            add("phi_kernel_trivial", rank(phi_g(c, p23, g)) == 40);
        } else {
            add("example_metric_nondegenerate", false);
        }
        Mat<Rat> m = build_constraint_system(c);
        add("constraint_system_equals_scaled_psym23", constraint_identity_holds(c, m, p23));
        add("constraint_kernel_trivial", rank(m) == 40);
        add("psym23_det_nonzero", !is_zero(det(p23)));
    }

    Ledger led;
    for (auto& n : names) led.add(n, ok[n]);
    ojson rep = header("verify", cfg, l);
    rep["mode"] = "eval";
    rep["points"] = points;
    rep["properties"] = led.json();
    rep["pass"] = led.pass();
    emit(cfg, rep, out);
    return led.pass() ? exit_ok : exit_property;
}

Mat<FieldElem> read_metric(const RunConfig& cfg, const FieldElem& t_binding)
{
    std::ifstream in(cfg.metric_path);
    if (!in) throw ConfigError("cannot open metric file " + cfg.metric_path);
    Mat<FieldElem> g;
    try {
        g = mat_from_json(nlohmann::json::parse(in), Bindings::with_t(t_binding));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed metric file: ") + e.what());
    } catch (const ParseError& e) {
        throw ConfigError(std::string("malformed metric entry: ") + e.what());
    }
    if (g.rows != 4 || g.cols != 4) throw ConfigError("metric must be a 4x4 grid");
    g.row_labels = g.col_labels = e_labels();
    return g;
}

void label_matrix(Mat<FieldElem>& m, const std::vector<std::string>& rows, const std::vector<std::string>& cols)
{
    m.row_labels = rows;
    m.col_labels = cols;
}

}  // namespace

std::string resolve_variant(const std::string& path, const std::string& requested, const Rat& t0, const Rat& k0)
{
    std::vector<std::string> vs = table_variants(path);
    if (vs.empty()) throw DataValidationError("table file lists no variants");
    if (requested != "auto") {
        if (std::find(vs.begin(), vs.end(), requested) == vs.end())
            throw ConfigError("unknown variant '" + requested + "'");
        return requested;
    }
    Point pt = Point::pythagorean(Rat(2), t0, k0);
    for (auto& v : vs) {
        try {
            Calculus<Rat> c = make_calculus(evaluate(load_eigen_data(path, v), pt));
            if (braid_check(c.br.sigma).pass) return v;
        } catch (const DependentEigenvectors&) {
        }
    }
    return vs.front();
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream&)
{
    return cfg.mode == "eval" ? verify_eval(cfg, out) : verify_symbolic(cfg, out);
}

int cmd_certify(const RunConfig& cfg, std::ostream& out, std::ostream&)
{
    Loaded l = load(cfg);
    CertifyOptions opt{l.variant, cfg.sign, cfg.t0, cfg.k0};
    Certificate cert = certify(l.calc, l.printed, l.t_binding, opt);
    ojson rep = header("certify", cfg, l);
    ojson cj = to_json(cert);
    for (auto& [key, val] : cj.items())
        if (!rep.contains(key)) rep[key] = val;
    emit(cfg, rep, out);
    return exit_ok;
}

int cmd_lc(const RunConfig& cfg, std::ostream& out, std::ostream&)
{
    Loaded l = load(cfg);
    const auto& c = l.calc;
    Mat<FieldElem> g = read_metric(cfg, l.t_binding);
    if (!sigma_invariant(c, g)) throw SingularMetric("metric is not sigma-invariant");
    LeviCivita<FieldElem> lc = levi_civita(c, g, cfg.sign);
    bool tors = lc.torsion.is_zero(), comp = lc.pi0.is_zero();
    bool unique = rank(phi_g(c, psym23_matrix(c), g)) == 40;

    ojson rep = header("lc", cfg, l);
    rep["metric_class"] = "sigma-invariant nondegenerate";
    rep["metric"] = to_json(g);
    rep["nabla"] = to_json(lc.nabla);
    rep["correction"] = to_json(lc.correction);
    rep["verification"] = {{"torsion_zero", tors}, {"pi0_zero", comp}, {"phi_kernel_trivial", unique}};
    emit(cfg, rep, out);
    return tors && comp && unique ? exit_ok : exit_property;
}

int cmd_export(const RunConfig& cfg, std::ostream& out, std::ostream&)
{
    Loaded l = load(cfg);
    const auto& c = l.calc;
    ojson rep = header("export", cfg, l);
    rep["operator"] = cfg.export_what;
    if (cfg.export_what == "metric-basis") {
        ojson els = ojson::array();
        for (auto g : metric_basis(c)) {
            label_matrix(g, e_labels(), e_labels());
            els.push_back(to_json(g));
        }
        rep["dimension"] = els.size();
        rep["elements"] = els;
    } else {
        Mat<FieldElem> m;
        if (cfg.export_what == "sigma") {
            m = c.br.sigma;
            label_matrix(m, pair_labels(), pair_labels());
        } else if (cfg.export_what == "psym") {
            m = c.psym;
            label_matrix(m, pair_labels(), pair_labels());
        } else {
            m = build_nabla0(c, cfg.sign);
            label_matrix(m, pair_labels(), e_labels());
        }
        ojson mj = to_json(m);
        for (auto& [key, val] : mj.items()) rep[key] = val;
    }
    emit(cfg, rep, out);
    return exit_ok;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    std::string sign = "plus", t = "2", k = "3";
    CLI::App app("Exact symbolic checks for the 4D bicovariant calculus on SU_q(2)", "qcalc");
    app.require_subcommand(1);

    auto common = [&](CLI::App* sub) {
        sub->add_option("--sign", sign, "calculus sign")->check(CLI::IsMember({"plus", "minus"}));
        sub->add_option("--t", t, "value of t as a rational p/q");
        sub->add_option("--k", k, "value of k as a rational p/q");
        sub->add_option("--variant", cfg.variant, "eigen table variant")
            ->check(CLI::IsMember({"auto", "paper", "corrected", "reconstructed"}));
        sub->add_option("--out", cfg.out, "output path, - for standard output");
        sub->add_option("--data", cfg.data_dir, "directory holding eigen_tables.json and printed_formulas.json");
    };
    auto* verify = app.add_subcommand("verify", "run the full property ledger");
    common(verify);
    verify->add_option("--mode", cfg.mode, "symbolic or eval")->check(CLI::IsMember({"symbolic", "eval"}));
    auto* certify_cmd = app.add_subcommand("certify", "determinant certificate and exceptional q");
    common(certify_cmd);
    auto* lc = app.add_subcommand("lc", "Levi-Civita connection for a metric");
    common(lc);
    lc->add_option("metric", cfg.metric_path, "4x4 JSON grid of field elements")->required();
    auto* exp = app.add_subcommand("export", "write an operator as JSON");
    common(exp);
    exp->add_option("what", cfg.export_what, "sigma, psym, nabla0 or metric-basis")
        ->required()
        ->check(CLI::IsMember({"sigma", "psym", "nabla0", "metric-basis"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? exit_ok : exit_config;
    }

    try {
        cfg.sign = sign == "minus" ? Sign::minus : Sign::plus;
        cfg.t0 = parse_rational(t);
        cfg.k0 = parse_rational(k);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_config;
    }
    if (sgn(cfg.t0) == 0 || sgn(cfg.k0) == 0) {
        err << "error: t and k must be nonzero\n";
        return exit_config;
    }

    try {
        if (verify->parsed()) return cmd_verify(cfg, out, err);
        if (certify_cmd->parsed()) return cmd_certify(cfg, out, err);
        if (lc->parsed()) return cmd_lc(cfg, out, err);
        return cmd_export(cfg, out, err);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const InterpolationInconsistent& e) {
        err << "error: " << e.what() << "\n";
        return exit_property;
    } catch (const DataValidationError& e) {
        err << "data validation failed: " << e.what() << "\n";
        return exit_data;
    } catch (const BasisChangeFailure& e) {
        err << "data validation failed: " << e.what() << "\n";
        return exit_data;
    } catch (const SingularMetric& e) {
        err << "singular metric: " << e.what() << "\n";
        return exit_singular_metric;
    } catch (const PhiSingular& e) {
        err << "singular compatibility map: " << e.what() << "\n";
        return exit_phi_singular;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_property;
    }
}

}  // namespace qcalc
