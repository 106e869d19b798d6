#include "qcalc/cli.hpp"
#include "qcalc/connection.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace qcalc;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string secs(double s)
{
    std::ostringstream o;
    o.precision(2);
    o << std::fixed << s << " s";
    return o.str();
}

int failures = 0;

void report(int n, bool pass, const std::string& what, const std::string& detail)
{
    if (!pass) ++failures;
    std::cout << "criterion " << n << ": " << (pass ? "PASS" : "FAIL") << "  " << what;
    if (!detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << std::endl;
}

int run(std::vector<std::string> args)
{
    args.insert(args.begin(), "qcalc");
    std::vector<const char*> argv;
    for (auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    return run_cli(int(argv.size()), argv.data(), out, err);
}

bool written(const std::string& path)
{
    std::ifstream f(path);
    if (!f) return false;
    try {
        return !nlohmann::json::parse(f).is_null();
    } catch (const nlohmann::json::exception&) {
        return false;
    }
}

}  // namespace

int main()
{
    const std::string variant = resolve_variant(default_table_path(), "auto", 2, 3);
    std::cout << "variant: " << variant << std::endl;

    auto t0 = Clock::now();
    const FieldElem t_binding = variant_t(default_table_path(), variant);
    const Calculus<FieldElem> c = make_calculus(load_eigen_data(default_table_path(), variant));
    MinimalPolynomialCheck mp = check_minimal_polynomial(c.br.sigma, c.data.q);
    double t1 = since(t0);
    {
        std::ostringstream d;
        d << "dims " << mp.dims[0] << "," << mp.dims[1] << "," << mp.dims[2] << "; " << secs(t1) << " (limit 5 s)";
        bool ok = mp.pass() && mp.dims == std::array<std::size_t, 3>{10, 3, 3} && t1 < 5;
        report(1, ok, "minimal polynomial (x-1)(x+q^2)(x+q^-2), eigenspaces (10,3,3)", d.str());
    }

    t0 = Clock::now();
    BraidResult br = braid_check(c.br.sigma);
    double t2 = since(t0);
    report(2, br.pass && t2 < 60, "braid equation on all 64 triples",
           (br.witness ? "first failing triple " + triple_label(*br.witness) + "; " : std::string()) + secs(t2) +
               " (limit 60 s)");

    report(3, build_psym(c.br.sigma, c.data.q) == c.br.p1, "P_sym formula equals the eigenprojector", "");

    const PrintedFormulas printed = load_printed(default_printed_path(), Bindings::with_t(t_binding));
    {
        std::string detail;
        bool ok = true;
        for (Sign s : {Sign::plus, Sign::minus})
            for (auto& d : check_nabla0_displays(c, printed, s))
                if (!d.match) {
                    ok = false;
                    detail += std::string(detail.empty() ? "" : ", ") + "nabla0 " + d.column + " (" + sign_name(s) + ")";
                }
        for (auto& d : printed.decompositions) {
            DecompositionCheck r = check_decomposition(c, d);
            if (!r.pass()) {
                ok = false;
                detail += std::string(detail.empty() ? "" : ", ") + "decomposition " + r.vector;
            }
        }
        report(4, ok, "nabla0 displays and decomposition identities", ok ? "" : "mismatch: " + detail);
    }

    {
        bool ok = true;
        for (Sign s : {Sign::plus, Sign::minus}) ok = ok && torsion(c, build_nabla0(c, s), s).is_zero();
        report(5, ok, "torsion of nabla0 vanishes for both signs", "");
    }

    const Mat<FieldElem> m = build_constraint_system(c);
    {
        std::string detail;
        bool ok = true;
        for (auto& r : subsystem_determinants(m, printed.subsystems, t_binding)) {
            if (!r.paper_value) continue;
            if (!r.match) {
                ok = false;
                detail += std::string(detail.empty() ? "" : "; ") + r.label + " gives " + r.value.str();
            }
        }
        report(6, ok, "subsystem determinants match the stated values", ok ? "" : "mismatch: " + detail);
    }

    const Mat<FieldElem> p23 = psym23_matrix(c);
    {
        bool id = constraint_identity_holds(c, m, p23);
        std::size_t rk = rank(m);
        report(7, id && rk == 40, "constraint system is (1+q^2)^2 psym23 with trivial kernel",
               "rank " + std::to_string(rk));
    }

    {
        CertifyOptions opt{variant, Sign::plus, 2, 3};
        Certificate cert = certify(c, printed, t_binding, opt);
        UPoly target(std::vector<Rat>{-1, 0, 0, 0, 1, 0, 1, 0, 1});
        bool found = false;
        for (auto& iv : cert.primary.roots)
            if (iv.lo >= Rat(82, 100) && iv.hi <= Rat(83, 100) && iv.hi - iv.lo <= Rat(1, 1000000) &&
                sgn(target(iv.lo)) != sgn(target(iv.hi)))
                found = true;
        bool same = same_roots(cert.primary, cert.secondary);
        std::ostringstream d;
        d << cert.primary.roots.size() << " roots at (t,k)=(" << rat_str(cert.primary.t0) << ","
          << rat_str(cert.primary.k0) << "), " << cert.secondary.roots.size() << " at ("
          << rat_str(cert.secondary.t0) << "," << rat_str(cert.secondary.k0) << ")"
          << (same ? "" : ", t,k-dependent") << "; det psym23 = " << cert.psym23_det.str();
        report(8, found && same && cert.primary.certified, "exceptional q root of q^8+q^6+q^4-1 in (0.82, 0.83)",
               d.str());
    }

    {
        auto basis = metric_basis(c);
        ExampleMetric ex = example_metric(basis);
        bool ok = true;
        for (Sign s : {Sign::plus, Sign::minus}) {
            LeviCivita<FieldElem> lc = levi_civita(c, ex.g, s);
            ok = ok && lc.torsion.is_zero() && lc.pi0.is_zero();
        }
        bool unique = rank(phi_g(c, p23, ex.g)) == 40;
        report(9, ok && unique, "Levi-Civita connection for the example metric", unique ? "" : "phi_g singular");
    }

    {
        namespace fs = std::filesystem;
        std::string dir = QCALC_TEST_TMP;
        std::string vr = dir + "/acceptance_verify.json", cr = dir + "/acceptance_certify.json",
                    er = dir + "/acceptance_eval.json";
        for (auto& p : {vr, cr, er}) fs::remove(p);
        t0 = Clock::now();
        int vcode = run({"verify", "--out", vr});
        int ccode = run({"certify", "--out", cr});
        double sym = since(t0);
        t0 = Clock::now();
        int ecode = run({"verify", "--mode", "eval", "--out", er});
        double ev = since(t0);
        bool done = written(vr) && written(cr) && written(er) && ccode == exit_ok;
        std::ostringstream d;
        d << "symbolic verify+certify " << secs(sym) << " (limit 600 s, exits " << vcode << "," << ccode
          << "); eval " << secs(ev) << " (limit 10 s, exit " << ecode << ")";
        report(10, done && sym < 600 && ev < 10, "end-to-end runtime", d.str());
    }

    std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all criteria passed"))
              << std::endl;
    return failures ? 1 : 0;
}
