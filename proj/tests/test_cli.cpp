#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcalc/cli.hpp"
#include "qcalc/connection.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qcalc;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "qcalc");
    std::vector<const char*> argv;
    for (auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json report(const Run& r) { return nlohmann::json::parse(r.out); }

std::string tmp(const std::string& name) { return std::string(QCALC_TEST_TMP) + "/" + name; }

const std::string example = std::string(QCALC_DATA_DIR) + "/example_metric.json";

}  // namespace

TEST_CASE("configuration errors exit 1")
{
    CHECK(run({"verify", "--t", "0"}).code == exit_config);
    CHECK(run({"verify", "--k", "0"}).code == exit_config);
    CHECK(run({"verify", "--t", "abc"}).code == exit_config);
    CHECK(run({"verify", "--sign", "both"}).code == exit_config);
    CHECK(run({"verify", "--variant", "nope"}).code == exit_config);
    CHECK(run({}).code == exit_config);
    CHECK(run({"lc", tmp("missing_metric.json")}).code == exit_config);
    CHECK(run({"export", "sigma", "--out", "/nonexistent-dir/x.json"}).code == exit_config);
    CHECK(run({"--help"}).code == exit_ok);
}

TEST_CASE("broken data files exit 3")
{
    fs::path dir = tmp("broken_data");
    fs::create_directories(dir);
    fs::copy_file(std::string(QCALC_DATA_DIR) + "/printed_formulas.json", dir / "printed_formulas.json",
                  fs::copy_options::overwrite_existing);
    std::ofstream(dir / "eigen_tables.json") << "{\"format\": \"qcalc-eigen-tables\", \"version\": 1}";
    CHECK(run({"export", "sigma", "--data", dir.string(), "--variant", "reconstructed", "--out", "-"}).code ==
          exit_data);
}

TEST_CASE("singular metric exits 4")
{
    auto c = make_calculus(load_eigen_data(default_table_path(), "reconstructed"));
    Mat<FieldElem> g = metric_basis(c)[0];
    REQUIRE(det(g).is_zero());
    std::string path = tmp("singular_metric.json");
    std::ofstream(path) << to_json(g).dump();
    CHECK(run({"lc", path, "--out", "-"}).code == exit_singular_metric);
}

TEST_CASE("non sigma-invariant metric is rejected")
{
    std::string path = tmp("identity_metric.json");
    std::ofstream(path) << to_json(Mat<FieldElem>::identity(4)).dump();
    CHECK(run({"lc", path, "--out", "-"}).code == exit_singular_metric);
}

TEST_CASE("lc on the shipped example metric")
{
    for (const char* sign : {"plus", "minus"}) {
        Run r = run({"lc", example, "--sign", sign, "--out", "-"});
        REQUIRE(r.code == exit_ok);
        auto j = report(r);
        CHECK(j["variant"] == "reconstructed");
        CHECK(j["verification"]["torsion_zero"] == true);
        CHECK(j["verification"]["pi0_zero"] == true);
        CHECK(j["verification"]["phi_kernel_trivial"] == true);
        CHECK(j["nabla"]["dimensions"] == nlohmann::json::array({16, 4}));
    }
}

TEST_CASE("export writes labelled matrices")
{
    Run r = run({"export", "sigma", "--out", "-"});
    REQUIRE(r.code == exit_ok);
    auto j = report(r);
    CHECK(j["dimensions"] == nlohmann::json::array({16, 16}));
    CHECK(j["row_basis"].size() == 16);
    r = run({"export", "metric-basis", "--out", "-"});
    REQUIRE(r.code == exit_ok);
    CHECK(report(r)["dimension"] == 10);
    CHECK(run({"export", "nothing"}).code == exit_config);
}

TEST_CASE("report file is written to --out")
{
    std::string path = tmp("nabla0.json");
    fs::remove(path);
    CHECK(run({"export", "nabla0", "--out", path}).code == exit_ok);
    std::ifstream f(path);
    auto j = nlohmann::json::parse(f);
    CHECK(j["dimensions"] == nlohmann::json::array({16, 4}));
}

TEST_CASE("evaluation mode is deterministic and reports failing properties")
{
    Run a = run({"verify", "--mode", "eval", "--out", "-"}), b = run({"verify", "--mode", "eval", "--out", "-"});
    CHECK(a.out == b.out);
    CHECK(a.code == exit_property);
    auto j = report(a);
    CHECK(j["points"].size() == 5);
    CHECK(j["pass"] == false);
    for (auto& p : j["properties"]) {
        std::string n = p["name"];
        bool expected_fail = n == "nabla0_displays" || n.rfind("decomposition", 0) == 0;
        CAPTURE(n);
        CHECK(p["pass"] == !expected_fail);
    }
}

TEST_CASE("printed-table variants fail the braid equation")
{
    Run r = run({"verify", "--mode", "eval", "--variant", "paper", "--out", "-"});
    CHECK(r.code == exit_property);
    auto j = report(r);
    bool braid = true;
    for (auto& p : j["properties"])
        if (p["name"] == "braid_equation") braid = p["pass"].get<bool>();
    CHECK_FALSE(braid);
}

TEST_CASE("certify emits determinants, roots and the lemma diff")
{
    Run r = run({"certify", "--out", "-"});
    REQUIRE(r.code == exit_ok);
    auto j = report(r);
    CHECK(j["determinants"][0]["label"] == "psym23");
    bool seen = false;
    for (auto& d : j["determinants"])
        if (d["label"] == "413/414/431") {
            seen = true;
            CHECK(d["paper_value"] == "2*q^10 - 2*q^4 - 2*q^2 + 2");
        }
    CHECK(seen);
    CHECK(j["exceptional_certificate"]["specializations"].size() == 2);
    CHECK(j["exceptional_certificate"]["t_k_dependent"] == false);
    CHECK(j["lemma_diff"].size() == 64);
}
