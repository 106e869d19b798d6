#pragma once

#include "qcalc/certify.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace qcalc {

enum ExitCode : int {
    exit_ok = 0,
    exit_config = 1,
    exit_property = 2,
    exit_data = 3,
    exit_singular_metric = 4,
    exit_phi_singular = 5,
};

struct RunConfig {
    std::string command;
    Sign sign = Sign::plus;
    Rat t0 = 2, k0 = 3;
    std::string variant = "auto";
    std::string out = "./report.json";
    std::string data_dir;
    std::string mode = "symbolic";  // verify only: symbolic or eval
    std::string metric_path;        // lc
    std::string export_what;        // sigma, psym, nabla0, metric-basis
};

// Picks the first variant whose braid check passes at a rational point;
// falls back to the first variant in the file.
std::string resolve_variant(const std::string& table_path, const std::string& requested, const Rat& t0,
                            const Rat& k0);

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_certify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_lc(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_export(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qcalc
