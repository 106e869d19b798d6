#pragma once

#include "qcalc/connection.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qcalc {

using Triple = std::array<int, 3>;  // 1-based (i,j,k)

struct PrintedVector {
    FieldElem prefactor;
    std::map<std::string, FieldElem> terms;  // pair label -> coefficient

    Vec<FieldElem> value() const;
};

struct PrintedPart {
    std::string group;  // sym, minus_q2 or minus_qm2
    PrintedVector v;
};

struct PrintedDecomposition {
    std::string vector;  // pair label being decomposed
    std::vector<PrintedPart> parts;
};

struct PrintedRow {
    Triple row{};
    std::string text;
    LinForm lhs;
    std::string note;
};

struct PrintedSubsystem {
    std::string label;
    std::vector<Triple> rows;
    std::vector<Unknown> unknowns;
    std::optional<FieldElem> paper_value;
    bool exact = false;  // must match up to sign only
    std::vector<std::string> printed_text;
    std::vector<LinForm> printed;
};

struct PrintedFormulas {
    std::vector<PrintedVector> nabla0;  // upper sign, one per w1..w4
    std::vector<PrintedDecomposition> decompositions;
    std::vector<PrintedRow> lemma_rows;
    std::vector<PrintedSubsystem> subsystems;
};

std::string default_printed_path();
// t is substituted through the bindings, so variants that fix t see the same text.
PrintedFormulas load_printed(const std::string& path, const Bindings& b);

std::string triple_label(const Triple& t);

// Matrix of the printed linear forms over the given unknowns.
Mat<FieldElem> printed_matrix(const PrintedSubsystem& s);

struct DisplayCheck {
    std::string column;
    bool match = false;
    Vec<FieldElem> computed, printed;
};

std::vector<DisplayCheck> check_nabla0_displays(const Calculus<FieldElem>& c, const PrintedFormulas& p, Sign sign);

struct DecompositionCheck {
    std::string vector;
    bool sums_to_vector = false;
    std::map<std::string, bool> group_match;  // group -> equals its eigenprojection
    bool pass() const;
};

DecompositionCheck check_decomposition(const Calculus<FieldElem>& c, const PrintedDecomposition& d);

}  // namespace qcalc
