#pragma once

#include "tilekt/abgroup.hpp"

#include <string>
#include <vector>

namespace tilekt {

struct Diagnostic {
    std::string check;
    bool ok = true;
    std::string detail;
};

using Diagnostics = std::vector<Diagnostic>;

bool all_ok(const Diagnostics& d);

// Exact equality check with a short listing of the differing entries.
Diagnostic matrix_identity(const std::string& name, const IntMatrix& lhs, const IntMatrix& rhs);

// Stable cochain complex 0 -> Z^sV -> Z^sE -> Z^sF -> 0 with its substitution-homotopy maps.
// Row index is the target cell, column index the source cell.
struct StableComplex {
    int dim = 1;
    std::vector<std::string> vertex_labels;
    std::vector<std::string> edge_labels;
    std::vector<std::string> face_labels;
    IntMatrix delta0;  // sE x sV
    IntMatrix delta1;  // sF x sE (0 x sE in dimension 1)
    IntMatrix wv;      // sV x sV
    IntMatrix we;      // sE x sE
    IntMatrix wf;      // sF x sF (0 x 0 in dimension 1)

    std::size_t sv() const { return vertex_labels.size(); }
    std::size_t se() const { return edge_labels.size(); }
    std::size_t sf() const { return face_labels.size(); }
};

Diagnostics validate(const StableComplex& c);

// One degree before the limit: the finite group, the induced endomorphism
// in reduced coordinates, and the limit with its reduction trace.
struct FiniteLevel {
    PresentedGroup group;
    IntMatrix map;
    LimitTrace trace;
};

struct HomologyResult {
    GroupExpression h0, h1, h2;
    FiniteLevel level0, level1, level2;
};

HomologyResult stable_cohomology(const StableComplex& c, const LimitOptions& opts = {});
HomologyResult stable_transpose_homology(const StableComplex& c, const LimitOptions& opts = {});

Diagnostics uct_decomposition_check(const StableComplex& c);

}  // namespace tilekt
