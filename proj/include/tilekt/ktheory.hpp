#pragma once

#include "tilekt/chaincx.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tilekt {

struct KPair {
    GroupExpression k0, k1;
    std::vector<std::string> notes;
};

// h from stable_cohomology.
KPair k_stable(const HomologyResult& h, int dim);
// h from stable_transpose_homology.
KPair k_unstable(const HomologyResult& h, int dim);

struct AsymptoticK {
    std::optional<GroupExpression> k0, k1;
    std::vector<std::string> notes;
};

// Kunneth products; refuses (empty groups plus a note) when an operand is
// unresolved or, in dimension 2, has torsion.
AsymptoticK k_asymptotic(const KPair& s, const KPair& u, int dim);

struct KTheoryReport {
    int dim = 1;
    GroupExpression k0_s, k1_s, k0_u, k1_u;
    std::optional<GroupExpression> k0_a, k1_a;
    std::vector<std::string> notes;
};

KTheoryReport assemble_report(const HomologyResult& stable, const HomologyResult& transpose, int dim,
                              bool with_asymptotic = true);

Diagnostics torsion_placement_check(const KTheoryReport& r);

}  // namespace tilekt
