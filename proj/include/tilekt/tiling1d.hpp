#pragma once

#include "tilekt/chaincx.hpp"

#include <map>
#include <string>
#include <vector>

namespace tilekt {

using Word = std::vector<std::size_t>;

// Substitution on single-character letters, stored as index words.
struct Substitution1D {
    std::vector<std::string> letters;
    std::vector<Word> rules;

    std::size_t size() const { return letters.size(); }
    std::string spell(const Word& w, const char* sep = "") const;
};

// Throws std::invalid_argument on unknown or multi-character letters, empty
// words, and non-primitive rules.
Substitution1D make_substitution_1d(const std::vector<std::string>& letters,
                                    const std::map<std::string, std::string>& rules);

// M(i, j) = number of occurrences of letter i in the image of letter j.
IntMatrix substitution_matrix(const Substitution1D& s);

// Throws std::invalid_argument naming the Wielandt bound when no power up to it is positive.
void require_primitive(const IntMatrix& m);

Word substitute(const Substitution1D& s, const Word& w);

// Legal factors of length n, sorted lexicographically by letter index.
std::vector<Word> legal_factors(const Substitution1D& s, std::size_t n);

struct StableCells1D {
    std::vector<std::size_t> edges;
    std::vector<Word> vertices;  // two-letter words x.y
};

StableCells1D stable_cells_1d(const Substitution1D& s);

// Stable complex under the leftmost-child homotopy.
StableComplex build_complex_1d(const Substitution1D& s);

struct PerronData {
    double inflation = 0;
    std::vector<double> lengths;  // shortest tile has length 1
};

PerronData perron_data(const Substitution1D& s);

// Anderson-Putnam collared complex: vertices are legal 2-factors, edges legal 3-factors.
struct CollaredComplex1D {
    std::vector<Word> vertices;
    std::vector<Word> edges;
    IntMatrix boundary1;  // cV x cE
    IntMatrix omega_v;    // cV x cV
    IntMatrix omega_e;    // cE x cE
};

CollaredComplex1D collared_complex_1d(const Substitution1D& s);

// K0(U) computed as lim(coker boundary1^t, omega_e^t).
GroupExpression cech_k0(const CollaredComplex1D& c, const LimitOptions& opts = {}, LimitTrace* trace = nullptr);

struct CollaredMaps1D {
    IntMatrix f_v;  // sE x cV, x.y -> y
    IntMatrix f_e;  // sV x cE, xyz -> y.z
    IntMatrix i_v;  // cV x sE, y -> first legal x.y
    IntMatrix i_e;  // cE x sV, y.z -> first legal xyz
};

CollaredMaps1D collared_maps_1d(const StableComplex& stable, const CollaredComplex1D& collared);

// The six stable/collared identities. With the boundary convention used for
// both complexes the two identities involving the coboundary carry a sign.
Diagnostics collared_relations(const StableComplex& stable, const CollaredComplex1D& collared,
                               const CollaredMaps1D& maps);
Diagnostics forgetful_inclusion_relations(const Substitution1D& s);

// Chain maps between the stable complex and its one-step refinement.
struct PEMaps1D {
    std::vector<std::string> vertex_classes;  // junction classes, then internal ones
    std::vector<std::string> edge_classes;    // (parent, child index)
    IntMatrix r0, r1, g0, g1, s0, s1;
};

PEMaps1D pe_maps_1d(const Substitution1D& s);

Diagnostics pe_relations(const PEMaps1D& pe, const StableComplex& c);

}  // namespace tilekt
