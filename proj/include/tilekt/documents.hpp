#pragma once

#include "tilekt/tiling1d.hpp"
#include "tilekt/tiling2d.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tilekt {

// Malformed input; the message carries the source and a position or JSON path.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class DocumentKind { substitution_1d, block_2d, complex, direct_limit, graded_limit, matrix };

// lim(matrix, Z/t_1 + ... + Z^free), torsion coordinates first.
struct LimitSystem {
    IntMatrix matrix;
    std::vector<Integer> torsion;
    std::size_t free_rank = 0;

    PresentedGroup group() const { return torsion_presentation(torsion, free_rank); }
};

struct Document {
    DocumentKind kind = DocumentKind::direct_limit;
    std::string name;
    std::optional<Substitution1D> substitution;
    std::optional<BlockSubstitution2D> block;
    std::optional<StableComplex> complex;
    std::optional<LimitSystem> limit;
    // graded_limit: one torsion-free system per degree of the stable cohomology.
    int dim = 0;
    std::vector<LimitSystem> degrees;
    IntMatrix matrix;  // matrix documents (any shape)
};

std::string kind_name(DocumentKind k);

// JSON document, or plain matrix text ("rows cols" then entries): a direct limit on Z^n
// when square, a matrix document otherwise.
Document parse_document(const std::string& text, const std::string& source = "<input>");
Document load_document(const std::string& path);

}  // namespace tilekt
