#pragma once

#include "tilekt/chaincx.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace tilekt {

// Unit-square prototiles, each replaced by a lambda x lambda grid.
// grids[f][row][col] with row 0 at the bottom.
struct BlockSubstitution2D {
    std::vector<std::string> faces;
    std::size_t lambda = 2;
    std::vector<std::vector<std::vector<std::size_t>>> grids;

    std::size_t at(std::size_t f, std::size_t col, std::size_t row) const { return grids[f][row][col]; }
};

BlockSubstitution2D make_block_substitution(const std::vector<std::string>& faces, std::size_t lambda,
                                            const std::map<std::string, std::vector<std::vector<std::string>>>& rules);

IntMatrix face_substitution_matrix(const BlockSubstitution2D& s);

using Pair = std::array<std::size_t, 2>;
using Block = std::array<std::size_t, 4>;  // SW, SE, NW, NE

struct StableCells2D {
    std::vector<std::size_t> faces;
    std::vector<Pair> v_edges;  // (left, right)
    std::vector<Pair> h_edges;  // (bottom, top)
    std::vector<Block> vertices;
};

StableCells2D stable_cells_2d(const BlockSubstitution2D& s);

// Stable complex under the bottom-left-child homotopy. Edges are listed
// vertical first, then horizontal.
StableComplex build_complex_2d(const BlockSubstitution2D& s);

}  // namespace tilekt
