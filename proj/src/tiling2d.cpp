#include "tilekt/tiling2d.hpp"

#include "tilekt/tiling1d.hpp"

#include <deque>
#include <set>
#include <stdexcept>

namespace tilekt {

namespace {

using Patch = std::vector<std::vector<std::size_t>>;  // [row][col], row 0 at the bottom

Patch expand(const BlockSubstitution2D& s, const Patch& p)
{
    const std::size_t l = s.lambda;
    const std::size_t rows = p.size(), cols = rows ? p[0].size() : 0;
    Patch out(rows * l, std::vector<std::size_t>(cols * l));
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            for (std::size_t j = 0; j < l; ++j)
                for (std::size_t i = 0; i < l; ++i) out[r * l + j][c * l + i] = s.at(p[r][c], i, j);
    return out;
}

std::string label(const BlockSubstitution2D& s, std::size_t f) { return s.faces[f]; }

}  // namespace

BlockSubstitution2D make_block_substitution(const std::vector<std::string>& faces, std::size_t lambda,
                                            const std::map<std::string, std::vector<std::vector<std::string>>>& rules)
{
    if (faces.empty()) throw std::invalid_argument("face list is empty");
    if (lambda < 2) throw std::invalid_argument("lambda must be at least 2");
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < faces.size(); ++i)
        if (!index.emplace(faces[i], i).second) throw std::invalid_argument("face '" + faces[i] + "' repeated");
    for (const auto& [key, grid] : rules)
        if (!index.count(key)) throw std::invalid_argument("rule for unknown face '" + key + "'");
    BlockSubstitution2D s;
    s.faces = faces;
    s.lambda = lambda;
    for (const auto& f : faces) {
        auto it = rules.find(f);
        if (it == rules.end()) throw std::invalid_argument("no rule for face '" + f + "'");
        const auto& grid = it->second;
        if (grid.size() != lambda) throw std::invalid_argument("rule for '" + f + "' does not have lambda rows");
        std::vector<std::vector<std::size_t>> g;
        for (const auto& row : grid) {
            if (row.size() != lambda) throw std::invalid_argument("rule for '" + f + "' has a row of the wrong length");
            std::vector<std::size_t> r;
            for (const auto& name : row) {
                auto jt = index.find(name);
                if (jt == index.end()) throw std::invalid_argument("rule for '" + f + "' uses unknown face '" + name + "'");
                r.push_back(jt->second);
            }
            g.push_back(std::move(r));
        }
        s.grids.push_back(std::move(g));
    }
    require_primitive(face_substitution_matrix(s));
    return s;
}

IntMatrix face_substitution_matrix(const BlockSubstitution2D& s)
{
    IntMatrix m(s.faces.size(), s.faces.size());
    for (std::size_t f = 0; f < s.faces.size(); ++f)
        for (const auto& row : s.grids[f])
            for (std::size_t c : row) m(c, f) += 1;
    return m;
}

StableCells2D stable_cells_2d(const BlockSubstitution2D& s)
{
    std::set<Pair> vset, hset;
    std::set<Block> bset;
    std::deque<Patch> queue;
    // Every pair or block found is queued as a patch to be substituted again.
    auto harvest = [&](const Patch& p) {
        for (std::size_t r = 0; r < p.size(); ++r)
            for (std::size_t c = 0; c < p[r].size(); ++c) {
                if (c + 1 < p[r].size() && vset.insert({p[r][c], p[r][c + 1]}).second)
                    queue.push_back({{p[r][c], p[r][c + 1]}});
                if (r + 1 < p.size() && hset.insert({p[r][c], p[r + 1][c]}).second)
                    queue.push_back({{p[r][c]}, {p[r + 1][c]}});
                if (r + 1 < p.size() && c + 1 < p[r].size() &&
                    bset.insert({p[r][c], p[r][c + 1], p[r + 1][c], p[r + 1][c + 1]}).second)
                    queue.push_back({{p[r][c], p[r][c + 1]}, {p[r + 1][c], p[r + 1][c + 1]}});
            }
    };
    for (std::size_t f = 0; f < s.faces.size(); ++f) harvest(expand(s, {{f}}));
    while (!queue.empty()) {
        Patch p = std::move(queue.front());
        queue.pop_front();
        harvest(expand(s, p));
    }
    StableCells2D out;
    for (std::size_t f = 0; f < s.faces.size(); ++f) out.faces.push_back(f);
    out.v_edges.assign(vset.begin(), vset.end());
    out.h_edges.assign(hset.begin(), hset.end());
    out.vertices.assign(bset.begin(), bset.end());
    return out;
}

StableComplex build_complex_2d(const BlockSubstitution2D& s)
{
    const StableCells2D cells = stable_cells_2d(s);
    const std::size_t sf = cells.faces.size();
    const std::size_t nv = cells.v_edges.size();
    const std::size_t se = nv + cells.h_edges.size();
    const std::size_t sv = cells.vertices.size();
    const std::size_t l = s.lambda;

    std::map<Pair, std::size_t> vidx, hidx;
    std::map<Block, std::size_t> bidx;
    for (std::size_t i = 0; i < nv; ++i) vidx.emplace(cells.v_edges[i], i);
    for (std::size_t i = 0; i < cells.h_edges.size(); ++i) hidx.emplace(cells.h_edges[i], nv + i);
    for (std::size_t i = 0; i < sv; ++i) bidx.emplace(cells.vertices[i], i);
    auto find = [](const auto& idx, const auto& key) {
        auto it = idx.find(key);
        if (it == idx.end()) throw std::logic_error("stable cell closure is incomplete");
        return it->second;
    };
    auto v_edge = [&](std::size_t a, std::size_t b) { return find(vidx, Pair{a, b}); };
    auto h_edge = [&](std::size_t a, std::size_t b) { return find(hidx, Pair{a, b}); };

    StableComplex c;
    c.dim = 2;
    for (std::size_t f = 0; f < sf; ++f) c.face_labels.push_back(label(s, f));
    // Vertical edge "l|r" separates l (left) from r (right); horizontal edge "b^t" has b below t.
    for (const auto& e : cells.v_edges) c.edge_labels.push_back(label(s, e[0]) + "|" + label(s, e[1]));
    for (const auto& e : cells.h_edges) c.edge_labels.push_back(label(s, e[0]) + "^" + label(s, e[1]));
    for (const auto& v : cells.vertices)
        c.vertex_labels.push_back(label(s, v[0]) + "," + label(s, v[1]) + "/" + label(s, v[2]) + "," + label(s, v[3]));

    c.delta0 = IntMatrix(se, sv);
    c.delta1 = IntMatrix(sf, se);
    c.wv = IntMatrix(sv, sv);
    c.we = IntMatrix(se, se);
    c.wf = IntMatrix(sf, sf);

    for (std::size_t j = 0; j < sv; ++j) {
        const auto [sw, se_, nw, ne] = cells.vertices[j];
        c.delta0(h_edge(sw, nw), j) += 1;
        c.delta0(v_edge(sw, se_), j) += 1;
        c.delta0(h_edge(se_, ne), j) -= 1;
        c.delta0(v_edge(nw, ne), j) -= 1;

        const Patch p = expand(s, {{sw, se_}, {nw, ne}});
        for (std::size_t r = 0; r < l; ++r)
            for (std::size_t q = 0; q < l; ++q)
                c.wv(find(bidx, Block{p[r][q], p[r][q + 1], p[r + 1][q], p[r + 1][q + 1]}), j) += 1;
    }
    for (std::size_t k = 0; k < nv; ++k) {
        const auto [left, right] = cells.v_edges[k];
        c.delta1(left, k) += 1;
        c.delta1(right, k) -= 1;
        const Patch p = expand(s, {{left, right}});
        for (std::size_t q = 0; q < l; ++q) c.we(v_edge(p[0][q], p[0][q + 1]), k) += 1;
    }
    for (std::size_t k = 0; k < cells.h_edges.size(); ++k) {
        const auto [bottom, top] = cells.h_edges[k];
        c.delta1(top, nv + k) += 1;
        c.delta1(bottom, nv + k) -= 1;
        const Patch p = expand(s, {{bottom}, {top}});
        for (std::size_t r = 0; r < l; ++r) c.we(h_edge(p[r][0], p[r + 1][0]), nv + k) += 1;
    }
    for (std::size_t f = 0; f < sf; ++f) c.wf(s.at(f, 0, 0), f) += 1;
    return c;
}

}  // namespace tilekt
