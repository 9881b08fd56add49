#include "tilekt/tiling1d.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <stdexcept>

namespace tilekt {

std::string Substitution1D::spell(const Word& w, const char* sep) const
{
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += sep;
        out += letters.at(w[i]);
    }
    return out;
}

IntMatrix substitution_matrix(const Substitution1D& s)
{
    IntMatrix m(s.size(), s.size());
    for (std::size_t j = 0; j < s.size(); ++j)
        for (std::size_t i : s.rules[j]) m(i, j) += 1;
    return m;
}

void require_primitive(const IntMatrix& m)
{
    if (!m.square() || m.rows() == 0) throw std::invalid_argument("substitution matrix must be square and nonempty");
    const std::size_t n = m.rows();
    const std::size_t bound = n * n - 2 * n + 2;
    using Pattern = std::vector<std::vector<char>>;
    Pattern base(n, std::vector<char>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) base[i][j] = m(i, j) > 0;
    Pattern cur = base;
    for (std::size_t k = 1;; ++k) {
        bool positive = true;
        for (const auto& row : cur)
            positive = positive && std::all_of(row.begin(), row.end(), [](char c) { return c != 0; });
        if (positive) return;
        if (k == bound) break;
        Pattern next(n, std::vector<char>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l)
                if (cur[i][l])
                    for (std::size_t j = 0; j < n; ++j) next[i][j] |= base[l][j];
        cur = std::move(next);
    }
    throw std::invalid_argument("substitution is not primitive: no power M^k with k <= " + std::to_string(bound) +
                                " (Wielandt bound) is strictly positive");
}

Substitution1D make_substitution_1d(const std::vector<std::string>& letters,
                                    const std::map<std::string, std::string>& rules)
{
    if (letters.empty()) throw std::invalid_argument("alphabet is empty");
    Substitution1D s;
    s.letters = letters;
    std::map<char, std::size_t> index;
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (letters[i].size() != 1) throw std::invalid_argument("letter '" + letters[i] + "' is not a single character");
        if (!index.emplace(letters[i][0], i).second) throw std::invalid_argument("letter '" + letters[i] + "' repeated");
    }
    for (const auto& [key, word] : rules)
        if (key.size() != 1 || !index.count(key[0])) throw std::invalid_argument("rule for unknown letter '" + key + "'");
    bool expands = false;
    for (const auto& letter : letters) {
        auto it = rules.find(letter);
        if (it == rules.end()) throw std::invalid_argument("no rule for letter '" + letter + "'");
        if (it->second.empty()) throw std::invalid_argument("rule for '" + letter + "' is empty");
        Word w;
        for (char c : it->second) {
            auto jt = index.find(c);
            if (jt == index.end())
                throw std::invalid_argument("rule for '" + letter + "' uses unknown letter '" + std::string(1, c) + "'");
            w.push_back(jt->second);
        }
        expands = expands || w.size() > 1;
        s.rules.push_back(std::move(w));
    }
    require_primitive(substitution_matrix(s));
    if (!expands) throw std::invalid_argument("substitution does not expand: every rule has length 1");
    return s;
}

Word substitute(const Substitution1D& s, const Word& w)
{
    Word out;
    for (std::size_t x : w) out.insert(out.end(), s.rules[x].begin(), s.rules[x].end());
    return out;
}

std::vector<Word> legal_factors(const Substitution1D& s, std::size_t n)
{
    if (n == 0) return {Word{}};
    // Iterate the first letter until every letter occurs and the word is long enough.
    Word seed{0};
    for (;;) {
        std::set<std::size_t> seen(seed.begin(), seed.end());
        if (seen.size() == s.size() && seed.size() >= n) break;
        seed = substitute(s, seed);
    }
    std::set<Word> found;
    std::deque<Word> queue;
    auto add_factors = [&](const Word& w) {
        for (std::size_t i = 0; i + n <= w.size(); ++i) {
            Word f(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i + n));
            if (found.insert(f).second) queue.push_back(std::move(f));
        }
    };
    add_factors(seed);
    while (!queue.empty()) {
        Word u = std::move(queue.front());
        queue.pop_front();
        add_factors(substitute(s, u));
    }
    return {found.begin(), found.end()};
}

StableCells1D stable_cells_1d(const Substitution1D& s)
{
    StableCells1D c;
    for (std::size_t i = 0; i < s.size(); ++i) c.edges.push_back(i);
    c.vertices = legal_factors(s, 2);
    return c;
}

namespace {

std::map<Word, std::size_t> index_of(const std::vector<Word>& words)
{
    std::map<Word, std::size_t> out;
    for (std::size_t i = 0; i < words.size(); ++i) out.emplace(words[i], i);
    return out;
}

std::size_t lookup(const std::map<Word, std::size_t>& idx, const Word& w, const Substitution1D& s)
{
    auto it = idx.find(w);
    if (it == idx.end()) throw std::logic_error("factor " + s.spell(w) + " missing from the legal factor set");
    return it->second;
}

}  // namespace

StableComplex build_complex_1d(const Substitution1D& s)
{
    const StableCells1D cells = stable_cells_1d(s);
    const auto vidx = index_of(cells.vertices);
    const std::size_t sv = cells.vertices.size();
    const std::size_t se = s.size();

    StableComplex c;
    c.dim = 1;
    c.edge_labels = s.letters;
    for (const auto& v : cells.vertices) c.vertex_labels.push_back(s.spell(v, "."));
    c.delta0 = IntMatrix(se, sv);
    c.delta1 = IntMatrix(0, se);
    c.wv = IntMatrix(sv, sv);
    c.we = IntMatrix(se, se);
    c.wf = IntMatrix(0, 0);

    for (std::size_t e = 0; e < se; ++e) c.we(s.rules[e].front(), e) += 1;
    for (std::size_t j = 0; j < sv; ++j) {
        const std::size_t x = cells.vertices[j][0], y = cells.vertices[j][1];
        c.delta0(x, j) += 1;
        c.delta0(y, j) -= 1;
        const Word& w = s.rules[x];
        for (std::size_t i = 0; i + 1 < w.size(); ++i) c.wv(lookup(vidx, {w[i], w[i + 1]}, s), j) += 1;
        c.wv(lookup(vidx, {w.back(), s.rules[y].front()}, s), j) += 1;
    }
    return c;
}

PerronData perron_data(const Substitution1D& s)
{
    const IntMatrix m = substitution_matrix(s);
    const std::size_t n = m.rows();
    std::vector<double> v(n, 1.0), next(n);
    double lambda = 0;
    for (int it = 0; it < 100000; ++it) {
        // Tile lengths satisfy lambda * |j| = sum_i M(i, j) |i|.
        for (std::size_t j = 0; j < n; ++j) {
            next[j] = 0;
            for (std::size_t i = 0; i < n; ++i) next[j] += m(i, j).get_d() * v[i];
        }
        const double norm = *std::max_element(next.begin(), next.end());
        double change = 0;
        for (std::size_t j = 0; j < n; ++j) {
            next[j] /= norm;
            change = std::max(change, std::abs(next[j] - v[j]));
        }
        v.swap(next);
        const bool settled = std::abs(norm - lambda) < 1e-14 * norm && change < 1e-14;
        lambda = norm;
        if (settled) break;
    }
    const double shortest = *std::min_element(v.begin(), v.end());
    for (double& x : v) x /= shortest;
    return {lambda, v};
}

CollaredComplex1D collared_complex_1d(const Substitution1D& s)
{
    CollaredComplex1D c;
    c.vertices = legal_factors(s, 2);
    c.edges = legal_factors(s, 3);
    const auto vidx = index_of(c.vertices);
    const auto eidx = index_of(c.edges);
    const std::size_t cv = c.vertices.size(), ce = c.edges.size();
    c.boundary1 = IntMatrix(cv, ce);
    c.omega_v = IntMatrix(cv, cv);
    c.omega_e = IntMatrix(ce, ce);

    for (std::size_t j = 0; j < cv; ++j) {
        const Word& v = c.vertices[j];
        c.omega_v(lookup(vidx, {s.rules[v[0]].back(), s.rules[v[1]].front()}, s), j) += 1;
    }
    for (std::size_t j = 0; j < ce; ++j) {
        const Word& e = c.edges[j];
        // Edge y in collar x(y)z: final vertex y.z minus initial vertex x.y.
        c.boundary1(lookup(vidx, {e[1], e[2]}, s), j) += 1;
        c.boundary1(lookup(vidx, {e[0], e[1]}, s), j) -= 1;
        const Word image = substitute(s, e);
        const std::size_t first = s.rules[e[0]].size();
        const std::size_t last = first + s.rules[e[1]].size();
        for (std::size_t k = first; k < last; ++k)
            c.omega_e(lookup(eidx, {image[k - 1], image[k], image[k + 1]}, s), j) += 1;
    }
    return c;
}

GroupExpression cech_k0(const CollaredComplex1D& c, const LimitOptions& opts, LimitTrace* trace)
{
    const PresentedGroup g = cokernel(c.boundary1.transpose());
    const IntMatrix m = induced_map(c.omega_e.transpose(), g, g);
    return limit_presented(m, g, opts, trace);
}

CollaredMaps1D collared_maps_1d(const StableComplex& stable, const CollaredComplex1D& collared)
{
    const std::size_t se = stable.se(), sv = stable.sv();
    const std::size_t cv = collared.vertices.size(), ce = collared.edges.size();
    // Stable vertices coincide with collared vertices in one dimension.
    if (sv != cv) throw std::invalid_argument("stable and collared vertex sets differ");
    CollaredMaps1D m{IntMatrix(se, cv), IntMatrix(sv, ce), IntMatrix(cv, se), IntMatrix(ce, sv)};
    std::vector<bool> have_v(se, false), have_e(sv, false);
    for (std::size_t j = 0; j < cv; ++j) {
        const std::size_t y = collared.vertices[j][1];
        m.f_v(y, j) = 1;
        if (!have_v[y]) {
            m.i_v(j, y) = 1;
            have_v[y] = true;
        }
    }
    const auto vidx = index_of(collared.vertices);
    for (std::size_t j = 0; j < ce; ++j) {
        const Word& e = collared.edges[j];
        const std::size_t v = vidx.at({e[1], e[2]});
        m.f_e(v, j) = 1;
        if (!have_e[v]) {
            m.i_e(j, v) = 1;
            have_e[v] = true;
        }
    }
    return m;
}

Diagnostics collared_relations(const StableComplex& st, const CollaredComplex1D& co, const CollaredMaps1D& m)
{
    const IntMatrix neg_d0 = Integer(-1) * st.delta0;
    return {
        matrix_identity("W_E = F_V omega_V i_V", st.we, m.f_v * co.omega_v * m.i_v),
        matrix_identity("W_V = F_E omega_E i_E", st.wv, m.f_e * co.omega_e * m.i_e),
        matrix_identity("-delta0 = F_V boundary1 i_E", neg_d0, m.f_v * co.boundary1 * m.i_e),
        matrix_identity("F_V boundary1 = -delta0 F_E", m.f_v * co.boundary1, neg_d0 * m.f_e),
        matrix_identity("F_V omega_V = W_E F_V", m.f_v * co.omega_v, st.we * m.f_v),
        matrix_identity("F_E omega_E = W_V F_E", m.f_e * co.omega_e, st.wv * m.f_e),
    };
}

Diagnostics forgetful_inclusion_relations(const Substitution1D& s)
{
    const StableComplex st = build_complex_1d(s);
    const CollaredComplex1D co = collared_complex_1d(s);
    return collared_relations(st, co, collared_maps_1d(st, co));
}

PEMaps1D pe_maps_1d(const Substitution1D& s)
{
    const StableCells1D cells = stable_cells_1d(s);
    const auto vidx = index_of(cells.vertices);
    const std::size_t sv = cells.vertices.size(), se = s.size();
    auto primed = [&](std::size_t x) { return s.letters[x] + "'"; };

    PEMaps1D pe;
    // Vertex classes: supertile junctions first, then internal vertices of each supertile.
    std::vector<std::size_t> internal_offset(se);
    for (const auto& v : cells.vertices) pe.vertex_classes.push_back(primed(v[0]) + "." + primed(v[1]));
    for (std::size_t p = 0; p < se; ++p) {
        internal_offset[p] = pe.vertex_classes.size();
        for (std::size_t i = 1; i < s.rules[p].size(); ++i) pe.vertex_classes.push_back(primed(p) + "_v" + std::to_string(i));
    }
    std::vector<std::size_t> edge_offset(se);
    for (std::size_t p = 0; p < se; ++p) {
        edge_offset[p] = pe.edge_classes.size();
        for (std::size_t k = 0; k < s.rules[p].size(); ++k) pe.edge_classes.push_back(primed(p) + "_e" + std::to_string(k));
    }
    const std::size_t nv = pe.vertex_classes.size(), ne = pe.edge_classes.size();
    pe.r0 = IntMatrix(sv, nv);
    pe.g0 = IntMatrix(sv, nv);
    pe.s0 = IntMatrix(nv, sv);
    pe.r1 = IntMatrix(se, ne);
    pe.g1 = IntMatrix(se, ne);
    pe.s1 = IntMatrix(ne, se);

    for (std::size_t j = 0; j < sv; ++j) {
        const std::size_t x = cells.vertices[j][0], y = cells.vertices[j][1];
        pe.r0(lookup(vidx, {s.rules[x].back(), s.rules[y].front()}, s), j) = 1;
        pe.g0(j, j) = 1;
        pe.s0(j, j) = 1;
        for (std::size_t i = 1; i < s.rules[x].size(); ++i) pe.s0(internal_offset[x] + i - 1, j) = 1;
    }
    for (std::size_t p = 0; p < se; ++p) {
        const Word& w = s.rules[p];
        for (std::size_t i = 1; i < w.size(); ++i) pe.r0(lookup(vidx, {w[i - 1], w[i]}, s), internal_offset[p] + i - 1) = 1;
        for (std::size_t k = 0; k < w.size(); ++k) {
            pe.r1(w[k], edge_offset[p] + k) = 1;
            pe.g1(p, edge_offset[p] + k) = 1;
        }
        pe.s1(edge_offset[p], p) = 1;
    }
    return pe;
}

Diagnostics pe_relations(const PEMaps1D& pe, const StableComplex& c)
{
    return {
        matrix_identity("g0 s0 = id", pe.g0 * pe.s0, IntMatrix::identity(c.sv())),
        matrix_identity("g1 s1 = id", pe.g1 * pe.s1, IntMatrix::identity(c.se())),
        matrix_identity("r0 s0 = W_V", pe.r0 * pe.s0, c.wv),
        matrix_identity("r1 s1 = W_E", pe.r1 * pe.s1, c.we),
    };
}

}  // namespace tilekt
