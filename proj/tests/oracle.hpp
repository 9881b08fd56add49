#pragma once

// Test-only reference computations. Deliberately naive and independent of the
// library algorithms they check.

#include "tilekt/matrix.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using tilekt::IntMatrix;
using tilekt::Integer;

// Laplace expansion; fine for the small sizes used in tests.
inline Integer det(const IntMatrix& a)
{
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    if (n == 1) return a(0, 0);
    Integer sum = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (a(0, j) == 0) continue;
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r)
            for (std::size_t c = 0, cc = 0; c < n; ++c)
                if (c != j) minor(r - 1, cc++) = a(r, c);
        const Integer term = a(0, j) * det(minor);
        sum += (j % 2 ? -term : term);
    }
    return sum;
}

inline void subsets(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f)
{
    std::vector<std::size_t> idx(k);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
        if (pos == k) {
            f(idx);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            idx[pos] = i;
            rec(pos + 1, i + 1);
        }
    };
    rec(0, 0);
}

// Invariant factors from determinantal divisors: d_k = D_k / D_{k-1}, where
// D_k is the gcd of all k x k minors.
inline std::vector<Integer> invariant_factors(const IntMatrix& a)
{
    std::vector<Integer> out;
    Integer prev = 1;
    for (std::size_t k = 1; k <= std::min(a.rows(), a.cols()); ++k) {
        Integer g = 0;
        subsets(a.rows(), k, [&](const std::vector<std::size_t>& rows) {
            subsets(a.cols(), k, [&](const std::vector<std::size_t>& cols) {
                IntMatrix m(k, k);
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) m(i, j) = a(rows[i], cols[j]);
                g = gcd(g, det(m));
            });
        });
        if (g == 0) break;
        out.push_back(g / prev);
        prev = g;
    }
    return out;
}

inline IntMatrix mul(const IntMatrix& a, const IntMatrix& b)
{
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    return c;
}

// Rank over Q by fraction-free elimination.
inline std::size_t rank(IntMatrix a)
{
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c) == 0) ++p;
        if (p == a.rows()) continue;
        for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(p, j));
        for (std::size_t i = r + 1; i < a.rows(); ++i) {
            const Integer f = a(i, c), g = a(r, c);
            for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = a(i, j) * g - a(r, j) * f;
        }
        ++r;
    }
    return r;
}

// Rank of the direct limit: rank of A^n.
inline std::size_t eventual_rank(const IntMatrix& a)
{
    IntMatrix p = IntMatrix::identity(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) p = mul(p, a);
    return oracle::rank(p);
}

// Random unimodular matrix as a product of elementary operations.
inline IntMatrix random_unimodular(std::size_t n, std::mt19937_64& rng, int steps = 6, int bound = 2)
{
    IntMatrix u = IntMatrix::identity(n);
    if (n == 0) return u;
    if (n < 2) {
        if (rng() % 2) u(0, 0) = -1;
        return u;
    }
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<int> coef(-bound, bound);
    for (int s = 0; s < steps; ++s) {
        const std::size_t i = pick(rng), j = pick(rng);
        if (i == j) {
            for (std::size_t c = 0; c < n; ++c) u(i, c) = -u(i, c);
            continue;
        }
        const int k = coef(rng);
        for (std::size_t c = 0; c < n; ++c) u(i, c) += k * u(j, c);
    }
    return u;
}

// Every length-n window of omega^k(seed) for growing k; a brute-force
// enumeration of legal factors of a primitive substitution.
inline std::set<std::string> windows_1d(const std::map<char, std::string>& rules, std::size_t n, std::size_t min_length = 20000)
{
    std::set<std::string> out;
    for (const auto& [seed, img] : rules) {
        std::string w(1, seed);
        while (w.size() < min_length) {
            std::string next;
            for (char c : w) next += rules.at(c);
            w = next;
        }
        for (std::size_t i = 0; i + n <= w.size(); ++i) out.insert(w.substr(i, n));
    }
    return out;
}

// Patches of a 2x2 block substitution after repeated substitution, rows bottom first.
using Grid = std::vector<std::string>;
inline std::map<char, Grid> grids_2d(const std::map<char, std::vector<std::string>>& rules, int steps)
{
    std::map<char, Grid> out;
    for (const auto& [seed, r] : rules) {
        Grid g = {std::string(1, seed)};
        for (int s = 0; s < steps; ++s) {
            const std::size_t l = rules.begin()->second.size();
            Grid next(g.size() * l, std::string(g[0].size() * l, ' '));
            for (std::size_t row = 0; row < g.size(); ++row)
                for (std::size_t col = 0; col < g[row].size(); ++col)
                    for (std::size_t j = 0; j < l; ++j)
                        for (std::size_t i = 0; i < l; ++i) next[row * l + j][col * l + i] = rules.at(g[row][col])[j][i];
            g = next;
        }
        out[seed] = g;
    }
    return out;
}

}  // namespace oracle
