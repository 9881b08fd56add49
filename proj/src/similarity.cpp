#include "tilekt/abgroup.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

namespace tilekt {

IntMatrix lll_reduce(const IntMatrix& basis)
{
    const std::size_t n = basis.rows();
    const std::size_t d = basis.cols();
    std::vector<std::vector<Integer>> b(d, std::vector<Integer>(n));
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < n; ++i) b[j][i] = basis(i, j);

    auto dot = [n](const auto& x, const auto& y) {
        typename std::decay_t<decltype(x)>::value_type s = 0;
        for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
        return s;
    };
    std::vector<std::vector<Rational>> bstar(d, std::vector<Rational>(n));
    std::vector<std::vector<Rational>> mu(d, std::vector<Rational>(d));
    std::vector<Rational> norm2(d);
    auto gram_schmidt = [&]() {
        for (std::size_t j = 0; j < d; ++j) {
            for (std::size_t i = 0; i < n; ++i) bstar[j][i] = Rational(b[j][i]);
            for (std::size_t k = 0; k < j; ++k) {
                Rational num = 0;
                for (std::size_t i = 0; i < n; ++i) num += Rational(b[j][i]) * bstar[k][i];
                mu[j][k] = sgn(norm2[k]) == 0 ? Rational(0) : Rational(num / norm2[k]);
                for (std::size_t i = 0; i < n; ++i) bstar[j][i] -= mu[j][k] * bstar[k][i];
            }
            norm2[j] = dot(bstar[j], bstar[j]);
        }
    };
    gram_schmidt();
    const Rational delta(3, 4);
    std::size_t k = 1;
    while (k < d) {
        for (std::size_t jj = k; jj-- > 0;) {
            Rational m = mu[k][jj];
            // Nearest integer to mu.
            Integer q;
            Rational shifted = m + Rational(1, 2);
            mpz_fdiv_q(q.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
            if (q != 0) {
                for (std::size_t i = 0; i < n; ++i) b[k][i] -= q * b[jj][i];
                gram_schmidt();
            }
        }
        if (norm2[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * norm2[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            gram_schmidt();
            k = std::max<std::size_t>(k - 1, 1);
        }
    }
    IntMatrix out(n, d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < n; ++i) out(i, j) = b[j][i];
    return out;
}

std::optional<IntMatrix> z_similarity_certificate(const IntMatrix& a, const IntMatrix& b)
{
    if (!a.square() || !b.square() || a.rows() != b.rows())
        throw std::invalid_argument("z_similarity_certificate: matrices must be square of equal size");
    if (characteristic_polynomial(a) != characteristic_polynomial(b)) return std::nullopt;
    const std::size_t n = a.rows();
    if (a == b) return IntMatrix::identity(n);

    // Solutions of X a = b X as a lattice in Z^{n*n} (row-major vec(X)).
    IntMatrix lin(n * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                lin(i * n + j, i * n + k) += a(k, j);
                lin(i * n + j, k * n + j) -= b(i, k);
            }
    const PresentedGroup ker = kernel_embedding(lin);
    const std::size_t dim = ker.free_rank;
    if (dim == 0) return std::nullopt;
    const IntMatrix basis = lll_reduce(ker.from_reduced);

    // Box radius so that the full box stays below ~2e5 candidates.
    long radius = 1;
    while (radius < 60 && std::pow(2.0 * (radius + 1) + 1, static_cast<double>(dim)) <= 2e5) ++radius;

    std::vector<long> c(dim);
    auto candidate = [&]() {
        IntMatrix x(n, n);
        for (std::size_t v = 0; v < dim; ++v) {
            if (c[v] == 0) continue;
            for (std::size_t i = 0; i < n * n; ++i) x(i / n, i % n) += Integer(c[v]) * basis(i, v);
        }
        return x;
    };
    // Shells of increasing max-norm so that small certificates are found first.
    for (long r = 1; r <= radius; ++r) {
        std::fill(c.begin(), c.end(), -r);
        for (;;) {
            bool on_shell = std::any_of(c.begin(), c.end(), [r](long v) { return v == r || v == -r; });
            if (on_shell) {
                const IntMatrix x = candidate();
                const Integer det = determinant(x);
                if (det == 1 || det == -1) {
                    if (!(x * a == b * x)) throw std::logic_error("similarity certificate failed verification");
                    return x;
                }
            }
            std::size_t pos = 0;
            while (pos < dim && c[pos] == r) c[pos++] = -r;
            if (pos == dim) break;
            ++c[pos];
        }
    }
    return std::nullopt;
}

namespace {

// (Frobenius norm, negative entries, top-left entry, entries) ascending.
auto residual_key(const IntMatrix& m)
{
    long negatives = 0;
    for (const auto& x : m.data())
        if (x < 0) ++negatives;
    Integer topleft = m.rows() ? m(0, 0) : Integer(0);
    return std::make_tuple(frobenius_norm2(m), negatives, topleft, m.data());
}

bool key_less(const IntMatrix& x, const IntMatrix& y) { return residual_key(x) < residual_key(y); }

// Conjugation by I + s e_i e_j^T.
IntMatrix elementary_conjugate(const IntMatrix& a, std::size_t i, std::size_t j, long s)
{
    IntMatrix m = a;
    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) m(i, k) += s * m(j, k);
    for (std::size_t k = 0; k < n; ++k) m(k, j) -= s * m(k, i);
    return m;
}

IntMatrix greedy_descent(IntMatrix a)
{
    const std::size_t n = a.rows();
    for (bool improved = true; improved;) {
        improved = false;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                for (long s : {1L, -1L}) {
                    IntMatrix m = elementary_conjugate(a, i, j, s);
                    if (frobenius_norm2(m) < frobenius_norm2(a)) {
                        a = std::move(m);
                        improved = true;
                    }
                }
            }
    }
    return a;
}

// Best representative under signed permutation conjugation.
IntMatrix best_signed_permutation(const IntMatrix& a)
{
    const std::size_t n = a.rows();
    IntMatrix best = a;
    if (n > 6) return best;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        for (unsigned long signs = 0; signs < (1ul << n); ++signs) {
            IntMatrix m(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    const bool flip = ((signs >> i) & 1) != ((signs >> j) & 1);
                    m(i, j) = flip ? Integer(-a(perm[i], perm[j])) : a(perm[i], perm[j]);
                }
            if (key_less(m, best)) best = std::move(m);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// All 2x2 integer matrices with the given trace and determinant and norm <= bound.
std::vector<IntMatrix> conjugate_candidates_2x2(const Integer& tr, const Integer& det, const Integer& bound)
{
    std::vector<IntMatrix> out;
    Integer lim;
    mpz_sqrt(lim.get_mpz_t(), bound.get_mpz_t());
    for (Integer x = -lim; x <= lim; ++x) {
        const Integer y = tr - x;
        const Integer diag = x * x + y * y;
        if (diag > bound) continue;
        const Integer prod = x * y - det;  // = b * c
        const Integer rest = bound - diag;
        auto push = [&](const Integer& b, const Integer& c) {
            if (b * b + c * c > rest) return;
            IntMatrix m(2, 2);
            m(0, 0) = x;
            m(0, 1) = b;
            m(1, 0) = c;
            m(1, 1) = y;
            out.push_back(m);
        };
        Integer r;
        mpz_sqrt(r.get_mpz_t(), rest.get_mpz_t());
        if (prod == 0) {
            for (Integer v = -r; v <= r; ++v) {
                push(v, Integer(0));
                if (v != 0) push(Integer(0), v);
            }
            continue;
        }
        for (Integer b = 1; b <= r; ++b) {
            if (!mpz_divisible_p(prod.get_mpz_t(), b.get_mpz_t())) continue;
            const Integer c = prod / b;
            push(b, c);
            push(Integer(-b), Integer(-c));
        }
    }
    std::sort(out.begin(), out.end(), key_less);
    return out;
}

}  // namespace

IntMatrix canonical_residual(const IntMatrix& a)
{
    if (!a.square()) throw std::invalid_argument("canonical_residual: matrix must be square");
    IntMatrix m = best_signed_permutation(greedy_descent(a));
    if (m.rows() != 2) return m;
    const Integer tr = m(0, 0) + m(1, 1);
    const Integer det = determinant(m);
    for (const auto& cand : conjugate_candidates_2x2(tr, det, frobenius_norm2(m))) {
        if (cand == m) return m;
        if (z_similarity_certificate(m, cand)) return cand;
    }
    return m;
}

}  // namespace tilekt
