#include "tilekt/exactmat.hpp"

namespace tilekt {

namespace {

// Working state: d = p * a * q, with p_inv and q_inv maintained alongside.
struct SmithState {
    IntMatrix d, p, p_inv, q, q_inv;

    void row_add(std::size_t i, std::size_t j, const Integer& c)  // row_i += c row_j
    {
        for (std::size_t k = 0; k < d.cols(); ++k) d(i, k) += c * d(j, k);
        for (std::size_t k = 0; k < p.cols(); ++k) p(i, k) += c * p(j, k);
        for (std::size_t k = 0; k < p_inv.rows(); ++k) p_inv(k, j) -= c * p_inv(k, i);
    }
    void row_swap(std::size_t i, std::size_t j)
    {
        if (i == j) return;
        for (std::size_t k = 0; k < d.cols(); ++k) std::swap(d(i, k), d(j, k));
        for (std::size_t k = 0; k < p.cols(); ++k) std::swap(p(i, k), p(j, k));
        for (std::size_t k = 0; k < p_inv.rows(); ++k) std::swap(p_inv(k, i), p_inv(k, j));
    }
    void row_negate(std::size_t i)
    {
        for (std::size_t k = 0; k < d.cols(); ++k) d(i, k) = -d(i, k);
        for (std::size_t k = 0; k < p.cols(); ++k) p(i, k) = -p(i, k);
        for (std::size_t k = 0; k < p_inv.rows(); ++k) p_inv(k, i) = -p_inv(k, i);
    }
    void col_add(std::size_t i, std::size_t j, const Integer& c)  // col_i += c col_j
    {
        for (std::size_t k = 0; k < d.rows(); ++k) d(k, i) += c * d(k, j);
        for (std::size_t k = 0; k < q.rows(); ++k) q(k, i) += c * q(k, j);
        for (std::size_t k = 0; k < q_inv.cols(); ++k) q_inv(j, k) -= c * q_inv(i, k);
    }
    void col_swap(std::size_t i, std::size_t j)
    {
        if (i == j) return;
        for (std::size_t k = 0; k < d.rows(); ++k) std::swap(d(k, i), d(k, j));
        for (std::size_t k = 0; k < q.rows(); ++k) std::swap(q(k, i), q(k, j));
        for (std::size_t k = 0; k < q_inv.cols(); ++k) std::swap(q_inv(i, k), q_inv(j, k));
    }

    // Minimal |entry| in the trailing submatrix; first in row-major order on ties.
    bool find_pivot(std::size_t t, std::size_t& pi, std::size_t& pj) const
    {
        bool found = false;
        Integer best;
        for (std::size_t i = t; i < d.rows(); ++i)
            for (std::size_t j = t; j < d.cols(); ++j) {
                if (d(i, j) == 0) continue;
                if (!found || mpz_cmpabs(d(i, j).get_mpz_t(), best.get_mpz_t()) < 0) {
                    best = d(i, j);
                    pi = i;
                    pj = j;
                    found = true;
                }
            }
        return found;
    }
};

}  // namespace

SmithDecomposition snf(const IntMatrix& a)
{
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    SmithState s{a, IntMatrix::identity(m), IntMatrix::identity(m), IntMatrix::identity(n), IntMatrix::identity(n)};

    std::size_t t = 0;
    for (; t < m && t < n; ++t) {
        std::size_t pi = 0, pj = 0;
        if (!s.find_pivot(t, pi, pj)) break;
        s.row_swap(t, pi);
        s.col_swap(t, pj);
        for (;;) {
            bool clean = true;
            const Integer piv = s.d(t, t);
            for (std::size_t i = t + 1; i < m; ++i) {
                if (s.d(i, t) == 0) continue;
                Integer quo;
                mpz_tdiv_q(quo.get_mpz_t(), s.d(i, t).get_mpz_t(), piv.get_mpz_t());
                if (quo != 0) s.row_add(i, t, Integer(-quo));
                if (s.d(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (s.d(t, j) == 0) continue;
                Integer quo;
                mpz_tdiv_q(quo.get_mpz_t(), s.d(t, j).get_mpz_t(), piv.get_mpz_t());
                if (quo != 0) s.col_add(j, t, Integer(-quo));
                if (s.d(t, j) != 0) clean = false;
            }
            if (clean) {
                // Enforce divisibility of the trailing block by the pivot.
                bool divides = true;
                for (std::size_t i = t + 1; i < m && divides; ++i)
                    for (std::size_t j = t + 1; j < n; ++j)
                        if (!mpz_divisible_p(s.d(i, j).get_mpz_t(), piv.get_mpz_t())) {
                            s.row_add(t, i, Integer(1));
                            divides = false;
                            break;
                        }
                if (divides) break;
                continue;
            }
            // A remainder smaller than the pivot exists in row or column t.
            s.find_pivot(t, pi, pj);
            s.row_swap(t, pi);
            s.col_swap(t, pj);
        }
        if (s.d(t, t) < 0) s.row_negate(t);
    }

    SmithDecomposition out;
    for (std::size_t i = 0; i < t; ++i) out.invariant_factors.push_back(s.d(i, i));
    out.d = std::move(s.d);
    out.p = std::move(s.p);
    out.q = std::move(s.q);
    out.p_inv = std::move(s.p_inv);
    out.q_inv = std::move(s.q_inv);
    return out;
}

}  // namespace tilekt
