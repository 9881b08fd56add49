#include "tilekt/exactmat.hpp"

#include <stdexcept>

namespace tilekt {

namespace {

void require(bool ok, const char* what)
{
    if (!ok) throw std::logic_error(std::string("presentation check failed: ") + what);
}

// True if every column of m is zero in the group g (torsion rows divisible, free rows zero).
bool vanishes_in(const IntMatrix& m, const PresentedGroup& g)
{
    const std::size_t nt = g.torsion_factors.size();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (i < nt) {
                if (!mpz_divisible_p(m(i, j).get_mpz_t(), g.torsion_factors[i].get_mpz_t())) return false;
            } else if (m(i, j) != 0) {
                return false;
            }
        }
    return true;
}

RationalMatrix rational_times(const RationalMatrix& a, const IntMatrix& b) { return a * to_rational(b); }

}  // namespace

PresentedGroup free_presentation(std::size_t n)
{
    PresentedGroup g;
    g.free_rank = n;
    g.to_reduced = RationalMatrix::identity(n);
    g.from_reduced = IntMatrix::identity(n);
    g.constraint = IntMatrix(0, n);
    g.relations = IntMatrix(n, 0);
    return g;
}

PresentedGroup torsion_presentation(const std::vector<Integer>& torsion, std::size_t free_rank)
{
    const std::size_t n = torsion.size() + free_rank;
    PresentedGroup g;
    g.free_rank = free_rank;
    g.torsion_factors = torsion;
    g.to_reduced = RationalMatrix::identity(n);
    g.from_reduced = IntMatrix::identity(n);
    g.constraint = IntMatrix(0, n);
    g.relations = IntMatrix(n, torsion.size());
    for (std::size_t i = 0; i < torsion.size(); ++i) {
        if (torsion[i] < 2) throw std::invalid_argument("torsion factors must be > 1");
        if (i + 1 < torsion.size() && !mpz_divisible_p(torsion[i + 1].get_mpz_t(), torsion[i].get_mpz_t()))
            throw std::invalid_argument("torsion factors must form a divisibility chain");
        g.relations(i, i) = torsion[i];
    }
    return g;
}

PresentedGroup kernel_embedding(const IntMatrix& a)
{
    const SmithDecomposition s = snf(a);
    const std::size_t n = a.cols();
    const std::size_t r = s.rank();
    PresentedGroup g;
    g.free_rank = n - r;
    g.from_reduced = s.q.col_range(r, n - r);
    g.to_reduced = to_rational(s.q_inv.row_range(r, n - r));
    g.constraint = a;
    g.relations = IntMatrix(n, 0);
    require((g.to_reduced * to_rational(g.from_reduced)).is_identity(), "kernel pq = I");
    require((a * g.from_reduced).is_zero(), "kernel Aq = 0");
    return g;
}

PresentedGroup image_embedding(const IntMatrix& a)
{
    const SmithDecomposition s = snf(a);
    const std::size_t m = a.rows();
    const std::size_t r = s.rank();
    PresentedGroup g;
    g.free_rank = r;
    g.from_reduced = IntMatrix(m, r);
    g.to_reduced = RationalMatrix(r, m);
    for (std::size_t j = 0; j < r; ++j) {
        const Integer& dj = s.invariant_factors[j];
        for (std::size_t i = 0; i < m; ++i) {
            g.from_reduced(i, j) = s.p_inv(i, j) * dj;
            g.to_reduced(j, i) = Rational(s.p(j, i), dj);
        }
    }
    g.constraint = s.p.row_range(r, m - r);
    g.relations = IntMatrix(m, 0);
    require((g.to_reduced * to_rational(g.from_reduced)).is_identity(), "image pq = I");
    require(to_rational(g.from_reduced) * rational_times(g.to_reduced, a) == to_rational(a), "image qpA = A");
    return g;
}

PresentedGroup cokernel(const IntMatrix& a)
{
    const SmithDecomposition s = snf(a);
    const std::size_t m = a.rows();
    const std::size_t r = s.rank();
    std::size_t units = 0;
    while (units < r && s.invariant_factors[units] == 1) ++units;
    PresentedGroup g;
    g.free_rank = m - r;
    g.torsion_factors.assign(s.invariant_factors.begin() + static_cast<long>(units), s.invariant_factors.end());
    g.to_reduced = to_rational(s.p.row_range(units, m - units));
    g.from_reduced = s.p_inv.col_range(units, m - units);
    g.constraint = IntMatrix(0, m);
    g.relations = a;
    require((g.to_reduced * to_rational(g.from_reduced)).is_identity(), "cokernel pq = I");
    // qpA = 0 holds in the quotient: pA vanishes in the reduced group.
    require(vanishes_in(s.p.row_range(units, m - units) * a, g), "cokernel qpA = 0");
    return g;
}

PresentedGroup subquotient_ker_over_im(const IntMatrix& d1, const IntMatrix& d0)
{
    if (d1.cols() != d0.rows()) throw std::invalid_argument("subquotient: incompatible shapes");
    if (!(d1 * d0).is_zero()) throw std::invalid_argument("subquotient: d1 * d0 != 0, not a cochain complex");
    const PresentedGroup ker = kernel_embedding(d1);
    const auto pk = to_integer(ker.to_reduced);
    require(pk.has_value(), "kernel projection integral");
    const IntMatrix reduced_d0 = *pk * d0;
    const PresentedGroup quo = cokernel(reduced_d0);

    PresentedGroup g;
    g.free_rank = quo.free_rank;
    g.torsion_factors = quo.torsion_factors;
    g.to_reduced = quo.to_reduced * ker.to_reduced;
    g.from_reduced = ker.from_reduced * quo.from_reduced;
    g.constraint = d1;
    g.relations = d0;
    require((g.to_reduced * to_rational(g.from_reduced)).is_identity(), "subquotient pq = I");
    require((d1 * g.from_reduced).is_zero(), "subquotient d1 q p = 0");
    return g;
}

IntMatrix normalize_group_map(IntMatrix m, const PresentedGroup& g)
{
    for (std::size_t i = 0; i < g.torsion_factors.size() && i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Integer r;
            mpz_fdiv_r(r.get_mpz_t(), m(i, j).get_mpz_t(), g.torsion_factors[i].get_mpz_t());
            m(i, j) = r;
        }
    return m;
}

IntMatrix induced_map(const IntMatrix& w, const PresentedGroup& source, const PresentedGroup& target)
{
    if (w.rows() != target.ambient_dim() || w.cols() != source.ambient_dim())
        throw std::invalid_argument("induced_map: shape mismatch");
    const IntMatrix wq = w * source.from_reduced;
    const auto m = to_integer(target.to_reduced * to_rational(wq));
    if (!m) throw DescentError("induced map is not integral: w does not descend");
    if (target.constraint.rows() > 0 && !(target.constraint * wq).is_zero())
        throw DescentError("w does not map the source carrier into the target carrier");
    if (target.relations.cols() == 0 && !(target.from_reduced * *m == wq))
        throw DescentError("w does not preserve the target subgroup");
    if (source.relations.cols() > 0) {
        const auto image = to_integer(target.to_reduced * to_rational(w * source.relations));
        if (!image || !vanishes_in(*image, target))
            throw DescentError("w does not map relations to relations");
    }
    // Torsion generators must map to elements of matching order.
    const std::size_t nt = source.torsion_factors.size();
    for (std::size_t j = 0; j < nt; ++j) {
        IntMatrix col = m->col_range(j, 1);
        if (!vanishes_in(source.torsion_factors[j] * col, target))
            throw DescentError("induced map is not well defined on torsion");
    }
    return normalize_group_map(*m, target);
}

std::optional<IntMatrix> solve_integer(const IntMatrix& a, const IntMatrix& b)
{
    if (a.rows() != b.rows()) throw std::invalid_argument("solve_integer: shape mismatch");
    // a = p^-1 d q^-1, so a x = b  <=>  d (q^-1 x) = p b.
    const SmithDecomposition s = snf(a);
    const IntMatrix pb = s.p * b;
    IntMatrix y(a.cols(), b.cols());
    for (std::size_t i = 0; i < pb.rows(); ++i)
        for (std::size_t j = 0; j < pb.cols(); ++j) {
            if (i < s.rank()) {
                if (!mpz_divisible_p(pb(i, j).get_mpz_t(), s.invariant_factors[i].get_mpz_t())) return std::nullopt;
                Integer v;
                mpz_divexact(v.get_mpz_t(), pb(i, j).get_mpz_t(), s.invariant_factors[i].get_mpz_t());
                y(i, j) = v;
            } else if (pb(i, j) != 0) {
                return std::nullopt;
            }
        }
    return s.q * y;
}

}  // namespace tilekt
