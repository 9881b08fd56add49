#include "tilekt/chaincx.hpp"

#include <sstream>

namespace tilekt {

bool all_ok(const Diagnostics& d)
{
    for (const auto& x : d)
        if (!x.ok) return false;
    return true;
}

namespace {

std::string shape(const IntMatrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

// Short description of the nonzero entries of a product that should vanish.
std::string nonzero_summary(const IntMatrix& m)
{
    std::ostringstream os;
    std::size_t count = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m(i, j) == 0) continue;
            if (count < 4) os << (count ? ", " : "") << "(" << i << "," << j << ")=" << m(i, j).get_str();
            ++count;
        }
    if (count > 4) os << ", ... (" << count << " nonzero entries)";
    return os.str();
}

Diagnostic vanishing(const std::string& name, const IntMatrix& m)
{
    const bool ok = m.is_zero();
    return {name, ok, ok ? std::string() : nonzero_summary(m)};
}

}  // namespace

Diagnostic matrix_identity(const std::string& name, const IntMatrix& lhs, const IntMatrix& rhs)
{
    if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols())
        return {name, false, "shapes differ: " + shape(lhs) + " vs " + shape(rhs)};
    return vanishing(name, lhs - rhs);
}

Diagnostics validate(const StableComplex& c)
{
    Diagnostics out;
    const std::size_t sv = c.sv(), se = c.se(), sf = c.sf();
    auto expect_shape = [&](const char* name, const IntMatrix& m, std::size_t r, std::size_t k) {
        const bool ok = m.rows() == r && m.cols() == k;
        out.push_back({std::string("shape ") + name, ok,
                       ok ? std::string() : "is " + shape(m) + ", expected " + std::to_string(r) + "x" + std::to_string(k)});
        return ok;
    };
    bool shapes = c.dim == 1 || c.dim == 2;
    if (!shapes) out.push_back({"dimension", false, "dim must be 1 or 2"});
    if (c.dim == 1 && sf != 0) {
        out.push_back({"dimension", false, "dimension-1 complex has faces"});
        shapes = false;
    }
    shapes = expect_shape("delta0", c.delta0, se, sv) && shapes;
    shapes = expect_shape("delta1", c.delta1, sf, se) && shapes;
    shapes = expect_shape("wv", c.wv, sv, sv) && shapes;
    shapes = expect_shape("we", c.we, se, se) && shapes;
    shapes = expect_shape("wf", c.wf, sf, sf) && shapes;
    if (!shapes) return out;

    out.push_back(vanishing("delta1 * delta0 = 0", c.delta1 * c.delta0));
    out.push_back(vanishing("we * delta0 = delta0 * wv", c.we * c.delta0 - c.delta0 * c.wv));
    out.push_back(vanishing("wf * delta1 = delta1 * we", c.wf * c.delta1 - c.delta1 * c.we));
    if (c.dim == 2) {
        IntMatrix ones(1, sf);
        for (std::size_t j = 0; j < sf; ++j) ones(0, j) = 1;
        const PresentedGroup coker = cokernel(c.delta1);
        const bool sum_zero = (ones * c.delta1).is_zero() && coker.free_rank == 1 && coker.torsion_free();
        out.push_back({"Im delta1 = sum-zero lattice", sum_zero,
                       sum_zero ? std::string()
                                : "coker delta1 has free rank " + std::to_string(coker.free_rank) + " and " +
                                      std::to_string(coker.torsion_factors.size()) + " torsion factors"});
        out.push_back(vanishing("wf acts as identity on coker delta1", ones * c.wf - ones));
    }
    return out;
}

namespace {

FiniteLevel finite_level(const PresentedGroup& g, const IntMatrix& w, const LimitOptions& opts, GroupExpression& result)
{
    FiniteLevel lvl;
    lvl.group = g;
    lvl.map = induced_map(w, g, g);
    result = limit_presented(lvl.map, g, opts, &lvl.trace);
    return lvl;
}

}  // namespace

HomologyResult stable_cohomology(const StableComplex& c, const LimitOptions& opts)
{
    HomologyResult h;
    h.level0 = finite_level(kernel_embedding(c.delta0), c.wv, opts, h.h0);
    h.level1 = finite_level(subquotient_ker_over_im(c.delta1, c.delta0), c.we, opts, h.h1);
    h.level2 = finite_level(cokernel(c.delta1), c.wf, opts, h.h2);
    return h;
}

HomologyResult stable_transpose_homology(const StableComplex& c, const LimitOptions& opts)
{
    HomologyResult h;
    const IntMatrix d0t = c.delta0.transpose();
    const IntMatrix d1t = c.delta1.transpose();
    h.level0 = finite_level(cokernel(d0t), c.wv.transpose(), opts, h.h0);
    h.level1 = finite_level(subquotient_ker_over_im(d0t, d1t), c.we.transpose(), opts, h.h1);
    h.level2 = finite_level(kernel_embedding(d1t), c.wf.transpose(), opts, h.h2);
    return h;
}

Diagnostics uct_decomposition_check(const StableComplex& c)
{
    const IntMatrix d0t = c.delta0.transpose();
    const IntMatrix d1t = c.delta1.transpose();
    const PresentedGroup coh[3] = {kernel_embedding(c.delta0), subquotient_ker_over_im(c.delta1, c.delta0),
                                   cokernel(c.delta1)};
    const PresentedGroup hom[3] = {cokernel(d0t), subquotient_ker_over_im(d0t, d1t), kernel_embedding(d1t)};
    Diagnostics out;
    for (int k = 0; k <= c.dim && k < 3; ++k) {
        GroupExpression expected = GroupExpression::free(coh[k].free_rank);
        if (k < 2) expected += GroupExpression::torsion_group(coh[k + 1].torsion_factors);
        GroupExpression actual = GroupExpression::free(hom[k].free_rank) + GroupExpression::torsion_group(hom[k].torsion_factors);
        const bool ok = expected == actual;
        out.push_back({"UCT degree " + std::to_string(k), ok,
                       "H_" + std::to_string(k) + "(C^ST) = " + actual.canonical() + ", torsion(H^" + std::to_string(k + 1) +
                           ") + Z^rank(H^" + std::to_string(k) + ") = " + expected.canonical()});
    }
    return out;
}

}  // namespace tilekt
