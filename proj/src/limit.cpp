#include "tilekt/abgroup.hpp"

#include <algorithm>

namespace tilekt {

namespace {

void note(LimitTrace* trace, const std::string& s)
{
    if (trace) trace->push_back(s);
}

std::string int_str(const Integer& x) { return x.get_str(); }

// Polynomial with the factor x^r removed, r the multiplicity of the root 0.
Polynomial strip_zero_roots(Polynomial p, std::size_t& r)
{
    r = 0;
    p = poly_trim(p);
    while (p.size() > 1 && p.front() == 0) {
        p.erase(p.begin());
        ++r;
    }
    return p;
}

// lim(a, Z^n) = lim(a, L) when a^k Z^n lies in the lattice L spanned by the columns of g.
bool eventually_inside(const IntMatrix& a, const IntMatrix& g, unsigned kmax)
{
    const Integer det = abs(determinant(g));
    if (det == 0) return false;
    if (det == 1) return true;
    // adj(g) = det * g^-1 is integral; g^-1 a^k is integral iff adj(g) a^k = 0 mod det.
    const auto adj = to_integer(Rational(det) * rational_inverse(g));
    IntMatrix pw = mod_reduce(IntMatrix::identity(a.rows()), det);
    const IntMatrix am = mod_reduce(a, det);
    for (unsigned k = 1; k <= kmax; ++k) {
        pw = mod_reduce(pw * am, det);
        if (mod_reduce(*adj * pw, det).is_zero()) return true;
    }
    return false;
}

GroupExpression limit_free_impl(IntMatrix a, const LimitOptions& opts, LimitTrace* trace, int depth);

// Splits along the primary component of one monic factor of the characteristic polynomial.
std::optional<GroupExpression> try_block_split(const IntMatrix& a, const Polynomial& cp, const LimitOptions& opts,
                                               LimitTrace* trace, int depth)
{
    const std::size_t n = a.rows();
    for (const auto& part : factor_monic(cp)) {
        const std::size_t degree = (part.factor.size() - 1) * part.multiplicity;
        if (degree == n) continue;
        Polynomial f{Integer(1)};
        for (std::size_t i = 0; i < part.multiplicity; ++i) f = poly_mul(f, part.factor);
        const Polynomial g = poly_div_exact(cp, f);
        const PresentedGroup k1 = kernel_embedding(poly_eval(f, a));
        const PresentedGroup k2 = kernel_embedding(poly_eval(g, a));
        if (k1.free_rank + k2.free_rank != n) continue;
        const std::string name = "factor " + poly_to_string(part.factor);
        const IntMatrix basis = hcat(k1.from_reduced, k2.from_reduced);
        const Integer index = abs(determinant(basis));
        if (index != 1 && !eventually_inside(a, basis, opts.kmax)) {
            note(trace, name + ": primary sublattice sum has index " + int_str(index) + " and is not eventually absorbing; no split");
            continue;
        }
        note(trace, "block split at " + name + " (ranks " + std::to_string(k1.free_rank) + "+" +
                        std::to_string(k2.free_rank) + (index == 1 ? ", unimodular conjugator " + to_string(basis)
                                                                   : ", sublattice of index " + int_str(index)) +
                        ")");
        const IntMatrix a1 = induced_map(a, k1, k1);
        const IntMatrix a2 = induced_map(a, k2, k2);
        return limit_free_impl(a1, opts, trace, depth + 1) + limit_free_impl(a2, opts, trace, depth + 1);
    }
    return std::nullopt;
}

GroupExpression limit_free_impl(IntMatrix a, const LimitOptions& opts, LimitTrace* trace, int depth)
{
    if (!a.square()) throw std::invalid_argument("limit_free: matrix must be square");
    GroupExpression out;
    if (a.rows() == 0) return out;

    // Zero eigenvalues: lim(A, Z^n) = lim(A, ker q(A)) where charpoly = x^r q(x).
    std::size_t r = 0;
    Polynomial cp = strip_zero_roots(characteristic_polynomial(a), r);
    if (r == a.rows()) {
        note(trace, "nilpotent " + std::to_string(a.rows()) + "x" + std::to_string(a.rows()) + " block: limit is 0");
        return out;
    }
    if (r > 0) {
        const PresentedGroup k = kernel_embedding(poly_eval(cp, a));
        a = induced_map(a, k, k);
        note(trace, "removed eigenvalue 0 (multiplicity " + std::to_string(r) + "): restricted to rank " +
                        std::to_string(a.rows()) + " -> " + to_string(a));
    }

    // Eigenvalues +-1 split off free summands.
    for (;;) {
        const Polynomial mp = minimal_polynomial(a);
        int lambda = 0;
        if (poly_eval(mp, Integer(1)) == 0)
            lambda = 1;
        else if (poly_eval(mp, Integer(-1)) == 0)
            lambda = -1;
        if (lambda == 0) break;
        Extraction ex = extract_eigenvalue(a, lambda);
        out.free_rank += ex.extracted_rank;
        note(trace, "extracted eigenvalue " + std::to_string(lambda) + ": free rank " + std::to_string(ex.extracted_rank) +
                        ", remaining rank " + std::to_string(ex.restricted.rows()) +
                        (ex.restricted.rows() ? " -> " + to_string(ex.restricted) : std::string()));
        a = std::move(ex.restricted);
        if (a.rows() == 0) return out;
    }

    const std::size_t n = a.rows();
    const Integer det = determinant(a);
    if (abs(det) == 1) {
        note(trace, "det " + int_str(det) + ": Z-invertible, limit Z^" + std::to_string(n));
        out.free_rank += n;
        return out;
    }
    if (auto cert = certify_localization(a, opts.kmax)) {
        note(trace, "certified A^" + std::to_string(cert->power) + " = 0 mod " + int_str(abs(det)) + ": Z[1/" +
                        int_str(cert->radical) + "]^" + std::to_string(n));
        out += GroupExpression::localization(cert->radical, n);
        return out;
    }
    if (auto split = try_block_split(a, characteristic_polynomial(a), opts, trace, depth)) {
        out += *split;
        return out;
    }
    const IntMatrix canon = canonical_residual(a);
    note(trace, "not certified within kmax=" + std::to_string(opts.kmax) + "; residual lim" + to_string(canon) +
                    " (rank-" + std::to_string(n) + " subgroup of Z[1/" + int_str(radical(det)) + "]^" + std::to_string(n) + ")");
    out += GroupExpression::residual_limit(canon);
    return out;
}

}  // namespace

std::optional<Certification> certify_localization(const IntMatrix& a, unsigned kmax)
{
    if (!a.square()) throw std::invalid_argument("certify_localization: matrix must be square");
    const Integer det = abs(determinant(a));
    if (det == 0) throw std::invalid_argument("certify_localization: singular matrix");
    if (det == 1) return Certification{Integer(1), 0};
    const IntMatrix am = mod_reduce(a, det);
    IntMatrix pw = mod_reduce(IntMatrix::identity(a.rows()), det);
    for (unsigned k = 1; k <= kmax; ++k) {
        pw = mod_reduce(pw * am, det);
        if (pw.is_zero()) return Certification{radical(det), k};
    }
    return std::nullopt;
}

Extraction extract_eigenvalue(const IntMatrix& a, int lambda)
{
    if (lambda != 1 && lambda != -1) throw std::invalid_argument("extract_eigenvalue: lambda must be +1 or -1");
    const Polynomial mp = minimal_polynomial(a);
    if (poly_eval(mp, Integer(lambda)) != 0)
        throw std::invalid_argument("extract_eigenvalue: " + std::to_string(lambda) + " is not a root of the minimal polynomial");
    const Polynomial q = poly_div_exact(mp, {Integer(-lambda), Integer(1)});
    const IntMatrix qa = poly_eval(q, a);
    const PresentedGroup k = kernel_embedding(qa);
    Extraction ex;
    ex.restricted = induced_map(a, k, k);
    ex.extracted_rank = rank(qa);
    return ex;
}

GroupExpression limit_free(const IntMatrix& a, const LimitOptions& opts, LimitTrace* trace)
{
    return limit_free_impl(a, opts, trace, 0);
}

namespace {

IntMatrix reduce_rows(IntMatrix m, const std::vector<Integer>& mods)
{
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Integer r;
            mpz_fdiv_r(r.get_mpz_t(), m(i, j).get_mpz_t(), mods[i].get_mpz_t());
            m(i, j) = r;
        }
    return m;
}

}  // namespace

GroupExpression limit_presented(const IntMatrix& m, const PresentedGroup& g, const LimitOptions& opts, LimitTrace* trace)
{
    const std::size_t t = g.torsion_factors.size();
    const std::size_t f = g.free_rank;
    if (!m.square() || m.rows() != t + f) throw std::invalid_argument("limit_presented: matrix does not match presentation");
    const PresentedGroup self = torsion_presentation(g.torsion_factors, f);
    induced_map(m, self, self);  // throws DescentError unless m preserves the relations
    if (t == 0) return limit_free(m, opts, trace);

    const auto& tors = g.torsion_factors;
    const Integer exponent = tors.back();
    const IntMatrix a = reduce_rows(m.block(0, 0, t, t), tors);
    const IntMatrix c = reduce_rows(m.block(0, t, t, f), tors);
    const IntMatrix b = m.block(t, t, f, f);

    // Idempotent power e = a^K of the torsion map: projection onto the eventual image.
    IntMatrix e = a;
    unsigned long kpow = 1;
    const unsigned long cap = 1u << 20;
    while (reduce_rows(e * e, tors) != e) {
        e = reduce_rows(e * a, tors);
        if (++kpow > cap) throw std::runtime_error("limit_presented: torsion map has no idempotent power within bound");
    }
    IntMatrix diag(t, t);
    for (std::size_t i = 0; i < t; ++i) diag(i, i) = tors[i];
    const PresentedGroup img = image_embedding(hcat(e, diag));
    const auto rel = to_integer(img.to_reduced * to_rational(diag));
    if (!rel) throw std::logic_error("limit_presented: eventual image does not contain the relations");
    const PresentedGroup tinf = cokernel(*rel);
    const GroupExpression torsion_limit = GroupExpression::torsion_group(tinf.torsion_factors);
    note(trace, "torsion " + GroupExpression::torsion_group(tors).canonical() + " has eventual image " +
                    torsion_limit.canonical() + " (idempotent power " + std::to_string(kpow) + ")");

    const GroupExpression free_limit = limit_free(b, opts, trace);
    if (torsion_limit.is_trivial()) return free_limit;
    if (f == 0) return torsion_limit;

    // Look for tau with e tau b_k - a_k e tau = e c_k on the torsion rows,
    // which conjugates m^k to block-diagonal form on G / ker(e).
    std::vector<Integer> row_mods;
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t l = 0; l < f; ++l) row_mods.push_back(tors[i]);
    IntMatrix mk = mod_reduce(IntMatrix::identity(t + f), exponent);
    const IntMatrix mred = mod_reduce(m, exponent);
    const unsigned kcap = std::max<unsigned>(opts.kmax, 64);
    for (unsigned k = 1; k <= kcap; ++k) {
        mk = mod_reduce(mk * mred, exponent);
        const IntMatrix ak = mk.block(0, 0, t, t);
        const IntMatrix ck = mk.block(0, t, t, f);
        const IntMatrix bk = mk.block(t, t, f, f);
        const IntMatrix ake = ak * e;
        const IntMatrix rhs_m = e * ck;
        IntMatrix sys(t * f, 2 * t * f);
        IntMatrix rhs(t * f, 1);
        for (std::size_t i = 0; i < t; ++i)
            for (std::size_t l = 0; l < f; ++l) {
                const std::size_t row = i * f + l;
                for (std::size_t j = 0; j < t; ++j)
                    for (std::size_t h = 0; h < f; ++h) {
                        Integer coef = e(i, j) * bk(h, l);
                        if (h == l) coef -= ake(i, j);
                        sys(row, j * f + h) = coef;
                    }
                sys(row, t * f + row) = row_mods[row];
                rhs(row, 0) = rhs_m(i, l);
            }
        if (auto sol = solve_integer(sys, rhs)) {
            IntMatrix tau(t, f);
            for (std::size_t i = 0; i < t; ++i)
                for (std::size_t l = 0; l < f; ++l) tau(i, l) = (*sol)(i * f + l, 0);
            note(trace, "extension splits: torsion lift tau = " + to_string(reduce_rows(tau, tors)) + " for power " +
                            std::to_string(k));
            return torsion_limit + free_limit;
        }
    }
    note(trace, "no torsion lift found for powers up to " + std::to_string(kcap) + "; extension recorded");
    return GroupExpression::make_extension(torsion_limit, free_limit);
}

}  // namespace tilekt
