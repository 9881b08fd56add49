#pragma once

#include "tilekt/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tilekt {

// d = p * a * q with p, q unimodular and d diagonal with d_1 | d_2 | ... | d_r.
struct SmithDecomposition {
    IntMatrix p;
    IntMatrix q;
    IntMatrix d;
    IntMatrix p_inv;
    IntMatrix q_inv;
    std::vector<Integer> invariant_factors;

    std::size_t rank() const { return invariant_factors.size(); }
};

SmithDecomposition snf(const IntMatrix& a);

// A finitely generated group given in reduced coordinates
//   Z/t_1 + ... + Z/t_k + Z^free_rank
// (torsion coordinates first) together with maps to and from an ambient lattice.
// The group is (carrier) / (relations), where the carrier lies in the kernel of
// `constraint` and `relations` holds ambient generators of the relation lattice.
struct PresentedGroup {
    std::size_t free_rank = 0;
    std::vector<Integer> torsion_factors;
    RationalMatrix to_reduced;
    IntMatrix from_reduced;
    IntMatrix constraint;
    IntMatrix relations;

    std::size_t reduced_dim() const { return torsion_factors.size() + free_rank; }
    std::size_t ambient_dim() const { return from_reduced.rows(); }
    bool torsion_free() const { return torsion_factors.empty(); }
};

// Z^n with identity maps.
PresentedGroup free_presentation(std::size_t n);
// Z/t_1 + ... + Z^f as its own ambient (relations diag(t)).
PresentedGroup torsion_presentation(const std::vector<Integer>& torsion, std::size_t free_rank);

PresentedGroup kernel_embedding(const IntMatrix& a);
PresentedGroup image_embedding(const IntMatrix& a);
PresentedGroup cokernel(const IntMatrix& a);
// ker(d1) / Im(d0); throws std::invalid_argument if d1 * d0 != 0.
PresentedGroup subquotient_ker_over_im(const IntMatrix& d1, const IntMatrix& d0);

struct DescentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Matrix of the endomorphism induced by w between two presentations over the
// same ambient lattice. Throws DescentError if w does not descend.
IntMatrix induced_map(const IntMatrix& w, const PresentedGroup& source, const PresentedGroup& target);

// Reduces torsion rows modulo their factor, so equal group maps compare equal.
IntMatrix normalize_group_map(IntMatrix m, const PresentedGroup& g);

// Some integer x with a * x = b, if one exists.
std::optional<IntMatrix> solve_integer(const IntMatrix& a, const IntMatrix& b);

// Integer polynomials, coefficients from the constant term upward.
using Polynomial = std::vector<Integer>;

Polynomial poly_trim(Polynomial p);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
// Exact division by a monic divisor; throws if the remainder is nonzero.
Polynomial poly_div_exact(const Polynomial& a, const Polynomial& monic_divisor);
Integer poly_eval(const Polynomial& p, const Integer& x);
IntMatrix poly_eval(const Polynomial& p, const IntMatrix& a);
std::string poly_to_string(const Polynomial& p);

Polynomial characteristic_polynomial(const IntMatrix& a);
Polynomial minimal_polynomial(const IntMatrix& a);

struct IntegerRoot {
    Integer value;
    std::size_t multiplicity = 0;
};

struct SpectralScan {
    Polynomial char_poly;
    Polynomial min_poly;
    // Integer roots of the characteristic polynomial, ascending, with algebraic multiplicity.
    std::vector<IntegerRoot> integer_eigenvalues;
};

SpectralScan spectral_scan(const IntMatrix& a);
std::vector<IntegerRoot> integer_roots(const Polynomial& p);

struct PolynomialFactor {
    Polynomial factor;
    std::size_t multiplicity = 0;
};

// Monic factors of a monic integer polynomial with multiplicity, by ascending
// degree. Candidates come from numerical roots and are verified by exact
// division; a part that cannot be split within the search budget is returned
// whole, so factors are irreducible only when the search completes.
std::vector<PolynomialFactor> factor_monic(const Polynomial& p);

}  // namespace tilekt
