#include "oracle.hpp"

#include "tilekt/exactmat.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace tilekt;

TEST_CASE("matrix arithmetic and text round trip")
{
    const IntMatrix a{{1, 2}, {3, 4}};
    const IntMatrix b{{0, 1}, {1, 0}};
    CHECK(a * b == IntMatrix{{2, 1}, {4, 3}});
    CHECK(a.transpose() == IntMatrix{{1, 3}, {2, 4}});
    CHECK(determinant(a) == -2);
    CHECK(rank(IntMatrix{{1, 2}, {2, 4}}) == 1);
    CHECK(to_string(a) == "[[1,2],[3,4]]");
    CHECK(parse_matrix_text("2 2\n1 2\n3 4\n") == a);
    CHECK_THROWS_AS(parse_matrix_text("2 2 1 2 3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_matrix_text("1 1 x"), std::invalid_argument);
    CHECK(power(b, 3) == b);
    CHECK(block_diag(IntMatrix{{2}}, IntMatrix{{3}}) == IntMatrix{{2, 0}, {0, 3}});
    CHECK(unimodular_inverse(IntMatrix{{2, 1}, {1, 1}}) == IntMatrix{{1, -1}, {-1, 2}});
    CHECK_THROWS(unimodular_inverse(a));
}

TEST_CASE("determinant agrees with Laplace expansion")
{
    const IntMatrix m{{2, -1, 1, 0}, {0, 5, -3, 2}, {0, 1, 1, 7}, {3, 0, 0, -2}};
    CHECK(determinant(m) == oracle::det(m));
}

TEST_CASE("radical and prime factors")
{
    CHECK(radical(Integer(72)) == 6);
    CHECK(radical(Integer(-17)) == 17);
    CHECK(radical(Integer(1)) == 1);
    CHECK(prime_factors(Integer(360)) == std::vector<Integer>{2, 3, 5});
}

TEST_CASE("smith normal form of small matrices")
{
    const IntMatrix a{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
    const SmithDecomposition s = snf(a);
    CHECK(s.invariant_factors == std::vector<Integer>{2, 6, 12});
    CHECK(s.p * a * s.q == s.d);
    CHECK(s.invariant_factors == oracle::invariant_factors(a));
    CHECK(snf(IntMatrix(0, 3)).rank() == 0);
    CHECK(snf(IntMatrix{{0, 0}, {0, 0}}).rank() == 0);
}

TEST_CASE("kernel, image, cokernel and subquotient presentations")
{
    // Fibonacci delta0: kernel rank 2, cokernel Z.
    const IntMatrix d0{{0, 1, -1}, {0, -1, 1}};
    const PresentedGroup k = kernel_embedding(d0);
    CHECK(k.free_rank == 2);
    CHECK((d0 * k.from_reduced).is_zero());
    const PresentedGroup c = cokernel(d0);
    CHECK(c.free_rank == 1);
    CHECK(c.torsion_free());

    const PresentedGroup t = cokernel(IntMatrix{{2, 0}, {0, 6}});
    CHECK(t.free_rank == 0);
    CHECK(t.torsion_factors == std::vector<Integer>{2, 6});

    CHECK(image_embedding(IntMatrix{{2, 0}, {0, 0}}).free_rank == 1);

    // Z --2--> Z --0--> 0: H = Z/2.
    const PresentedGroup h = subquotient_ker_over_im(IntMatrix(0, 1), IntMatrix{{2}});
    CHECK(h.free_rank == 0);
    CHECK(h.torsion_factors == std::vector<Integer>{2});
    CHECK_THROWS_AS(subquotient_ker_over_im(IntMatrix{{1}}, IntMatrix{{1}}), std::invalid_argument);
}

TEST_CASE("induced maps descend or throw")
{
    const IntMatrix d0{{0, 1, -1}, {0, -1, 1}};
    const IntMatrix wv{{0, 0, 1}, {1, 1, 0}, {1, 1, 0}};
    const PresentedGroup k = kernel_embedding(d0);
    const IntMatrix m = induced_map(wv, k, k);
    CHECK(m.rows() == 2);
    CHECK(std::abs(determinant(m).get_si()) == 1);
    // The identity on Z^2 does not preserve ker (1 1).
    const PresentedGroup line = kernel_embedding(IntMatrix{{1, 1}});
    CHECK_THROWS_AS(induced_map(IntMatrix{{1, 1}, {0, 1}}, line, line), DescentError);
}

TEST_CASE("polynomials and spectra")
{
    const IntMatrix a{{3, 1}, {1, 6}};
    CHECK(characteristic_polynomial(a) == Polynomial{17, -9, 1});
    CHECK(minimal_polynomial(IntMatrix{{2, 0}, {0, 2}}) == Polynomial{-2, 1});
    const SpectralScan s = spectral_scan(IntMatrix{{2, 1, 1}, {1, 2, 1}, {1, 1, 2}});
    REQUIRE(s.integer_eigenvalues.size() == 2);
    CHECK(s.integer_eigenvalues[0].value == 1);
    CHECK(s.integer_eigenvalues[0].multiplicity == 2);
    CHECK(s.integer_eigenvalues[1].value == 4);
    CHECK(poly_div_exact(Polynomial{-1, 0, 1}, Polynomial{1, 1}) == Polynomial{-1, 1});
    CHECK(solve_integer(IntMatrix{{2, 0}, {0, 3}}, IntMatrix{{4}, {9}}).has_value());
    CHECK_FALSE(solve_integer(IntMatrix{{2}}, IntMatrix{{3}}).has_value());
}

TEST_CASE("monic factorization")
{
    // (x^2 - 5x + 5)^2 (x^2 - 3x + 1) (x + 3)
    Polynomial p{3, 1};
    for (const Polynomial& f : {Polynomial{5, -5, 1}, Polynomial{5, -5, 1}, Polynomial{1, -3, 1}}) p = poly_mul(p, f);
    const auto parts = factor_monic(p);
    REQUIRE(parts.size() == 3);
    CHECK(parts[0].factor == Polynomial{3, 1});
    CHECK(parts[0].multiplicity == 1);
    CHECK(parts[1].factor == Polynomial{1, -3, 1});
    CHECK(parts[2].factor == Polynomial{5, -5, 1});
    CHECK(parts[2].multiplicity == 2);
    // x^4 + 1 is irreducible over Z but splits into quadratics over R.
    const auto quartic = factor_monic(Polynomial{1, 0, 0, 0, 1});
    REQUIRE(quartic.size() == 1);
    CHECK(quartic[0].factor == Polynomial{1, 0, 0, 0, 1});
    CHECK(factor_monic(Polynomial{1}).empty());
    CHECK_THROWS_AS(factor_monic(Polynomial{1, 2}), std::invalid_argument);
}
