#include "oracle.hpp"

#include "tilekt/abgroup.hpp"
#include "tilekt/report.hpp"

#include <doctest.h>

using namespace tilekt;

namespace {

std::string lim(const IntMatrix& a, unsigned kmax = 64)
{
    LimitOptions opts;
    opts.kmax = kmax;
    return limit_free(a, opts).canonical();
}

}  // namespace

TEST_CASE("canonical strings")
{
    CHECK(GroupExpression::zero().canonical() == "0");
    CHECK(GroupExpression::free(2).canonical() == "Z^2");
    CHECK((GroupExpression::free(1) + GroupExpression::localization(2, 1)).canonical() == "Z + Z[1/2]");
    CHECK((GroupExpression::localization(4, 2) + GroupExpression::cyclic(2)).canonical() == "Z/2 + Z[1/2]^2");
    CHECK((GroupExpression::localization(2, 5) + GroupExpression::cyclic(2) + GroupExpression::free(3)).canonical() ==
          "Z^3 + Z/2 + Z[1/2]^5");
    CHECK(GroupExpression::residual_limit(IntMatrix{{3, 1}, {1, 6}}).canonical() == "lim[[3,1],[1,6]]");
    CHECK(GroupExpression::torsion_group({2, 3}).canonical() == "Z/6");
    CHECK(GroupExpression::cyclic(1).canonical() == "0");
}

TEST_CASE("localizations merge by radical")
{
    CHECK(GroupExpression::localization(12, 1) == GroupExpression::localization(6, 1));
    CHECK((GroupExpression::localization(2, 1) + GroupExpression::localization(8, 2)).canonical() == "Z[1/2]^3");
    CHECK((GroupExpression::localization(3, 1) + GroupExpression::localization(2, 1)).canonical() == "Z[1/2] + Z[1/3]");
}

TEST_CASE("tensor products")
{
    const auto z = GroupExpression::free(1);
    const auto half = GroupExpression::localization(2, 1);
    CHECK(tensor(z + half, z + half).canonical() == "Z + Z[1/2]^3");
    CHECK(tensor(half, GroupExpression::localization(3, 1)).canonical() == "Z[1/6]");
    CHECK(tensor(GroupExpression::cyclic(2), half).canonical() == "0");
    CHECK(tensor(GroupExpression::cyclic(4), GroupExpression::cyclic(6)).canonical() == "Z/2");
    CHECK(tensor(GroupExpression::cyclic(3), half).canonical() == "Z/3");
    CHECK_THROWS_WITH(tensor(GroupExpression::residual_limit(IntMatrix{{3, 1}, {1, 6}}), z),
                      doctest::Contains("cannot tensor unresolved expression"));
}

TEST_CASE("extensions are kept unless the quotient is free")
{
    const auto z = GroupExpression::free(1);
    const auto e = GroupExpression::make_extension(z, GroupExpression::free(2) + GroupExpression::localization(2, 1));
    CHECK(e.canonical() == "ext(Z; Z^2 + Z[1/2])");
    CHECK_FALSE(e.resolved());
    CHECK(GroupExpression::make_extension(z, GroupExpression::free(2)).canonical() == "Z^3");
}

TEST_CASE("limits of the reference matrices")
{
    CHECK(lim(IntMatrix{{3, 1}, {1, 2}}) == "Z[1/5]^2");
    CHECK(lim(IntMatrix{{6, -2}, {3, 0}}) == "Z[1/6]^2");
    CHECK(lim(IntMatrix{{6, 3}, {-2, 0}}) == "Z[1/6]^2");
    CHECK(lim(IntMatrix{{1, 1}, {2, 0}}) == "Z + Z[1/2]");
    CHECK(lim(IntMatrix{{2, 1, 1}, {1, 2, 1}, {1, 1, 2}}) == "Z^2 + Z[1/2]");
    CHECK(lim(IntMatrix{{2, -1, 1}, {0, 5, -3}, {0, 1, 1}}) == "Z[1/2]^3");
    CHECK(lim(IntMatrix{{4, 0, 0}, {-8, -2, 0}, {2, 2, 2}}) == "Z[1/2]^3");
    CHECK(lim(IntMatrix{{18, -38, 16}, {8, -18, 8}, {2, -6, 4}}) == "Z[1/2]^3");
    CHECK(lim(IntMatrix{{0, 1, 0, -1, 0}, {3, 1, 0, 0, 1}, {2, 2, -1, -2, 0}, {0, -1, 1, 2, 1}, {1, -1, 1, 3, 1}}) == "Z^5");
    CHECK(lim(IntMatrix{{4, 0}, {1, 2}}) == "Z[1/2]^2");
    CHECK(lim(IntMatrix{{0, 1}, {0, 0}}) == "0");
    CHECK(lim(IntMatrix::identity(4)) == "Z^4");
    // No integer eigenvalue to split at: the sum separates along quadratic factors.
    CHECK(lim(block_diag(IntMatrix{{3, 1}, {1, 2}}, IntMatrix{{2, 1}, {1, 1}})) == "Z^2 + Z[1/5]^2");
    CHECK(lim(block_diag(IntMatrix{{0, 2}, {-2, 2}}, IntMatrix{{4, 1}, {-1, 1}})) == "Z[1/2]^2 + Z[1/5]^2");
}

TEST_CASE("pathologic residual and similarity certificate")
{
    const IntMatrix s{{3, 1}, {1, 6}};
    const IntMatrix u{{5, 3}, {1, 4}};
    CHECK_FALSE(certify_localization(s, 64).has_value());
    const GroupExpression g = limit_free(s);
    CHECK(g.canonical() == "lim[[3,1],[1,6]]");
    CHECK_FALSE(g.resolved());
    CHECK(residual_annotation(g) == "rank-2 subgroup of Z[1/17]^2");
    CHECK(limit_free(u).canonical() == g.canonical());
    const auto x = z_similarity_certificate(s, u);
    REQUIRE(x.has_value());
    CHECK(x->rows() == 2);
    CHECK(std::abs(determinant(*x).get_si()) == 1);
    CHECK(*x * s == u * *x);
    CHECK_FALSE(z_similarity_certificate(s, IntMatrix{{3, 1}, {1, 2}}).has_value());
    CHECK(canonical_residual(u) == canonical_residual(s));
}

TEST_CASE("certification respects kmax")
{
    const IntMatrix a{{3, 1}, {1, 2}};
    const auto c = certify_localization(a, 64);
    REQUIRE(c.has_value());
    CHECK(c->radical == 5);
    CHECK_FALSE(certify_localization(a, 1).has_value());
    CHECK(lim(a, 1).rfind("lim", 0) == 0);
}

TEST_CASE("eigenvalue extraction")
{
    const Extraction e = extract_eigenvalue(IntMatrix{{2, 1, 1}, {1, 2, 1}, {1, 1, 2}}, 1);
    CHECK(e.extracted_rank == 2);
    CHECK(e.restricted == IntMatrix{{4}});
}

TEST_CASE("limits on groups with torsion")
{
    auto run = [](const IntMatrix& m, std::vector<Integer> t, std::size_t f) {
        return limit_presented(m, torsion_presentation(t, f)).canonical();
    };
    CHECK(run(IntMatrix{{0, -2, -2}, {0, 2, 0}, {0, 0, 2}}, {2}, 2) == "Z[1/2]^2");
    CHECK(run(IntMatrix{{2, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 2}}, {2, 2}, 2) == "Z[1/2]^2");
    CHECK(run(IntMatrix{{1, -1, 0}, {0, 2, 0}, {0, 0, 2}}, {2}, 2) == "Z/2 + Z[1/2]^2");
    CHECK(run(IntMatrix{{1}}, {3}, 0) == "Z/3");
    CHECK(run(IntMatrix{{3}}, {3}, 0) == "0");
}

TEST_CASE("limit rank matches the eventual rank")
{
    const std::vector<IntMatrix> ms = {IntMatrix{{1, 1}, {2, 0}}, IntMatrix{{0, 1, 0}, {0, 0, 0}, {1, 0, 2}},
                                       IntMatrix{{2, 1, 1}, {1, 2, 1}, {1, 1, 2}}, IntMatrix{{3, 1}, {1, 6}}};
    for (const auto& m : ms) CHECK(limit_free(m).rank() == oracle::eventual_rank(m));
}

TEST_CASE("lll reduction spans the same lattice")
{
    const IntMatrix b{{1, 0}, {7, 1}};
    const IntMatrix r = lll_reduce(b);
    CHECK(std::abs(determinant(r).get_si()) == 1);
    CHECK(frobenius_norm2(r) <= frobenius_norm2(b));
}
