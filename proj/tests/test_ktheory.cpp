#include "corpus_rules.hpp"

#include "tilekt/ktheory.hpp"
#include "tilekt/tiling1d.hpp"
#include "tilekt/tiling2d.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace tilekt;

namespace {

KTheoryReport line_report(const std::map<std::string, std::string>& rules)
{
    const StableComplex c = build_complex_1d(make_substitution_1d(letters_of(rules), rules));
    return assemble_report(stable_cohomology(c), stable_transpose_homology(c), 1);
}

KTheoryReport plane_report(const BlockRules& rules)
{
    std::vector<std::string> faces;
    for (const auto& [k, v] : rules) faces.push_back(k);
    const StableComplex c = build_complex_2d(make_block_substitution(faces, 2, rules));
    return assemble_report(stable_cohomology(c), stable_transpose_homology(c), 2);
}

std::string str(const std::optional<GroupExpression>& g) { return g ? g->canonical() : "none"; }

bool has_note(const std::vector<std::string>& notes, const std::string& prefix)
{
    return std::any_of(notes.begin(), notes.end(), [&](const std::string& n) { return n.rfind(prefix, 0) == 0; });
}

KPair pair(GroupExpression k0, GroupExpression k1) { return {std::move(k0), std::move(k1), {}}; }

// Relabels the cells of a complex by permutations; the groups must not change.
StableComplex permuted(const StableComplex& c, std::mt19937_64& rng)
{
    auto perm = [&](std::size_t n) {
        std::vector<std::size_t> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = i;
        std::shuffle(p.begin(), p.end(), rng);
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(p[i], i) = 1;
        return m;
    };
    const IntMatrix pv = perm(c.sv()), pe = perm(c.se()), pf = perm(c.sf());
    StableComplex out = c;
    out.delta0 = pe * c.delta0 * pv.transpose();
    out.delta1 = pf * c.delta1 * pe.transpose();
    out.wv = pv * c.wv * pv.transpose();
    out.we = pe * c.we * pe.transpose();
    out.wf = pf * c.wf * pf.transpose();
    return out;
}

}  // namespace

TEST_CASE("K-theory of the line examples")
{
    const std::map<std::string, std::pair<std::string, std::string>> asymptotic = {
        {"Fibonacci", {"Z^5", "Z^4"}},
        {"Morse", {"Z^2 + Z[1/2]^3", "Z^2 + Z[1/2]^2"}},
        {"Nonreducible 4 letter", {"Z^26", "Z^10"}},
        {"Period doubling", {"Z^2 + Z[1/2]^3", "Z^2 + Z[1/2]^2"}},
        {"Rauzy", {"Z^10", "Z^6"}},
        {"Rudin-Shapiro", {"Z^2 + Z[1/2]^15", "Z^2 + Z[1/2]^6"}},
        {"OneFifth", {"Z + Z[1/5]^4", "Z[1/5]^4"}},
        {"OneSixth", {"Z + Z[1/6]^4", "Z[1/6]^4"}},
    };
    for (const auto& ex : line_examples()) {
        CAPTURE(ex.name);
        const KTheoryReport r = line_report(ex.rules);
        CHECK(r.k0_s.canonical() == ex.k0);
        CHECK(r.k0_u.canonical() == ex.k0);
        CHECK(r.k1_s.canonical() == "Z");
        CHECK(r.k1_u.canonical() == "Z");
        CHECK(all_ok(torsion_placement_check(r)));
        if (auto it = asymptotic.find(ex.name); it != asymptotic.end()) {
            CHECK(str(r.k0_a) == it->second.first);
            CHECK(str(r.k1_a) == it->second.second);
        } else {
            CHECK_FALSE(r.k0_a.has_value());
            CHECK(has_note(r.notes, "kunneth-inapplicable: not computable: residual operand"));
            CHECK(has_note(r.notes, "residual-present"));
        }
    }
}

TEST_CASE("K-theory of Tri-square")
{
    const KTheoryReport r = plane_report(trisquare_rules());
    CHECK(r.k0_s.canonical() == "ext(Z; Z^4 + Z[1/2]^3)");
    CHECK(has_note(r.notes, "split-undecided"));
    CHECK(r.k1_s.canonical() == "Z[1/2]^2");
    CHECK(r.k0_u.canonical() == "Z^5 + Z[1/2]^3");
    CHECK(r.k1_u.canonical() == "Z[1/2]^2");
    CHECK_FALSE(r.k0_a.has_value());
    CHECK(all_ok(torsion_placement_check(r)));
}

TEST_CASE("K-theory of Table puts the torsion in K1(S) and K0(U)")
{
    const KTheoryReport r = plane_report(table_rules());
    CHECK(r.k1_s.canonical() == "Z/2 + Z[1/2]^2");
    CHECK(r.k0_u.canonical() == "Z^4 + Z/2 + Z[1/2]^5");
    CHECK(r.k1_u.canonical() == "Z[1/2]^2");
    CHECK_FALSE(r.k0_s.has_torsion());
    const Diagnostics d = torsion_placement_check(r);
    CHECK(all_ok(d));
}

TEST_CASE("torsion placement flags misplaced torsion")
{
    KTheoryReport r;
    r.dim = 1;
    r.k0_s = GroupExpression::free(1) + GroupExpression::cyclic(2);
    r.k1_s = r.k0_u = r.k1_u = GroupExpression::free(1);
    CHECK_FALSE(all_ok(torsion_placement_check(r)));
    r.dim = 2;
    r.k0_s = GroupExpression::free(1);
    r.k1_s = GroupExpression::cyclic(2);
    CHECK_FALSE(all_ok(torsion_placement_check(r)));
    r.k0_u = GroupExpression::free(1) + GroupExpression::cyclic(2);
    CHECK(all_ok(torsion_placement_check(r)));
}

TEST_CASE("Kunneth products")
{
    const auto z = GroupExpression::free(1);
    const auto h = GroupExpression::localization(2, 1);
    // Octagonal groups: the formula gives Z^125 and Z^100.
    const AsymptoticK oct = k_asymptotic(pair(GroupExpression::free(10), GroupExpression::free(5)),
                                         pair(GroupExpression::free(10), GroupExpression::free(5)), 2);
    CHECK(str(oct.k0) == "Z^125");
    CHECK(str(oct.k1) == "Z^100");
    // Symmetry in dimension 1.
    const KPair a = pair(z + h, z), b = pair(GroupExpression::localization(3, 2), z);
    CHECK(str(k_asymptotic(a, b, 1).k0) == str(k_asymptotic(b, a, 1).k0));
    CHECK(str(k_asymptotic(a, b, 1).k1) == str(k_asymptotic(b, a, 1).k1));
    // Torsion blocks the formula in dimension 2.
    const AsymptoticK t = k_asymptotic(pair(z, GroupExpression::cyclic(2)), pair(z, z), 2);
    CHECK_FALSE(t.k0.has_value());
    REQUIRE(t.notes.size() == 1);
    CHECK(t.notes[0].find("Kunneth formula precondition violated") != std::string::npos);
}

TEST_CASE("trivial one-cell complex")
{
    StableComplex c;
    c.vertex_labels = {"v"};
    c.edge_labels = {"e"};
    c.delta0 = IntMatrix{{0}};
    c.delta1 = IntMatrix(0, 1);
    c.wv = c.we = IntMatrix{{1}};
    c.wf = IntMatrix(0, 0);
    const KTheoryReport r = assemble_report(stable_cohomology(c), stable_transpose_homology(c), 1);
    CHECK(r.k0_s.canonical() == "Z");
    CHECK(r.k1_s.canonical() == "Z");
    CHECK(r.k0_u.canonical() == "Z");
    CHECK(r.k1_u.canonical() == "Z");
    CHECK(str(r.k0_a) == "Z^2");
    CHECK(str(r.k1_a) == "Z^2");
}

TEST_CASE("K-groups do not depend on the cell ordering")
{
    std::mt19937_64 rng(7);
    for (const auto& ex : line_examples()) {
        CAPTURE(ex.name);
        const StableComplex c = build_complex_1d(make_substitution_1d(letters_of(ex.rules), ex.rules));
        const StableComplex p = permuted(c, rng);
        REQUIRE(all_ok(validate(p)));
        const KTheoryReport a = assemble_report(stable_cohomology(c), stable_transpose_homology(c), 1);
        const KTheoryReport b = assemble_report(stable_cohomology(p), stable_transpose_homology(p), 1);
        CHECK(a.k0_s == b.k0_s);
        CHECK(a.k1_s == b.k1_s);
        CHECK(a.k0_u == b.k0_u);
        CHECK(a.k1_u == b.k1_u);
    }
    std::vector<std::string> faces = {"a", "b", "c"};
    const StableComplex c = build_complex_2d(make_block_substitution(faces, 2, trisquare_rules()));
    const StableComplex p = permuted(c, rng);
    const KTheoryReport a = assemble_report(stable_cohomology(c), stable_transpose_homology(c), 2);
    const KTheoryReport b = assemble_report(stable_cohomology(p), stable_transpose_homology(p), 2);
    CHECK(a.k1_s == b.k1_s);
    CHECK(a.k0_u == b.k0_u);
    CHECK(a.k1_u == b.k1_u);
}
