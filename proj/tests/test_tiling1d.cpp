#include "corpus_rules.hpp"
#include "oracle.hpp"

#include "tilekt/tiling1d.hpp"

#include <doctest.h>

#include <cmath>

using namespace tilekt;

namespace {

Substitution1D make(const std::map<std::string, std::string>& rules) { return make_substitution_1d(letters_of(rules), rules); }

std::set<std::string> spelled(const Substitution1D& s, const std::vector<Word>& words)
{
    std::set<std::string> out;
    for (const auto& w : words) out.insert(s.spell(w));
    return out;
}

std::map<char, std::string> char_rules(const std::map<std::string, std::string>& rules)
{
    std::map<char, std::string> out;
    for (const auto& [k, v] : rules) out[k[0]] = v;
    return out;
}

}  // namespace

TEST_CASE("substitution input is checked")
{
    CHECK_THROWS_AS(make_substitution_1d({"a", "b"}, {{"a", "ab"}}), std::invalid_argument);
    CHECK_THROWS_AS(make_substitution_1d({"a", "b"}, {{"a", "ab"}, {"b", ""}}), std::invalid_argument);
    CHECK_THROWS_AS(make_substitution_1d({"a", "b"}, {{"a", "ax"}, {"b", "a"}}), std::invalid_argument);
    CHECK_THROWS_AS(make_substitution_1d({"ab"}, {{"ab", "abab"}}), std::invalid_argument);
    CHECK_THROWS_AS(make_substitution_1d({"a", "a"}, {{"a", "aa"}}), std::invalid_argument);
    // Not primitive: b never produces a.
    CHECK_THROWS_WITH_AS(make_substitution_1d({"a", "b"}, {{"a", "ab"}, {"b", "b"}}), doctest::Contains("primitive"),
                         std::invalid_argument);
    // Primitive but not expanding.
    CHECK_THROWS_AS(make_substitution_1d({"a"}, {{"a", "a"}}), std::invalid_argument);
}

TEST_CASE("substitution matrix and iteration")
{
    const Substitution1D s = make({{"a", "ab"}, {"b", "a"}});
    CHECK(substitution_matrix(s) == IntMatrix{{1, 1}, {1, 0}});
    CHECK(s.spell(substitute(s, substitute(s, {0}))) == "aba");
}

TEST_CASE("legal factors agree with brute-force windows")
{
    for (const auto& ex : line_examples()) {
        CAPTURE(ex.name);
        const Substitution1D s = make(ex.rules);
        for (std::size_t n = 1; n <= 3; ++n) CHECK(spelled(s, legal_factors(s, n)) == oracle::windows_1d(char_rules(ex.rules), n));
        const StableCells1D cells = stable_cells_1d(s);
        CHECK(cells.edges.size() == s.size());
        CHECK(spelled(s, cells.vertices) == oracle::windows_1d(char_rules(ex.rules), 2));
    }
}

TEST_CASE("Fibonacci stable complex matches the reference matrices")
{
    const StableComplex c = build_complex_1d(make({{"a", "ab"}, {"b", "a"}}));
    CHECK(c.vertex_labels == std::vector<std::string>{"a.a", "a.b", "b.a"});
    CHECK(c.edge_labels == std::vector<std::string>{"a", "b"});
    CHECK(c.delta0 == IntMatrix{{0, 1, -1}, {0, -1, 1}});
    CHECK(c.wv == IntMatrix{{0, 0, 1}, {1, 1, 0}, {1, 1, 0}});
    CHECK(c.we == IntMatrix{{1, 1}, {0, 0}});
}

TEST_CASE("Pathologic stable complex matches the reference matrices")
{
    const StableComplex c = build_complex_1d(make({{"a", "babbaaa"}, {"b", "abbbbb"}}));
    CHECK(c.sv() == 4);
    CHECK(c.wv == IntMatrix{{2, 3, 0, 0}, {2, 1, 1, 1}, {2, 2, 0, 1}, {1, 1, 5, 4}});
    CHECK(c.we == IntMatrix{{0, 1}, {1, 0}});
    CHECK(c.delta0 == IntMatrix{{0, 1, -1, 0}, {0, -1, 1, 0}});
}

TEST_CASE("Perron data")
{
    const PerronData f = perron_data(make({{"a", "ab"}, {"b", "a"}}));
    const double phi = (1 + std::sqrt(5.0)) / 2;
    CHECK(f.inflation == doctest::Approx(phi));
    CHECK(f.lengths[0] == doctest::Approx(phi));
    CHECK(f.lengths[1] == doctest::Approx(1.0));
    const PerronData p = perron_data(make({{"a", "babbaaa"}, {"b", "abbbbb"}}));
    CHECK(p.inflation == doctest::Approx((9 + std::sqrt(13.0)) / 2));
    CHECK(p.lengths[0] == doctest::Approx((std::sqrt(13.0) - 1) / 2));
}

TEST_CASE("stable cohomology of the line examples")
{
    for (const auto& ex : line_examples()) {
        CAPTURE(ex.name);
        const StableComplex c = build_complex_1d(make(ex.rules));
        CHECK(all_ok(validate(c)));
        const HomologyResult h = stable_cohomology(c);
        const HomologyResult t = stable_transpose_homology(c);
        CHECK(h.h0.canonical() == ex.k0);
        CHECK(t.h0.canonical() == ex.k0);
        CHECK(h.h1.canonical() == "Z");
        CHECK(t.h1.canonical() == "Z");
    }
}

TEST_CASE("collared complex and the Cech route")
{
    for (const auto& ex : line_examples()) {
        CAPTURE(ex.name);
        const Substitution1D s = make(ex.rules);
        const StableComplex st = build_complex_1d(s);
        const CollaredComplex1D co = collared_complex_1d(s);
        CHECK(spelled(s, co.vertices) == oracle::windows_1d(char_rules(ex.rules), 2));
        CHECK(spelled(s, co.edges) == oracle::windows_1d(char_rules(ex.rules), 3));
        const Diagnostics rel = collared_relations(st, co, collared_maps_1d(st, co));
        CHECK(rel.size() == 6);
        CHECK(all_ok(rel));
        CHECK(cech_k0(co).canonical() == stable_transpose_homology(st).h0.canonical());
    }
}

TEST_CASE("a corrupted inclusion breaks the collared identities")
{
    const Substitution1D s = make({{"a", "ab"}, {"b", "a"}});
    const StableComplex st = build_complex_1d(s);
    const CollaredComplex1D co = collared_complex_1d(s);
    CollaredMaps1D maps = collared_maps_1d(st, co);
    // Send the first stable vertex to two collared edges instead of one.
    for (std::size_t r = 0; r < maps.i_e.rows(); ++r)
        if (maps.i_e(r, 0) == 0) {
            maps.i_e(r, 0) = 1;
            break;
        }
    const Diagnostics rel = collared_relations(st, co, maps);
    CHECK_FALSE(rel[1].ok);
    CHECK(rel[0].ok);
}

TEST_CASE("Fibonacci PE maps match the reference matrices")
{
    const PEMaps1D pe = pe_maps_1d(make({{"a", "ab"}, {"b", "a"}}));
    CHECK(pe.vertex_classes == std::vector<std::string>{"a'.a'", "a'.b'", "b'.a'", "a'_v1"});
    CHECK(pe.edge_classes == std::vector<std::string>{"a'_e0", "a'_e1", "b'_e0"});
    CHECK(pe.r0 == IntMatrix{{0, 0, 1, 0}, {0, 0, 0, 1}, {1, 1, 0, 0}});
    CHECK(pe.r1 == IntMatrix{{1, 0, 1}, {0, 1, 0}});
    CHECK(pe.g0 == IntMatrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}});
    CHECK(pe.g1 == IntMatrix{{1, 1, 0}, {0, 0, 1}});
    CHECK(pe.s0 == IntMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}});
    CHECK(pe.s1 == IntMatrix{{1, 0}, {0, 0}, {0, 1}});
}

TEST_CASE("PE chain-map identities hold for all line examples")
{
    for (const auto& ex : line_examples()) {
        CAPTURE(ex.name);
        const Substitution1D s = make(ex.rules);
        const Diagnostics d = pe_relations(pe_maps_1d(s), build_complex_1d(s));
        CHECK(d.size() == 4);
        CHECK(all_ok(d));
    }
}
