#include "tilekt/ktheory.hpp"

namespace tilekt {

namespace {

void note_residual(std::vector<std::string>& notes, const char* name, const GroupExpression& g)
{
    if (!g.resolved() && !g.extension) notes.push_back(std::string("residual-present: ") + name + " = " + g.canonical());
}

}  // namespace

KPair k_stable(const HomologyResult& h, int dim)
{
    KPair k;
    if (dim == 1) {
        k.k0 = h.h0;
        k.k1 = GroupExpression::free(1);
    } else {
        k.k1 = h.h1;
        // 0 -> H^2_S -> K0(S) -> H^0_S -> 0 splits when H^0_S is free.
        if (h.h0.is_free()) {
            k.k0 = h.h2 + h.h0;
        } else {
            k.k0 = GroupExpression::make_extension(h.h2, h.h0);
            k.notes.push_back("split-undecided: K0(S) is an extension of H^0_S = " + h.h0.canonical() + " by " +
                              h.h2.canonical() + "; splitting is not known when H^0_S is not free");
        }
    }
    note_residual(k.notes, "K0(S)", h.h0);
    return k;
}

KPair k_unstable(const HomologyResult& h, int dim)
{
    KPair k;
    if (dim == 1) {
        k.k0 = h.h0;
        k.k1 = GroupExpression::free(1);
    } else {
        k.k0 = h.h2 + h.h0;
        k.k1 = h.h1;
    }
    note_residual(k.notes, "K0(U)", h.h0);
    return k;
}

AsymptoticK k_asymptotic(const KPair& s, const KPair& u, int dim)
{
    AsymptoticK a;
    for (const auto* g : {&s.k0, &s.k1, &u.k0, &u.k1})
        if (!g->resolved()) {
            a.notes.push_back("kunneth-inapplicable: not computable: residual operand (cannot tensor unresolved expression " +
                              g->canonical() + ")");
            return a;
        }
    if (dim == 2)
        for (const auto* g : {&s.k0, &s.k1, &u.k0, &u.k1})
            if (g->has_torsion()) {
                a.notes.push_back("kunneth-inapplicable: Kunneth formula precondition violated (torsion in " + g->canonical() +
                                  ")");
                return a;
            }
    // Tor terms vanish: in dimension 1 every group is torsion free, in dimension 2 it is checked above.
    a.k0 = tensor(s.k0, u.k0) + tensor(s.k1, u.k1);
    a.k1 = tensor(s.k0, u.k1) + tensor(s.k1, u.k0);
    a.k0->normalize();
    a.k1->normalize();
    return a;
}

KTheoryReport assemble_report(const HomologyResult& stable, const HomologyResult& transpose, int dim,
                              bool with_asymptotic)
{
    KTheoryReport r;
    r.dim = dim;
    const KPair s = k_stable(stable, dim);
    const KPair u = k_unstable(transpose, dim);
    r.k0_s = s.k0;
    r.k1_s = s.k1;
    r.k0_u = u.k0;
    r.k1_u = u.k1;
    r.notes = s.notes;
    r.notes.insert(r.notes.end(), u.notes.begin(), u.notes.end());
    if (with_asymptotic) {
        const AsymptoticK a = k_asymptotic(s, u, dim);
        r.k0_a = a.k0;
        r.k1_a = a.k1;
        r.notes.insert(r.notes.end(), a.notes.begin(), a.notes.end());
    }
    return r;
}

Diagnostics torsion_placement_check(const KTheoryReport& r)
{
    Diagnostics out;
    auto expect_free_of_torsion = [&](const char* name, const GroupExpression& g) {
        const bool ok = !g.has_torsion();
        out.push_back({std::string("no torsion in ") + name, ok, ok ? std::string() : name + std::string(" = ") + g.canonical()});
    };
    expect_free_of_torsion("K0(S)", r.k0_s);
    expect_free_of_torsion("K1(U)", r.k1_u);
    if (r.dim == 1) {
        expect_free_of_torsion("K1(S)", r.k1_s);
        expect_free_of_torsion("K0(U)", r.k0_u);
    } else {
        // Stable torsion sits in degree 1 and reappears in degree 0 on the unstable side.
        std::vector<Integer> ts, tu;
        if (!r.k1_s.extension) ts = r.k1_s.torsion;
        if (!r.k0_u.extension) tu = r.k0_u.torsion;
        const bool ok = ts == tu;
        out.push_back({"torsion of K1(S) matches torsion of K0(U)", ok,
                       "K1(S) = " + r.k1_s.canonical() + ", K0(U) = " + r.k0_u.canonical()});
    }
    return out;
}

}  // namespace tilekt
