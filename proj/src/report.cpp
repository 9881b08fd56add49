#include "tilekt/report.hpp"

#include <iomanip>
#include <sstream>

namespace tilekt {

using ojson = nlohmann::ordered_json;

namespace {

HomologyResult graded_homology(const Document& doc, bool transposed, const LimitOptions& opts)
{
    HomologyResult h;
    GroupExpression* out[3] = {&h.h0, &h.h1, &h.h2};
    FiniteLevel* lvl[3] = {&h.level0, &h.level1, &h.level2};
    for (std::size_t k = 0; k < doc.degrees.size(); ++k) {
        const LimitSystem& sys = doc.degrees[k];
        // Torsion-free degrees only, so the transpose system is the dual one.
        lvl[k]->group = sys.group();
        lvl[k]->map = transposed ? sys.matrix.transpose() : sys.matrix;
        *out[k] = limit_presented(lvl[k]->map, lvl[k]->group, opts, &lvl[k]->trace);
    }
    return h;
}

void require_tiling_invariants(Analysis& a)
{
    if (a.dim == 1) {
        const bool ok = a.stable->h1 == GroupExpression::free(1);
        a.relations.push_back({"H^1_S = Z", ok, "H^1_S = " + a.stable->h1.canonical()});
    } else {
        const bool ok = a.transpose->h2 == GroupExpression::free(1);
        a.relations.push_back({"H_2^ST = Z", ok, "H_2^ST = " + a.transpose->h2.canonical()});
    }
}

void append(Diagnostics& to, const Diagnostics& from) { to.insert(to.end(), from.begin(), from.end()); }

// Drops checks that name a K-group of an algebra outside the selection.
Diagnostics selected_checks(const Diagnostics& checks, const std::string& algebras)
{
    Diagnostics out;
    for (const auto& d : checks) {
        bool keep = true;
        for (std::size_t p = d.check.find("K"); p != std::string::npos; p = d.check.find("K", p + 1))
            if (p + 4 < d.check.size() && d.check[p + 2] == '(' && d.check[p + 4] == ')' &&
                algebras.find(d.check[p + 3]) == std::string::npos)
                keep = false;
        if (keep) out.push_back(d);
    }
    return out;
}

}  // namespace

Analysis analyze(const Document& doc, const AnalyzeOptions& opts)
{
    Analysis a;
    a.name = doc.name;
    a.kind = doc.kind;
    const bool with_a = opts.algebras.find('A') != std::string::npos;

    if (doc.kind == DocumentKind::direct_limit)
        throw InputError("analyze expects a substitution_1d, block_2d, complex or graded_limit document; use 'limit' for direct_limit");

    if (doc.kind == DocumentKind::graded_limit) {
        if (opts.route == Route::collared) throw InputError("route 'collared' needs a 1D substitution");
        if (opts.route == Route::both) a.notes.push_back("route 'both' needs a 1D substitution; stable route only");
        a.dim = doc.dim;
        a.stable = graded_homology(doc, false, opts.limit);
        a.transpose = graded_homology(doc, true, opts.limit);
        a.k = assemble_report(*a.stable, *a.transpose, a.dim, with_a);
        append(a.relations, selected_checks(torsion_placement_check(*a.k), opts.algebras));
        return a;
    }

    StableComplex c;
    if (doc.kind == DocumentKind::substitution_1d) {
        c = build_complex_1d(*doc.substitution);
        a.perron = perron_data(*doc.substitution);
    } else if (doc.kind == DocumentKind::block_2d) {
        c = build_complex_2d(*doc.block);
        a.lambda = static_cast<double>(doc.block->lambda);
    } else {
        c = *doc.complex;
    }
    a.dim = c.dim;
    const bool substitution = doc.kind == DocumentKind::substitution_1d;
    if (opts.route == Route::collared && !substitution) throw InputError("route 'collared' needs a 1D substitution");
    if (opts.route == Route::both && !substitution) a.notes.push_back("route 'both' needs a 1D substitution; stable route only");

    a.validation = validate(c);
    a.complex = c;
    if (!a.valid()) return a;

    a.stable = stable_cohomology(c, opts.limit);
    a.transpose = stable_transpose_homology(c, opts.limit);
    append(a.relations, uct_decomposition_check(c));
    if (doc.kind != DocumentKind::complex) require_tiling_invariants(a);

    HomologyResult unstable = *a.transpose;
    if (substitution) {
        const Substitution1D& s = *doc.substitution;
        const CollaredComplex1D co = collared_complex_1d(s);
        append(a.relations, collared_relations(c, co, collared_maps_1d(c, co)));
        append(a.relations, pe_relations(pe_maps_1d(s), c));
        if (opts.route != Route::stable) {
            a.cech_k0 = cech_k0(co, opts.limit);
            if (opts.route == Route::both) {
                const bool ok = *a.cech_k0 == a.transpose->h0;
                a.relations.push_back({"Cech K0(U) = stable-transpose K0(U)", ok,
                                       "Cech " + a.cech_k0->canonical() + ", stable-transpose " + a.transpose->h0.canonical()});
            } else {
                unstable.h0 = *a.cech_k0;
            }
        }
    }
    a.k = assemble_report(*a.stable, unstable, a.dim, with_a);
    append(a.relations, selected_checks(torsion_placement_check(*a.k), opts.algebras));
    return a;
}

LimitReport run_limit(const LimitSystem& sys, const std::string& name, const LimitOptions& opts)
{
    LimitReport r;
    r.name = name;
    r.group = sys.group();
    r.matrix = sys.matrix;
    r.result = limit_presented(sys.matrix, r.group, opts, &r.trace);
    return r;
}

std::string residual_annotation(const GroupExpression& g)
{
    std::string out;
    for (const auto& t : g.residual) {
        const std::size_t n = t.matrix.rows();
        const Integer rad = radical(abs(t.determinant));
        std::string s = "rank-" + std::to_string(n) + " subgroup of ";
        s += rad > 1 ? "Z[1/" + rad.get_str() + "]" : std::string("Z");
        if (n > 1) s += "^" + std::to_string(n);
        out += (out.empty() ? "" : "; ") + s;
    }
    return out;
}

ojson matrix_json(const IntMatrix& m)
{
    ojson rows = ojson::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ojson row = ojson::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m(i, j).fits_slong_p()) row.push_back(m(i, j).get_si());
            else row.push_back(m(i, j).get_str());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

ojson integers_json(const std::vector<Integer>& v)
{
    ojson out = ojson::array();
    for (const auto& x : v) out.push_back(x.get_str());
    return out;
}

ojson finite_json(const PresentedGroup& g)
{
    const GroupExpression e = GroupExpression::free(g.free_rank) + GroupExpression::torsion_group(g.torsion_factors);
    ojson j;
    j["canonical"] = e.canonical();
    j["free"] = g.free_rank;
    j["torsion"] = integers_json(g.torsion_factors);
    return j;
}

ojson strings_json(const std::vector<std::string>& v)
{
    ojson out = ojson::array();
    for (const auto& s : v) out.push_back(s);
    return out;
}

}  // namespace

ojson group_json(const GroupExpression& g)
{
    ojson j;
    j["canonical"] = g.canonical();
    j["resolved"] = g.resolved();
    if (g.extension) {
        j["extension"] = {{"sub", group_json(g.extension->sub)}, {"quotient", group_json(g.extension->quotient)}};
        return j;
    }
    j["free"] = g.free_rank;
    j["torsion"] = integers_json(g.torsion);
    ojson loc = ojson::array();
    for (const auto& l : g.localized) loc.push_back({{"radical", l.radical.get_str()}, {"exponent", l.exponent}});
    j["localized"] = loc;
    ojson res = ojson::array();
    for (const auto& r : g.residual) {
        GroupExpression single;
        single.residual.push_back(r);
        res.push_back({{"matrix", matrix_json(r.matrix)},
                       {"determinant", r.determinant.get_str()},
                       {"note", residual_annotation(single)}});
    }
    j["residual"] = res;
    return j;
}

ojson diagnostics_json(const Diagnostics& d)
{
    ojson out = ojson::array();
    for (const auto& x : d) out.push_back({{"check", x.check}, {"ok", x.ok}, {"detail", x.detail}});
    return out;
}

namespace {

ojson homology_json(const HomologyResult& h, int dim, bool cohomology)
{
    const char* prefix = cohomology ? "H^" : "H_";
    const GroupExpression* g[3] = {&h.h0, &h.h1, &h.h2};
    const FiniteLevel* lvl[3] = {&h.level0, &h.level1, &h.level2};
    ojson out;
    for (int k = 0; k <= dim; ++k) {
        ojson d;
        d["finite"] = finite_json(lvl[k]->group);
        d["map"] = matrix_json(lvl[k]->map);
        d["limit"] = group_json(*g[k]);
        d["trace"] = strings_json(lvl[k]->trace);
        out[prefix + std::to_string(k)] = d;
    }
    return out;
}

struct KEntry {
    char algebra;
    const char* name;
    const GroupExpression* group;
};

std::vector<KEntry> k_entries(const KTheoryReport& k, const std::string& algebras)
{
    std::vector<KEntry> all = {{'S', "K0(S)", &k.k0_s}, {'S', "K1(S)", &k.k1_s}, {'U', "K0(U)", &k.k0_u},
                               {'U', "K1(U)", &k.k1_u}, {'A', "K0(A)", k.k0_a ? &*k.k0_a : nullptr},
                               {'A', "K1(A)", k.k1_a ? &*k.k1_a : nullptr}};
    std::vector<KEntry> out;
    for (const auto& e : all)
        if (algebras.find(e.algebra) != std::string::npos) out.push_back(e);
    return out;
}

std::vector<std::string> all_notes(const Analysis& a)
{
    std::vector<std::string> notes = a.notes;
    if (a.k) notes.insert(notes.end(), a.k->notes.begin(), a.k->notes.end());
    return notes;
}

const char* status(const Analysis& a)
{
    if (!a.valid()) return "validation-failed";
    return a.ok() ? "ok" : "relation-failed";
}

}  // namespace

ojson analysis_json(const Analysis& a, const AnalyzeOptions& opts)
{
    ojson j;
    j["name"] = a.name;
    j["kind"] = kind_name(a.kind);
    j["dim"] = a.dim;
    j["status"] = status(a);
    if (a.complex) {
        j["cells"] = {{"vertices", a.complex->sv()}, {"edges", a.complex->se()}, {"faces", a.complex->sf()}};
        if (opts.matrices) {
            const StableComplex& c = *a.complex;
            j["labels"] = {{"vertices", strings_json(c.vertex_labels)},
                           {"edges", strings_json(c.edge_labels)},
                           {"faces", strings_json(c.face_labels)}};
            j["matrices"] = {{"delta0", matrix_json(c.delta0)}, {"delta1", matrix_json(c.delta1)},
                             {"wv", matrix_json(c.wv)},         {"we", matrix_json(c.we)},
                             {"wf", matrix_json(c.wf)}};
        }
    }
    if (a.perron) {
        ojson lengths = ojson::array();
        for (double x : a.perron->lengths) lengths.push_back(x);
        j["perron"] = {{"inflation", a.perron->inflation}, {"lengths", lengths}};
    }
    if (a.lambda) j["inflation"] = *a.lambda;
    j["validation"] = diagnostics_json(a.validation);
    if (a.stable) j["stable_cohomology"] = homology_json(*a.stable, a.dim, true);
    if (a.transpose) j["stable_transpose_homology"] = homology_json(*a.transpose, a.dim, false);
    if (a.cech_k0) j["cech_k0"] = group_json(*a.cech_k0);
    if (a.k) {
        ojson k;
        for (const auto& e : k_entries(*a.k, opts.algebras)) k[e.name] = e.group ? group_json(*e.group) : ojson(nullptr);
        j["k_theory"] = k;
    }
    j["diagnostics"] = diagnostics_json(a.relations);
    j["notes"] = strings_json(all_notes(a));
    return j;
}

namespace {

void diagnostics_text(std::ostream& os, const char* title, const Diagnostics& d)
{
    if (d.empty()) return;
    os << title << ":\n";
    for (const auto& x : d) {
        os << "  [" << (x.ok ? "ok" : "FAIL") << "] " << x.check;
        if (!x.detail.empty()) os << ": " << x.detail;
        os << "\n";
    }
}

std::string annotated(const GroupExpression& g)
{
    const std::string note = residual_annotation(g);
    return note.empty() ? g.canonical() : g.canonical() + " (" + note + ")";
}

void homology_text(std::ostream& os, const char* title, const HomologyResult& h, int dim, bool cohomology)
{
    const GroupExpression* g[3] = {&h.h0, &h.h1, &h.h2};
    const FiniteLevel* lvl[3] = {&h.level0, &h.level1, &h.level2};
    os << title << ":\n";
    for (int k = 0; k <= dim; ++k) {
        const PresentedGroup& fg = lvl[k]->group;
        const GroupExpression fin = GroupExpression::free(fg.free_rank) + GroupExpression::torsion_group(fg.torsion_factors);
        os << "  " << (cohomology ? "H^" : "H_") << k << ": " << annotated(*g[k]) << "\n";
        os << "      finite level " << fin.canonical() << ", map " << to_string(lvl[k]->map) << "\n";
        for (const auto& t : lvl[k]->trace) os << "      " << t << "\n";
    }
}

}  // namespace

std::string analysis_text(const Analysis& a, const AnalyzeOptions& opts)
{
    std::ostringstream os;
    os << (a.name.empty() ? "(unnamed)" : a.name) << " [" << kind_name(a.kind) << ", dim " << a.dim << "]\n";
    if (a.complex) {
        const StableComplex& c = *a.complex;
        os << "cells: sV=" << c.sv() << " sE=" << c.se() << " sF=" << c.sf() << "\n";
        if (opts.matrices) {
            auto labels = [&](const char* name, const std::vector<std::string>& v) {
                os << name << ":";
                for (std::size_t i = 0; i < v.size(); ++i) os << " " << i << "=" << v[i];
                os << "\n";
            };
            labels("vertices", c.vertex_labels);
            labels("edges", c.edge_labels);
            if (c.dim == 2) labels("faces", c.face_labels);
            os << "delta0 = " << to_string(c.delta0) << "\n";
            if (c.dim == 2) os << "delta1 = " << to_string(c.delta1) << "\n";
            os << "W_V = " << to_string(c.wv) << "\n";
            os << "W_E = " << to_string(c.we) << "\n";
            if (c.dim == 2) os << "W_F = " << to_string(c.wf) << "\n";
        }
    }
    if (a.perron) {
        os << "inflation " << std::setprecision(10) << a.perron->inflation << ", tile lengths";
        for (double x : a.perron->lengths) os << " " << x;
        os << "\n";
    }
    if (a.lambda) os << "inflation " << *a.lambda << "\n";
    diagnostics_text(os, "validation", a.validation);
    if (a.stable) homology_text(os, "stable cohomology", *a.stable, a.dim, true);
    if (a.transpose) homology_text(os, "stable-transpose homology", *a.transpose, a.dim, false);
    if (a.cech_k0) os << "Cech K0(U): " << annotated(*a.cech_k0) << "\n";
    if (a.k) {
        os << "K-theory:\n";
        for (const auto& e : k_entries(*a.k, opts.algebras))
            os << "  " << e.name << " = " << (e.group ? annotated(*e.group) : std::string("not computed")) << "\n";
    }
    diagnostics_text(os, "diagnostics", a.relations);
    const auto notes = all_notes(a);
    if (!notes.empty()) {
        os << "notes:\n";
        for (const auto& n : notes) os << "  " << n << "\n";
    }
    os << "status: " << status(a) << "\n";
    return os.str();
}

ojson limit_json(const LimitReport& r)
{
    ojson j;
    j["name"] = r.name;
    j["matrix"] = matrix_json(r.matrix);
    j["presentation"] = finite_json(r.group);
    j["limit"] = group_json(r.result);
    j["trace"] = strings_json(r.trace);
    return j;
}

std::string limit_text(const LimitReport& r)
{
    std::ostringstream os;
    if (!r.name.empty()) os << r.name << "\n";
    const GroupExpression g = GroupExpression::free(r.group.free_rank) + GroupExpression::torsion_group(r.group.torsion_factors);
    os << "lim(" << to_string(r.matrix) << ", " << g.canonical() << ") = " << annotated(r.result) << "\n";
    for (const auto& t : r.trace) os << "  " << t << "\n";
    return os.str();
}

std::string render_json(const ojson& j) { return j.dump(2) + "\n"; }

}  // namespace tilekt
