#include "tilekt/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

namespace tilekt {

using ojson = nlohmann::ordered_json;

std::size_t CorpusResult::count(CheckStatus s) const
{
    std::size_t n = 0;
    for (const auto& row : rows)
        for (const auto& c : row.checks) n += c.status == s;
    return n;
}

int CorpusResult::exit_code() const
{
    if (count(CheckStatus::error)) return exit_input;
    return count(CheckStatus::mismatch) ? exit_math : exit_ok;
}

std::string default_corpus_dir()
{
    if (const char* env = std::getenv("TILEKT_CORPUS_DIR"); env && *env) return env;
    return TILEKT_DEFAULT_CORPUS_DIR;
}

namespace {

struct RowSpec {
    std::string name;
    std::string document;
    std::vector<std::pair<std::string, std::optional<std::string>>> expect;  // nullopt: not computable
    std::map<std::string, std::string> reference;
};

std::vector<RowSpec> read_manifest(const std::string& dir)
{
    const std::string path = (std::filesystem::path(dir) / "corpus.json").string();
    std::ifstream in(path);
    if (!in) throw InputError(path + ": cannot open corpus manifest");
    ojson root;
    try {
        root = ojson::parse(in);
    } catch (const ojson::exception& e) {
        throw InputError(path + ": " + e.what());
    }
    std::vector<RowSpec> rows;
    try {
        for (const auto& r : root.at("rows")) {
            RowSpec spec;
            spec.name = r.at("name").get<std::string>();
            spec.document = r.at("document").get<std::string>();
            for (const auto& [q, v] : r.at("expect").items())
                spec.expect.emplace_back(q, v.is_null() ? std::nullopt : std::optional<std::string>(v.get<std::string>()));
            if (r.contains("reference_table"))
                for (const auto& [q, v] : r.at("reference_table").items()) spec.reference[q] = v.get<std::string>();
            rows.push_back(std::move(spec));
        }
    } catch (const ojson::exception& e) {
        throw InputError(path + ": malformed manifest: " + e.what());
    }
    return rows;
}

const std::string not_computed = "not computed";

std::map<std::string, std::string> quantities(const Analysis& a)
{
    std::map<std::string, std::string> q;
    if (a.complex) q["cells"] = std::to_string(a.complex->sv()) + "/" + std::to_string(a.complex->se()) + "/" +
                                std::to_string(a.complex->sf());
    if (a.stable) {
        const GroupExpression* h[3] = {&a.stable->h0, &a.stable->h1, &a.stable->h2};
        const GroupExpression* t[3] = {&a.transpose->h0, &a.transpose->h1, &a.transpose->h2};
        for (int k = 0; k <= a.dim; ++k) {
            q["H^" + std::to_string(k) + "_S"] = h[k]->canonical();
            q["H_" + std::to_string(k) + "^ST"] = t[k]->canonical();
        }
    }
    if (a.cech_k0) q["Cech K0(U)"] = a.cech_k0->canonical();
    if (a.k) {
        q["K0(S)"] = a.k->k0_s.canonical();
        q["K1(S)"] = a.k->k1_s.canonical();
        q["K0(U)"] = a.k->k0_u.canonical();
        q["K1(U)"] = a.k->k1_u.canonical();
        q["K0(A)"] = a.k->k0_a ? a.k->k0_a->canonical() : not_computed;
        q["K1(A)"] = a.k->k1_a ? a.k->k1_a->canonical() : not_computed;
    }
    std::size_t failed = 0;
    for (const auto& d : a.validation) failed += !d.ok;
    for (const auto& d : a.relations) failed += !d.ok;
    q["diagnostics"] = failed ? std::to_string(failed) + " failed" : "all pass";
    return q;
}

CorpusRow run_row(const RowSpec& spec, const std::string& dir, const CorpusOptions& opts)
{
    CorpusRow row{spec.name, spec.document, {}};
    std::map<std::string, std::string> q;
    try {
        const Document doc = load_document((std::filesystem::path(dir) / spec.document).string());
        if (doc.kind == DocumentKind::direct_limit) {
            q["limit"] = run_limit(*doc.limit, doc.name, opts.limit).result.canonical();
        } else {
            AnalyzeOptions ao;
            ao.limit = opts.limit;
            ao.route = doc.kind == DocumentKind::substitution_1d ? opts.route : Route::stable;
            q = quantities(analyze(doc, ao));
        }
    } catch (const std::exception& e) {
        row.checks.push_back({"document", std::string("error: ") + e.what(), "readable", "", CheckStatus::error});
        return row;
    }
    auto expect = spec.expect;
    // The route-agreement column only exists when the Cech route ran.
    if (q.count("Cech K0(U)")) {
        auto it = std::find_if(expect.begin(), expect.end(), [](const auto& e) { return e.first == "K0(U)"; });
        if (it != expect.end()) expect.emplace_back("Cech K0(U)", it->second);
    }
    if (q.count("diagnostics")) expect.emplace_back("diagnostics", "all pass");
    for (const auto& [quantity, value] : expect) {
        CorpusCheck c;
        c.quantity = quantity;
        c.expected = value.value_or(not_computed);
        auto it = q.find(quantity);
        c.computed = it == q.end() ? "missing" : it->second;
        c.status = c.computed == c.expected ? CheckStatus::ok : CheckStatus::mismatch;
        if (auto p = spec.reference.find(quantity); p != spec.reference.end()) {
            c.reference = p->second;
            if (c.status == CheckStatus::ok && c.reference != c.computed) c.status = CheckStatus::flagged;
        }
        row.checks.push_back(std::move(c));
    }
    return row;
}

const char* status_name(CheckStatus s)
{
    switch (s) {
    case CheckStatus::ok: return "ok";
    case CheckStatus::mismatch: return "MISMATCH";
    case CheckStatus::flagged: return "reference-table mismatch (flagged)";
    case CheckStatus::error: return "ERROR";
    }
    return "?";
}

}  // namespace

CorpusResult run_corpus(const std::string& dir, const CorpusOptions& opts)
{
    const std::vector<RowSpec> specs = read_manifest(dir);
    std::vector<std::future<CorpusRow>> jobs;
    for (const auto& spec : specs)
        jobs.push_back(std::async(std::launch::async, [&spec, &dir, &opts] { return run_row(spec, dir, opts); }));
    CorpusResult r;
    for (auto& j : jobs) r.rows.push_back(j.get());
    return r;
}

std::string corpus_text(const CorpusResult& r)
{
    std::ostringstream os;
    os << std::left << std::setw(28) << "tiling" << std::setw(12) << "quantity" << std::setw(28) << "computed"
       << std::setw(28) << "expected"
       << "status\n";
    for (const auto& row : r.rows)
        for (const auto& c : row.checks) {
            os << std::setw(28) << row.name << std::setw(12) << c.quantity << std::setw(28) << c.computed << std::setw(28)
               << c.expected << status_name(c.status);
            if (c.status == CheckStatus::flagged) os << ", reference has " << c.reference;
            os << "\n";
        }
    os << "corpus: " << r.rows.size() << " rows, " << r.count(CheckStatus::ok) << " ok, " << r.count(CheckStatus::flagged)
       << " flagged, " << r.count(CheckStatus::mismatch) << " mismatches, " << r.count(CheckStatus::error) << " errors\n";
    return os.str();
}

ojson corpus_json(const CorpusResult& r)
{
    ojson rows = ojson::array();
    for (const auto& row : r.rows) {
        ojson checks = ojson::array();
        for (const auto& c : row.checks) {
            ojson j = {{"quantity", c.quantity}, {"computed", c.computed}, {"expected", c.expected}, {"status", status_name(c.status)}};
            if (!c.reference.empty()) j["reference"] = c.reference;
            checks.push_back(std::move(j));
        }
        rows.push_back({{"name", row.name}, {"document", row.document}, {"checks", checks}});
    }
    return {{"rows", rows},
            {"summary",
             {{"ok", r.count(CheckStatus::ok)},
              {"flagged", r.count(CheckStatus::flagged)},
              {"mismatches", r.count(CheckStatus::mismatch)},
              {"errors", r.count(CheckStatus::error)}}}};
}

namespace {

struct CommonArgs {
    std::string input;
    std::string inline_doc;
    unsigned kmax = 64;
    std::string format = "text";
    std::string route = "stable";
    std::string algebras = "SUA";
    bool matrices = false;
    std::string dir;
};

Document read_input(const CommonArgs& a)
{
    if (!a.inline_doc.empty()) return parse_document(a.inline_doc, "<inline>");
    if (a.input == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return parse_document(ss.str(), "<stdin>");
    }
    return load_document(a.input);
}

Route parse_route(const std::string& s)
{
    if (s == "collared") return Route::collared;
    if (s == "both") return Route::both;
    return Route::stable;
}

StableComplex complex_of(const Document& doc)
{
    switch (doc.kind) {
    case DocumentKind::substitution_1d: return build_complex_1d(*doc.substitution);
    case DocumentKind::block_2d: return build_complex_2d(*doc.block);
    case DocumentKind::complex: return *doc.complex;
    default: throw InputError("validate expects a substitution_1d, block_2d or complex document, got " + kind_name(doc.kind));
    }
}

int cmd_analyze(const CommonArgs& a, std::ostream& out)
{
    AnalyzeOptions opts;
    opts.limit.kmax = a.kmax;
    opts.route = parse_route(a.route);
    opts.algebras = a.algebras;
    opts.matrices = a.matrices;
    const Analysis an = analyze(read_input(a), opts);
    out << (a.format == "json" ? render_json(analysis_json(an, opts)) : analysis_text(an, opts));
    return an.ok() ? exit_ok : exit_math;
}

int cmd_limit(const CommonArgs& a, std::ostream& out)
{
    const Document doc = read_input(a);
    if (doc.kind == DocumentKind::matrix) throw InputError("limit needs a square matrix, got " + std::to_string(doc.matrix.rows()) + "x" + std::to_string(doc.matrix.cols()));
    if (doc.kind != DocumentKind::direct_limit) throw InputError("limit expects a direct_limit document, got " + kind_name(doc.kind));
    LimitOptions opts;
    opts.kmax = a.kmax;
    const LimitReport r = run_limit(*doc.limit, doc.name, opts);
    out << (a.format == "json" ? render_json(limit_json(r)) : limit_text(r));
    return exit_ok;
}

int cmd_snf(const CommonArgs& a, std::ostream& out)
{
    const Document doc = read_input(a);
    IntMatrix m;
    if (doc.kind == DocumentKind::matrix) m = doc.matrix;
    else if (doc.kind == DocumentKind::direct_limit) m = doc.limit->matrix;
    else throw InputError("snf expects a matrix or direct_limit document, got " + kind_name(doc.kind));
    const SmithDecomposition s = snf(m);
    const bool ok = s.p * m * s.q == s.d;
    std::vector<std::string> factors;
    for (const auto& f : s.invariant_factors) factors.push_back(f.get_str());
    if (a.format == "json") {
        ojson j = {{"rows", m.rows()}, {"cols", m.cols()},           {"rank", s.rank()},
                   {"invariant_factors", factors}, {"d", matrix_json(s.d)}, {"p", matrix_json(s.p)},
                   {"q", matrix_json(s.q)},        {"verified", ok}};
        out << render_json(j);
    } else {
        out << "rank " << s.rank() << ", invariant factors";
        for (const auto& f : factors) out << " " << f;
        out << "\nD = " << to_string(s.d) << "\nP = " << to_string(s.p) << "\nQ = " << to_string(s.q) << "\n"
            << (ok ? "D = P A Q verified" : "D = P A Q FAILED") << "\n";
    }
    return ok ? exit_ok : exit_math;
}

int cmd_validate(const CommonArgs& a, std::ostream& out)
{
    const StableComplex c = complex_of(read_input(a));
    Diagnostics d = validate(c);
    if (all_ok(d)) {
        const Diagnostics u = uct_decomposition_check(c);
        d.insert(d.end(), u.begin(), u.end());
    }
    if (a.format == "json") {
        out << render_json({{"cells", {{"vertices", c.sv()}, {"edges", c.se()}, {"faces", c.sf()}}},
                            {"ok", all_ok(d)},
                            {"diagnostics", diagnostics_json(d)}});
    } else {
        out << "cells: sV=" << c.sv() << " sE=" << c.se() << " sF=" << c.sf() << "\n";
        for (const auto& x : d) out << "  [" << (x.ok ? "ok" : "FAIL") << "] " << x.check << (x.detail.empty() ? "" : ": " + x.detail) << "\n";
    }
    return all_ok(d) ? exit_ok : exit_math;
}

int cmd_corpus(const CommonArgs& a, std::ostream& out)
{
    CorpusOptions opts;
    opts.limit.kmax = a.kmax;
    opts.route = parse_route(a.route);
    const CorpusResult r = run_corpus(a.dir.empty() ? default_corpus_dir() : a.dir, opts);
    out << (a.format == "json" ? render_json(corpus_json(r)) : corpus_text(r));
    return r.exit_code();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Stable, unstable and asymptotic K-theory of substitution tilings"};
    app.require_subcommand(1);
    CommonArgs args;

    auto add_input = [&](CLI::App* sub) {
        auto* path = sub->add_option("input", args.input, "Document path, or - for stdin");
        auto* inl = sub->add_option("--inline", args.inline_doc, "Document text given on the command line");
        path->excludes(inl);
        inl->excludes(path);
        sub->add_option("--format", args.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    };
    auto add_kmax = [&](CLI::App* sub) {
        sub->add_option("--kmax", args.kmax, "Largest power tried when certifying a localization")
            ->check(CLI::Range(1u, 100000u));
    };
    auto add_route = [&](CLI::App* sub) {
        sub->add_option("--route", args.route, "1D route for K0(U)")->check(CLI::IsMember({"stable", "collared", "both"}));
    };

    auto* analyze_cmd = app.add_subcommand("analyze", "Full report for a substitution, block substitution or complex");
    add_input(analyze_cmd);
    add_kmax(analyze_cmd);
    add_route(analyze_cmd);
    analyze_cmd->add_option("--algebras", args.algebras, "Algebras to report, any of S, U, A")
        ->check([](const std::string& s) {
            if (s.empty()) return std::string("empty algebra list");
            return s.find_first_not_of("SUA") == std::string::npos ? std::string() : "algebras must be letters from SUA";
        });
    analyze_cmd->add_flag("--matrices", args.matrices, "Print the cell labels and matrices");

    auto* limit_cmd = app.add_subcommand("limit", "Direct limit of a matrix on a finitely generated group");
    add_input(limit_cmd);
    add_kmax(limit_cmd);
    auto* snf_cmd = app.add_subcommand("snf", "Smith normal form of an integer matrix");
    add_input(snf_cmd);
    auto* validate_cmd = app.add_subcommand("validate", "Check the chain-complex identities of a stable complex");
    add_input(validate_cmd);
    auto* corpus_cmd = app.add_subcommand("corpus", "Run the bundled examples against their expected groups");
    corpus_cmd->add_option("--format", args.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    corpus_cmd->add_option("--dir", args.dir, "Corpus directory (default: TILEKT_CORPUS_DIR or the bundled data)");
    add_kmax(corpus_cmd);
    add_route(corpus_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? exit_ok : exit_input;
    }
    for (auto* sub : {analyze_cmd, limit_cmd, snf_cmd, validate_cmd})
        if (sub->parsed() && args.input.empty() && args.inline_doc.empty()) {
            err << sub->get_name() << ": an input path or --inline document is required\n";
            return exit_input;
        }

    try {
        if (analyze_cmd->parsed()) return cmd_analyze(args, out);
        if (limit_cmd->parsed()) return cmd_limit(args, out);
        if (snf_cmd->parsed()) return cmd_snf(args, out);
        if (validate_cmd->parsed()) return cmd_validate(args, out);
        return cmd_corpus(args, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_math;
    }
}

}  // namespace tilekt
