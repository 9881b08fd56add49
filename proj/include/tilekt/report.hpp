#pragma once

#include "tilekt/documents.hpp"
#include "tilekt/ktheory.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace tilekt {

enum class Route { stable, collared, both };

struct AnalyzeOptions {
    LimitOptions limit;
    Route route = Route::stable;
    std::string algebras = "SUA";
    bool matrices = false;
};

// Everything cmd analyze reports for one document.
struct Analysis {
    std::string name;
    DocumentKind kind = DocumentKind::complex;
    int dim = 1;
    std::optional<StableComplex> complex;  // absent for graded_limit documents
    std::optional<PerronData> perron;
    std::optional<double> lambda;  // 2D block inflation
    Diagnostics validation;
    std::optional<HomologyResult> stable;
    std::optional<HomologyResult> transpose;
    std::optional<GroupExpression> cech_k0;
    Diagnostics relations;  // collared, PE, UCT, torsion placement, cross-route
    std::optional<KTheoryReport> k;
    std::vector<std::string> notes;

    bool valid() const { return all_ok(validation); }
    bool ok() const { return valid() && all_ok(relations); }
};

// Throws InputError for document kinds that cannot be analysed or a route
// that does not apply.
Analysis analyze(const Document& doc, const AnalyzeOptions& opts = {});

struct LimitReport {
    std::string name;
    PresentedGroup group;
    IntMatrix matrix;
    GroupExpression result;
    LimitTrace trace;
};

LimitReport run_limit(const LimitSystem& sys, const std::string& name, const LimitOptions& opts = {});

// "rank-2 subgroup of Z[1/17]^2" for each residual term, empty when there are none.
std::string residual_annotation(const GroupExpression& g);

nlohmann::ordered_json group_json(const GroupExpression& g);
nlohmann::ordered_json matrix_json(const IntMatrix& m);
nlohmann::ordered_json diagnostics_json(const Diagnostics& d);

nlohmann::ordered_json analysis_json(const Analysis& a, const AnalyzeOptions& opts);
std::string analysis_text(const Analysis& a, const AnalyzeOptions& opts);

nlohmann::ordered_json limit_json(const LimitReport& r);
std::string limit_text(const LimitReport& r);

std::string render_json(const nlohmann::ordered_json& j);

}  // namespace tilekt
