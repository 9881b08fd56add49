#include "tilekt/documents.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace tilekt {

using json = nlohmann::json;

std::string kind_name(DocumentKind k)
{
    switch (k) {
    case DocumentKind::substitution_1d: return "substitution_1d";
    case DocumentKind::block_2d: return "block_2d";
    case DocumentKind::complex: return "complex";
    case DocumentKind::direct_limit: return "direct_limit";
    case DocumentKind::graded_limit: return "graded_limit";
    case DocumentKind::matrix: return "matrix";
    }
    return "unknown";
}

namespace {

// Errors carry a JSON pointer to the offending value.
struct Reader {
    std::string source;

    [[noreturn]] void fail(const std::string& path, const std::string& msg) const
    {
        throw InputError(source + ": " + (path.empty() ? "/" : path) + ": " + msg);
    }

    void only_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) const
    {
        if (!obj.is_object()) fail(path, "expected an object");
        for (const auto& [key, value] : obj.items()) {
            if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
                fail(path + "/" + key, "unknown field");
        }
    }

    const json& field(const json& obj, const std::string& path, const char* key) const
    {
        auto it = obj.find(key);
        if (it == obj.end()) fail(path + "/" + key, "missing required field");
        return *it;
    }

    std::string string(const json& j, const std::string& path) const
    {
        if (!j.is_string()) fail(path, "expected a string");
        return j.get<std::string>();
    }

    std::vector<std::string> strings(const json& j, const std::string& path) const
    {
        if (!j.is_array()) fail(path, "expected an array of strings");
        std::vector<std::string> out;
        for (std::size_t i = 0; i < j.size(); ++i) out.push_back(string(j[i], path + "/" + std::to_string(i)));
        return out;
    }

    std::size_t count(const json& j, const std::string& path) const
    {
        if (!j.is_number_unsigned()) fail(path, "expected a non-negative integer");
        return j.get<std::size_t>();
    }

    // Integers may be JSON numbers or decimal strings (for values beyond 64 bits).
    Integer integer(const json& j, const std::string& path) const
    {
        if (j.is_number_unsigned()) return Integer(std::to_string(j.get<unsigned long long>()));
        if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
        if (j.is_string()) {
            Integer v;
            const std::string s = j.get<std::string>();
            if (s.empty() || v.set_str(s, 10) != 0) fail(path, "string is not a decimal integer");
            return v;
        }
        fail(path, "expected an integer");
    }

    IntMatrix matrix(const json& j, const std::string& path, std::size_t empty_cols = 0) const
    {
        if (!j.is_array()) fail(path, "expected an array of rows");
        if (j.empty()) return IntMatrix(0, empty_cols);
        const std::size_t rows = j.size();
        std::size_t cols = 0;
        for (std::size_t r = 0; r < rows; ++r) {
            const std::string rp = path + "/" + std::to_string(r);
            if (!j[r].is_array()) fail(rp, "expected a row array");
            if (r == 0) cols = j[r].size();
            else if (j[r].size() != cols)
                fail(rp, "row has " + std::to_string(j[r].size()) + " entries, expected " + std::to_string(cols));
        }
        IntMatrix m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) m(r, c) = integer(j[r][c], path + "/" + std::to_string(r) + "/" + std::to_string(c));
        return m;
    }

    // A matrix that must be rows x cols, as declared by the cell labels.
    IntMatrix shaped(const json& j, const std::string& path, std::size_t rows, std::size_t cols) const
    {
        IntMatrix m = matrix(j, path, cols);
        if (m.rows() > rows) fail(path + "/" + std::to_string(rows), "extra row, expected " + std::to_string(rows) + " rows");
        if (m.rows() < rows) fail(path, "has " + std::to_string(m.rows()) + " rows, expected " + std::to_string(rows));
        if (m.cols() != cols)
            fail(path + "/0", "row has " + std::to_string(m.cols()) + " entries, expected " + std::to_string(cols));
        return m;
    }

    LimitSystem limit(const json& obj, const std::string& path, bool allow_torsion) const
    {
        LimitSystem sys;
        sys.matrix = matrix(field(obj, path, "matrix"), path + "/matrix");
        if (!sys.matrix.square()) fail(path + "/matrix", "matrix must be square");
        sys.free_rank = sys.matrix.rows();
        if (auto it = obj.find("presentation"); it != obj.end()) {
            const std::string pp = path + "/presentation";
            only_keys(*it, pp, {"torsion", "free"});
            sys.torsion.clear();
            if (auto t = it->find("torsion"); t != it->end()) {
                if (!t->is_array()) fail(pp + "/torsion", "expected an array");
                for (std::size_t i = 0; i < t->size(); ++i) sys.torsion.push_back(integer((*t)[i], pp + "/torsion/" + std::to_string(i)));
            }
            if (!sys.torsion.empty() && !allow_torsion) fail(pp + "/torsion", "torsion is not allowed here");
            sys.free_rank = count(field(*it, pp, "free"), pp + "/free");
            if (sys.torsion.size() + sys.free_rank != sys.matrix.rows())
                fail(pp, "presentation has " + std::to_string(sys.torsion.size() + sys.free_rank) +
                             " coordinates but the matrix is " + std::to_string(sys.matrix.rows()) + "x" +
                             std::to_string(sys.matrix.cols()));
            try {
                (void)sys.group();
            } catch (const std::invalid_argument& e) {
                fail(pp + "/torsion", e.what());
            }
        }
        return sys;
    }
};

Document read_json(const json& root, const Reader& rd)
{
    Document doc;
    if (!root.is_object()) rd.fail("", "expected a JSON object");
    const std::string type = rd.string(rd.field(root, "", "type"), "/type");
    if (auto it = root.find("name"); it != root.end()) doc.name = rd.string(*it, "/name");

    if (type == "substitution_1d") {
        rd.only_keys(root, "", {"type", "name", "letters", "rules"});
        doc.kind = DocumentKind::substitution_1d;
        const auto letters = rd.strings(rd.field(root, "", "letters"), "/letters");
        const json& rules = rd.field(root, "", "rules");
        if (!rules.is_object()) rd.fail("/rules", "expected an object mapping letters to words");
        std::map<std::string, std::string> r;
        for (const auto& [k, v] : rules.items()) r[k] = rd.string(v, "/rules/" + k);
        try {
            doc.substitution = make_substitution_1d(letters, r);
        } catch (const std::invalid_argument& e) {
            rd.fail("/rules", e.what());
        }
    } else if (type == "block_2d") {
        rd.only_keys(root, "", {"type", "name", "lambda", "faces", "rules"});
        doc.kind = DocumentKind::block_2d;
        const std::size_t lambda = rd.count(rd.field(root, "", "lambda"), "/lambda");
        const auto faces = rd.strings(rd.field(root, "", "faces"), "/faces");
        const json& rules = rd.field(root, "", "rules");
        if (!rules.is_object()) rd.fail("/rules", "expected an object mapping faces to grids");
        std::map<std::string, std::vector<std::vector<std::string>>> r;
        for (const auto& [k, grid] : rules.items()) {
            const std::string gp = "/rules/" + k;
            if (!grid.is_array()) rd.fail(gp, "expected an array of rows");
            for (std::size_t i = 0; i < grid.size(); ++i) r[k].push_back(rd.strings(grid[i], gp + "/" + std::to_string(i)));
        }
        try {
            doc.block = make_block_substitution(faces, lambda, r);
        } catch (const std::invalid_argument& e) {
            rd.fail("/rules", e.what());
        }
    } else if (type == "complex") {
        rd.only_keys(root, "", {"type", "name", "dim", "vertices", "edges", "faces", "delta0", "delta1", "wv", "we", "wf"});
        doc.kind = DocumentKind::complex;
        StableComplex c;
        c.dim = static_cast<int>(rd.count(rd.field(root, "", "dim"), "/dim"));
        if (c.dim != 1 && c.dim != 2) rd.fail("/dim", "dim must be 1 or 2");
        c.vertex_labels = rd.strings(rd.field(root, "", "vertices"), "/vertices");
        c.edge_labels = rd.strings(rd.field(root, "", "edges"), "/edges");
        if (c.dim == 2) c.face_labels = rd.strings(rd.field(root, "", "faces"), "/faces");
        else if (root.contains("faces") && !rd.strings(root["faces"], "/faces").empty())
            rd.fail("/faces", "a dimension-1 complex has no faces");
        const std::size_t sv = c.sv(), se = c.se(), sf = c.sf();
        c.delta0 = rd.shaped(rd.field(root, "", "delta0"), "/delta0", se, sv);
        c.wv = rd.shaped(rd.field(root, "", "wv"), "/wv", sv, sv);
        c.we = rd.shaped(rd.field(root, "", "we"), "/we", se, se);
        if (c.dim == 2) {
            c.delta1 = rd.shaped(rd.field(root, "", "delta1"), "/delta1", sf, se);
            c.wf = rd.shaped(rd.field(root, "", "wf"), "/wf", sf, sf);
        } else {
            c.delta1 = root.contains("delta1") ? rd.shaped(root["delta1"], "/delta1", 0, se) : IntMatrix(0, se);
            c.wf = root.contains("wf") ? rd.shaped(root["wf"], "/wf", 0, 0) : IntMatrix(0, 0);
        }
        doc.complex = std::move(c);
    } else if (type == "direct_limit") {
        rd.only_keys(root, "", {"type", "name", "matrix", "presentation"});
        doc.kind = DocumentKind::direct_limit;
        doc.limit = rd.limit(root, "", true);
    } else if (type == "graded_limit") {
        rd.only_keys(root, "", {"type", "name", "dim", "degrees"});
        doc.kind = DocumentKind::graded_limit;
        doc.dim = static_cast<int>(rd.count(rd.field(root, "", "dim"), "/dim"));
        if (doc.dim != 1 && doc.dim != 2) rd.fail("/dim", "dim must be 1 or 2");
        const json& deg = rd.field(root, "", "degrees");
        if (!deg.is_array() || deg.size() != static_cast<std::size_t>(doc.dim) + 1)
            rd.fail("/degrees", "expected an array of " + std::to_string(doc.dim + 1) + " limit systems");
        for (std::size_t k = 0; k < deg.size(); ++k) {
            const std::string dp = "/degrees/" + std::to_string(k);
            rd.only_keys(deg[k], dp, {"matrix", "presentation"});
            doc.degrees.push_back(rd.limit(deg[k], dp, false));
        }
    } else if (type == "matrix") {
        rd.only_keys(root, "", {"type", "name", "matrix"});
        doc.kind = DocumentKind::matrix;
        doc.matrix = rd.matrix(rd.field(root, "", "matrix"), "/matrix");
    } else {
        rd.fail("/type", "unknown document type '" + type + "'");
    }
    return doc;
}

}  // namespace

Document parse_document(const std::string& text, const std::string& source)
{
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw InputError(source + ": empty input");
    if (text[first] != '{' && text[first] != '[') {
        // Plain matrix text: a direct limit on Z^n when square.
        Document doc;
        try {
            doc.matrix = parse_matrix_text(text);
        } catch (const std::invalid_argument& e) {
            throw InputError(source + ": " + e.what());
        }
        if (doc.matrix.square()) {
            doc.kind = DocumentKind::direct_limit;
            doc.limit = LimitSystem{doc.matrix, {}, doc.matrix.rows()};
        } else {
            doc.kind = DocumentKind::matrix;
        }
        return doc;
    }
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(source + ": " + e.what());
    }
    return read_json(root, Reader{source});
}

Document load_document(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str(), path);
}

}  // namespace tilekt
