#pragma once

#include "tilekt/exactmat.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tilekt {

struct Localization {
    Integer radical;  // squarefree, > 1
    std::size_t exponent = 0;
};

// An unresolved direct limit lim(matrix, Z^n).
struct ResidualTerm {
    IntMatrix matrix;
    PresentedGroup ambient;
    Integer determinant;
};

struct ExtensionRecord;

// Z^free + torsion + localizations + residual limits, or an extension record.
// Always kept in canonical form, so canonical() equality is group-expression equality.
class GroupExpression {
public:
    std::size_t free_rank = 0;
    std::vector<Integer> torsion;  // invariant factors, each dividing the next
    std::vector<Localization> localized;
    std::vector<ResidualTerm> residual;
    std::shared_ptr<const ExtensionRecord> extension;

    static GroupExpression zero() { return {}; }
    static GroupExpression free(std::size_t n);
    static GroupExpression cyclic(const Integer& order);
    static GroupExpression torsion_group(const std::vector<Integer>& factors);
    static GroupExpression localization(const Integer& m, std::size_t exponent);
    static GroupExpression residual_limit(const IntMatrix& a);
    static GroupExpression make_extension(const GroupExpression& sub, const GroupExpression& quotient);

    bool is_trivial() const;
    bool is_free() const;
    bool has_torsion() const;
    bool resolved() const;
    // Free rank plus localized ranks plus residual ranks.
    std::size_t rank() const;

    std::string canonical() const;
    void normalize();

    GroupExpression& operator+=(const GroupExpression& other);
    friend GroupExpression operator+(GroupExpression a, const GroupExpression& b) { return a += b; }
    friend bool operator==(const GroupExpression& a, const GroupExpression& b) { return a.canonical() == b.canonical(); }
    friend bool operator!=(const GroupExpression& a, const GroupExpression& b) { return !(a == b); }
};

struct ExtensionRecord {
    GroupExpression sub;
    GroupExpression quotient;
};

std::vector<Integer> invariant_factors_of(const std::vector<Integer>& orders);

GroupExpression tensor(const GroupExpression& a, const GroupExpression& b);

struct LimitOptions {
    unsigned kmax = 64;
};

using LimitTrace = std::vector<std::string>;

struct Certification {
    Integer radical;
    unsigned power = 0;
};

// Radical of |det a| if a^k = 0 mod |det a| for some k <= kmax.
std::optional<Certification> certify_localization(const IntMatrix& a, unsigned kmax = 64);

struct Extraction {
    IntMatrix restricted;
    std::size_t extracted_rank = 0;
};

Extraction extract_eigenvalue(const IntMatrix& a, int lambda);

GroupExpression limit_free(const IntMatrix& a, const LimitOptions& opts = {}, LimitTrace* trace = nullptr);
GroupExpression limit_presented(const IntMatrix& m, const PresentedGroup& g, const LimitOptions& opts = {},
                                LimitTrace* trace = nullptr);

// Unimodular X with X a = b X, searched in a bounded coefficient box. Empty
// when the characteristic polynomials differ or the search finds nothing.
std::optional<IntMatrix> z_similarity_certificate(const IntMatrix& a, const IntMatrix& b);

// Reduced representative of the conjugacy class of a under GL_n(Z).
// Exact canonical form for 2x2; a deterministic local reduction otherwise.
IntMatrix canonical_residual(const IntMatrix& a);

// LLL-reduced basis of the lattice spanned by the columns of basis.
IntMatrix lll_reduce(const IntMatrix& basis);

}  // namespace tilekt
