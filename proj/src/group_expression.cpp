#include "tilekt/abgroup.hpp"

#include <algorithm>
#include <sstream>

namespace tilekt {

std::vector<Integer> invariant_factors_of(const std::vector<Integer>& orders)
{
    IntMatrix d(orders.size(), orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) d(i, i) = abs(orders[i]);
    std::vector<Integer> out;
    for (const auto& f : snf(d).invariant_factors)
        if (f > 1) out.push_back(f);
    return out;
}

GroupExpression GroupExpression::free(std::size_t n)
{
    GroupExpression g;
    g.free_rank = n;
    return g;
}

GroupExpression GroupExpression::cyclic(const Integer& order)
{
    if (order == 0) return free(1);
    return torsion_group({order});
}

GroupExpression GroupExpression::torsion_group(const std::vector<Integer>& factors)
{
    GroupExpression g;
    g.torsion = factors;
    g.normalize();
    return g;
}

GroupExpression GroupExpression::localization(const Integer& m, std::size_t exponent)
{
    GroupExpression g;
    const Integer r = radical(m);
    if (r == 1)
        g.free_rank = exponent;
    else if (exponent > 0)
        g.localized.push_back({r, exponent});
    return g;
}

GroupExpression GroupExpression::residual_limit(const IntMatrix& a)
{
    GroupExpression g;
    if (a.rows() == 0) return g;
    g.residual.push_back({a, free_presentation(a.rows()), determinant(a)});
    return g;
}

GroupExpression GroupExpression::make_extension(const GroupExpression& sub, const GroupExpression& quotient)
{
    if (sub.is_trivial()) return quotient;
    if (quotient.is_trivial()) return sub;
    // A free quotient is projective, so the extension splits.
    if (quotient.is_free()) return sub + quotient;
    GroupExpression g;
    g.extension = std::make_shared<const ExtensionRecord>(ExtensionRecord{sub, quotient});
    return g;
}

bool GroupExpression::is_trivial() const
{
    return !extension && free_rank == 0 && torsion.empty() && localized.empty() && residual.empty();
}

bool GroupExpression::is_free() const { return !extension && torsion.empty() && localized.empty() && residual.empty(); }

bool GroupExpression::has_torsion() const
{
    if (extension) return extension->sub.has_torsion() || extension->quotient.has_torsion();
    return !torsion.empty();
}

bool GroupExpression::resolved() const { return !extension && residual.empty(); }

std::size_t GroupExpression::rank() const
{
    if (extension) return extension->sub.rank() + extension->quotient.rank();
    std::size_t r = free_rank;
    for (const auto& l : localized) r += l.exponent;
    for (const auto& t : residual) r += t.matrix.rows();
    return r;
}

void GroupExpression::normalize()
{
    torsion = invariant_factors_of(torsion);
    std::vector<Localization> merged;
    for (const auto& l : localized) {
        const Integer r = radical(l.radical);
        if (l.exponent == 0) continue;
        if (r == 1) {
            free_rank += l.exponent;
            continue;
        }
        auto it = std::find_if(merged.begin(), merged.end(), [&](const Localization& x) { return x.radical == r; });
        if (it == merged.end())
            merged.push_back({r, l.exponent});
        else
            it->exponent += l.exponent;
    }
    std::sort(merged.begin(), merged.end(), [](const Localization& x, const Localization& y) { return x.radical < y.radical; });
    localized = std::move(merged);
    std::stable_sort(residual.begin(), residual.end(),
                     [](const ResidualTerm& x, const ResidualTerm& y) { return lex_less(x.matrix, y.matrix); });
}

GroupExpression& GroupExpression::operator+=(const GroupExpression& other)
{
    if (extension || other.extension) {
        // E + G is an extension of sub by quotient + G.
        GroupExpression sub, quot;
        auto split = [&](const GroupExpression& g) {
            if (g.extension) {
                sub += g.extension->sub;
                quot += g.extension->quotient;
            } else {
                quot += g;
            }
        };
        split(*this);
        split(other);
        *this = make_extension(sub, quot);
        return *this;
    }
    free_rank += other.free_rank;
    torsion.insert(torsion.end(), other.torsion.begin(), other.torsion.end());
    localized.insert(localized.end(), other.localized.begin(), other.localized.end());
    residual.insert(residual.end(), other.residual.begin(), other.residual.end());
    normalize();
    return *this;
}

std::string GroupExpression::canonical() const
{
    if (extension) return "ext(" + extension->sub.canonical() + "; " + extension->quotient.canonical() + ")";
    std::vector<std::string> parts;
    if (free_rank == 1) parts.push_back("Z");
    if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
    for (const auto& t : torsion) parts.push_back("Z/" + t.get_str());
    for (const auto& l : localized) {
        std::string s = "Z[1/" + l.radical.get_str() + "]";
        if (l.exponent > 1) s += "^" + std::to_string(l.exponent);
        parts.push_back(s);
    }
    for (const auto& r : residual) parts.push_back("lim" + to_string(r.matrix));
    if (parts.empty()) return "0";
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
    return out;
}

namespace {

Integer strip_primes(Integer a, const Integer& m)
{
    for (const auto& p : prime_factors(m))
        while (mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t())) a /= p;
    return a;
}

// One cyclic-or-localized summand: kind 0 = Z, 1 = Z/value, 2 = Z[1/value].
struct Summand {
    int kind;
    Integer value;
};

std::vector<Summand> summands(const GroupExpression& g)
{
    std::vector<Summand> out;
    for (std::size_t i = 0; i < g.free_rank; ++i) out.push_back({0, Integer(1)});
    for (const auto& t : g.torsion) out.push_back({1, t});
    for (const auto& l : g.localized)
        for (std::size_t i = 0; i < l.exponent; ++i) out.push_back({2, l.radical});
    return out;
}

GroupExpression tensor_summands(const Summand& x, const Summand& y)
{
    if (x.kind == 0) {
        if (y.kind == 0) return GroupExpression::free(1);
        if (y.kind == 1) return GroupExpression::cyclic(y.value);
        return GroupExpression::localization(y.value, 1);
    }
    if (y.kind == 0) return tensor_summands(y, x);
    if (x.kind == 1 && y.kind == 1) {
        const Integer g = gcd(x.value, y.value);
        return g > 1 ? GroupExpression::cyclic(g) : GroupExpression::zero();
    }
    if (x.kind == 1 || y.kind == 1) {
        const Summand& t = x.kind == 1 ? x : y;
        const Summand& l = x.kind == 1 ? y : x;
        const Integer r = strip_primes(t.value, l.value);
        return r > 1 ? GroupExpression::cyclic(r) : GroupExpression::zero();
    }
    return GroupExpression::localization(Integer(x.value * y.value), 1);
}

}  // namespace

GroupExpression tensor(const GroupExpression& a, const GroupExpression& b)
{
    if (!a.resolved() || !b.resolved()) throw std::invalid_argument("cannot tensor unresolved expression");
    GroupExpression out;
    const auto sa = summands(a);
    const auto sb = summands(b);
    for (const auto& x : sa)
        for (const auto& y : sb) out += tensor_summands(x, y);
    out.normalize();
    return out;
}

}  // namespace tilekt
