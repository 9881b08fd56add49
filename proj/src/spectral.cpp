#include "tilekt/exactmat.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

namespace tilekt {

Polynomial poly_trim(Polynomial p)
{
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b)
{
    if (a.empty() || b.empty()) return {};
    Polynomial c(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return poly_trim(c);
}

Polynomial poly_div_exact(const Polynomial& a, const Polynomial& monic_divisor)
{
    Polynomial r = poly_trim(a);
    const Polynomial d = poly_trim(monic_divisor);
    if (d.empty() || d.back() != 1) throw std::invalid_argument("poly_div_exact: divisor must be monic");
    if (r.size() < d.size()) {
        if (r.empty()) return {};
        throw std::domain_error("poly_div_exact: nonzero remainder");
    }
    Polynomial quo(r.size() - d.size() + 1);
    for (std::size_t k = quo.size(); k-- > 0;) {
        const Integer c = r[k + d.size() - 1];
        quo[k] = c;
        if (c == 0) continue;
        for (std::size_t i = 0; i < d.size(); ++i) r[k + i] -= c * d[i];
    }
    for (const auto& x : r)
        if (x != 0) throw std::domain_error("poly_div_exact: nonzero remainder");
    return poly_trim(quo);
}

Integer poly_eval(const Polynomial& p, const Integer& x)
{
    Integer v = 0;
    for (std::size_t k = p.size(); k-- > 0;) v = v * x + p[k];
    return v;
}

IntMatrix poly_eval(const Polynomial& p, const IntMatrix& a)
{
    const std::size_t n = a.rows();
    IntMatrix v(n, n);
    for (std::size_t k = p.size(); k-- > 0;) {
        v = v * a;
        for (std::size_t i = 0; i < n; ++i) v(i, i) += p[k];
    }
    return v;
}

std::string poly_to_string(const Polynomial& p)
{
    const Polynomial q = poly_trim(p);
    if (q.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = q.size(); k-- > 0;) {
        if (q[k] == 0) continue;
        Integer c = q[k];
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        c = abs(c);
        if (k == 0 || c != 1) os << c.get_str();
        if (k > 0) os << 'x';
        if (k > 1) os << '^' << k;
        first = false;
    }
    return os.str();
}

Polynomial characteristic_polynomial(const IntMatrix& a)
{
    if (!a.square()) throw std::invalid_argument("characteristic polynomial of non-square matrix");
    // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.
    const std::size_t n = a.rows();
    Polynomial c(n + 1);
    c[n] = 1;
    IntMatrix m(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        m = a * m;
        for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
        const IntMatrix am = a * m;
        Integer tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
        Integer v = -tr;
        mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(k));
        c[n - k] = v;
    }
    return c;
}

Polynomial minimal_polynomial(const IntMatrix& a)
{
    if (!a.square()) throw std::invalid_argument("minimal polynomial of non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return {Integer(1)};
    // Krylov dependency among vec(I), vec(A), vec(A^2), ... over Q.
    // Each stored row is kept reduced against earlier pivots, together with the
    // combination of powers that produced it.
    const std::size_t len = n * n;
    std::vector<std::vector<Rational>> rows;
    std::vector<std::vector<Rational>> combos;
    std::vector<std::size_t> pivots;
    IntMatrix pw = IntMatrix::identity(n);
    for (std::size_t k = 0; k <= n; ++k) {
        std::vector<Rational> v(len);
        for (std::size_t i = 0; i < len; ++i) v[i] = Rational(pw.data()[i]);
        std::vector<Rational> combo(k + 1);
        combo[k] = 1;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const Rational f = v[pivots[r]];
            if (sgn(f) == 0) continue;
            for (std::size_t i = 0; i < len; ++i) v[i] -= f * rows[r][i];
            for (std::size_t i = 0; i < combos[r].size(); ++i) combo[i] -= f * combos[r][i];
        }
        std::size_t piv = 0;
        while (piv < len && sgn(v[piv]) == 0) ++piv;
        if (piv == len) {
            // combo is monic of degree k and annihilates A.
            Polynomial out(k + 1);
            for (std::size_t i = 0; i <= k; ++i) {
                if (combo[i].get_den() != 1) throw std::logic_error("minimal polynomial is not integral");
                out[i] = combo[i].get_num();
            }
            return out;
        }
        const Rational pv = v[piv];
        for (auto& x : v) x /= pv;
        for (auto& x : combo) x /= pv;
        rows.push_back(std::move(v));
        combos.push_back(std::move(combo));
        pivots.push_back(piv);
        pw = pw * a;
    }
    throw std::logic_error("minimal polynomial: no dependency found within degree n");
}

std::vector<IntegerRoot> integer_roots(const Polynomial& poly)
{
    Polynomial p = poly_trim(poly);
    std::vector<IntegerRoot> roots;
    if (p.size() <= 1) return roots;
    std::size_t zero_mult = 0;
    while (!p.empty() && p.front() == 0) {
        p.erase(p.begin());
        ++zero_mult;
    }
    if (zero_mult > 0) roots.push_back({Integer(0), zero_mult});
    if (p.size() <= 1) return roots;
    if (p.back() != 1 && p.back() != -1) throw std::invalid_argument("integer_roots: polynomial must be monic");
    // A nonzero root divides the constant term and lies within the Fujiwara bound
    // 2 max |c_{n-k}|^{1/k}.
    const std::size_t deg = p.size() - 1;
    Integer bound = 1;
    for (std::size_t k = 1; k <= deg; ++k) {
        Integer r;
        mpz_root(r.get_mpz_t(), Integer(abs(p[deg - k])).get_mpz_t(), static_cast<unsigned long>(k));
        bound = std::max(bound, Integer(r + 1));
    }
    bound *= 2;
    const Integer c0 = abs(p.front());
    std::vector<Integer> candidates;
    for (Integer d = 1; d <= bound && d <= c0; ++d)
        if (mpz_divisible_p(c0.get_mpz_t(), d.get_mpz_t())) candidates.push_back(d);
    std::vector<Integer> signed_candidates;
    for (const auto& d : candidates) {
        signed_candidates.push_back(d);
        signed_candidates.push_back(-d);
    }
    std::sort(signed_candidates.begin(), signed_candidates.end());
    for (const auto& lambda : signed_candidates) {
        std::size_t mult = 0;
        while (p.size() > 1 && poly_eval(p, lambda) == 0) {
            p = poly_div_exact(p, {Integer(-lambda), Integer(1)});
            ++mult;
        }
        if (mult > 0) roots.push_back({lambda, mult});
    }
    std::sort(roots.begin(), roots.end(), [](const IntegerRoot& x, const IntegerRoot& y) { return x.value < y.value; });
    return roots;
}

namespace {

using QPoly = std::vector<Rational>;

QPoly to_q(const Polynomial& p) { return QPoly(p.begin(), p.end()); }

void q_trim(QPoly& p)
{
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

// Remainder of a by b over Q.
QPoly q_rem(QPoly a, const QPoly& b)
{
    q_trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        const Rational f = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        q_trim(a);
    }
    return a;
}

QPoly q_gcd(QPoly a, QPoly b)
{
    q_trim(a);
    q_trim(b);
    while (!b.empty()) {
        QPoly r = q_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const Rational lead = a.back();
        for (auto& x : a) x /= lead;
    }
    return a;
}

// Quotient when the monic divisor divides p exactly.
std::optional<Polynomial> try_divide(const Polynomial& p, const Polynomial& d)
{
    try {
        return poly_div_exact(p, d);
    } catch (const std::domain_error&) {
        return std::nullopt;
    }
}

using Complex = std::complex<long double>;

// Durand-Kerner iteration on a monic squarefree polynomial.
std::vector<Complex> numeric_roots(const Polynomial& p)
{
    const std::size_t n = p.size() - 1;
    std::vector<long double> c(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) c[i] = p[i].get_d();
    long double bound = 1;
    for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, 1 + std::fabs(c[i]));
    auto eval = [&](Complex z) {
        Complex v = 0;
        for (std::size_t k = p.size(); k-- > 0;) v = v * z + c[k];
        return v;
    };
    std::vector<Complex> z(n);
    const Complex seed(0.4L, 0.9L);
    for (std::size_t i = 0; i < n; ++i) z[i] = std::pow(seed, static_cast<long double>(i)) * std::min(bound, 1e6L);
    for (int it = 0; it < 2000; ++it) {
        long double change = 0;
        for (std::size_t i = 0; i < n; ++i) {
            Complex den = 1;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) den *= z[i] - z[j];
            if (std::abs(den) == 0) den = 1e-30L;
            const Complex step = eval(z[i]) / den;
            z[i] -= step;
            change = std::max(change, std::abs(step) / std::max(1.0L, std::abs(z[i])));
        }
        if (change < 1e-17L) break;
    }
    return z;
}

// Monic integer polynomial whose roots are z[idx], if the rounding is clean.
std::optional<Polynomial> round_product(const std::vector<Complex>& z, const std::vector<std::size_t>& idx)
{
    std::vector<Complex> q{1};
    for (std::size_t i : idx) {
        std::vector<Complex> next(q.size() + 1);
        for (std::size_t k = 0; k < q.size(); ++k) {
            next[k + 1] += q[k];
            next[k] -= q[k] * z[i];
        }
        q = std::move(next);
    }
    Polynomial out;
    for (const auto& x : q) {
        const long double r = std::round(x.real());
        if (std::fabs(r) > 9e17L) return std::nullopt;
        const long double tol = 1e-6L * std::max(1.0L, std::fabs(r));
        if (std::fabs(x.imag()) > tol || std::fabs(x.real() - r) > tol) return std::nullopt;
        out.push_back(Integer(static_cast<long>(r)));
    }
    return out;
}

}  // namespace

std::vector<PolynomialFactor> factor_monic(const Polynomial& poly)
{
    const Polynomial p = poly_trim(poly);
    if (p.empty() || p.back() != 1) throw std::invalid_argument("factor_monic: polynomial must be monic");
    std::vector<PolynomialFactor> out;
    if (p.size() == 1) return out;

    // Squarefree part p / gcd(p, p'), integral by Gauss's lemma.
    QPoly deriv;
    for (std::size_t k = 1; k < p.size(); ++k) deriv.push_back(Rational(p[k] * Integer(static_cast<long>(k))));
    const QPoly g = q_gcd(to_q(p), deriv);
    Polynomial gi;
    for (const auto& x : g) gi.push_back(x.get_num());
    Polynomial rest = poly_div_exact(p, gi);

    std::vector<Polynomial> irreducible;
    std::vector<Complex> z = numeric_roots(rest);
    long budget = 200000;
    for (std::size_t d = 1; 2 * d <= rest.size() - 1 && budget > 0;) {
        std::vector<std::size_t> idx(d);
        for (std::size_t i = 0; i < d; ++i) idx[i] = i;
        bool found = false;
        for (;;) {
            if (--budget < 0) break;
            if (auto h = round_product(z, idx)) {
                if (auto q = try_divide(rest, *h)) {
                    irreducible.push_back(*h);
                    rest = std::move(*q);
                    for (std::size_t k = d; k-- > 0;) z.erase(z.begin() + static_cast<long>(idx[k]));
                    found = true;
                    break;
                }
            }
            std::size_t k = d;
            while (k > 0 && idx[k - 1] == z.size() - d + k - 1) --k;
            if (k == 0) break;
            ++idx[k - 1];
            for (std::size_t j = k; j < d; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found) ++d;
    }
    if (rest.size() > 1) irreducible.push_back(rest);

    for (const auto& h : irreducible) {
        PolynomialFactor f{h, 0};
        Polynomial q = p;
        while (auto next = try_divide(q, h)) {
            q = std::move(*next);
            ++f.multiplicity;
        }
        out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end(), [](const PolynomialFactor& a, const PolynomialFactor& b) {
        if (a.factor.size() != b.factor.size()) return a.factor.size() < b.factor.size();
        return std::lexicographical_compare(a.factor.begin(), a.factor.end(), b.factor.begin(), b.factor.end());
    });
    return out;
}

SpectralScan spectral_scan(const IntMatrix& a)
{
    SpectralScan s;
    s.char_poly = characteristic_polynomial(a);
    s.min_poly = minimal_polynomial(a);
    s.integer_eigenvalues = integer_roots(s.char_poly);
    return s;
}

}  // namespace tilekt
