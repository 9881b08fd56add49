#include "tilekt/matrix.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

namespace tilekt {

template <typename T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<long>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
        for (long v : r) data_.emplace_back(v);
    }
}

template <typename T>
Matrix<T> Matrix<T>::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

template <typename T>
Matrix<T> Matrix<T>::transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

template <typename T>
Matrix<T> Matrix<T>::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
{
    if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("matrix block out of range");
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

template <typename T>
bool Matrix<T>::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const T& x) { return sgn(x) == 0; });
}

template <typename T>
bool Matrix<T>::is_identity() const
{
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

template <typename T>
Matrix<T>& Matrix<T>::operator+=(const Matrix& o)
{
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix size mismatch in +");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
}

template <typename T>
Matrix<T>& Matrix<T>::operator-=(const Matrix& o)
{
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix size mismatch in -");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
}

template <typename T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b)
{
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix size mismatch in *");
    Matrix<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T& aik = a(i, k);
            if (sgn(aik) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

template <typename T>
Matrix<T> operator*(const T& s, Matrix<T> a)
{
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) *= s;
    return a;
}

template class Matrix<Integer>;
template class Matrix<Rational>;
template Matrix<Integer> operator*(const Matrix<Integer>&, const Matrix<Integer>&);
template Matrix<Rational> operator*(const Matrix<Rational>&, const Matrix<Rational>&);
template Matrix<Integer> operator*(const Integer&, Matrix<Integer>);
template Matrix<Rational> operator*(const Rational&, Matrix<Rational>);

IntMatrix hcat(const IntMatrix& a, const IntMatrix& b)
{
    if (a.rows() != b.rows()) throw std::invalid_argument("hcat: row mismatch");
    IntMatrix c(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
    }
    return c;
}

IntMatrix vcat(const IntMatrix& a, const IntMatrix& b)
{
    if (a.cols() != b.cols()) throw std::invalid_argument("vcat: column mismatch");
    IntMatrix c(a.rows() + b.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        for (std::size_t i = 0; i < a.rows(); ++i) c(i, j) = a(i, j);
        for (std::size_t i = 0; i < b.rows(); ++i) c(a.rows() + i, j) = b(i, j);
    }
    return c;
}

IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b)
{
    IntMatrix c(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, a.cols() + j) = b(i, j);
    return c;
}

IntMatrix power(const IntMatrix& a, unsigned long k)
{
    if (!a.square()) throw std::invalid_argument("power of non-square matrix");
    IntMatrix result = IntMatrix::identity(a.rows());
    IntMatrix base = a;
    while (k > 0) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return result;
}

IntMatrix mod_reduce(IntMatrix a, const Integer& m)
{
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            Integer r;
            mpz_fdiv_r(r.get_mpz_t(), a(i, j).get_mpz_t(), m.get_mpz_t());
            a(i, j) = r;
        }
    return a;
}

IntMatrix power_mod(const IntMatrix& a, unsigned long k, const Integer& m)
{
    IntMatrix result = mod_reduce(IntMatrix::identity(a.rows()), m);
    IntMatrix base = mod_reduce(a, m);
    while (k > 0) {
        if (k & 1) result = mod_reduce(result * base, m);
        k >>= 1;
        if (k > 0) base = mod_reduce(base * base, m);
    }
    return result;
}

RationalMatrix to_rational(const IntMatrix& a)
{
    RationalMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = Rational(a(i, j));
    return r;
}

std::optional<IntMatrix> to_integer(const RationalMatrix& a)
{
    IntMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j).get_den() != 1) return std::nullopt;
            r(i, j) = a(i, j).get_num();
        }
    return r;
}

Integer determinant(const IntMatrix& a)
{
    if (!a.square()) throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMatrix m = a;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = v;
            }
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& a)
{
    IntMatrix m = a;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(p, j));
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            if (m(i, c) == 0) continue;
            Integer f = m(i, c);
            Integer g = m(r, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = m(i, j) * g - m(r, j) * f;
            Integer content = 0;
            for (std::size_t j = c; j < m.cols(); ++j) content = gcd(content, m(i, j));
            if (content > 1)
                for (std::size_t j = c; j < m.cols(); ++j) mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), content.get_mpz_t());
        }
        ++r;
    }
    return r;
}

RationalMatrix rational_inverse(const IntMatrix& a)
{
    if (!a.square()) throw std::invalid_argument("inverse of non-square matrix");
    const std::size_t n = a.rows();
    RationalMatrix m = to_rational(a);
    RationalMatrix inv = RationalMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(m(p, c)) == 0) ++p;
        if (p == n) throw std::domain_error("singular matrix has no inverse");
        for (std::size_t j = 0; j < n; ++j) {
            std::swap(m(c, j), m(p, j));
            std::swap(inv(c, j), inv(p, j));
        }
        Rational piv = m(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            m(c, j) /= piv;
            inv(c, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || sgn(m(i, c)) == 0) continue;
            Rational f = m(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) -= f * m(c, j);
                inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

IntMatrix unimodular_inverse(const IntMatrix& a)
{
    Integer d = determinant(a);
    if (abs(d) != 1) throw std::domain_error("matrix is not unimodular");
    auto inv = to_integer(rational_inverse(a));
    if (!inv) throw std::logic_error("unimodular inverse is not integral");
    return *inv;
}

Integer frobenius_norm2(const IntMatrix& a)
{
    Integer s = 0;
    for (const auto& x : a.data()) s += x * x;
    return s;
}

bool lex_less(const IntMatrix& a, const IntMatrix& b)
{
    if (a.rows() != b.rows()) return a.rows() < b.rows();
    if (a.cols() != b.cols()) return a.cols() < b.cols();
    return std::lexicographical_compare(a.data().begin(), a.data().end(), b.data().begin(), b.data().end());
}

namespace {

template <typename T>
std::string render(const Matrix<T>& a)
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (i) os << ',';
        os << '[';
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (j) os << ',';
            os << a(i, j).get_str();
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

}  // namespace

std::string to_string(const IntMatrix& a) { return render(a); }
std::string to_string(const RationalMatrix& a) { return render(a); }

std::vector<std::vector<std::string>> to_rows(const IntMatrix& a)
{
    std::vector<std::vector<std::string>> out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out[i].push_back(a(i, j).get_str());
    return out;
}

IntMatrix parse_matrix_text(std::istream& in)
{
    long long rows = -1;
    long long cols = -1;
    if (!(in >> rows >> cols) || rows < 0 || cols < 0)
        throw std::invalid_argument("matrix text: expected 'rows cols' header");
    IntMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    for (long long k = 0; k < rows * cols; ++k) {
        std::string tok;
        if (!(in >> tok))
            throw std::invalid_argument("matrix text: expected " + std::to_string(rows * cols) + " entries, found " +
                                        std::to_string(k));
        Integer v;
        if (v.set_str(tok, 10) != 0) throw std::invalid_argument("matrix text: entry " + std::to_string(k + 1) + " is not an integer: " + tok);
        m(static_cast<std::size_t>(k / cols), static_cast<std::size_t>(k % cols)) = v;
    }
    std::string extra;
    if (in >> extra) throw std::invalid_argument("matrix text: trailing token '" + extra + "'");
    return m;
}

IntMatrix parse_matrix_text(const std::string& text)
{
    std::istringstream is(text);
    return parse_matrix_text(is);
}

namespace {

bool probably_prime(const Integer& n) { return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

// Pollard rho (Brent variant) for a composite n; returns a nontrivial factor.
Integer rho_factor(const Integer& n)
{
    for (unsigned long c = 1;; ++c) {
        Integer x = 2, y = 2, d = 1;
        auto f = [&](const Integer& v) {
            Integer r = v * v + c;
            return Integer(r % n);
        };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = gcd(Integer(abs(x - y)), n);
        }
        if (d != n) return d;
    }
}

void split_prime(const Integer& n, std::vector<Integer>& out)
{
    if (n == 1) return;
    if (probably_prime(n)) {
        out.push_back(n);
        return;
    }
    Integer d = rho_factor(n);
    split_prime(d, out);
    split_prime(Integer(n / d), out);
}

}  // namespace

std::vector<Integer> prime_factors(Integer n)
{
    n = abs(n);
    std::vector<Integer> out;
    if (n < 2) return out;
    for (unsigned long p = 2; p < 1000 && p * p <= n; ++p) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            out.emplace_back(p);
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) n /= p;
        }
    }
    split_prime(n, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Integer radical(Integer n)
{
    Integer r = 1;
    for (const auto& p : prime_factors(std::move(n))) r *= p;
    return r;
}

}  // namespace tilekt
