#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tilekt {

using Integer = mpz_class;
using Rational = mpq_class;

// Dense row-major matrix over an exact scalar type.
template <typename T>
class Matrix {
public:
    using Scalar = T;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<long>> rows);

    static Matrix identity(std::size_t n);
    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    const std::vector<T>& data() const { return data_; }

    Matrix transpose() const;
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    Matrix row_range(std::size_t r0, std::size_t nr) const { return block(r0, 0, nr, cols_); }
    Matrix col_range(std::size_t c0, std::size_t nc) const { return block(0, c0, rows_, nc); }
    bool is_zero() const;
    bool is_identity() const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;

template <typename T>
Matrix<T> operator+(Matrix<T> a, const Matrix<T>& b) { return a += b; }
template <typename T>
Matrix<T> operator-(Matrix<T> a, const Matrix<T>& b) { return a -= b; }
template <typename T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b);
template <typename T>
Matrix<T> operator*(const T& s, Matrix<T> a);

IntMatrix hcat(const IntMatrix& a, const IntMatrix& b);
IntMatrix vcat(const IntMatrix& a, const IntMatrix& b);
IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b);
IntMatrix power(const IntMatrix& a, unsigned long k);
IntMatrix mod_reduce(IntMatrix a, const Integer& m);
IntMatrix power_mod(const IntMatrix& a, unsigned long k, const Integer& m);

RationalMatrix to_rational(const IntMatrix& a);
// Returns the integer matrix when every entry has denominator one.
std::optional<IntMatrix> to_integer(const RationalMatrix& a);

Integer determinant(const IntMatrix& a);
std::size_t rank(const IntMatrix& a);
// Inverse of a unimodular matrix; throws if |det| != 1.
IntMatrix unimodular_inverse(const IntMatrix& a);
RationalMatrix rational_inverse(const IntMatrix& a);

Integer frobenius_norm2(const IntMatrix& a);
// Lexicographic order on (rows, cols, entries).
bool lex_less(const IntMatrix& a, const IntMatrix& b);

// "[[a,b],[c,d]]" with no spaces.
std::string to_string(const IntMatrix& a);
std::string to_string(const RationalMatrix& a);
std::vector<std::vector<std::string>> to_rows(const IntMatrix& a);

// Text format: "rows cols" followed by row-major integers.
IntMatrix parse_matrix_text(std::istream& in);
IntMatrix parse_matrix_text(const std::string& text);

Integer radical(Integer n);
std::vector<Integer> prime_factors(Integer n);

extern template class Matrix<Integer>;
extern template class Matrix<Rational>;
extern template Matrix<Integer> operator*(const Matrix<Integer>&, const Matrix<Integer>&);
extern template Matrix<Rational> operator*(const Matrix<Rational>&, const Matrix<Rational>&);
extern template Matrix<Integer> operator*(const Integer&, Matrix<Integer>);
extern template Matrix<Rational> operator*(const Rational&, Matrix<Rational>);

}  // namespace tilekt
