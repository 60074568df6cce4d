#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <utility>
#include <vector>

#include "heckestat/exact_polynomial.hpp"
#include "heckestat/integer_matrix.hpp"

namespace heckestat {
namespace exactint {

// Dense matrix over Q.  Entries are kept in lowest terms (mpq canonical
// form).  No floating point anywhere.
class RationalMatrix {
public:
    RationalMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static RationalMatrix identity(std::size_t n);
    static RationalMatrix from_integer(const IntegerMatrix& m);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const mpq_class& at(std::size_t i, std::size_t j) const {
        return a_[i * cols_ + j];
    }
    mpq_class& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }

    RationalMatrix operator+(const RationalMatrix& o) const;
    RationalMatrix operator-(const RationalMatrix& o) const;
    RationalMatrix operator*(const RationalMatrix& o) const;
    bool operator==(const RationalMatrix& o) const;
    bool operator!=(const RationalMatrix& o) const { return !(*this == o); }
    RationalMatrix transposed() const;
    bool is_zero() const;
    mpq_class trace() const;

    // Least common multiple of the entry denominators and the scaled
    // integer matrix den * this.
    std::pair<IntegerMatrix, mpz_class> cleared_denominators() const;

private:
    std::size_t rows_, cols_;
    std::vector<mpq_class> a_;
};

// Exact determinant of an integer matrix (CRT over word-size primes with
// a Hadamard bound).
mpz_class determinant(const IntegerMatrix& m);

// Characteristic polynomial of an integer matrix: monic, integer
// coefficients, degree = dimension.
IntegerPolynomial char_poly_z(const IntegerMatrix& m);

// Characteristic polynomial of a rational matrix, exact coefficients.
RationalPolynomial char_poly_q(const RationalMatrix& m);

// Determinant of the trace-form Gram matrix Trace(b_i * b_j) of a
// commuting family spanning a matrix algebra over Q.  Nonzero iff the
// spanned algebra is semisimple.  Throws if the family does not commute.
mpq_class gram_determinant(const std::vector<RationalMatrix>& basis);

}  // namespace exactint
}  // namespace heckestat
