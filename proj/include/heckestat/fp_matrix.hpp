#pragma once

#include <cstddef>
#include <vector>

#include "heckestat/primefield.hpp"

namespace heckestat {
namespace ffalg {

class FpPolynomial;

// Dense row-major matrix over F_p.  Values are immutable in spirit: all
// operations return new matrices.  Mixing matrices over different fields
// throws std::invalid_argument.
class FpMatrix {
public:
    FpMatrix(PrimeField field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static FpMatrix identity(PrimeField field, std::size_t n);

    const PrimeField& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::uint32_t at(std::size_t i, std::size_t j) const {
        return a_[i * cols_ + j];
    }
    void set(std::size_t i, std::size_t j, std::uint32_t v) {
        a_[i * cols_ + j] = v;
    }
    const std::uint32_t* row(std::size_t i) const { return &a_[i * cols_]; }
    std::uint32_t* row(std::size_t i) { return &a_[i * cols_]; }
    const std::vector<std::uint32_t>& data() const { return a_; }

    FpMatrix operator+(const FpMatrix& o) const;
    FpMatrix operator-(const FpMatrix& o) const;
    FpMatrix operator*(const FpMatrix& o) const;
    FpMatrix scaled(std::uint32_t c) const;
    FpMatrix transposed() const;
    FpMatrix pow(std::uint64_t e) const;
    bool operator==(const FpMatrix& o) const;
    bool operator!=(const FpMatrix& o) const { return !(*this == o); }
    bool is_zero() const;

    // Rows of `other` appended below this matrix.
    FpMatrix stacked(const FpMatrix& other) const;

private:
    PrimeField field_;
    std::size_t rows_, cols_;
    std::vector<std::uint32_t> a_;
};

struct RrefResult {
    FpMatrix matrix;
    std::vector<std::size_t> pivots;
    std::size_t rank;
};

// Unique reduced row echelon form; row space is preserved.
RrefResult rref(const FpMatrix& m);

// Basis of the right kernel {v : m v = 0}, one vector per row.
// Rows are returned in reduced echelon form, so the basis is canonical.
FpMatrix kernel_basis(const FpMatrix& m);

// Characteristic polynomial of a square matrix (monic, degree = dimension).
FpPolynomial char_poly_fp(const FpMatrix& m);

// Minimal polynomial: the monic annihilator of least degree.
FpPolynomial min_poly_fp(const FpMatrix& m);

// Evaluates a polynomial at a square matrix (Horner).
FpMatrix eval_poly_at(const FpPolynomial& f, const FpMatrix& m);

// Solves x * basis = v where the rows of `basis` are in reduced echelon
// form with the given pivot columns.  Returns false if v is outside the
// row space; otherwise fills coords (length = basis.rows()).
bool solve_in_rref_basis(const FpMatrix& basis,
                         const std::vector<std::size_t>& pivots,
                         const std::uint32_t* v,
                         std::vector<std::uint32_t>& coords);

}  // namespace ffalg
}  // namespace heckestat
