#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <vector>

namespace heckestat {
namespace exactint {

// Dense matrix with arbitrary-precision integer entries.  Multiplication
// transparently uses a machine-word kernel when every entry (and every
// intermediate sum) provably fits in 64 bits.
class IntegerMatrix {
public:
    IntegerMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static IntegerMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const mpz_class& at(std::size_t i, std::size_t j) const {
        return a_[i * cols_ + j];
    }
    mpz_class& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, mpz_class v) {
        a_[i * cols_ + j] = std::move(v);
    }

    IntegerMatrix operator+(const IntegerMatrix& o) const;
    IntegerMatrix operator-(const IntegerMatrix& o) const;
    IntegerMatrix operator*(const IntegerMatrix& o) const;
    bool operator==(const IntegerMatrix& o) const;
    bool operator!=(const IntegerMatrix& o) const { return !(*this == o); }
    IntegerMatrix transposed() const;
    bool is_zero() const;

    // Entries concatenated row-major.
    std::vector<mpz_class> flattened() const;
    static IntegerMatrix from_flat(std::size_t rows, std::size_t cols,
                                   const std::vector<mpz_class>& entries);

    // max |entry|; 0 for an empty matrix.
    mpz_class max_abs() const;

private:
    std::size_t rows_, cols_;
    std::vector<mpz_class> a_;
};

struct HnfResult {
    IntegerMatrix h;                  // zero rows removed
    std::vector<std::size_t> pivots;  // pivot column of each row, increasing
    std::size_t rank;                 // == h.rows()
};

// Incremental row-style Hermite normal form.  Rows are folded in one at a
// time (Kannan-Bachem with immediate reduction), so the full input matrix
// never has to be materialized.
class HnfBuilder {
public:
    explicit HnfBuilder(std::size_t cols);

    void add_row(std::vector<mpz_class> row);
    std::size_t current_rank() const { return rows_.size(); }

    // Reduces entries above each pivot into [0, pivot) and returns the
    // canonical HNF.  The builder is left empty.
    HnfResult finalize();

private:
    std::size_t cols_;
    // Kept sorted by pivot column.
    struct Row {
        std::size_t pivot;
        std::vector<mpz_class> v;
    };
    std::vector<Row> rows_;
};

// Canonical row-style Hermite normal form of the row lattice of m.
HnfResult hnf(const IntegerMatrix& m);

// Integer coordinates of v with respect to the HNF basis, or nullopt if v
// is not in the row lattice.
std::optional<std::vector<mpz_class>> lattice_coordinates(
    const HnfResult& h, const std::vector<mpz_class>& v);

// Basis (as rows, in HNF) of the lattice {x : x * a = 0}.  The kernel of
// an integer matrix is saturated, so this is also a basis of the kernel
// of a over Q intersected with Z^rows.
IntegerMatrix kernel_lattice(const IntegerMatrix& a);

// Repeated coordinate extraction against a fixed HNF basis.  Keeps an
// int64 copy of the basis when it fits and falls back to exact mpz
// arithmetic on overflow, so results are always exact.
class LatticeCoordinater {
public:
    explicit LatticeCoordinater(const HnfResult& h);

    const HnfResult& basis() const { return h_; }

    // Integer coordinates of v in the basis, or nullopt if v is outside
    // the lattice (membership is verified exactly on every column).
    std::optional<std::vector<mpz_class>> coordinates(
        const std::vector<mpz_class>& v) const;

private:
    const HnfResult& h_;
    bool have64_ = false;
    std::vector<std::int64_t> h64_;  // row-major copy when it fits
};

}  // namespace exactint
}  // namespace heckestat
