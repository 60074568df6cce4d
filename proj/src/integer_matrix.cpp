#include "heckestat/integer_matrix.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace heckestat {
namespace exactint {

namespace {

// v -= q * w, written with mpz primitives to avoid temporaries.
void row_submul(std::vector<mpz_class>& v, const mpz_class& q,
                const std::vector<mpz_class>& w) {
    if (q == 0) return;
    for (std::size_t j = 0; j < v.size(); ++j)
        mpz_submul(v[j].get_mpz_t(), q.get_mpz_t(), w[j].get_mpz_t());
}

bool fits_i64(const mpz_class& z) {
    return mpz_fits_slong_p(z.get_mpz_t()) != 0;
}

}  // namespace

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntegerMatrix IntegerMatrix::operator+(const IntegerMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("IntegerMatrix::+: shape mismatch");
    IntegerMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

IntegerMatrix IntegerMatrix::operator-(const IntegerMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("IntegerMatrix::-: shape mismatch");
    IntegerMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

namespace {

void set_mpz_from_i128(mpz_class& dst, __int128 v) {
    const bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v)
                              : static_cast<unsigned __int128>(v);
    const std::uint64_t hi = static_cast<std::uint64_t>(u >> 64);
    const std::uint64_t lo = static_cast<std::uint64_t>(u);
    mpz_set_ui(dst.get_mpz_t(), static_cast<unsigned long>(hi));
    mpz_mul_2exp(dst.get_mpz_t(), dst.get_mpz_t(), 64);
    mpz_add_ui(dst.get_mpz_t(), dst.get_mpz_t(),
               static_cast<unsigned long>(lo));
    if (neg) mpz_neg(dst.get_mpz_t(), dst.get_mpz_t());
}

}  // namespace

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& o) const {
    if (cols_ != o.rows_)
        throw std::invalid_argument("IntegerMatrix::*: shape mismatch");
    IntegerMatrix r(rows_, o.cols_);

    // Word-size kernels when the inner-product bound allows: int64
    // accumulators, then 128-bit accumulators, then exact mpz.
    const mpz_class ma = max_abs(), mb = o.max_abs();
    mpz_class bound = ma * mb * static_cast<unsigned long>(cols_ ? cols_ : 1);
    if (fits_i64(ma) && fits_i64(mb) &&
        mpz_sizeinbase(bound.get_mpz_t(), 2) <= 125) {
        const bool small = mpz_sizeinbase(bound.get_mpz_t(), 2) <= 62;
        std::vector<std::int64_t> A(a_.size()), B(o.a_.size());
        for (std::size_t i = 0; i < a_.size(); ++i) A[i] = a_[i].get_si();
        for (std::size_t i = 0; i < o.a_.size(); ++i) B[i] = o.a_[i].get_si();
        const std::size_t n = o.cols_;
        if (small) {
            std::vector<std::int64_t> acc(n);
            for (std::size_t i = 0; i < rows_; ++i) {
                std::fill(acc.begin(), acc.end(), 0);
                for (std::size_t k = 0; k < cols_; ++k) {
                    const std::int64_t aik = A[i * cols_ + k];
                    if (aik == 0) continue;
                    const std::int64_t* brow = &B[k * n];
                    for (std::size_t j = 0; j < n; ++j)
                        acc[j] += aik * brow[j];
                }
                for (std::size_t j = 0; j < n; ++j)
                    r.at(i, j) = static_cast<long>(acc[j]);
            }
        } else {
            std::vector<__int128> acc(n);
            for (std::size_t i = 0; i < rows_; ++i) {
                std::fill(acc.begin(), acc.end(), 0);
                for (std::size_t k = 0; k < cols_; ++k) {
                    const std::int64_t aik = A[i * cols_ + k];
                    if (aik == 0) continue;
                    const std::int64_t* brow = &B[k * n];
                    for (std::size_t j = 0; j < n; ++j)
                        acc[j] += static_cast<__int128>(aik) * brow[j];
                }
                for (std::size_t j = 0; j < n; ++j)
                    set_mpz_from_i128(r.at(i, j), acc[j]);
            }
        }
        return r;
    }

    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < o.cols_; ++j) {
            mpz_class& acc = r.at(i, j);
            for (std::size_t k = 0; k < cols_; ++k)
                mpz_addmul(acc.get_mpz_t(), at(i, k).get_mpz_t(),
                           o.at(k, j).get_mpz_t());
        }
    return r;
}

bool IntegerMatrix::operator==(const IntegerMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

IntegerMatrix IntegerMatrix::transposed() const {
    IntegerMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool IntegerMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(),
                       [](const mpz_class& v) { return v == 0; });
}

std::vector<mpz_class> IntegerMatrix::flattened() const { return a_; }

IntegerMatrix IntegerMatrix::from_flat(std::size_t rows, std::size_t cols,
                                       const std::vector<mpz_class>& entries) {
    if (entries.size() != rows * cols)
        throw std::invalid_argument("IntegerMatrix::from_flat: size mismatch");
    IntegerMatrix m(rows, cols);
    m.a_ = entries;
    return m;
}

mpz_class IntegerMatrix::max_abs() const {
    mpz_class m = 0;
    for (const mpz_class& v : a_)
        if (mpz_cmpabs(v.get_mpz_t(), m.get_mpz_t()) > 0) m = abs(v);
    return m;
}

HnfBuilder::HnfBuilder(std::size_t cols) : cols_(cols) {}

void HnfBuilder::add_row(std::vector<mpz_class> row) {
    if (row.size() != cols_)
        throw std::invalid_argument("HnfBuilder::add_row: length mismatch");
    std::vector<mpz_class> v = std::move(row);
    mpz_class q;
    // Entries are kept reduced against every pivot at all times; without
    // this the Euclidean exchanges below blow intermediate entries up by
    // hundreds of bits even when the final form is tiny.
    auto reduce_at = [&](std::vector<mpz_class>& target,
                         const Row& against) {
        const mpz_class& x = target[against.pivot];
        if (x == 0) return;
        if (x > 0 && x < against.v[against.pivot]) return;
        mpz_fdiv_q(q.get_mpz_t(), x.get_mpz_t(),
                   against.v[against.pivot].get_mpz_t());
        row_submul(target, q, against.v);
    };
    // one upfront pass bounds the entries of v at every pivot column
    for (const Row& rr : rows_) reduce_at(v, rr);
    for (;;) {
        std::size_t piv = 0;
        while (piv < cols_ && v[piv] == 0) ++piv;
        if (piv == cols_) return;  // reduced to zero

        auto it = std::lower_bound(
            rows_.begin(), rows_.end(), piv,
            [](const Row& r, std::size_t c) { return r.pivot < c; });
        if (it == rows_.end() || it->pivot != piv) {
            if (v[piv] < 0)
                for (auto& x : v) x = -x;
            const std::size_t idx =
                static_cast<std::size_t>(it - rows_.begin());
            rows_.insert(it, Row{piv, std::move(v)});
            // keep the new row reduced against the later pivots
            for (std::size_t j = idx + 1; j < rows_.size(); ++j)
                reduce_at(rows_[idx].v, rows_[j]);
            return;
        }
        // Same pivot column: fold v into the existing row by Euclidean
        // exchange until the pivot entry of v vanishes.  Most pivots are
        // 1, in which case the first division is exact and no exchange
        // happens; genuine exchanges shrink the pivot and are rare.
        Row& r = *it;
        bool r_changed = false;
        while (v[piv] != 0) {
            mpz_fdiv_q(q.get_mpz_t(), v[piv].get_mpz_t(),
                       r.v[piv].get_mpz_t());
            row_submul(v, q, r.v);
            if (v[piv] != 0) {
                std::swap(v, r.v);
                r_changed = true;
            }
        }
        if (r_changed) {
            const std::size_t idx =
                static_cast<std::size_t>(it - rows_.begin());
            for (std::size_t j = idx + 1; j < rows_.size(); ++j)
                reduce_at(rows_[idx].v, rows_[j]);
        }
        // keep the remainder reduced at every pivot so that quotients
        // stay pivot-sized instead of compounding across the march
        for (const Row& rr : rows_) reduce_at(v, rr);
    }
}

HnfResult HnfBuilder::finalize() {
    // Reduce entries above each pivot into [0, pivot).
    for (std::size_t j = 0; j < rows_.size(); ++j) {
        const std::size_t pc = rows_[j].pivot;
        const mpz_class& piv = rows_[j].v[pc];
        for (std::size_t i = 0; i < j; ++i) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), rows_[i].v[pc].get_mpz_t(),
                       piv.get_mpz_t());
            row_submul(rows_[i].v, q, rows_[j].v);
        }
    }
    HnfResult res{IntegerMatrix(rows_.size(), cols_), {}, rows_.size()};
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        res.pivots.push_back(rows_[i].pivot);
        for (std::size_t j = 0; j < cols_; ++j)
            res.h.at(i, j) = std::move(rows_[i].v[j]);
    }
    rows_.clear();
    return res;
}

HnfResult hnf(const IntegerMatrix& m) {
    HnfBuilder b(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::vector<mpz_class> row(m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j) row[j] = m.at(i, j);
        b.add_row(std::move(row));
    }
    return b.finalize();
}

std::optional<std::vector<mpz_class>> lattice_coordinates(
    const HnfResult& h, const std::vector<mpz_class>& v) {
    if (v.size() != h.h.cols())
        throw std::invalid_argument("lattice_coordinates: length mismatch");

    // Back-substitution along pivots.  Coordinates depend only on the
    // pivot columns; the rest of the row is needed to verify membership.
    std::vector<mpz_class> coords(h.rank);
    std::vector<mpz_class> pv(h.rank);
    for (std::size_t i = 0; i < h.rank; ++i) pv[i] = v[h.pivots[i]];
    for (std::size_t i = 0; i < h.rank; ++i) {
        mpz_class q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), pv[i].get_mpz_t(),
                    h.h.at(i, h.pivots[i]).get_mpz_t());
        if (r != 0) return std::nullopt;
        coords[i] = q;
        if (q != 0)
            for (std::size_t k = i + 1; k < h.rank; ++k)
                mpz_submul(pv[k].get_mpz_t(), q.get_mpz_t(),
                           h.h.at(i, h.pivots[k]).get_mpz_t());
    }

    // Full verification: v - sum coords_i * h_i == 0.
    std::vector<mpz_class> w = v;
    for (std::size_t i = 0; i < h.rank; ++i) {
        if (coords[i] == 0) continue;
        for (std::size_t j = 0; j < w.size(); ++j)
            mpz_submul(w[j].get_mpz_t(), coords[i].get_mpz_t(),
                       h.h.at(i, j).get_mpz_t());
    }
    for (const mpz_class& x : w)
        if (x != 0) return std::nullopt;
    return coords;
}

LatticeCoordinater::LatticeCoordinater(const HnfResult& h) : h_(h) {
    have64_ = fits_i64(h.h.max_abs());
    if (have64_) {
        h64_.resize(h.rank * h.h.cols());
        for (std::size_t i = 0; i < h.rank; ++i)
            for (std::size_t j = 0; j < h.h.cols(); ++j)
                h64_[i * h.h.cols() + j] = h.h.at(i, j).get_si();
    }
}

std::optional<std::vector<mpz_class>> LatticeCoordinater::coordinates(
    const std::vector<mpz_class>& v) const {
    if (v.size() != h_.h.cols())
        throw std::invalid_argument("LatticeCoordinater: length mismatch");
    if (have64_) {
        const std::size_t n = h_.h.cols();
        bool ok = true;
        std::vector<__int128> w(n);
        for (std::size_t j = 0; j < n && ok; ++j) {
            if (fits_i64(v[j])) {
                w[j] = v[j].get_si();
            } else if (mpz_sizeinbase(v[j].get_mpz_t(), 2) <= 120) {
                mpz_class hi = v[j] >> 64;
                mpz_class lo = v[j] - (hi << 64);
                w[j] = (static_cast<__int128>(hi.get_si()) << 64) +
                       static_cast<__int128>(lo.get_ui());
            } else {
                ok = false;
            }
        }
        if (ok) {
            std::vector<__int128> coords(h_.rank, 0);
            for (std::size_t i = 0; i < h_.rank && ok; ++i) {
                const std::int64_t* hr = &h64_[i * n];
                const std::int64_t piv = hr[h_.pivots[i]];
                const __int128 val = w[h_.pivots[i]];
                const __int128 q = val / piv;
                if (val % piv != 0) {
                    // exact divisibility required for integer coordinates
                    return std::nullopt;
                }
                coords[i] = q;
                if (q == 0) continue;
                for (std::size_t j = 0; j < n; ++j) {
                    __int128 prod;
                    if (__builtin_mul_overflow(
                            q, static_cast<__int128>(hr[j]), &prod) ||
                        __builtin_sub_overflow(w[j], prod, &w[j])) {
                        ok = false;
                        break;
                    }
                }
            }
            if (ok) {
                for (std::size_t j = 0; j < n; ++j)
                    if (w[j] != 0) return std::nullopt;
                std::vector<mpz_class> out(h_.rank);
                for (std::size_t i = 0; i < h_.rank; ++i)
                    set_mpz_from_i128(out[i], coords[i]);
                return out;
            }
            // fall through to the exact path on overflow
        }
    }
    return lattice_coordinates(h_, v);
}

IntegerMatrix kernel_lattice(const IntegerMatrix& a) {
    // HNF of [a | I]; rows whose a-part vanished span the kernel lattice.
    const std::size_t n = a.rows(), m = a.cols();
    HnfBuilder b(m + n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<mpz_class> row(m + n);
        for (std::size_t j = 0; j < m; ++j) row[j] = a.at(i, j);
        row[m + i] = 1;
        b.add_row(std::move(row));
    }
    HnfResult h = b.finalize();
    std::vector<std::size_t> kernel_rows;
    for (std::size_t i = 0; i < h.rank; ++i)
        if (h.pivots[i] >= m) kernel_rows.push_back(i);
    IntegerMatrix k(kernel_rows.size(), n);
    for (std::size_t i = 0; i < kernel_rows.size(); ++i)
        for (std::size_t j = 0; j < n; ++j)
            k.at(i, j) = h.h.at(kernel_rows[i], m + j);
    return k;
}

}  // namespace exactint
}  // namespace heckestat
