#include "heckestat/fp_matrix.hpp"

#include <algorithm>

#include "heckestat/fp_polynomial.hpp"

namespace heckestat {
namespace ffalg {

namespace {

void require_same_field(const FpMatrix& a, const FpMatrix& b) {
    if (a.field() != b.field())
        throw std::invalid_argument("FpMatrix: mixed coefficient fields");
}

}  // namespace

FpMatrix FpMatrix::identity(PrimeField field, std::size_t n) {
    FpMatrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

FpMatrix FpMatrix::operator+(const FpMatrix& o) const {
    require_same_field(*this, o);
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("FpMatrix::+: shape mismatch");
    FpMatrix r(field_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i)
        r.a_[i] = field_.add(a_[i], o.a_[i]);
    return r;
}

FpMatrix FpMatrix::operator-(const FpMatrix& o) const {
    require_same_field(*this, o);
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("FpMatrix::-: shape mismatch");
    FpMatrix r(field_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i)
        r.a_[i] = field_.sub(a_[i], o.a_[i]);
    return r;
}

FpMatrix FpMatrix::operator*(const FpMatrix& o) const {
    require_same_field(*this, o);
    if (cols_ != o.rows_)
        throw std::invalid_argument("FpMatrix::*: shape mismatch");
    const std::uint64_t p = field_.p();
    // How many products fit in a u64 accumulator before reduction.
    const std::uint64_t pm1 = p - 1;
    const std::uint64_t budget =
        pm1 == 0 ? ~0ull : (~0ull - pm1) / (pm1 * pm1 ? pm1 * pm1 : 1);
    FpMatrix r(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < o.cols_; ++j) {
            std::uint64_t acc = 0;
            std::uint64_t since_reduce = 0;
            for (std::size_t k = 0; k < cols_; ++k) {
                acc += static_cast<std::uint64_t>(at(i, k)) * o.at(k, j);
                if (++since_reduce >= budget) {
                    acc %= p;
                    since_reduce = 0;
                }
            }
            r.set(i, j, static_cast<std::uint32_t>(acc % p));
        }
    }
    return r;
}

FpMatrix FpMatrix::scaled(std::uint32_t c) const {
    FpMatrix r(field_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_.mul(a_[i], c);
    return r;
}

FpMatrix FpMatrix::transposed() const {
    FpMatrix r(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
    return r;
}

FpMatrix FpMatrix::pow(std::uint64_t e) const {
    if (rows_ != cols_)
        throw std::invalid_argument("FpMatrix::pow: non-square matrix");
    FpMatrix r = identity(field_, rows_);
    FpMatrix b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        if (e >>= 1) b = b * b;
    }
    return r;
}

bool FpMatrix::operator==(const FpMatrix& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ &&
           a_ == o.a_;
}

bool FpMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(),
                       [](std::uint32_t v) { return v == 0; });
}

FpMatrix FpMatrix::stacked(const FpMatrix& other) const {
    require_same_field(*this, other);
    if (cols_ != other.cols_)
        throw std::invalid_argument("FpMatrix::stacked: column mismatch");
    FpMatrix r(field_, rows_ + other.rows_, cols_);
    std::copy(a_.begin(), a_.end(), r.a_.begin());
    std::copy(other.a_.begin(), other.a_.end(), r.a_.begin() + a_.size());
    return r;
}

RrefResult rref(const FpMatrix& m) {
    const PrimeField& F = m.field();
    FpMatrix r = m;
    std::vector<std::size_t> pivots;
    std::size_t prow = 0;
    for (std::size_t col = 0; col < r.cols() && prow < r.rows(); ++col) {
        std::size_t sel = prow;
        while (sel < r.rows() && r.at(sel, col) == 0) ++sel;
        if (sel == r.rows()) continue;
        if (sel != prow)
            for (std::size_t j = 0; j < r.cols(); ++j) {
                std::uint32_t t = r.at(prow, j);
                r.set(prow, j, r.at(sel, j));
                r.set(sel, j, t);
            }
        const std::uint32_t piv_inv = F.inv(r.at(prow, col));
        for (std::size_t j = col; j < r.cols(); ++j)
            r.set(prow, j, F.mul(r.at(prow, j), piv_inv));
        for (std::size_t i = 0; i < r.rows(); ++i) {
            if (i == prow) continue;
            const std::uint32_t f = r.at(i, col);
            if (f == 0) continue;
            for (std::size_t j = col; j < r.cols(); ++j)
                r.set(i, j, F.sub(r.at(i, j), F.mul(f, r.at(prow, j))));
        }
        pivots.push_back(col);
        ++prow;
    }
    return RrefResult{std::move(r), std::move(pivots), prow};
}

FpMatrix kernel_basis(const FpMatrix& m) {
    const PrimeField& F = m.field();
    RrefResult e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : e.pivots) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    FpMatrix basis(F, free_cols.size(), m.cols());
    for (std::size_t bi = 0; bi < free_cols.size(); ++bi) {
        const std::size_t fc = free_cols[bi];
        basis.set(bi, fc, 1);
        for (std::size_t pi = 0; pi < e.pivots.size(); ++pi)
            basis.set(bi, e.pivots[pi], F.neg(e.matrix.at(pi, fc)));
    }
    return basis;
}

FpPolynomial char_poly_fp(const FpMatrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("char_poly_fp: non-square matrix");
    const PrimeField& F = m.field();
    const std::size_t n = m.rows();
    if (n == 0) return FpPolynomial::one(F);

    // Reduce to upper Hessenberg form by similarity transforms, then use
    // the standard leading-minor recurrence (Cohen, Alg. 2.2.9).
    FpMatrix h = m;
    for (std::size_t j = 0; j + 2 <= n; ++j) {
        std::size_t sel = j + 1;
        while (sel < n && h.at(sel, j) == 0) ++sel;
        if (sel == n) continue;
        if (sel != j + 1) {
            for (std::size_t c = 0; c < n; ++c) {
                std::uint32_t t = h.at(j + 1, c);
                h.set(j + 1, c, h.at(sel, c));
                h.set(sel, c, t);
            }
            for (std::size_t r = 0; r < n; ++r) {
                std::uint32_t t = h.at(r, j + 1);
                h.set(r, j + 1, h.at(r, sel));
                h.set(r, sel, t);
            }
        }
        const std::uint32_t inv = F.inv(h.at(j + 1, j));
        for (std::size_t i = j + 2; i < n; ++i) {
            const std::uint32_t f = F.mul(h.at(i, j), inv);
            if (f == 0) continue;
            // row_i -= f * row_{j+1}; col_{j+1} += f * col_i
            for (std::size_t c = 0; c < n; ++c)
                h.set(i, c, F.sub(h.at(i, c), F.mul(f, h.at(j + 1, c))));
            for (std::size_t r = 0; r < n; ++r)
                h.set(r, j + 1, F.add(h.at(r, j + 1), F.mul(f, h.at(r, i))));
        }
    }

    // p_k = char poly of the leading k x k block.
    std::vector<FpPolynomial> p;
    p.reserve(n + 1);
    p.push_back(FpPolynomial::one(F));
    const FpPolynomial x = FpPolynomial::x(F);
    for (std::size_t k = 1; k <= n; ++k) {
        FpPolynomial t =
            (x - FpPolynomial::from_ints(F, {static_cast<long long>(
                     h.at(k - 1, k - 1))})) *
            p[k - 1];
        std::uint32_t prod = 1;
        for (std::size_t i = 1; i < k; ++i) {
            // i counts how far below the diagonal entry we reach back.
            prod = F.mul(prod, h.at(k - i, k - i - 1));
            const std::uint32_t c = F.mul(prod, h.at(k - i - 1, k - 1));
            if (c != 0)
                t = t - FpPolynomial::from_ints(
                            F, {static_cast<long long>(c)}) *
                            p[k - i - 1];
        }
        p.push_back(std::move(t));
    }
    return p[n];
}

FpPolynomial min_poly_fp(const FpMatrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("min_poly_fp: non-square matrix");
    const PrimeField& F = m.field();
    const std::size_t n = m.rows();
    if (n == 0) return FpPolynomial::one(F);

    // lcm over standard basis vectors of the annihilator of the Krylov
    // sequence v, m^T v, ... (row vectors act on the right).
    FpPolynomial result = FpPolynomial::one(F);
    for (std::size_t start = 0; start < n; ++start) {
        // Krylov vectors as rows; find the first linear dependence.
        std::vector<std::vector<std::uint32_t>> krylov;
        std::vector<std::uint32_t> v(n, 0);
        v[start] = 1;
        // Echelon of the span with coordinate bookkeeping.
        // ech[i]: (pivot col, reduced row, expression in Krylov basis)
        struct EchRow {
            std::size_t pivot;
            std::vector<std::uint32_t> row;
            std::vector<std::uint32_t> expr;
        };
        std::vector<EchRow> ech;
        bool done = false;
        while (!done) {
            std::vector<std::uint32_t> w = v;
            std::vector<std::uint32_t> expr(krylov.size() + 1, 0);
            expr.back() = 1;
            for (const EchRow& e : ech) {
                const std::uint32_t c = w[e.pivot];
                if (c == 0) continue;
                for (std::size_t j = 0; j < n; ++j)
                    w[j] = F.sub(w[j], F.mul(c, e.row[j]));
                for (std::size_t j = 0; j < e.expr.size(); ++j)
                    expr[j] = F.sub(expr[j], F.mul(c, e.expr[j]));
            }
            std::size_t piv = 0;
            while (piv < n && w[piv] == 0) ++piv;
            if (piv == n) {
                // Dependence found: the expr coefficients give the
                // annihilator of the start vector.
                std::vector<std::uint32_t> coeffs(expr.begin(), expr.end());
                FpPolynomial ann(F, std::move(coeffs));
                result = lcm(result, ann.monic());
                done = true;
            } else {
                const std::uint32_t inv = F.inv(w[piv]);
                std::vector<std::uint32_t> nr(n), ne(expr.size());
                for (std::size_t j = 0; j < n; ++j) nr[j] = F.mul(w[j], inv);
                for (std::size_t j = 0; j < expr.size(); ++j)
                    ne[j] = F.mul(expr[j], inv);
                ech.push_back(EchRow{piv, std::move(nr), std::move(ne)});
                krylov.push_back(v);
                // advance v <- v * m
                std::vector<std::uint32_t> nv(n, 0);
                for (std::size_t j = 0; j < n; ++j) {
                    std::uint64_t acc = 0;
                    for (std::size_t i = 0; i < n; ++i)
                        acc += static_cast<std::uint64_t>(v[i]) * m.at(i, j);
                    nv[j] = static_cast<std::uint32_t>(acc % F.p());
                }
                v = std::move(nv);
            }
        }
        if (result.degree() == static_cast<long>(n)) break;
    }
    return result;
}

FpMatrix eval_poly_at(const FpPolynomial& f, const FpMatrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("eval_poly_at: non-square matrix");
    const PrimeField& F = m.field();
    const std::size_t n = m.rows();
    FpMatrix r(F, n, n);
    if (f.is_zero()) return r;
    for (long d = f.degree(); d >= 0; --d) {
        r = r * m;
        const std::uint32_t c = f.coeff(static_cast<std::size_t>(d));
        for (std::size_t i = 0; i < n; ++i) r.set(i, i, F.add(r.at(i, i), c));
    }
    return r;
}

bool solve_in_rref_basis(const FpMatrix& basis,
                         const std::vector<std::size_t>& pivots,
                         const std::uint32_t* v,
                         std::vector<std::uint32_t>& coords) {
    const PrimeField& F = basis.field();
    const std::size_t n = basis.cols();
    std::vector<std::uint32_t> w(v, v + n);
    coords.assign(basis.rows(), 0);
    for (std::size_t i = 0; i < basis.rows(); ++i) {
        const std::uint32_t c = w[pivots[i]];
        coords[i] = c;
        if (c == 0) continue;
        const std::uint32_t* br = basis.row(i);
        for (std::size_t j = 0; j < n; ++j) w[j] = F.sub(w[j], F.mul(c, br[j]));
    }
    for (std::size_t j = 0; j < n; ++j)
        if (w[j] != 0) return false;
    return true;
}

}  // namespace ffalg
}  // namespace heckestat
