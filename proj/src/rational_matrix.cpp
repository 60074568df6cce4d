#include "heckestat/rational_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "heckestat/fp_matrix.hpp"
#include "heckestat/fp_polynomial.hpp"

namespace heckestat {
namespace exactint {

const mpz_class IntegerPolynomial::zero_ = 0;
const mpq_class RationalPolynomial::zero_ = 0;

IntegerPolynomial::IntegerPolynomial(std::vector<mpz_class> coeffs)
    : c_(std::move(coeffs)) {
    normalize();
}

IntegerPolynomial IntegerPolynomial::from_ints(
    const std::vector<long>& coeffs) {
    std::vector<mpz_class> c(coeffs.begin(), coeffs.end());
    return IntegerPolynomial(std::move(c));
}

void IntegerPolynomial::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const mpz_class& IntegerPolynomial::coeff(std::size_t i) const {
    return i < c_.size() ? c_[i] : zero_;
}

IntegerPolynomial IntegerPolynomial::operator+(
    const IntegerPolynomial& o) const {
    std::vector<mpz_class> c(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) + o.coeff(i);
    return IntegerPolynomial(std::move(c));
}

IntegerPolynomial IntegerPolynomial::operator-(
    const IntegerPolynomial& o) const {
    std::vector<mpz_class> c(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) - o.coeff(i);
    return IntegerPolynomial(std::move(c));
}

IntegerPolynomial IntegerPolynomial::operator*(
    const IntegerPolynomial& o) const {
    if (is_zero() || o.is_zero()) return IntegerPolynomial();
    std::vector<mpz_class> c(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            mpz_addmul(c[i + j].get_mpz_t(), c_[i].get_mpz_t(),
                       o.c_[j].get_mpz_t());
    return IntegerPolynomial(std::move(c));
}

IntegerPolynomial IntegerPolynomial::derivative() const {
    if (c_.size() <= 1) return IntegerPolynomial();
    std::vector<mpz_class> c(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
        c[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return IntegerPolynomial(std::move(c));
}

mpz_class IntegerPolynomial::eval(const mpz_class& x) const {
    mpz_class r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
}

RationalPolynomial::RationalPolynomial(std::vector<mpq_class> coeffs)
    : c_(std::move(coeffs)) {
    for (auto& q : c_) q.canonicalize();
    normalize();
}

RationalPolynomial::RationalPolynomial(const IntegerPolynomial& p) {
    c_.reserve(p.coeffs().size());
    for (const mpz_class& z : p.coeffs()) c_.emplace_back(z);
    normalize();
}

void RationalPolynomial::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const mpq_class& RationalPolynomial::coeff(std::size_t i) const {
    return i < c_.size() ? c_[i] : zero_;
}

RationalPolynomial RationalPolynomial::operator+(
    const RationalPolynomial& o) const {
    std::vector<mpq_class> c(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) + o.coeff(i);
    return RationalPolynomial(std::move(c));
}

RationalPolynomial RationalPolynomial::operator-(
    const RationalPolynomial& o) const {
    std::vector<mpq_class> c(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) - o.coeff(i);
    return RationalPolynomial(std::move(c));
}

RationalPolynomial RationalPolynomial::operator*(
    const RationalPolynomial& o) const {
    if (is_zero() || o.is_zero()) return RationalPolynomial();
    std::vector<mpq_class> c(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            c[i + j] += c_[i] * o.c_[j];
    return RationalPolynomial(std::move(c));
}

std::pair<RationalPolynomial, RationalPolynomial> RationalPolynomial::divmod(
    const RationalPolynomial& d) const {
    if (d.is_zero())
        throw std::domain_error("RationalPolynomial::divmod: zero divisor");
    if (degree() < d.degree()) return {RationalPolynomial(), *this};
    std::vector<mpq_class> rem = c_;
    std::vector<mpq_class> quo(c_.size() - d.c_.size() + 1);
    const mpq_class& lead = d.c_.back();
    for (std::size_t k = quo.size(); k-- > 0;) {
        mpq_class q = rem[k + d.c_.size() - 1] / lead;
        quo[k] = q;
        if (q == 0) continue;
        for (std::size_t j = 0; j < d.c_.size(); ++j)
            rem[k + j] -= q * d.c_[j];
    }
    return {RationalPolynomial(std::move(quo)),
            RationalPolynomial(std::move(rem))};
}

RationalPolynomial RationalPolynomial::monic() const {
    if (is_zero() || c_.back() == 1) return *this;
    std::vector<mpq_class> c(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] / c_.back();
    return RationalPolynomial(std::move(c));
}

RationalPolynomial RationalPolynomial::derivative() const {
    if (c_.size() <= 1) return RationalPolynomial();
    std::vector<mpq_class> c(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
        c[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return RationalPolynomial(std::move(c));
}

std::optional<IntegerPolynomial> RationalPolynomial::to_integer() const {
    std::vector<mpz_class> c(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].get_den() != 1) return std::nullopt;
        c[i] = c_[i].get_num();
    }
    return IntegerPolynomial(std::move(c));
}

RationalPolynomial gcd(const RationalPolynomial& a,
                       const RationalPolynomial& b) {
    RationalPolynomial x = a, y = b;
    while (!y.is_zero()) {
        RationalPolynomial r = x.divmod(y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

RationalPolynomial squarefree_part(const RationalPolynomial& f) {
    if (f.degree() <= 0) return f.monic();
    RationalPolynomial g = gcd(f, f.derivative());
    return f.divmod(g).first.monic();
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::from_integer(const IntegerMatrix& m) {
    RationalMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r.at(i, j) = m.at(i, j);
    return r;
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("RationalMatrix::+: shape mismatch");
    RationalMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("RationalMatrix::-: shape mismatch");
    RationalMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
    if (cols_ != o.rows_)
        throw std::invalid_argument("RationalMatrix::*: shape mismatch");
    // Integral matrices take the IntegerMatrix kernel (which has its own
    // word-size fast path).
    auto [ai, ad] = cleared_denominators();
    auto [bi, bd] = o.cleared_denominators();
    IntegerMatrix prod = ai * bi;
    const mpz_class den = ad * bd;
    RationalMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < o.cols_; ++j) {
            r.at(i, j) = mpq_class(prod.at(i, j), den);
            r.at(i, j).canonicalize();
        }
    return r;
}

bool RationalMatrix::operator==(const RationalMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

RationalMatrix RationalMatrix::transposed() const {
    RationalMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool RationalMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(),
                       [](const mpq_class& v) { return v == 0; });
}

mpq_class RationalMatrix::trace() const {
    if (rows_ != cols_)
        throw std::invalid_argument("RationalMatrix::trace: non-square");
    mpq_class t = 0;
    for (std::size_t i = 0; i < rows_; ++i) t += at(i, i);
    return t;
}

std::pair<IntegerMatrix, mpz_class> RationalMatrix::cleared_denominators()
    const {
    mpz_class den = 1;
    for (const mpq_class& q : a_)
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
    IntegerMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            const mpq_class& q = at(i, j);
            m.at(i, j) = q.get_num() * (den / q.get_den());
        }
    return {std::move(m), std::move(den)};
}

namespace {

// Word-size primes for CRT reconstruction, largest first.
std::vector<std::uint32_t> crt_primes(double bits_needed) {
    std::vector<std::uint32_t> primes;
    double bits = 0;
    for (std::uint32_t p = 0x7fffffffu; bits <= bits_needed + 1; p -= 2) {
        if (ffalg::is_prime_u64(p)) {
            primes.push_back(p);
            bits += std::log2(static_cast<double>(p));
        }
        if (p < 3) throw std::logic_error("crt_primes: ran out of primes");
    }
    return primes;
}

ffalg::FpMatrix reduce_mod(const IntegerMatrix& m, ffalg::PrimeField F) {
    ffalg::FpMatrix r(F, m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r.set(i, j, static_cast<std::uint32_t>(mpz_fdiv_ui(
                            m.at(i, j).get_mpz_t(), F.p())));
    return r;
}

// Symmetric CRT: combines residues r_i mod p_i into the representative
// of smallest absolute value.
class CrtAccumulator {
public:
    void add(std::uint32_t residue, std::uint32_t p) {
        if (modulus_ == 1) {
            value_ = residue;
            modulus_ = p;
        } else {
            const std::uint32_t vp = static_cast<std::uint32_t>(
                mpz_fdiv_ui(value_.get_mpz_t(), p));
            const std::uint32_t mp = static_cast<std::uint32_t>(
                mpz_fdiv_ui(modulus_.get_mpz_t(), p));
            ffalg::PrimeField F(p);
            const std::uint32_t t = F.mul(F.sub(residue, vp), F.inv(mp));
            value_ += modulus_ * t;
            modulus_ *= p;
        }
    }
    mpz_class symmetric() const {
        mpz_class v = value_ % modulus_;
        if (v < 0) v += modulus_;
        if (v * 2 > modulus_) v -= modulus_;
        return v;
    }

private:
    mpz_class value_ = 0;
    mpz_class modulus_ = 1;
};

double log2_max_abs(const IntegerMatrix& m) {
    mpz_class ma = m.max_abs();
    if (ma == 0) return 0.0;
    signed long exp2;
    const double d = mpz_get_d_2exp(&exp2, ma.get_mpz_t());
    return std::log2(std::fabs(d)) + static_cast<double>(exp2);
}

}  // namespace

mpz_class determinant(const IntegerMatrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("determinant: non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    // Hadamard bound: |det| <= (sqrt(n) * max)^n.
    const double lb = log2_max_abs(m);
    const double bits = n * (0.5 * std::log2(double(n)) + lb) + 16;

    std::vector<std::uint32_t> primes = crt_primes(bits + 1);
    CrtAccumulator acc;
    for (std::uint32_t p : primes) {
        ffalg::PrimeField F(p);
        ffalg::FpMatrix a = reduce_mod(m, F);
        // Gaussian elimination determinant mod p.
        std::uint32_t det = 1;
        for (std::size_t col = 0, row = 0; col < n && row < n; ++col, ++row) {
            std::size_t sel = row;
            while (sel < n && a.at(sel, col) == 0) ++sel;
            if (sel == n) {
                det = 0;
                break;
            }
            if (sel != row) {
                for (std::size_t j = col; j < n; ++j) {
                    std::uint32_t t = a.at(row, j);
                    a.set(row, j, a.at(sel, j));
                    a.set(sel, j, t);
                }
                det = F.neg(det);
            }
            det = F.mul(det, a.at(row, col));
            const std::uint32_t inv = F.inv(a.at(row, col));
            for (std::size_t i = row + 1; i < n; ++i) {
                const std::uint32_t f = F.mul(a.at(i, col), inv);
                if (f == 0) continue;
                for (std::size_t j = col; j < n; ++j)
                    a.set(i, j, F.sub(a.at(i, j), F.mul(f, a.at(row, j))));
            }
        }
        acc.add(det, p);
    }
    return acc.symmetric();
}

IntegerPolynomial char_poly_z(const IntegerMatrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("char_poly_z: non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return IntegerPolynomial::from_ints({1});

    // Coefficient bound: |c_{n-k}| <= binom(n,k) (sqrt(k) max)^k.
    const double lb = log2_max_abs(m);
    double bits = 1;
    double log_binom = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        log_binom += std::log2(double(n - k + 1)) - std::log2(double(k));
        bits = std::max(bits,
                        log_binom + k * (0.5 * std::log2(double(k)) + lb));
    }
    bits += 16;

    std::vector<std::uint32_t> primes = crt_primes(bits + 1);
    std::vector<CrtAccumulator> acc(n + 1);
    for (std::uint32_t p : primes) {
        ffalg::PrimeField F(p);
        ffalg::FpPolynomial cp = ffalg::char_poly_fp(reduce_mod(m, F));
        for (std::size_t i = 0; i <= n; ++i) acc[i].add(cp.coeff(i), p);
    }
    std::vector<mpz_class> coeffs(n + 1);
    for (std::size_t i = 0; i <= n; ++i) coeffs[i] = acc[i].symmetric();
    return IntegerPolynomial(std::move(coeffs));
}

RationalPolynomial char_poly_q(const RationalMatrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("char_poly_q: non-square matrix");
    const std::size_t n = m.rows();
    auto [mi, den] = m.cleared_denominators();
    IntegerPolynomial ci = char_poly_z(mi);
    // charpoly(den * m)(X) = den^n charpoly(m)(X / den).
    std::vector<mpq_class> c(n + 1);
    mpz_class scale = 1;
    for (std::size_t i = n + 1; i-- > 0;) {
        c[i] = mpq_class(ci.coeff(i), scale);
        c[i].canonicalize();
        scale *= den;
    }
    return RationalPolynomial(std::move(c));
}

mpq_class gram_determinant(const std::vector<RationalMatrix>& basis) {
    const std::size_t n = basis.size();
    if (n == 0) return 1;
    const std::size_t d = basis[0].rows();
    for (const RationalMatrix& b : basis)
        if (b.rows() != d || b.cols() != d)
            throw std::invalid_argument(
                "gram_determinant: basis elements must be square and of "
                "equal size");

    RationalMatrix gram(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            RationalMatrix ij = basis[i] * basis[j];
            if (basis[j] * basis[i] != ij)
                throw std::invalid_argument(
                    "gram_determinant: basis elements do not commute");
            gram.at(i, j) = ij.trace();
            gram.at(j, i) = gram.at(i, j);
        }
    }
    auto [gi, gden] = gram.cleared_denominators();
    mpz_class det = determinant(gi);
    mpz_class dpow;
    mpz_pow_ui(dpow.get_mpz_t(), gden.get_mpz_t(),
               static_cast<unsigned long>(n));
    mpq_class result(det, dpow);
    result.canonicalize();
    return result;
}

}  // namespace exactint
}  // namespace heckestat
