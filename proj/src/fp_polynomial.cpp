#include "heckestat/fp_polynomial.hpp"

#include <algorithm>

namespace heckestat {
namespace ffalg {

namespace {

void require_same_field(const FpPolynomial& a, const FpPolynomial& b) {
    if (a.field() != b.field())
        throw std::invalid_argument("FpPolynomial: mixed coefficient fields");
}

// splitmix64; fixed seed keeps equal-degree splitting reproducible.
struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
};

}  // namespace

FpPolynomial::FpPolynomial(PrimeField field, std::vector<std::uint32_t> coeffs)
    : field_(field), coeffs_(std::move(coeffs)) {
    for (std::uint32_t c : coeffs_)
        if (c >= field_.p())
            throw std::invalid_argument("FpPolynomial: unreduced coefficient");
    normalize();
}

FpPolynomial FpPolynomial::one(PrimeField field) {
    return FpPolynomial(field, {1});
}

FpPolynomial FpPolynomial::x(PrimeField field) {
    return FpPolynomial(field, {0, 1});
}

FpPolynomial FpPolynomial::from_ints(PrimeField field,
                                     const std::vector<long long>& coeffs) {
    std::vector<std::uint32_t> c(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        c[i] = field.reduce(coeffs[i]);
    return FpPolynomial(field, std::move(c));
}

void FpPolynomial::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

FpPolynomial FpPolynomial::operator+(const FpPolynomial& o) const {
    require_same_field(*this, o);
    std::vector<std::uint32_t> c(std::max(coeffs_.size(), o.coeffs_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = field_.add(coeff(i), o.coeff(i));
    return FpPolynomial(field_, std::move(c));
}

FpPolynomial FpPolynomial::operator-(const FpPolynomial& o) const {
    require_same_field(*this, o);
    std::vector<std::uint32_t> c(std::max(coeffs_.size(), o.coeffs_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = field_.sub(coeff(i), o.coeff(i));
    return FpPolynomial(field_, std::move(c));
}

FpPolynomial FpPolynomial::operator*(const FpPolynomial& o) const {
    require_same_field(*this, o);
    if (is_zero() || o.is_zero()) return zero(field_);
    std::vector<std::uint32_t> c(coeffs_.size() + o.coeffs_.size() - 1, 0);
    const std::uint64_t p = field_.p();
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        const std::uint64_t a = coeffs_[i];
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            c[i + j] = static_cast<std::uint32_t>(
                (c[i + j] + a * o.coeffs_[j]) % p);
    }
    return FpPolynomial(field_, std::move(c));
}

bool FpPolynomial::operator==(const FpPolynomial& o) const {
    return field_ == o.field_ && coeffs_ == o.coeffs_;
}

bool FpPolynomial::operator<(const FpPolynomial& o) const {
    if (coeffs_.size() != o.coeffs_.size())
        return coeffs_.size() < o.coeffs_.size();
    return std::lexicographical_compare(coeffs_.begin(), coeffs_.end(),
                                        o.coeffs_.begin(), o.coeffs_.end());
}

FpPolynomial FpPolynomial::monic() const {
    if (is_zero() || coeffs_.back() == 1) return *this;
    const std::uint32_t inv = field_.inv(coeffs_.back());
    std::vector<std::uint32_t> c(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        c[i] = field_.mul(coeffs_[i], inv);
    return FpPolynomial(field_, std::move(c));
}

FpPolynomial FpPolynomial::derivative() const {
    if (coeffs_.size() <= 1) return zero(field_);
    std::vector<std::uint32_t> c(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        c[i - 1] = field_.mul(coeffs_[i],
                              static_cast<std::uint32_t>(i % field_.p()));
    return FpPolynomial(field_, std::move(c));
}

std::uint32_t FpPolynomial::eval(std::uint32_t x) const {
    std::uint32_t r = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;)
        r = field_.add(field_.mul(r, x), coeffs_[i]);
    return r;
}

std::pair<FpPolynomial, FpPolynomial> FpPolynomial::divmod(
    const FpPolynomial& d) const {
    require_same_field(*this, d);
    if (d.is_zero())
        throw std::domain_error("FpPolynomial::divmod: division by zero");
    if (degree() < d.degree()) return {zero(field_), *this};
    const std::uint32_t lead_inv = field_.inv(d.coeffs_.back());
    std::vector<std::uint32_t> rem = coeffs_;
    std::vector<std::uint32_t> quo(coeffs_.size() - d.coeffs_.size() + 1, 0);
    for (std::size_t k = quo.size(); k-- > 0;) {
        const std::uint32_t q =
            field_.mul(rem[k + d.coeffs_.size() - 1], lead_inv);
        quo[k] = q;
        if (q == 0) continue;
        for (std::size_t j = 0; j < d.coeffs_.size(); ++j)
            rem[k + j] = field_.sub(rem[k + j], field_.mul(q, d.coeffs_[j]));
    }
    return {FpPolynomial(field_, std::move(quo)),
            FpPolynomial(field_, std::move(rem))};
}

FpPolynomial gcd(const FpPolynomial& a, const FpPolynomial& b) {
    FpPolynomial x = a, y = b;
    while (!y.is_zero()) {
        FpPolynomial r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

FpPolynomial lcm(const FpPolynomial& a, const FpPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return FpPolynomial::zero(a.field());
    FpPolynomial g = gcd(a, b);
    return ((a * b) / g).monic();
}

FpPolynomial powmod(const FpPolynomial& base, const mpz_class& e,
                    const FpPolynomial& mod) {
    FpPolynomial r = FpPolynomial::one(base.field());
    FpPolynomial b = base % mod;
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = 0; i < bits; ++i) {
        if (mpz_tstbit(e.get_mpz_t(), i)) r = (r * b) % mod;
        if (i + 1 < bits) b = (b * b) % mod;
    }
    if (e == 0) return FpPolynomial::one(base.field()) % mod;
    return r;
}

namespace {

// f(x) with f' = 0 is a polynomial in x^p; extract the p-th root
// (coefficient-wise Frobenius inverse is the identity on F_p).
FpPolynomial pth_root(const FpPolynomial& f) {
    const std::uint32_t p = f.field().p();
    std::vector<std::uint32_t> c;
    for (std::size_t i = 0; i * p <= static_cast<std::size_t>(f.degree());
         ++i)
        c.push_back(f.coeff(i * p));
    return FpPolynomial(f.field(), std::move(c));
}

// Yun/Musser squarefree decomposition adapted to characteristic p.
// Returns (squarefree monic factor, multiplicity) pairs.
std::vector<std::pair<FpPolynomial, unsigned>> squarefree_decomposition(
    const FpPolynomial& f0) {
    std::vector<std::pair<FpPolynomial, unsigned>> out;
    const std::uint32_t p = f0.field().p();
    FpPolynomial f = f0.monic();
    if (f.degree() <= 0) return out;

    FpPolynomial df = f.derivative();
    if (df.is_zero()) {
        auto sub = squarefree_decomposition(pth_root(f));
        for (auto& [g, m] : sub) out.emplace_back(g, m * p);
        return out;
    }

    FpPolynomial c = gcd(f, df);
    FpPolynomial w = f / c;
    unsigned i = 1;
    while (w.degree() > 0) {
        FpPolynomial y = gcd(w, c);
        FpPolynomial z = w / y;
        if (z.degree() > 0) out.emplace_back(z.monic(), i);
        w = std::move(y);
        c = c / w;
        ++i;
    }
    if (c.degree() > 0) {
        auto sub = squarefree_decomposition(pth_root(c));
        for (auto& [g, m] : sub) out.emplace_back(g, m * p);
    }
    return out;
}

// Distinct-degree splitting of a squarefree monic polynomial:
// (product of its irreducible factors of degree d, d) pairs.
std::vector<std::pair<FpPolynomial, std::size_t>> distinct_degree_split(
    const FpPolynomial& f0) {
    const PrimeField F = f0.field();
    std::vector<std::pair<FpPolynomial, std::size_t>> out;
    FpPolynomial f = f0;
    FpPolynomial h = FpPolynomial::x(F) % f;  // x^(p^d) mod f, iterated
    std::size_t d = 0;
    while (f.degree() > 0 &&
           static_cast<long>(2 * (d + 1)) <= f.degree()) {
        ++d;
        h = powmod(h, mpz_class(F.p()), f);
        FpPolynomial g = gcd(h - FpPolynomial::x(F), f);
        if (g.degree() > 0) {
            out.emplace_back(g, d);
            f = f / g;
            h = h % f;
        }
    }
    if (f.degree() > 0)
        out.emplace_back(f, static_cast<std::size_t>(f.degree()));
    return out;
}

FpPolynomial random_poly_below(PrimeField F, long max_deg, SplitMix64& rng) {
    std::vector<std::uint32_t> c(static_cast<std::size_t>(max_deg), 0);
    for (auto& v : c) v = static_cast<std::uint32_t>(rng.next() % F.p());
    return FpPolynomial(F, std::move(c));
}

// Cantor-Zassenhaus equal-degree splitting: f squarefree monic, all of
// whose irreducible factors have degree d.
void equal_degree_split(const FpPolynomial& f, std::size_t d,
                        std::vector<FpPolynomial>& out, SplitMix64& rng) {
    const PrimeField F = f.field();
    if (static_cast<std::size_t>(f.degree()) == d) {
        out.push_back(f.monic());
        return;
    }
    FpPolynomial splitter = FpPolynomial::zero(F);
    for (;;) {
        FpPolynomial r = random_poly_below(F, f.degree(), rng);
        if (r.degree() < 1) continue;
        FpPolynomial g = gcd(r, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            splitter = g;
            break;
        }
        if (F.p() == 2) {
            // Trace map r + r^2 + r^4 + ... over F_2.
            FpPolynomial t = FpPolynomial::zero(F);
            FpPolynomial power = r % f;
            for (std::size_t i = 0; i < d; ++i) {
                t = (t + power) % f;
                power = (power * power) % f;
            }
            g = gcd(t, f);
        } else {
            mpz_class e;
            mpz_ui_pow_ui(e.get_mpz_t(), F.p(),
                          static_cast<unsigned long>(d));
            e = (e - 1) / 2;
            FpPolynomial t =
                powmod(r, e, f) - FpPolynomial::one(F);
            g = gcd(t, f);
        }
        if (g.degree() > 0 && g.degree() < f.degree()) {
            splitter = g;
            break;
        }
    }
    equal_degree_split(splitter, d, out, rng);
    equal_degree_split(f / splitter, d, out, rng);
}

}  // namespace

FactorList factor(const FpPolynomial& f) {
    if (f.is_zero())
        throw std::domain_error("factor: zero polynomial");
    FactorList result;
    result.unit = f.leading();
    if (f.degree() == 0) return result;

    SplitMix64 rng{0x5eed5eed5eed5eedull};
    for (const auto& [sqf, mult] : squarefree_decomposition(f)) {
        for (const auto& [prod, d] : distinct_degree_split(sqf)) {
            std::vector<FpPolynomial> irr;
            equal_degree_split(prod, d, irr, rng);
            for (FpPolynomial& g : irr)
                result.factors.emplace_back(std::move(g), mult);
        }
    }
    std::sort(result.factors.begin(), result.factors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return result;
}

bool is_irreducible(const FpPolynomial& f) {
    if (f.degree() < 1) return false;
    if (f.degree() == 1) return true;
    FpPolynomial sq = gcd(f, f.derivative());
    if (sq.degree() > 0) return false;
    auto dd = distinct_degree_split(f.monic());
    return dd.size() == 1 &&
           dd[0].second == static_cast<std::size_t>(f.degree());
}

}  // namespace ffalg
}  // namespace heckestat
