#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <utility>
#include <vector>

#include "heckestat/primefield.hpp"

namespace heckestat {
namespace ffalg {

// Univariate polynomial over F_p.  Coefficients are stored in ascending
// degree order with no trailing zeros; the zero polynomial has an empty
// coefficient vector and degree() == -1.
class FpPolynomial {
public:
    explicit FpPolynomial(PrimeField field) : field_(field) {}
    FpPolynomial(PrimeField field, std::vector<std::uint32_t> coeffs);

    static FpPolynomial zero(PrimeField field) { return FpPolynomial(field); }
    static FpPolynomial one(PrimeField field);
    static FpPolynomial x(PrimeField field);
    // c0 + c1 x + ... from arbitrary signed integers (reduced mod p).
    static FpPolynomial from_ints(PrimeField field,
                                  const std::vector<long long>& coeffs);

    const PrimeField& field() const { return field_; }
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_monic() const {
        return !coeffs_.empty() && coeffs_.back() == 1;
    }
    std::uint32_t coeff(std::size_t i) const {
        return i < coeffs_.size() ? coeffs_[i] : 0;
    }
    std::uint32_t leading() const { return coeffs_.back(); }
    const std::vector<std::uint32_t>& coeffs() const { return coeffs_; }

    FpPolynomial operator+(const FpPolynomial& o) const;
    FpPolynomial operator-(const FpPolynomial& o) const;
    FpPolynomial operator*(const FpPolynomial& o) const;
    bool operator==(const FpPolynomial& o) const;
    bool operator!=(const FpPolynomial& o) const { return !(*this == o); }
    bool operator<(const FpPolynomial& o) const;  // degree, then coefficients

    FpPolynomial monic() const;
    FpPolynomial derivative() const;
    std::uint32_t eval(std::uint32_t x) const;

    // Quotient and remainder; divisor must be nonzero.
    std::pair<FpPolynomial, FpPolynomial> divmod(const FpPolynomial& d) const;
    FpPolynomial operator%(const FpPolynomial& d) const {
        return divmod(d).second;
    }
    FpPolynomial operator/(const FpPolynomial& d) const {
        return divmod(d).first;
    }

private:
    void normalize();

    PrimeField field_;
    std::vector<std::uint32_t> coeffs_;
};

FpPolynomial gcd(const FpPolynomial& a, const FpPolynomial& b);  // monic
FpPolynomial lcm(const FpPolynomial& a, const FpPolynomial& b);  // monic
FpPolynomial powmod(const FpPolynomial& base, const mpz_class& e,
                    const FpPolynomial& mod);

struct FactorList {
    // (monic irreducible factor, multiplicity), pairwise distinct, sorted
    // by degree then coefficient sequence.
    std::vector<std::pair<FpPolynomial, unsigned>> factors;
    std::uint32_t unit;  // leading coefficient of the input
};

// Full factorization into monic irreducibles: squarefree decomposition,
// then distinct-degree and equal-degree splitting.  The equal-degree
// stage draws from a fixed-seed generator, so output is reproducible.
FactorList factor(const FpPolynomial& f);

// True if f is irreducible over F_p (degree >= 1).
bool is_irreducible(const FpPolynomial& f);

}  // namespace ffalg
}  // namespace heckestat
