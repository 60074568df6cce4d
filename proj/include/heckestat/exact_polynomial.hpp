#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <vector>

namespace heckestat {
namespace exactint {

// Polynomial with arbitrary-precision integer coefficients, ascending
// degree order, no trailing zeros.
class IntegerPolynomial {
public:
    IntegerPolynomial() = default;
    explicit IntegerPolynomial(std::vector<mpz_class> coeffs);

    static IntegerPolynomial from_ints(const std::vector<long>& coeffs);

    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const mpz_class& coeff(std::size_t i) const;
    const std::vector<mpz_class>& coeffs() const { return c_; }

    bool operator==(const IntegerPolynomial& o) const { return c_ == o.c_; }
    bool operator!=(const IntegerPolynomial& o) const { return c_ != o.c_; }

    IntegerPolynomial operator+(const IntegerPolynomial& o) const;
    IntegerPolynomial operator-(const IntegerPolynomial& o) const;
    IntegerPolynomial operator*(const IntegerPolynomial& o) const;
    IntegerPolynomial derivative() const;
    mpz_class eval(const mpz_class& x) const;

private:
    void normalize();
    std::vector<mpz_class> c_;

    static const mpz_class zero_;
};

// Polynomial over Q, ascending order, no trailing zeros.
class RationalPolynomial {
public:
    RationalPolynomial() = default;
    explicit RationalPolynomial(std::vector<mpq_class> coeffs);
    explicit RationalPolynomial(const IntegerPolynomial& p);

    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const mpq_class& coeff(std::size_t i) const;
    const std::vector<mpq_class>& coeffs() const { return c_; }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    bool operator==(const RationalPolynomial& o) const { return c_ == o.c_; }
    bool operator!=(const RationalPolynomial& o) const { return c_ != o.c_; }

    RationalPolynomial operator+(const RationalPolynomial& o) const;
    RationalPolynomial operator-(const RationalPolynomial& o) const;
    RationalPolynomial operator*(const RationalPolynomial& o) const;
    std::pair<RationalPolynomial, RationalPolynomial> divmod(
        const RationalPolynomial& d) const;
    RationalPolynomial monic() const;
    RationalPolynomial derivative() const;

    // Integer form when every coefficient is integral.
    std::optional<IntegerPolynomial> to_integer() const;

private:
    void normalize();
    std::vector<mpq_class> c_;

    static const mpq_class zero_;
};

RationalPolynomial gcd(const RationalPolynomial& a,
                       const RationalPolynomial& b);  // monic

// f / gcd(f, f'): the product of the distinct irreducible factors.
RationalPolynomial squarefree_part(const RationalPolynomial& f);

}  // namespace exactint
}  // namespace heckestat
