#include "heckestat/oldform_block.hpp"

#include <stdexcept>

namespace heckestat {
namespace degen {

using exactint::RationalMatrix;

void OldformBlockSpec::validate() const {
    if (k < 2) throw std::invalid_argument("OldformBlockSpec: weight < 2");
    if (r < 0) throw std::invalid_argument("OldformBlockSpec: r < 0");
    if (ell < 2) throw std::invalid_argument("OldformBlockSpec: ell < 2");
    if (delta != 0 && delta != 1)
        throw std::invalid_argument("OldformBlockSpec: delta not in {0,1}");
    const bool coprime = kind == OldformCase::ell_coprime_to_level;
    if (coprime != (delta == 1))
        throw std::invalid_argument(
            "OldformBlockSpec: delta inconsistent with the case");
}

RationalMatrix build_block(const OldformBlockSpec& spec) {
    spec.validate();
    const std::size_t n = static_cast<std::size_t>(spec.r) + 1;
    RationalMatrix a(n, n);
    a.at(0, 0) = spec.a_ell;
    if (n > 1) {
        a.at(0, 1) = 1;
        mpz_class lk;
        mpz_ui_pow_ui(lk.get_mpz_t(), static_cast<unsigned long>(spec.ell),
                      static_cast<unsigned long>(spec.k - 1));
        a.at(1, 0) = -spec.delta * spec.eps_ell * mpq_class(lk);
        // remaining rows shift the superdiagonal right; last row is zero
        for (std::size_t i = 1; i + 1 < n; ++i) a.at(i, i + 1) = 1;
    }
    return a;
}

bool classify(const OldformBlockSpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case OldformCase::ell_coprime_to_level:
            return spec.r <= 2;
        case OldformCase::ell_divides_once_or_char_undefinable:
            return spec.r <= 1;
        case OldformCase::ell_squared_divides_char_definable:
            return spec.r == 0;
    }
    throw std::logic_error("classify: unhandled case");
}

bool diagonalisable_bruteforce(const RationalMatrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument(
            "diagonalisable_bruteforce: non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return true;
    exactint::RationalPolynomial sf =
        exactint::squarefree_part(exactint::char_poly_q(m));
    // Horner evaluation of sf at m
    RationalMatrix acc(n, n);
    for (long d = sf.degree(); d >= 0; --d) {
        acc = acc * m;
        const mpq_class& c = sf.coeff(static_cast<std::size_t>(d));
        for (std::size_t i = 0; i < n; ++i) acc.at(i, i) += c;
    }
    return acc.is_zero();
}

}  // namespace degen
}  // namespace heckestat
