#pragma once

#include <gmpxx.h>

#include "heckestat/rational_matrix.hpp"

namespace heckestat {
namespace degen {

// The three hypotheses of the degeneracy-block classification, matching
// the divisibility of the newform level M by ell and whether the
// character descends mod M/ell.
enum class OldformCase {
    ell_coprime_to_level,
    ell_divides_once_or_char_undefinable,
    ell_squared_divides_char_definable,
};

// Parameters of the (r+1) x (r+1) degeneracy block describing T_ell on
// the span of f(q^d), d | m, with ell^r exactly dividing m.  a_ell and
// eps_ell are exact rational stand-ins for the eigenvalue and character
// value; the block shape is what is under test, not newform data.
struct OldformBlockSpec {
    mpq_class a_ell;
    mpq_class eps_ell;
    long ell = 2;
    long k = 2;       // weight >= 2
    long r = 0;       // ell^r || m
    int delta = 1;    // 0 if ell divides the ambient level, else 1
    OldformCase kind = OldformCase::ell_coprime_to_level;

    void validate() const;
};

// The block: first row (a_ell, 1, 0, ..., 0), second row
// (-delta eps_ell ell^(k-1), 0, 1, 0, ..., 0), then a shifted
// superdiagonal of ones and a zero last row.
exactint::RationalMatrix build_block(const OldformBlockSpec& spec);

// The classification: case (a) diagonalisable iff r <= 2, case (b) iff
// r <= 1, case (c) iff r = 0.
bool classify(const OldformBlockSpec& spec);

// Independent check: a square rational matrix is diagonalisable over a
// splitting field iff its minimal polynomial is squarefree, tested by
// evaluating the squarefree part of the characteristic polynomial.
bool diagonalisable_bruteforce(const exactint::RationalMatrix& m);

}  // namespace degen
}  // namespace heckestat
