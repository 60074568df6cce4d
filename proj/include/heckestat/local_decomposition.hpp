#pragma once

#include <cstddef>
#include <vector>

#include "heckestat/fp_matrix.hpp"
#include "heckestat/fp_polynomial.hpp"

namespace heckestat {
namespace localdec {

// One local piece of a commutative Artinian F_p-algebra: its dimension,
// its residue field degree over F_p, a basis of the invariant subspace
// inside the ambient module, and the irreducible polynomial attached to
// each generator (the squarefree part of its minimal polynomial on the
// factor).
struct LocalFactor {
    std::size_t dimension;
    std::size_t residue_degree;
    ffalg::FpMatrix basis;
    std::vector<ffalg::FpPolynomial> generator_irreducibles;
};

struct Decomposition {
    std::vector<LocalFactor> factors;
    std::size_t ambient_dimension;
};

// Splits the module V = F_p^d under the commuting family `generators`
// into the joint generalized eigenspaces (the local factors of the
// spanned algebra, when V is its regular representation or any faithful
// module).  Factors are sorted by (dimension, residue degree, basis).
//
// The pairwise commutativity check costs #gens^2 matrix products; pass
// assume_commuting = true when it is already guaranteed structurally.
Decomposition decompose(const std::vector<ffalg::FpMatrix>& generators,
                        ffalg::PrimeField field, std::size_t dimension,
                        bool assume_commuting = false);

// Sum of the residue degrees over all factors.
std::size_t residue_degree_sum(const Decomposition& d);

// True iff every local factor is a field (residue degree = dimension),
// equivalently residue_degree_sum equals the ambient dimension.
bool is_semisimple(const Decomposition& d);

}  // namespace localdec
}  // namespace heckestat
