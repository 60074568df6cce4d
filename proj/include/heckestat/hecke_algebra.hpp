#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "heckestat/fp_matrix.hpp"
#include "heckestat/integer_matrix.hpp"
#include "heckestat/manin.hpp"

namespace heckestat {
namespace hecke {

// The Hecke algebra as a Z-lattice: HNF basis of the span of the
// flattened operators T_1..T_B inside End(cuspidal lattice), together
// with integer structure constants e_i e_j = sum_k c_ijk e_k and the
// coordinates of each generator T_n.
class IntegralHeckeAlgebra {
public:
    long level() const { return N_; }
    long weight() const { return k_; }
    std::size_t rank() const { return rank_; }
    std::size_t module_dimension() const { return module_dim_; }
    long generator_count() const { return B_; }

    const exactint::HnfResult& lattice() const { return lattice_; }
    // c_ijk, index ((i * rank + j) * rank + k).  Computed on first use:
    // the basis products are by far the most expensive step at large
    // levels and most consumers never need them.
    const std::vector<mpz_class>& structure_constants() const;
    const mpz_class& constant(std::size_t i, std::size_t j,
                              std::size_t k) const {
        return structure_constants()[(i * rank_ + j) * rank_ + k];
    }
    // coordinates of T_n (1 <= n <= B) in the lattice basis
    const std::vector<mpz_class>& generator_coordinates(long n) const;
    // coordinates of the multiplicative identity
    const std::vector<mpz_class>& identity_coordinates() const {
        return identity_;
    }

    // basis element e_i as an operator on the cuspidal lattice
    exactint::IntegerMatrix basis_operator(std::size_t i) const;

    friend IntegralHeckeAlgebra build_integral(
        const modsym::CuspidalSubspace& cusp, long B);

private:
    long N_ = 0, k_ = 0, B_ = 0;
    std::size_t rank_ = 0, module_dim_ = 0;
    exactint::HnfResult lattice_{exactint::IntegerMatrix(0, 0), {}, 0};
    struct ConstantsCache {
        std::mutex mutex;
        bool ready = false;
        std::vector<mpz_class> values;
    };
    std::shared_ptr<ConstantsCache> constants_ =
        std::make_shared<ConstantsCache>();
    std::vector<std::vector<mpz_class>> gen_coords_;
    std::vector<mpz_class> identity_;
};

// Builds the integral Hecke algebra from T_1..T_B on the cuspidal
// lattice.  Throws if the rank disagrees with the dimension oracle
// (prime levels), if a product escapes the lattice, or if the structure
// constants fail to be commutative.
IntegralHeckeAlgebra build_integral(const modsym::CuspidalSubspace& cusp,
                                    long B);

enum class Pipeline { A, B };

// The mod-p Hecke algebra: structure constants over F_p plus generator
// images.  Pipeline A reduces the integral algebra; pipeline B spans the
// operator images inside End of the mod-p cuspidal space.
class ResidualHeckeAlgebra {
public:
    std::uint32_t p() const { return field_.p(); }
    const ffalg::PrimeField& field() const { return field_; }
    long level() const { return N_; }
    long weight() const { return k_; }
    std::size_t dimension() const { return dim_; }
    long generator_count() const { return B_; }
    Pipeline pipeline() const { return pipeline_; }

    const std::vector<std::uint32_t>& structure_constants() const {
        return constants_;
    }
    std::uint32_t constant(std::size_t i, std::size_t j,
                           std::size_t k) const {
        return constants_[(i * dim_ + j) * dim_ + k];
    }
    const std::vector<std::uint32_t>& generator_coordinates(long n) const;
    const std::vector<std::uint32_t>& identity_coordinates() const {
        return identity_;
    }

    friend ResidualHeckeAlgebra reduce_mod_p(const IntegralHeckeAlgebra& alg,
                                             std::uint32_t p);
    friend ResidualHeckeAlgebra build_residual_direct(
        const modsym::CuspidalSubspace& cusp, long B);

private:
    explicit ResidualHeckeAlgebra(ffalg::PrimeField f) : field_(f) {}

    void validate() const;

    ffalg::PrimeField field_;
    long N_ = 0, k_ = 0, B_ = 0;
    std::size_t dim_ = 0;
    Pipeline pipeline_ = Pipeline::A;
    std::vector<std::uint32_t> constants_;
    std::vector<std::vector<std::uint32_t>> gen_coords_;
    std::vector<std::uint32_t> identity_;
};

// Pipeline A: reduce the integral structure constants mod p.  The
// dimension is unchanged (the lattice is a free Z-module).
ResidualHeckeAlgebra reduce_mod_p(const IntegralHeckeAlgebra& alg,
                                  std::uint32_t p);

// Pipeline B: F_p-span of all products of T_1..T_B acting on the mod-p
// cuspidal space, closed under multiplication.
ResidualHeckeAlgebra build_residual_direct(const modsym::CuspidalSubspace& cusp,
                                           long B);

// Characteristic-zero semisimplicity via the trace form of the regular
// representation: nonzero Gram determinant iff semisimple.
bool is_semisimple_char0(const IntegralHeckeAlgebra& alg);

// Multiplication-by-generator matrices of T_1..T_B on the algebra
// itself; the input to the local decomposition.
std::vector<ffalg::FpMatrix> regular_representation(
    const ResidualHeckeAlgebra& alg);

// Per-local-factor statistics of the reduction mod p, computed through
// the action of the reduced lattice basis on the cuspidal module
// instead of the regular representation.  Valid exactly when that
// action is faithful, which is checked; returns nullopt otherwise and
// the caller must take the structure-constants route.  Much cheaper
// than reduce_mod_p at large levels.
struct ResidualStats {
    std::size_t dim = 0;  // = rank of the integral algebra
    // (local factor dimension, residue degree), sorted
    std::vector<std::pair<std::size_t, std::size_t>> factors;
};
std::optional<ResidualStats> residual_stats_on_module(
    const IntegralHeckeAlgebra& alg, std::uint32_t p);

}  // namespace hecke
}  // namespace heckestat
