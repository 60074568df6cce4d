#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <variant>
#include <vector>

#include "heckestat/fp_matrix.hpp"
#include "heckestat/heilbronn.hpp"
#include "heckestat/integer_matrix.hpp"
#include "heckestat/p1line.hpp"
#include "heckestat/primefield.hpp"

namespace heckestat {
namespace modsym {

// [SL2(Z) : Gamma_0(N)] = N * prod_{l | N} (1 + 1/l).
long gamma0_index(long N);

// ceil(k * [SL2(Z) : Gamma_0(N)] / 12): the Hecke operators T_1..T_B
// generate the Hecke algebra as a Z-module.
long sturm_bound(long N, long k);

// dim S_k(Gamma_0(N)) for prime N and even k >= 2, by the classical
// genus / dimension formulas.  Throws for composite N.
long dim_oracle(long N, long k);

// Coefficient domain: Q when fp is empty, F_p otherwise.
struct CoefficientDomain {
    std::optional<ffalg::PrimeField> fp;
    static CoefficientDomain rationals() { return {}; }
    static CoefficientDomain prime_field(std::uint32_t p) {
        return {ffalg::PrimeField(p)};
    }
    bool is_rational() const { return !fp.has_value(); }
};

// Manin-symbol presentation of the modular symbols of weight k for
// Gamma_0(N).  Generators are pairs (X^i Y^(k-2-i), (c:d)) indexed by
// i * #P1 + p1_index; the two- and three-term relations are eliminated,
// leaving a quotient basis of "free" generators.
//
// Action conventions, fixed once here:
//   * a matrix h = (a,b;c,d) acts on the right of a generator by
//     (P, (c:d)) . h = (P(aX + bY, cX + dY), (c:d) h);
//   * the modular symbol attached to (P, g), g in SL2(Z), is
//     (g.P){g0, g oo} with the left action (g.P)(v) = P(adj(g) v).
// The boundary map below is derived from the second convention; the
// identities checked in the tests are convention-independent.
class ManinSymbolSpace {
public:
    static ManinSymbolSpace build(long N, long k, CoefficientDomain domain);

    long level() const { return N_; }
    long weight() const { return k_; }
    const CoefficientDomain& domain() const { return domain_; }
    const P1Line& p1() const { return *p1_; }

    std::size_t generator_count() const { return gen_count_; }
    std::size_t quotient_dimension() const { return free_.size(); }
    std::size_t relation_rank() const { return gen_count_ - free_.size(); }
    // Generator indices of the quotient basis.
    const std::vector<std::size_t>& free_generators() const { return free_; }

    // Rational projection generators -> quotient coordinates, stored as
    // an integer matrix divided by a common denominator.
    const exactint::IntegerMatrix& projection_num() const;
    const mpz_class& projection_den() const;
    // Mod-p projection.
    const ffalg::FpMatrix& projection_fp() const;

    std::size_t monomial_count() const {
        return static_cast<std::size_t>(k_ - 1);
    }
    std::size_t generator_index(std::size_t monomial,
                                std::size_t p1_index) const {
        return monomial * p1_->size() + p1_index;
    }

private:
    ManinSymbolSpace() = default;

    long N_ = 0, k_ = 0;
    CoefficientDomain domain_;
    std::shared_ptr<const P1Line> p1_;
    std::size_t gen_count_ = 0;
    std::vector<std::size_t> free_;
    // exactly one of the two is populated
    std::shared_ptr<const exactint::IntegerMatrix> proj_num_;
    mpz_class proj_den_ = 1;
    std::shared_ptr<const ffalg::FpMatrix> proj_fp_;
};

// Hecke operator on the cuspidal basis.  Over Q the matrix has integer
// entries because the basis spans a Hecke-stable lattice.
struct HeckeOperatorMatrix {
    long index;
    std::variant<exactint::IntegerMatrix, ffalg::FpMatrix> matrix;

    const exactint::IntegerMatrix& z() const {
        return std::get<exactint::IntegerMatrix>(matrix);
    }
    const ffalg::FpMatrix& fp() const {
        return std::get<ffalg::FpMatrix>(matrix);
    }
};

// Kernel of the boundary map, with a canonical basis.  Over Q the basis
// is the HNF basis of a Hecke-stable lattice in quotient coordinates;
// over F_p it is the reduced kernel basis of the boundary matrix.
class CuspidalSubspace {
public:
    const ManinSymbolSpace& space() const { return space_; }
    std::size_t dimension() const;

    // Q side: integral lattice basis (rows, HNF) in quotient coordinates.
    const exactint::HnfResult& lattice() const;
    // F_p side: reduced basis rows and the coordinate-readoff columns.
    const ffalg::FpMatrix& basis_fp() const;
    const std::vector<std::size_t>& basis_fp_free_columns() const;

    // T_n on the cuspidal basis (cached; thread-safe).
    HeckeOperatorMatrix hecke_operator(long n) const;

    friend CuspidalSubspace cuspidal_subspace(ManinSymbolSpace space);

private:
    explicit CuspidalSubspace(ManinSymbolSpace s)
        : space_(std::move(s)), cache_(std::make_unique<Cache>()) {}

    HeckeOperatorMatrix hecke_prime(long ell) const;
    HeckeOperatorMatrix compute(long n) const;

    ManinSymbolSpace space_;
    std::optional<exactint::HnfResult> lattice_;
    ffalg::FpMatrix basis_fp_{ffalg::PrimeField(2), 0, 0};
    std::vector<std::size_t> basis_fp_free_cols_;

    struct Cache {
        std::mutex mutex;
        std::map<long, HeckeOperatorMatrix> ops;
    };
    std::unique_ptr<Cache> cache_;
};

ManinSymbolSpace build_space(long N, long k, CoefficientDomain domain);
CuspidalSubspace cuspidal_subspace(ManinSymbolSpace space);

// Convenience: T_n on the cuspidal subspace.
HeckeOperatorMatrix hecke_operator(const CuspidalSubspace& cusp, long n);

// Test hook: the same Hecke operator computed from a caller-supplied
// determinant-ell matrix family instead of the built-in one.
HeckeOperatorMatrix hecke_prime_with_matrices(const CuspidalSubspace& cusp,
                                              long ell,
                                              const std::vector<Mat22>& ms);

}  // namespace modsym
}  // namespace heckestat
