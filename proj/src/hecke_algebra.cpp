#include "heckestat/hecke_algebra.hpp"

#include <algorithm>
#include <stdexcept>

#include "heckestat/local_decomposition.hpp"
#include "heckestat/rational_matrix.hpp"

namespace heckestat {
namespace hecke {

using exactint::HnfBuilder;
using exactint::HnfResult;
using exactint::IntegerMatrix;
using exactint::LatticeCoordinater;
using ffalg::FpMatrix;
using ffalg::PrimeField;

namespace {

[[noreturn]] void fatal(const std::string& msg) {
    throw std::runtime_error(msg);
}

std::vector<mpz_class> flatten(const IntegerMatrix& m) { return m.flattened(); }

}  // namespace

const std::vector<mpz_class>& IntegralHeckeAlgebra::generator_coordinates(
    long n) const {
    if (n < 1 || n > B_)
        throw std::invalid_argument(
            "generator_coordinates: index out of range");
    return gen_coords_[static_cast<std::size_t>(n - 1)];
}

IntegerMatrix IntegralHeckeAlgebra::basis_operator(std::size_t i) const {
    std::vector<mpz_class> row(module_dim_ * module_dim_);
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = lattice_.h.at(i, j);
    return IntegerMatrix::from_flat(module_dim_, module_dim_, row);
}

IntegralHeckeAlgebra build_integral(const modsym::CuspidalSubspace& cusp,
                                    long B) {
    if (!cusp.space().domain().is_rational())
        throw std::invalid_argument("build_integral: need a space over Q");
    if (B < 1) throw std::invalid_argument("build_integral: B must be >= 1");

    IntegralHeckeAlgebra alg;
    alg.N_ = cusp.space().level();
    alg.k_ = cusp.space().weight();
    alg.B_ = B;
    const std::size_t c = cusp.dimension();
    alg.module_dim_ = c;

    // Lattice of flattened operators.
    std::vector<IntegerMatrix> ops;
    ops.reserve(static_cast<std::size_t>(B));
    HnfBuilder builder(c * c);
    for (long n = 1; n <= B; ++n) {
        ops.push_back(cusp.hecke_operator(n).z());
        builder.add_row(flatten(ops.back()));
    }
    alg.lattice_ = builder.finalize();
    alg.rank_ = alg.lattice_.rank;

    if (alg.N_ >= 2 &&
        ffalg::is_prime_u64(static_cast<std::uint64_t>(alg.N_))) {
        const long expect = modsym::dim_oracle(alg.N_, alg.k_);
        if (alg.rank_ != static_cast<std::size_t>(expect))
            fatal("build_integral: rank " + std::to_string(alg.rank_) +
                  " does not match the dimension oracle " +
                  std::to_string(expect));
    }

    LatticeCoordinater coords(alg.lattice_);

    // Generator coordinates.
    for (const IntegerMatrix& t : ops) {
        auto co = coords.coordinates(flatten(t));
        if (!co) fatal("build_integral: operator escapes its own lattice");
        alg.gen_coords_.push_back(std::move(*co));
    }

    // The identity operator lies in the lattice.
    auto co = coords.coordinates(flatten(IntegerMatrix::identity(c)));
    if (!co) fatal("build_integral: identity not in the lattice");
    alg.identity_ = std::move(*co);
    return alg;
}

const std::vector<mpz_class>& IntegralHeckeAlgebra::structure_constants()
    const {
    std::lock_guard<std::mutex> lock(constants_->mutex);
    if (constants_->ready) return constants_->values;

    const std::size_t d = rank_;
    LatticeCoordinater coords(lattice_);
    std::vector<IntegerMatrix> basis_ops;
    basis_ops.reserve(d);
    for (std::size_t i = 0; i < d; ++i) basis_ops.push_back(basis_operator(i));
    std::vector<mpz_class>& cs = constants_->values;
    cs.assign(d * d * d, mpz_class(0));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
            IntegerMatrix prod = basis_ops[i] * basis_ops[j];
            if (basis_ops[j] * basis_ops[i] != prod)
                fatal("structure_constants: basis operators do not commute");
            auto co = coords.coordinates(prod.flattened());
            if (!co)
                fatal("structure_constants: product escapes the lattice "
                      "(generator bound too small?)");
            for (std::size_t k = 0; k < d; ++k) {
                cs[(i * d + j) * d + k] = (*co)[k];
                cs[(j * d + i) * d + k] = (*co)[k];
            }
        }
    }
    // the unit must act as the identity on the constants
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) {
            mpz_class s = 0;
            for (std::size_t i = 0; i < d; ++i)
                s += identity_[i] * cs[(i * d + j) * d + k];
            if (s != ((j == k) ? 1 : 0))
                fatal("structure_constants: unit fails to act as identity");
        }
    constants_->ready = true;
    return cs;
}

const std::vector<std::uint32_t>& ResidualHeckeAlgebra::generator_coordinates(
    long n) const {
    if (n < 1 || n > B_)
        throw std::invalid_argument(
            "generator_coordinates: index out of range");
    return gen_coords_[static_cast<std::size_t>(n - 1)];
}

void ResidualHeckeAlgebra::validate() const {
    const std::size_t d = dim_;
    // commutativity of the structure constants
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                if (constant(i, j, k) != constant(j, i, k))
                    fatal("residual algebra: structure constants are not "
                          "symmetric");
    // identity acts as identity
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) {
            std::uint32_t s = 0;
            for (std::size_t i = 0; i < d; ++i)
                s = field_.add(s, field_.mul(identity_[i],
                                             constant(i, j, k)));
            if (s != ((j == k) ? 1u : 0u))
                fatal("residual algebra: unit fails to act as identity");
        }
}

ResidualHeckeAlgebra reduce_mod_p(const IntegralHeckeAlgebra& alg,
                                  std::uint32_t p) {
    ResidualHeckeAlgebra r{PrimeField(p)};
    r.N_ = alg.level();
    r.k_ = alg.weight();
    r.B_ = alg.generator_count();
    r.dim_ = alg.rank();
    r.pipeline_ = Pipeline::A;
    const auto reduce = [&](const mpz_class& z) {
        return static_cast<std::uint32_t>(mpz_fdiv_ui(z.get_mpz_t(), p));
    };
    r.constants_.resize(alg.structure_constants().size());
    for (std::size_t i = 0; i < r.constants_.size(); ++i)
        r.constants_[i] = reduce(alg.structure_constants()[i]);
    for (long n = 1; n <= r.B_; ++n) {
        const auto& src = alg.generator_coordinates(n);
        std::vector<std::uint32_t> dst(src.size());
        for (std::size_t i = 0; i < src.size(); ++i) dst[i] = reduce(src[i]);
        r.gen_coords_.push_back(std::move(dst));
    }
    r.identity_.resize(alg.identity_coordinates().size());
    for (std::size_t i = 0; i < r.identity_.size(); ++i)
        r.identity_[i] = reduce(alg.identity_coordinates()[i]);
    r.validate();
    return r;
}

ResidualHeckeAlgebra build_residual_direct(const modsym::CuspidalSubspace& cusp,
                                           long B) {
    if (cusp.space().domain().is_rational())
        throw std::invalid_argument(
            "build_residual_direct: need a space over F_p");
    if (B < 1)
        throw std::invalid_argument("build_residual_direct: B must be >= 1");
    const PrimeField F = *cusp.space().domain().fp;
    ResidualHeckeAlgebra r{F};
    r.N_ = cusp.space().level();
    r.k_ = cusp.space().weight();
    r.B_ = B;
    r.pipeline_ = Pipeline::B;

    const std::size_t c = cusp.dimension();
    std::vector<FpMatrix> gens;
    gens.reserve(static_cast<std::size_t>(B));
    for (long n = 1; n <= B; ++n) gens.push_back(cusp.hecke_operator(n).fp());

    // Incremental reduced echelon span over the c^2 flattened coordinates.
    struct Span {
        PrimeField F;
        std::size_t cols;
        std::vector<std::vector<std::uint32_t>> rows;  // sorted by pivot
        std::vector<std::size_t> pivots;

        void reduce(std::vector<std::uint32_t>& v) const {
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const std::uint32_t f = v[pivots[i]];
                if (f == 0) continue;
                const auto& r = rows[i];
                for (std::size_t j = 0; j < cols; ++j)
                    v[j] = F.sub(v[j], F.mul(f, r[j]));
            }
        }
        bool add(std::vector<std::uint32_t> v) {
            reduce(v);
            std::size_t piv = 0;
            while (piv < cols && v[piv] == 0) ++piv;
            if (piv == cols) return false;
            const std::uint32_t inv = F.inv(v[piv]);
            for (auto& x : v) x = F.mul(x, inv);
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const std::uint32_t f = rows[i][piv];
                if (f == 0) continue;
                for (std::size_t j = 0; j < cols; ++j)
                    rows[i][j] = F.sub(rows[i][j], F.mul(f, v[j]));
            }
            auto pos = std::lower_bound(pivots.begin(), pivots.end(), piv);
            const std::size_t idx =
                static_cast<std::size_t>(pos - pivots.begin());
            pivots.insert(pos, piv);
            rows.insert(rows.begin() + static_cast<long>(idx), std::move(v));
            return true;
        }
        // coordinates in the basis; the remainder must vanish
        bool solve(std::vector<std::uint32_t> v,
                   std::vector<std::uint32_t>& out) const {
            out.assign(rows.size(), 0);
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const std::uint32_t f = v[pivots[i]];
                out[i] = f;
                if (f == 0) continue;
                const auto& r = rows[i];
                for (std::size_t j = 0; j < cols; ++j)
                    v[j] = F.sub(v[j], F.mul(f, r[j]));
            }
            for (std::uint32_t x : v)
                if (x != 0) return false;
            return true;
        }
    } span{F, c * c, {}, {}};

    auto flatten_fp = [&](const FpMatrix& m) {
        std::vector<std::uint32_t> row(c * c);
        for (std::size_t i = 0; i < c; ++i)
            for (std::size_t j = 0; j < c; ++j) row[i * c + j] = m.at(i, j);
        return row;
    };

    // The ring is generated by the prime-index operators; the module
    // span starts from I and T_1..T_B and is closed under products with
    // the ring generators via a worklist of newly accepted elements.
    std::vector<FpMatrix> ring_gens;
    for (long ell = 2; ell <= B; ++ell)
        if (ffalg::is_prime_u64(static_cast<std::uint64_t>(ell)))
            ring_gens.push_back(gens[static_cast<std::size_t>(ell - 1)]);

    std::vector<FpMatrix> work;
    auto insert = [&](const FpMatrix& m) {
        if (span.add(flatten_fp(m))) work.push_back(m);
    };
    if (c > 0) insert(FpMatrix::identity(F, c));
    for (const FpMatrix& g : gens) insert(g);
    while (!work.empty()) {
        FpMatrix e = std::move(work.back());
        work.pop_back();
        for (const FpMatrix& g : ring_gens) insert(e * g);
    }

    const std::size_t d = span.rows.size();
    r.dim_ = d;

    std::vector<FpMatrix> basis_mats;
    basis_mats.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
        FpMatrix m(F, c, c);
        for (std::size_t a = 0; a < c; ++a)
            for (std::size_t b = 0; b < c; ++b)
                m.set(a, b, span.rows[i][a * c + b]);
        basis_mats.push_back(std::move(m));
    }
    auto coords_of = [&](const FpMatrix& m) {
        std::vector<std::uint32_t> co;
        if (!span.solve(flatten_fp(m), co))
            fatal("build_residual_direct: element escapes the span");
        return co;
    };

    r.constants_.assign(d * d * d, 0);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            FpMatrix prod = basis_mats[i] * basis_mats[j];
            if (basis_mats[j] * basis_mats[i] != prod)
                fatal("build_residual_direct: basis elements do not commute");
            auto co = coords_of(prod);
            for (std::size_t k = 0; k < d; ++k) {
                r.constants_[(i * d + j) * d + k] = co[k];
                r.constants_[(j * d + i) * d + k] = co[k];
            }
        }
    for (const FpMatrix& g : gens) r.gen_coords_.push_back(coords_of(g));
    r.identity_ = coords_of(FpMatrix::identity(F, c));
    r.validate();
    return r;
}

bool is_semisimple_char0(const IntegralHeckeAlgebra& alg) {
    const std::size_t d = alg.rank();
    if (d == 0) return true;
    // regular representation from the structure constants
    std::vector<exactint::RationalMatrix> reg;
    reg.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
        exactint::RationalMatrix m(d, d);
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                m.at(j, k) = mpq_class(alg.constant(i, j, k));
        reg.push_back(std::move(m));
    }
    return exactint::gram_determinant(reg) != 0;
}

std::optional<ResidualStats> residual_stats_on_module(
    const IntegralHeckeAlgebra& alg, std::uint32_t p) {
    const PrimeField F(p);
    const std::size_t d = alg.rank();
    const std::size_t c = alg.module_dimension();
    ResidualStats out;
    out.dim = d;
    if (d == 0) return out;

    const auto reduce = [&](const mpz_class& z) {
        return static_cast<std::uint32_t>(mpz_fdiv_ui(z.get_mpz_t(), p));
    };

    // The reduced basis must stay linearly independent inside End of the
    // reduced module, i.e. the algebra must act faithfully on it.
    const IntegerMatrix& H = alg.lattice().h;
    FpMatrix flat(F, d, c * c);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < c * c; ++j)
            flat.set(i, j, reduce(H.at(i, j)));
    if (ffalg::rref(flat).rank != d) return std::nullopt;

    std::vector<FpMatrix> basis_p;
    basis_p.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
        FpMatrix m(F, c, c);
        for (std::size_t a = 0; a < c; ++a)
            for (std::size_t b = 0; b < c; ++b)
                m.set(a, b, flat.at(i, a * c + b));
        basis_p.push_back(std::move(m));
    }

    // Images of the prime-index operators generate the algebra.
    std::vector<FpMatrix> gens;
    for (long n = 1; n <= alg.generator_count(); ++n) {
        if (n != 1 && !ffalg::is_prime_u64(static_cast<std::uint64_t>(n)))
            continue;
        const auto& co = alg.generator_coordinates(n);
        FpMatrix t(F, c, c);
        for (std::size_t i = 0; i < d; ++i) {
            const std::uint32_t x = reduce(co[i]);
            if (x == 0) continue;
            for (std::size_t a = 0; a < c; ++a)
                for (std::size_t b = 0; b < c; ++b)
                    t.set(a, b,
                          F.add(t.at(a, b), F.mul(x, basis_p[i].at(a, b))));
        }
        gens.push_back(std::move(t));
    }

    localdec::Decomposition dec =
        localdec::decompose(gens, F, c, /*assume_commuting=*/true);

    // Local algebra dimension = rank of the basis restricted to the
    // module factor.
    std::size_t algebra_total = 0;
    for (const localdec::LocalFactor& f : dec.factors) {
        ffalg::RrefResult sb = ffalg::rref(f.basis);
        const std::size_t m = f.dimension;
        FpMatrix restricted(F, d, m * m);
        std::vector<std::uint32_t> coords;
        for (std::size_t i = 0; i < d; ++i) {
            FpMatrix image = f.basis * basis_p[i];
            for (std::size_t r = 0; r < m; ++r) {
                if (!ffalg::solve_in_rref_basis(sb.matrix, sb.pivots,
                                                image.row(r), coords))
                    fatal("residual_stats_on_module: factor not invariant");
                for (std::size_t s = 0; s < m; ++s)
                    restricted.set(i, r * m + s, coords[s]);
            }
        }
        const std::size_t adim = ffalg::rref(restricted).rank;
        algebra_total += adim;
        out.factors.emplace_back(adim, f.residue_degree);
    }
    if (algebra_total != d)
        fatal("residual_stats_on_module: local dimensions do not sum");
    std::sort(out.factors.begin(), out.factors.end());
    return out;
}

std::vector<FpMatrix> regular_representation(const ResidualHeckeAlgebra& alg) {
    const std::size_t d = alg.dimension();
    const PrimeField F = alg.field();
    std::vector<FpMatrix> out;
    out.reserve(static_cast<std::size_t>(alg.generator_count()));
    for (long n = 1; n <= alg.generator_count(); ++n) {
        const auto& t = alg.generator_coordinates(n);
        FpMatrix m(F, d, d);
        // multiplication by t in coordinates: row e_j -> sum_k m[j][k] e_k
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) {
                std::uint32_t s = 0;
                for (std::size_t i = 0; i < d; ++i)
                    s = F.add(s, F.mul(t[i], alg.constant(i, j, k)));
                m.set(j, k, s);
            }
        out.push_back(std::move(m));
    }
    return out;
}

}  // namespace hecke
}  // namespace heckestat
