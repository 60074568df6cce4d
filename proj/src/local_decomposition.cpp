#include "heckestat/local_decomposition.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace heckestat {
namespace localdec {

using ffalg::FpMatrix;
using ffalg::FpPolynomial;
using ffalg::PrimeField;

namespace {

[[noreturn]] void fail(const char* msg) { throw std::logic_error(msg); }

struct Subspace {
    FpMatrix basis;                   // rows, reduced echelon form
    std::vector<std::size_t> pivots;
};

Subspace to_subspace(const FpMatrix& rows) {
    ffalg::RrefResult r = ffalg::rref(rows);
    FpMatrix b(rows.field(), r.rank, rows.cols());
    for (std::size_t i = 0; i < r.rank; ++i)
        for (std::size_t j = 0; j < rows.cols(); ++j)
            b.set(i, j, r.matrix.at(i, j));
    return Subspace{std::move(b), std::move(r.pivots)};
}

// Matrix of g restricted to the subspace; the subspace must be
// g-invariant.
FpMatrix restrict_to(const Subspace& s, const FpMatrix& g) {
    const PrimeField& F = g.field();
    const std::size_t r = s.basis.rows();
    FpMatrix image = s.basis * g;
    FpMatrix out(F, r, r);
    std::vector<std::uint32_t> coords;
    for (std::size_t i = 0; i < r; ++i) {
        if (!ffalg::solve_in_rref_basis(s.basis, s.pivots, image.row(i),
                                        coords))
            fail("decompose: subspace is not invariant");
        for (std::size_t j = 0; j < r; ++j) out.set(i, j, coords[j]);
    }
    return out;
}

}  // namespace

Decomposition decompose(const std::vector<FpMatrix>& generators,
                        PrimeField field, std::size_t dimension,
                        bool assume_commuting) {
    for (const FpMatrix& g : generators) {
        if (g.rows() != dimension || g.cols() != dimension)
            throw std::invalid_argument(
                "decompose: generator has the wrong shape");
        if (g.field() != field)
            throw std::invalid_argument("decompose: mixed fields");
    }
    if (!assume_commuting) {
        for (std::size_t i = 0; i < generators.size(); ++i)
            for (std::size_t j = i + 1; j < generators.size(); ++j)
                if (generators[i] * generators[j] !=
                    generators[j] * generators[i])
                    throw std::invalid_argument(
                        "decompose: generators do not commute");
    }

    Decomposition result;
    result.ambient_dimension = dimension;
    if (dimension == 0) return result;

    std::vector<Subspace> work;
    work.push_back(to_subspace(FpMatrix::identity(field, dimension)));

    while (!work.empty()) {
        Subspace s = std::move(work.back());
        work.pop_back();
        bool split = false;
        std::vector<FpPolynomial> irreducibles;
        for (const FpMatrix& g : generators) {
            FpMatrix r = restrict_to(s, g);
            ffalg::FactorList fl = ffalg::factor(ffalg::char_poly_fp(r));
            if (fl.factors.size() == 1) {
                irreducibles.push_back(fl.factors[0].first);
                continue;
            }
            // split into the generalized eigenspaces ker q_i(r)^(m_i deg);
            // vectors act as rows, so the left kernel is the one needed
            std::size_t total = 0;
            for (const auto& [q, m] : fl.factors) {
                FpMatrix qr = ffalg::eval_poly_at(q, r);
                const std::uint64_t e =
                    static_cast<std::uint64_t>(m) *
                    static_cast<std::uint64_t>(q.degree());
                FpMatrix ker =
                    ffalg::kernel_basis(qr.pow(e).transposed());
                if (ker.rows() == 0) fail("decompose: empty eigenspace");
                total += ker.rows();
                work.push_back(to_subspace(ker * s.basis));
            }
            if (total != s.basis.rows())
                fail("decompose: eigenspaces do not partition");
            split = true;
            break;
        }
        if (split) continue;

        std::size_t deg = 1;
        for (const FpPolynomial& q : irreducibles)
            deg = std::lcm(deg, static_cast<std::size_t>(q.degree()));
        result.factors.push_back(LocalFactor{s.basis.rows(), deg, s.basis,
                                             std::move(irreducibles)});
    }

    // partition and joint-spanning checks
    std::size_t total = 0;
    FpMatrix all(field, 0, dimension);
    for (const LocalFactor& f : result.factors) {
        total += f.dimension;
        all = all.stacked(f.basis);
    }
    if (total != dimension) fail("decompose: dimensions do not sum");
    if (ffalg::rref(all).rank != dimension)
        fail("decompose: factors do not span");

    std::sort(result.factors.begin(), result.factors.end(),
              [](const LocalFactor& a, const LocalFactor& b) {
                  if (a.dimension != b.dimension)
                      return a.dimension < b.dimension;
                  if (a.residue_degree != b.residue_degree)
                      return a.residue_degree < b.residue_degree;
                  return a.basis.data() < b.basis.data();
              });
    return result;
}

std::size_t residue_degree_sum(const Decomposition& d) {
    std::size_t s = 0;
    for (const LocalFactor& f : d.factors) s += f.residue_degree;
    return s;
}

bool is_semisimple(const Decomposition& d) {
    for (const LocalFactor& f : d.factors)
        if (f.residue_degree != f.dimension) return false;
    return true;
}

}  // namespace localdec
}  // namespace heckestat
