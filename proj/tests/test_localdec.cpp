#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "heckestat/local_decomposition.hpp"

using namespace heckestat;
using namespace heckestat::localdec;
using ffalg::FpMatrix;
using ffalg::PrimeField;

namespace {

struct TestRng {
    std::uint64_t s;
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    std::uint32_t below(std::uint32_t n) {
        return static_cast<std::uint32_t>(next() % n);
    }
};

// companion matrix of a monic polynomial given by its coefficient list
FpMatrix companion(PrimeField F, const std::vector<long long>& monic) {
    const std::size_t n = monic.size() - 1;
    FpMatrix m(F, n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) m.set(i, i + 1, 1);
    for (std::size_t j = 0; j < n; ++j)
        m.set(n - 1, j, F.neg(F.reduce(monic[j])));
    return m;
}

FpMatrix kronecker(const FpMatrix& a, const FpMatrix& b) {
    const PrimeField& F = a.field();
    FpMatrix out(F, a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a.at(i, j) == 0) continue;
            for (std::size_t u = 0; u < b.rows(); ++u)
                for (std::size_t v = 0; v < b.cols(); ++v)
                    out.set(i * b.rows() + u, j * b.cols() + v,
                            F.mul(a.at(i, j), b.at(u, v)));
        }
    return out;
}

FpMatrix nilpotent_shift(PrimeField F, std::size_t n) {
    FpMatrix m(F, n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) m.set(i, i + 1, 1);
    return m;
}

FpMatrix block_diag(const std::vector<FpMatrix>& blocks, PrimeField F) {
    std::size_t n = 0;
    for (const auto& b : blocks) n += b.rows();
    FpMatrix out(F, n, n);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                out.set(off + i, off + j, b.at(i, j));
        off += b.rows();
    }
    return out;
}

FpMatrix random_invertible(PrimeField F, std::size_t n, TestRng& rng) {
    for (;;) {
        FpMatrix m(F, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m.set(i, j, rng.below(F.p()));
        if (ffalg::rref(m).rank == n) return m;
    }
}

FpMatrix inverse_of(const FpMatrix& m) {
    const PrimeField& F = m.field();
    const std::size_t n = m.rows();
    // invert via rref of [m | I]
    FpMatrix aug(F, n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.set(i, j, m.at(i, j));
        aug.set(i, n + i, 1);
    }
    ffalg::RrefResult r = ffalg::rref(aug);
    FpMatrix inv(F, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv.set(i, j, r.matrix.at(i, n + j));
    return inv;
}

// a small pool of irreducible polynomials per characteristic, by degree
std::vector<long long> irreducible_of_degree(std::uint32_t p, std::size_t e,
                                             TestRng& rng) {
    PrimeField F(p);
    for (;;) {
        std::vector<std::uint32_t> c(e + 1);
        for (std::size_t i = 0; i < e; ++i) c[i] = rng.below(p);
        c[e] = 1;
        ffalg::FpPolynomial f(F, c);
        if (ffalg::is_irreducible(f)) {
            std::vector<long long> out(e + 1);
            for (std::size_t i = 0; i <= e; ++i) out[i] = c[i];
            return out;
        }
    }
}

}  // namespace

TEST_CASE("field factor: F_2[t]/(t^2+t+1)") {
    PrimeField F(2);
    auto dec = decompose({companion(F, {1, 1, 1})}, F, 2);
    REQUIRE(dec.factors.size() == 1);
    CHECK(dec.factors[0].dimension == 2);
    CHECK(dec.factors[0].residue_degree == 2);
    CHECK(is_semisimple(dec));
    CHECK(residue_degree_sum(dec) == 2);
}

TEST_CASE("nilpotent factor: F_3[t]/(t^2)") {
    PrimeField F(3);
    auto dec = decompose({nilpotent_shift(F, 2)}, F, 2);
    REQUIRE(dec.factors.size() == 1);
    CHECK(dec.factors[0].dimension == 2);
    CHECK(dec.factors[0].residue_degree == 1);
    CHECK_FALSE(is_semisimple(dec));
    CHECK(residue_degree_sum(dec) == 1);
}

TEST_CASE("product F_3 x F_9 under a scrambled basis") {
    PrimeField F(3);
    TestRng rng{404};
    // multiplication by a generator: 2 on the F_3 piece, the companion of
    // an irreducible quadratic on the F_9 piece
    FpMatrix scalar(F, 1, 1);
    scalar.set(0, 0, 2);
    FpMatrix gen = block_diag({scalar, companion(F, {1, 0, 1})}, F);
    FpMatrix g = random_invertible(F, 3, rng);
    FpMatrix conj = inverse_of(g) * gen * g;
    auto dec = decompose({conj}, F, 3);
    REQUIRE(dec.factors.size() == 2);
    CHECK(dec.factors[0].dimension == 1);
    CHECK(dec.factors[0].residue_degree == 1);
    CHECK(dec.factors[1].dimension == 2);
    CHECK(dec.factors[1].residue_degree == 2);
    CHECK(is_semisimple(dec));
    CHECK(residue_degree_sum(dec) == 3);
}

TEST_CASE("zero-dimensional algebra") {
    PrimeField F(5);
    auto dec = decompose({}, F, 0);
    CHECK(dec.factors.empty());
    CHECK(is_semisimple(dec));
    CHECK(residue_degree_sum(dec) == 0);
}

TEST_CASE("non-commuting generators are rejected") {
    PrimeField F(3);
    FpMatrix a(F, 2, 2), b(F, 2, 2);
    a.set(0, 1, 1);
    b.set(1, 0, 1);
    CHECK_THROWS_AS(decompose({a, b}, F, 2), std::invalid_argument);
}

TEST_CASE("random scrambled product algebras are recovered exactly") {
    TestRng rng{0xdecafbad};
    for (std::uint32_t p : {2u, 3u, 5u}) {
        PrimeField F(p);
        for (int trial = 0; trial < 25; ++trial) {
            // build 1..3 pieces F_{p^e}[t]/(t^m)
            const std::size_t npieces = 1 + rng.below(3);
            std::vector<FpMatrix> s_blocks, t_blocks;
            std::vector<std::pair<std::size_t, std::size_t>> expected;
            std::size_t dim = 0;
            for (std::size_t i = 0; i < npieces; ++i) {
                const std::size_t e = 1 + rng.below(3);
                const std::size_t m = 1 + rng.below(2);
                auto f = irreducible_of_degree(p, e, rng);
                // multiplication by s and by t on the piece, as Kronecker
                // factors of the regular representation
                FpMatrix mult_s =
                    kronecker(companion(F, f),
                              FpMatrix::identity(F, m));
                FpMatrix mult_t = kronecker(FpMatrix::identity(F, e),
                                            nilpotent_shift(F, m));
                s_blocks.push_back(mult_s);
                t_blocks.push_back(mult_t);
                expected.emplace_back(e * m, e);
                dim += e * m;
            }
            // embed piecewise generators as block matrices (zero outside);
            // the idempotent projector of each piece is a generator of the
            // product algebra and is needed to generate it
            std::vector<FpMatrix> gens;
            for (std::size_t i = 0; i < npieces; ++i) {
                std::vector<FpMatrix> sb, tb, eb;
                for (std::size_t j = 0; j < npieces; ++j) {
                    const std::size_t n = s_blocks[j].rows();
                    if (j == i) {
                        sb.push_back(s_blocks[j]);
                        tb.push_back(t_blocks[j]);
                        eb.push_back(FpMatrix::identity(F, n));
                    } else {
                        sb.push_back(FpMatrix(F, n, n));
                        tb.push_back(FpMatrix(F, n, n));
                        eb.push_back(FpMatrix(F, n, n));
                    }
                }
                gens.push_back(block_diag(sb, F));
                gens.push_back(block_diag(tb, F));
                gens.push_back(block_diag(eb, F));
            }
            gens.push_back(FpMatrix::identity(F, dim));
            // scramble
            FpMatrix g = random_invertible(F, dim, rng);
            FpMatrix gi = inverse_of(g);
            for (FpMatrix& mat : gens) mat = gi * mat * g;

            auto dec = decompose(gens, F, dim);
            std::vector<std::pair<std::size_t, std::size_t>> got;
            for (const auto& f : dec.factors)
                got.emplace_back(f.dimension, f.residue_degree);
            std::sort(expected.begin(), expected.end());
            std::sort(got.begin(), got.end());
            REQUIRE(got == expected);

            // generator-order invariance
            std::vector<FpMatrix> rev(gens.rbegin(), gens.rend());
            auto dec2 = decompose(rev, F, dim, true);
            std::vector<std::pair<std::size_t, std::size_t>> got2;
            for (const auto& f : dec2.factors)
                got2.emplace_back(f.dimension, f.residue_degree);
            std::sort(got2.begin(), got2.end());
            CHECK(got2 == expected);
        }
    }
}

TEST_CASE("residue degree of a pure field algebra") {
    TestRng rng{99};
    for (std::uint32_t p : {2u, 5u}) {
        PrimeField F(p);
        for (std::size_t n = 1; n <= 6; ++n) {
            auto f = irreducible_of_degree(p, n, rng);
            auto dec = decompose({companion(F, f)}, F, n);
            REQUIRE(dec.factors.size() == 1);
            CHECK(dec.factors[0].residue_degree == n);
            CHECK(dec.factors[0].dimension == n);
        }
    }
}
