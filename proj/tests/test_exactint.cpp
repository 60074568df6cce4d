#include <doctest.h>

#include <cstdint>

#include "heckestat/exact_polynomial.hpp"
#include "heckestat/integer_matrix.hpp"
#include "heckestat/rational_matrix.hpp"

using namespace heckestat::exactint;

namespace {

struct TestRng {
    std::uint64_t s;
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    long range(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(next() % (hi - lo + 1));
    }
};

IntegerMatrix from_rows(const std::vector<std::vector<long>>& rows) {
    IntegerMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m.at(i, j) = rows[i][j];
    return m;
}

}  // namespace

TEST_CASE("hnf fixed cases") {
    // already in HNF
    HnfResult a = hnf(from_rows({{2, 0}, {0, 2}}));
    CHECK(a.rank == 2);
    CHECK(a.h == from_rows({{2, 0}, {0, 2}}));

    // [[1,2],[3,4]] -> [[1,0],[0,2]]
    HnfResult b = hnf(from_rows({{1, 2}, {3, 4}}));
    CHECK(b.rank == 2);
    CHECK(b.h == from_rows({{1, 0}, {0, 2}}));

    // zero matrix -> empty
    HnfResult z = hnf(IntegerMatrix(3, 2));
    CHECK(z.rank == 0);
    CHECK(z.h.rows() == 0);
}

TEST_CASE("hnf canonical form properties") {
    TestRng rng{1};
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t r = 2 + rng.next() % 4, c = 2 + rng.next() % 5;
        IntegerMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                m.at(i, j) = rng.range(-9, 9);
        HnfResult h = hnf(m);
        // pivots strictly increasing, pivot entries positive, entries
        // above pivots reduced
        for (std::size_t i = 0; i < h.rank; ++i) {
            if (i > 0) CHECK(h.pivots[i - 1] < h.pivots[i]);
            const mpz_class& p = h.h.at(i, h.pivots[i]);
            CHECK(p > 0);
            for (std::size_t k = 0; k < i; ++k) {
                CHECK(h.h.at(k, h.pivots[i]) >= 0);
                CHECK(h.h.at(k, h.pivots[i]) < p);
            }
            for (std::size_t j = 0; j < h.pivots[i]; ++j)
                CHECK(h.h.at(i, j) == 0);
        }
    }
}

TEST_CASE("hnf is invariant under unimodular row operations") {
    TestRng rng{77};
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t r = 3, c = 4;
        IntegerMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                m.at(i, j) = rng.range(-20, 20);
        IntegerMatrix u = m;
        // random elementary row operations
        for (int k = 0; k < 12; ++k) {
            std::size_t i = rng.next() % r, j = rng.next() % r;
            if (i == j) continue;
            long f = rng.range(-3, 3);
            for (std::size_t col = 0; col < c; ++col)
                u.at(i, col) += f * u.at(j, col);
        }
        HnfResult h1 = hnf(m), h2 = hnf(u);
        CHECK(h1.rank == h2.rank);
        CHECK(h1.h == h2.h);
    }
}

TEST_CASE("lattice coordinates") {
    HnfResult h = hnf(from_rows({{1, 0}, {0, 2}}));
    auto c1 = lattice_coordinates(h, {mpz_class(3), mpz_class(4)});
    REQUIRE(c1.has_value());
    CHECK((*c1)[0] == 3);
    CHECK((*c1)[1] == 2);

    auto c2 = lattice_coordinates(h, {mpz_class(0), mpz_class(1)});
    CHECK_FALSE(c2.has_value());

    HnfResult id = hnf(IntegerMatrix::identity(3));
    auto c3 = lattice_coordinates(
        id, {mpz_class(-5), mpz_class(7), mpz_class(0)});
    REQUIRE(c3.has_value());
    CHECK((*c3)[0] == -5);
    CHECK((*c3)[1] == 7);
    CHECK((*c3)[2] == 0);
}

TEST_CASE("lattice coordinates round-trip on random lattice points") {
    TestRng rng{5};
    for (int trial = 0; trial < 30; ++trial) {
        IntegerMatrix m(3, 5);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 5; ++j)
                m.at(i, j) = rng.range(-15, 15);
        HnfResult h = hnf(m);
        LatticeCoordinater lc(h);
        // random integer combination of basis rows
        std::vector<mpz_class> v(5, 0);
        std::vector<long> want(h.rank);
        for (std::size_t i = 0; i < h.rank; ++i) {
            want[i] = rng.range(-50, 50);
            for (std::size_t j = 0; j < 5; ++j)
                v[j] += want[i] * h.h.at(i, j);
        }
        auto c = lc.coordinates(v);
        REQUIRE(c.has_value());
        for (std::size_t i = 0; i < h.rank; ++i) CHECK((*c)[i] == want[i]);
    }
}

TEST_CASE("kernel lattice") {
    // kernel of [[1],[1]] acting by x*a: rows x with x0 + x1 = 0
    IntegerMatrix a(2, 1);
    a.at(0, 0) = 1;
    a.at(1, 0) = 1;
    IntegerMatrix k = kernel_lattice(a);
    REQUIRE(k.rows() == 1);
    CHECK(k.at(0, 0) * a.at(0, 0) + k.at(0, 1) * a.at(1, 0) == 0);

    // kernel is saturated: for [[2],[4]] the kernel contains (2,-1)
    IntegerMatrix b(2, 1);
    b.at(0, 0) = 2;
    b.at(1, 0) = 4;
    IntegerMatrix kb = kernel_lattice(b);
    REQUIRE(kb.rows() == 1);
    CHECK(abs(kb.at(0, 0) * 2 + kb.at(0, 1) * 4) == 0);
    CHECK((abs(kb.at(0, 0)) == 2 && abs(kb.at(0, 1)) == 1));
}

TEST_CASE("integer matrix multiplication fast path agrees with exact") {
    TestRng rng{31337};
    for (int trial = 0; trial < 20; ++trial) {
        IntegerMatrix a(3, 4), b(4, 2);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 4; ++j) a.at(i, j) = rng.range(-100, 100);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 2; ++j) b.at(i, j) = rng.range(-100, 100);
        IntegerMatrix small = a * b;
        // scaling one operand past the word-size bound forces the exact
        // path; results must agree up to the scale factor
        mpz_class big;
        mpz_ui_pow_ui(big.get_mpz_t(), 2, 100);
        IntegerMatrix a3(3, 4);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 4; ++j) a3.at(i, j) = a.at(i, j) * big;
        IntegerMatrix prod3 = a3 * b;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                CHECK(prod3.at(i, j) == small.at(i, j) * big);
    }
}

TEST_CASE("char poly of integer and rational matrices") {
    // companion matrix [[0,1],[-1,-1]] -> x^2 + x + 1
    IntegerMatrix c(2, 2);
    c.at(0, 1) = 1;
    c.at(1, 0) = -1;
    c.at(1, 1) = -1;
    CHECK(char_poly_z(c) == IntegerPolynomial::from_ints({1, 1, 1}));

    // diag(1/2, 1/2) -> (x - 1/2)^2 = x^2 - x + 1/4
    RationalMatrix d(2, 2);
    d.at(0, 0) = mpq_class(1, 2);
    d.at(1, 1) = mpq_class(1, 2);
    RationalPolynomial cp = char_poly_q(d);
    CHECK(cp.is_monic());
    CHECK(cp.coeff(1) == -1);
    CHECK(cp.coeff(0) == mpq_class(1, 4));

    // [[a,1],[-c,0]] -> x^2 - a x + c  (a = 3, c = 10)
    RationalMatrix b(2, 2);
    b.at(0, 0) = 3;
    b.at(0, 1) = 1;
    b.at(1, 0) = -10;
    RationalPolynomial bp = char_poly_q(b);
    CHECK(bp.coeff(1) == -3);
    CHECK(bp.coeff(0) == 10);

    CHECK_THROWS_AS(char_poly_q(RationalMatrix(2, 3)),
                    std::invalid_argument);
}

TEST_CASE("char poly with large entries needs several CRT primes") {
    IntegerMatrix m(3, 3);
    mpz_class big;
    mpz_ui_pow_ui(big.get_mpz_t(), 10, 40);
    m.at(0, 0) = big;
    m.at(1, 1) = big + 1;
    m.at(2, 2) = -big;
    IntegerPolynomial cp = char_poly_z(m);
    // roots are big, big+1, -big: check via evaluation
    CHECK(cp.eval(big) == 0);
    CHECK(cp.eval(big + 1) == 0);
    CHECK(cp.eval(-big) == 0);
    CHECK(cp.coeff(3) == 1);
}

TEST_CASE("determinant exact") {
    CHECK(determinant(IntegerMatrix::identity(4)) == 1);
    IntegerMatrix m(2, 2);
    m.at(0, 0) = 1;
    m.at(0, 1) = 2;
    m.at(1, 0) = 3;
    m.at(1, 1) = 4;
    CHECK(determinant(m) == -2);

    IntegerMatrix s(2, 2);  // singular
    s.at(0, 0) = 2;
    s.at(0, 1) = 4;
    s.at(1, 0) = 1;
    s.at(1, 1) = 2;
    CHECK(determinant(s) == 0);
}

TEST_CASE("gram determinant") {
    // basis {1} in the 1x1 regular representation
    std::vector<RationalMatrix> one{RationalMatrix::identity(1)};
    CHECK(gram_determinant(one) == 1);

    // Q[t]/(t^2), regular representation: 1 -> I, t -> [[0,1],[0,0]]
    RationalMatrix t(2, 2);
    t.at(0, 1) = 1;
    std::vector<RationalMatrix> nilp{RationalMatrix::identity(2), t};
    CHECK(gram_determinant(nilp) == 0);

    // Q[x]/(x^2 - x): 1 -> I, x -> diag-ish [[0,1],[0,1]]
    RationalMatrix x(2, 2);
    x.at(0, 1) = 1;
    x.at(1, 1) = 1;
    std::vector<RationalMatrix> split{RationalMatrix::identity(2), x};
    CHECK(gram_determinant(split) == 1);

    // non-commuting input is rejected
    RationalMatrix e12(2, 2), e21(2, 2);
    e12.at(0, 1) = 1;
    e21.at(1, 0) = 1;
    CHECK_THROWS_AS(gram_determinant({e12, e21}), std::invalid_argument);
}

TEST_CASE("rational polynomial gcd and squarefree part") {
    // f = (x-1)^2 (x+2)
    RationalPolynomial xm1(std::vector<mpq_class>{-1, 1});
    RationalPolynomial xp2(std::vector<mpq_class>{2, 1});
    RationalPolynomial f = xm1 * xm1 * xp2;
    RationalPolynomial sf = squarefree_part(f);
    CHECK(sf == (xm1 * xp2).monic());
    CHECK(gcd(f, f.derivative()) == xm1.monic());
}
