#include <doctest.h>

#include "heckestat/fp_polynomial.hpp"
#include "heckestat/manin.hpp"
#include "heckestat/rational_matrix.hpp"
#include "oracles.hpp"

using namespace heckestat;
using namespace heckestat::modsym;
using exactint::IntegerMatrix;
using exactint::IntegerPolynomial;

namespace {

IntegerPolynomial char_poly_of(const HeckeOperatorMatrix& t) {
    return exactint::char_poly_z(t.z());
}

}  // namespace

TEST_CASE("p1 normalization and enumeration") {
    CHECK(P1Line(11).size() == 12);
    CHECK(P1Line(1).size() == 1);
    CHECK(P1Line(6).size() == 12);  // 6 * (1+1/2)(1+1/3)
    CHECK(P1Line(8).size() == 12);
    CHECK(gamma0_index(11) == 12);
    CHECK(gamma0_index(6) == 12);
    CHECK(gamma0_index(8) == 12);

    // scaling invariance of the class
    P1Line p1(35);
    for (std::int64_t c = 0; c < 35; ++c)
        for (std::int64_t d = 0; d < 35; ++d) {
            long i = p1.index_of(c, d);
            CHECK(i == p1.index_of(2 * c, 2 * d));   // 2 is a unit mod 35
            CHECK(i == p1.index_of(12 * c, 12 * d));
        }
    CHECK(p1.index_of(5, 10) == -1);  // gcd(5, 10, 35) = 5
    CHECK(p1.index_of(7, 14) == -1);  // gcd(7, 14, 35) = 7
    CHECK(p1.index_of(5, 7) >= 0);    // gcd(5, 7, 35) = 1
    CHECK(p1.index_of(5, 3) >= 0);
}

TEST_CASE("sturm bounds") {
    CHECK(sturm_bound(11, 2) == 2);
    CHECK(sturm_bound(23, 2) == 4);
    CHECK(sturm_bound(11, 4) == 4);
    CHECK(sturm_bound(1, 12) == 1);
    CHECK(sturm_bound(997, 2) == 167);
}

TEST_CASE("dimension oracle for prime levels") {
    CHECK(dim_oracle(2, 2) == 0);
    CHECK(dim_oracle(3, 2) == 0);
    CHECK(dim_oracle(11, 2) == 1);
    CHECK(dim_oracle(23, 2) == 2);
    CHECK(dim_oracle(37, 2) == 2);
    CHECK(dim_oracle(389, 2) == 32);
    CHECK(dim_oracle(11, 4) == 2);
    CHECK(dim_oracle(2, 4) == 0);
    CHECK(dim_oracle(5, 4) == 1);
    CHECK_THROWS_AS(dim_oracle(12, 2), std::invalid_argument);
    CHECK_THROWS_AS(dim_oracle(11, 3), std::invalid_argument);
}

TEST_CASE("manin presentation dimensions over Q") {
    // #generators = (k-1) #P1; quotient dim for k=2 is 2g + (#cusps - 1)
    auto s11 = build_space(11, 2, CoefficientDomain::rationals());
    CHECK(s11.generator_count() == 12);
    CHECK(s11.quotient_dimension() == 3);

    auto s2 = build_space(2, 2, CoefficientDomain::rationals());
    CHECK(s2.quotient_dimension() == 1);

    auto c11 = cuspidal_subspace(std::move(s11));
    CHECK(c11.dimension() == 2);

    CHECK(cuspidal_subspace(build_space(2, 2,
                                        CoefficientDomain::rationals()))
              .dimension() == 0);
    CHECK(cuspidal_subspace(build_space(23, 2,
                                        CoefficientDomain::rationals()))
              .dimension() == 4);
    CHECK(cuspidal_subspace(build_space(11, 4,
                                        CoefficientDomain::rationals()))
              .dimension() == 4);
}

TEST_CASE("cuspidal dimension matches the genus for prime levels") {
    for (long N : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                   53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101}) {
        auto cusp =
            cuspidal_subspace(build_space(N, 2,
                                          CoefficientDomain::rationals()));
        CHECK(cusp.dimension() ==
              2 * static_cast<std::size_t>(dim_oracle(N, 2)));
    }
}

TEST_CASE("cuspidal dimension matches the genus for composite levels") {
    for (long N : {1, 4, 6, 9, 10, 14, 15, 20, 21, 24, 26, 28, 36, 49, 50}) {
        auto cusp =
            cuspidal_subspace(build_space(N, 2,
                                          CoefficientDomain::rationals()));
        const long g = oracles::known_genus(N);
        REQUIRE(g >= 0);
        CHECK(cusp.dimension() == 2 * static_cast<std::size_t>(g));
    }
}

TEST_CASE("level 11 Hecke eigenvalues match the eta-product oracle") {
    auto cusp =
        cuspidal_subspace(build_space(11, 2, CoefficientDomain::rationals()));
    REQUIRE(cusp.dimension() == 2);
    const auto a = oracles::level11_coeffs(12);
    CHECK(a[2] == -2);
    CHECK(a[3] == -1);
    CHECK(a[4] == 2);
    CHECK(a[5] == 1);
    CHECK(a[7] == -2);
    for (long n = 2; n <= 12; ++n) {
        // dim S_2(11) = 1, so T_n acts as a_n times the identity
        HeckeOperatorMatrix t = hecke_operator(cusp, n);
        IntegerMatrix expect(2, 2);
        expect.at(0, 0) = static_cast<long>(a[static_cast<std::size_t>(n)]);
        expect.at(1, 1) = expect.at(0, 0);
        CHECK(t.z() == expect);
    }
}

TEST_CASE("level 1 weight 12: tau eigenvalues") {
    auto cusp =
        cuspidal_subspace(build_space(1, 12, CoefficientDomain::rationals()));
    REQUIRE(cusp.dimension() == 2);
    const auto tau = oracles::tau_coeffs(8);
    CHECK(tau[2] == -24);  // classical values, recomputed from Delta
    CHECK(tau[3] == 252);
    for (long n : {2L, 3L, 4L, 5L, 6L, 7L}) {
        HeckeOperatorMatrix t = hecke_operator(cusp, n);
        IntegerMatrix expect(2, 2);
        expect.at(0, 0) =
            static_cast<long>(tau[static_cast<std::size_t>(n)]);
        expect.at(1, 1) = expect.at(0, 0);
        CHECK(t.z() == expect);
    }
}

TEST_CASE("level 23 char poly of T_2") {
    auto cusp =
        cuspidal_subspace(build_space(23, 2, CoefficientDomain::rationals()));
    REQUIRE(cusp.dimension() == 4);
    IntegerPolynomial cp = char_poly_of(hecke_operator(cusp, 2));
    // (x^2 + x - 1)^2 = x^4 + 2x^3 - x^2 - 2x + 1
    CHECK(cp == IntegerPolynomial::from_ints({1, -2, -1, 2, 1}));
}

TEST_CASE("T_1 is the identity") {
    auto cusp =
        cuspidal_subspace(build_space(23, 2, CoefficientDomain::rationals()));
    CHECK(hecke_operator(cusp, 1).z() == IntegerMatrix::identity(4));
    CHECK_THROWS_AS(hecke_operator(cusp, 0), std::invalid_argument);
}

TEST_CASE("Hecke operators commute and satisfy the recurrences") {
    for (long N : {11L, 23L, 29L, 15L}) {
        auto cusp = cuspidal_subspace(
            build_space(N, 2, CoefficientDomain::rationals()));
        std::vector<IntegerMatrix> ts;
        for (long n = 1; n <= 12; ++n)
            ts.push_back(hecke_operator(cusp, n).z());
        for (std::size_t i = 0; i < ts.size(); ++i)
            for (std::size_t j = i + 1; j < ts.size(); ++j)
                CHECK(ts[i] * ts[j] == ts[j] * ts[i]);
        if (N % 2 != 0) {
            // T_4 = T_2^2 - 2^(k-1) T_1
            IntegerMatrix want = ts[1] * ts[1];
            for (std::size_t r = 0; r < want.rows(); ++r)
                want.at(r, r) -= 2;
            CHECK(ts[3] == want);
        }
        if (N % 6 != 0) CHECK(ts[5] == ts[1] * ts[2]);  // T_6 = T_2 T_3
    }
}

TEST_CASE("weight 4 recurrence uses l^(k-1)") {
    auto cusp =
        cuspidal_subspace(build_space(11, 4, CoefficientDomain::rationals()));
    IntegerMatrix t2 = hecke_operator(cusp, 2).z();
    IntegerMatrix t4 = hecke_operator(cusp, 4).z();
    IntegerMatrix want = t2 * t2;
    for (std::size_t r = 0; r < want.rows(); ++r) want.at(r, r) -= 8;
    CHECK(t4 == want);
}

TEST_CASE("Cremona and Merel matrix families give the same operator") {
    for (long N : {11L, 14L, 23L}) {
        for (long k : {2L, 4L}) {
            auto cusp = cuspidal_subspace(
                build_space(N, k, CoefficientDomain::rationals()));
            for (std::uint32_t ell : {2u, 3u, 5u, 7u}) {
                auto a = hecke_prime_with_matrices(cusp, ell,
                                                   heilbronn_cremona(ell));
                auto b = hecke_prime_with_matrices(cusp, ell,
                                                   heilbronn_merel(ell));
                CHECK(a.z() == b.z());
            }
        }
    }
}

TEST_CASE("mod-p spaces have the rational dimension at good primes") {
    // p = 2 and p = 3 are torsion primes of the presentation whenever
    // X_0(N) has elliptic points (e.g. N = 37), so only p >= 5 is "good"
    // here; at 2 and 3 the mod-p space can only get bigger.
    for (long N : {11L, 23L, 37L}) {
        auto cq = cuspidal_subspace(
            build_space(N, 2, CoefficientDomain::rationals()));
        for (std::uint32_t p : {5u, 7u, 13u}) {
            auto cp = cuspidal_subspace(
                build_space(N, 2, CoefficientDomain::prime_field(p)));
            CHECK(cp.dimension() == cq.dimension());
        }
        for (std::uint32_t p : {2u, 3u}) {
            auto cp = cuspidal_subspace(
                build_space(N, 2, CoefficientDomain::prime_field(p)));
            CHECK(cp.dimension() >= cq.dimension());
        }
    }
    // no elliptic points at N = 23 (23 = 3 mod 4 and 2 mod 3)
    auto cq = cuspidal_subspace(
        build_space(23, 2, CoefficientDomain::rationals()));
    for (std::uint32_t p : {2u, 3u}) {
        auto cp = cuspidal_subspace(
            build_space(23, 2, CoefficientDomain::prime_field(p)));
        CHECK(cp.dimension() == cq.dimension());
    }
}

TEST_CASE("mod-p Hecke operators satisfy the recurrences") {
    auto cusp = cuspidal_subspace(
        build_space(23, 2, CoefficientDomain::prime_field(5)));
    auto t2 = hecke_operator(cusp, 2).fp();
    auto t3 = hecke_operator(cusp, 3).fp();
    auto t4 = hecke_operator(cusp, 4).fp();
    auto t6 = hecke_operator(cusp, 6).fp();
    ffalg::PrimeField F(5);
    CHECK(t4 == t2 * t2 - ffalg::FpMatrix::identity(F, 4).scaled(2));
    CHECK(t6 == t2 * t3);
    CHECK(t2 * t3 == t3 * t2);
}

TEST_CASE("mod-p operator matches the reduction of the integral one") {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto cq = cuspidal_subspace(
            build_space(23, 2, CoefficientDomain::rationals()));
        auto cp = cuspidal_subspace(
            build_space(23, 2, CoefficientDomain::prime_field(p)));
        for (long n = 1; n <= 6; ++n) {
            // bases differ, so compare characteristic polynomials
            auto cz = exactint::char_poly_z(hecke_operator(cq, n).z());
            auto cf = ffalg::char_poly_fp(hecke_operator(cp, n).fp());
            REQUIRE(cz.degree() == cf.degree());
            for (std::size_t i = 0;
                 i <= static_cast<std::size_t>(cz.degree()); ++i) {
                const std::uint32_t expect = static_cast<std::uint32_t>(
                    mpz_fdiv_ui(cz.coeff(i).get_mpz_t(), p));
                CHECK(cf.coeff(i) == expect);
            }
        }
    }
}

TEST_CASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(build_space(11, 3, CoefficientDomain::rationals()),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_space(11, 1, CoefficientDomain::rationals()),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_space(0, 2, CoefficientDomain::rationals()),
                    std::invalid_argument);
}
