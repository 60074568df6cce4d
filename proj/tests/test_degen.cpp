#include <doctest.h>

#include <cstdint>

#include "heckestat/oldform_block.hpp"

using namespace heckestat;
using namespace heckestat::degen;
using exactint::RationalMatrix;

namespace {

struct TestRng {
    std::uint64_t s;
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    long range(long lo, long hi) {
        return lo + static_cast<long>(next() % (hi - lo + 1));
    }
};

OldformBlockSpec make_spec(mpq_class a, mpq_class eps, long ell, long k,
                           long r, OldformCase kind) {
    OldformBlockSpec s;
    s.a_ell = std::move(a);
    s.eps_ell = std::move(eps);
    s.ell = ell;
    s.k = k;
    s.r = r;
    s.kind = kind;
    s.delta = (kind == OldformCase::ell_coprime_to_level) ? 1 : 0;
    return s;
}

mpz_class ell_pow(long ell, long k) {
    mpz_class v;
    mpz_ui_pow_ui(v.get_mpz_t(), static_cast<unsigned long>(ell),
                  static_cast<unsigned long>(k - 1));
    return v;
}

}  // namespace

TEST_CASE("block shapes") {
    // r = 0: the 1x1 matrix (a)
    auto s0 = make_spec(7, 1, 2, 2, 0, OldformCase::ell_coprime_to_level);
    RationalMatrix b0 = build_block(s0);
    REQUIRE(b0.rows() == 1);
    CHECK(b0.at(0, 0) == 7);

    // r = 1, delta = 1, k = 2, ell = 2, eps = 1: [[a, 1], [-2, 0]]
    auto s1 = make_spec(mpq_class(3), 1, 2, 2, 1,
                        OldformCase::ell_coprime_to_level);
    RationalMatrix b1 = build_block(s1);
    REQUIRE(b1.rows() == 2);
    CHECK(b1.at(0, 0) == 3);
    CHECK(b1.at(0, 1) == 1);
    CHECK(b1.at(1, 0) == -2);
    CHECK(b1.at(1, 1) == 0);

    // r = 2, delta = 0: first column (a, 0, 0)
    auto s2 = make_spec(5, 1, 3, 2, 2,
                        OldformCase::ell_divides_once_or_char_undefinable);
    RationalMatrix b2 = build_block(s2);
    REQUIRE(b2.rows() == 3);
    CHECK(b2.at(0, 0) == 5);
    CHECK(b2.at(1, 0) == 0);
    CHECK(b2.at(2, 0) == 0);
    CHECK(b2.at(0, 1) == 1);
    CHECK(b2.at(1, 2) == 1);
    CHECK(b2.at(2, 1) == 0);
    CHECK(b2.at(2, 2) == 0);
}

TEST_CASE("classification table") {
    auto spec = [&](OldformCase kind, long r) {
        return make_spec(1, 1, 2, 2, r, kind);
    };
    CHECK(classify(spec(OldformCase::ell_coprime_to_level, 0)));
    CHECK(classify(spec(OldformCase::ell_coprime_to_level, 2)));
    CHECK_FALSE(classify(spec(OldformCase::ell_coprime_to_level, 3)));
    CHECK(classify(
        spec(OldformCase::ell_divides_once_or_char_undefinable, 1)));
    CHECK_FALSE(classify(
        spec(OldformCase::ell_divides_once_or_char_undefinable, 2)));
    CHECK(classify(
        spec(OldformCase::ell_squared_divides_char_definable, 0)));
    CHECK_FALSE(classify(
        spec(OldformCase::ell_squared_divides_char_definable, 1)));
}

TEST_CASE("brute-force diagonalisability on fixed matrices") {
    CHECK(diagonalisable_bruteforce(RationalMatrix::identity(3)));

    RationalMatrix jordan(2, 2);
    jordan.at(0, 0) = 1;
    jordan.at(0, 1) = 1;
    jordan.at(1, 1) = 1;
    CHECK_FALSE(diagonalisable_bruteforce(jordan));

    // [[a, 1], [-c, 0]] with a^2 != 4c and c != 0
    RationalMatrix b(2, 2);
    b.at(0, 0) = 3;
    b.at(0, 1) = 1;
    b.at(1, 0) = -5;
    CHECK(diagonalisable_bruteforce(b));

    CHECK_THROWS_AS(diagonalisable_bruteforce(RationalMatrix(2, 3)),
                    std::invalid_argument);
}

TEST_CASE("spec validation") {
    auto bad = make_spec(1, 1, 2, 2, 1, OldformCase::ell_coprime_to_level);
    bad.delta = 0;  // inconsistent with the case
    CHECK_THROWS_AS(build_block(bad), std::invalid_argument);
    auto neg = make_spec(1, 1, 2, 2, -1, OldformCase::ell_coprime_to_level);
    CHECK_THROWS_AS(classify(neg), std::invalid_argument);
}

TEST_CASE("classifier agrees with brute force on case-consistent samples") {
    TestRng rng{0xabcdef};
    std::size_t instances = 0;
    for (long r = 0; r <= 5; ++r) {
        for (long ell : {2L, 3L, 5L}) {
            for (long k : {2L, 4L}) {
                // case (a): delta = 1, eps = 1, |a| < 2 ell^((k-1)/2)
                // (strict) guarantees a nonzero discriminant
                for (int trial = 0; trial < 8; ++trial) {
                    const mpz_class lk = ell_pow(ell, k);
                    // |a|^2 < 4 ell^(k-1), a != 0 to be safe in (a)
                    long amax = 1;
                    while (mpz_class((amax + 1) * (amax + 1)) < 4 * lk)
                        ++amax;
                    const long a = rng.range(-amax, amax);
                    auto s = make_spec(a, 1, ell, k, r,
                                       OldformCase::ell_coprime_to_level);
                    if (s.a_ell * s.a_ell == mpq_class(4 * lk)) continue;
                    CHECK(classify(s) ==
                          diagonalisable_bruteforce(build_block(s)));
                    ++instances;
                }
                // case (b): delta = 0, a != 0
                {
                    const long a = rng.range(1, 12);
                    auto s = make_spec(
                        a, 1, ell, k, r,
                        OldformCase::ell_divides_once_or_char_undefinable);
                    CHECK(classify(s) ==
                          diagonalisable_bruteforce(build_block(s)));
                    ++instances;
                }
                // case (c): delta = 0, a = 0
                {
                    auto s = make_spec(
                        0, 1, ell, k, r,
                        OldformCase::ell_squared_divides_char_definable);
                    CHECK(classify(s) ==
                          diagonalisable_bruteforce(build_block(s)));
                    ++instances;
                }
            }
        }
    }
    CHECK(instances >= 300);
}
