#include "heckestat/p1line.hpp"

#include <numeric>
#include <stdexcept>

namespace heckestat {
namespace modsym {

namespace {

std::int64_t gcd_i64(std::int64_t a, std::int64_t b) {
    while (b != 0) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a < 0 ? -a : a;
}

// g = gcd(a, b) together with s such that s*a == g (mod b).
std::int64_t xgcd_s(std::int64_t a, std::int64_t b, std::int64_t& s) {
    std::int64_t s0 = 1, s1 = 0, r0 = a, r1 = b;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::int64_t t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    if (r0 < 0) {
        r0 = -r0;
        s0 = -s0;
    }
    s = s0;
    return r0;
}

}  // namespace

P1Element p1_normalize(std::uint32_t N, std::int64_t u0, std::int64_t v0) {
    if (N == 0) throw std::invalid_argument("p1_normalize: N must be positive");
    if (N == 1) return P1Element{0, 0};
    const std::int64_t n = N;
    std::int64_t u = ((u0 % n) + n) % n;
    std::int64_t v = ((v0 % n) + n) % n;
    if (u == 0) {
        if (gcd_i64(v, n) != 1) return P1Element{0, 0};
        return P1Element{0, 1};
    }
    std::int64_t s;
    const std::int64_t g = xgcd_s(u, n, s);
    s = ((s % n) + n) % n;
    if (gcd_i64(g, v) != 1) return P1Element{0, 0};  // class is not coprime
    // s u == g (mod n), but s itself need not be a unit mod n; it is a
    // unit mod n/g, so shifting by multiples of n/g fixes that without
    // changing s u mod n.
    while (gcd_i64(s, n) != 1) s = (s + n / g) % n;

    // Scale so the first coordinate becomes g, then minimize the second
    // over the units fixing it.
    v = (s * v) % n;
    std::int64_t min_v = v;
    if (g != 1) {
        const std::int64_t ng = n / g;
        const std::int64_t v_ng = (v * ng) % n;
        std::int64_t t = 1;
        for (std::int64_t k = 2; k <= g; ++k) {
            v = (v + v_ng) % n;
            t = (t + ng) % n;
            if (v < min_v && gcd_i64(t, n) == 1) min_v = v;
        }
    }
    return P1Element{static_cast<std::uint32_t>(g),
                     static_cast<std::uint32_t>(min_v)};
}

P1Line::P1Line(std::uint32_t N) : N_(N) {
    if (N == 0) throw std::invalid_argument("P1Line: N must be positive");
    auto key = [](const P1Element& e) {
        return (static_cast<std::uint64_t>(e.c) << 32) | e.d;
    };
    if (N == 1) {
        list_.push_back(P1Element{0, 0});
        index_[key(list_[0])] = 0;
        return;
    }
    // Canonical representatives have c | N, so scanning (g, v) over the
    // divisors g of N covers every class.
    for (std::uint32_t g = 0; g <= N; ++g) {
        if (g != 0 && N % g != 0) continue;
        for (std::uint32_t v = 0; v < N; ++v) {
            P1Element e = p1_normalize(N, g, v);
            if (e.c == 0 && e.d == 0) continue;
            if (index_.find(key(e)) == index_.end()) {
                index_[key(e)] = static_cast<std::uint32_t>(list_.size());
                list_.push_back(e);
            }
        }
    }
}

long P1Line::index_of(std::int64_t u, std::int64_t v) const {
    P1Element e = p1_normalize(N_, u, v);
    if (N_ != 1 && e.c == 0 && e.d == 0) return -1;
    auto it = index_.find((static_cast<std::uint64_t>(e.c) << 32) | e.d);
    return it == index_.end() ? -1 : static_cast<long>(it->second);
}

}  // namespace modsym
}  // namespace heckestat
