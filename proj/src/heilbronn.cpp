#include "heckestat/heilbronn.hpp"

#include <stdexcept>

#include "heckestat/primefield.hpp"

namespace heckestat {
namespace modsym {

namespace {

// Nearest integer to a/b (ties toward +infinity), valid for b != 0.
std::int64_t round_quotient(std::int64_t a, std::int64_t b) {
    std::int64_t num = 2 * a + b, den = 2 * b;
    std::int64_t q = num / den;
    if ((num % den != 0) && ((num < 0) != (den < 0))) --q;  // floor
    return q;
}

}  // namespace

std::vector<Mat22> heilbronn_cremona(std::uint32_t ell) {
    if (!ffalg::is_prime_u64(ell))
        throw std::invalid_argument("heilbronn_cremona: determinant not prime");
    const std::int64_t p = ell;
    if (p == 2) {
        return {{1, 0, 0, 2}, {2, 0, 0, 1}, {2, 1, 0, 1}, {1, 0, 1, 2}};
    }
    std::vector<Mat22> out;
    out.push_back({1, 0, 0, p});
    for (std::int64_t r = -(p - 1) / 2; r <= (p - 1) / 2; ++r) {
        std::int64_t x1 = p, x2 = -r, y1 = 0, y2 = 1;
        std::int64_t a = -p, b = r;
        out.push_back({x1, x2, y1, y2});
        while (b != 0) {
            const std::int64_t q = round_quotient(a, b);
            const std::int64_t c = a - b * q;
            a = -b;
            b = c;
            const std::int64_t x3 = q * x2 - x1;
            x1 = x2;
            x2 = x3;
            const std::int64_t y3 = q * y2 - y1;
            y1 = y2;
            y2 = y3;
            out.push_back({x1, x2, y1, y2});
        }
    }
    return out;
}

std::vector<Mat22> heilbronn_merel(std::uint32_t n0) {
    if (n0 == 0)
        throw std::invalid_argument("heilbronn_merel: determinant must be > 0");
    const std::int64_t n = n0;
    std::vector<Mat22> out;
    for (std::int64_t a = 1; a <= n; ++a) {
        // b = 0: a d = n, 0 <= c < d.
        if (n % a == 0) {
            const std::int64_t d = n / a;
            for (std::int64_t c = 0; c < d; ++c) out.push_back({a, 0, c, d});
        }
        for (std::int64_t b = 1; b < a; ++b) {
            // c = (a d - n) / b with 0 <= c < d forces
            // n / a <= d < n / (a - b).
            for (std::int64_t d = (n + a - 1) / a; d * (a - b) < n; ++d) {
                const std::int64_t num = a * d - n;
                if (num < 0 || num % b != 0) continue;
                const std::int64_t c = num / b;
                if (c >= 0 && c < d) out.push_back({a, b, c, d});
            }
        }
    }
    return out;
}

}  // namespace modsym
}  // namespace heckestat
