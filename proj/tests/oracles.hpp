#pragma once

// Test-only oracles, independent of the library implementation paths
// they check.

#include <cstdint>
#include <vector>

namespace oracles {

// Coefficients a_1..a_terms of q * prod_{n>=1} (1-q^n)^e1 (1-q^(M n))^e2,
// multiplied out term by term.
inline std::vector<long long> eta_product_coeffs(int e1, int M, int e2,
                                                 int terms) {
    const int len = terms + 1;  // index = exponent of q, up to q^terms
    std::vector<long long> f(len, 0);
    f[0] = 1;
    auto mul_factor = [&](int step, int count) {
        // multiply f by (1 - q^step)^count
        for (int c = 0; c < count; ++c) {
            for (int i = len - 1; i >= step; --i) f[i] -= f[i - step];
        }
    };
    for (int n = 1; n < len; ++n) {
        mul_factor(n, e1);
        if (M * n < len) mul_factor(M * n, e2);
    }
    // shift by q: a_k = coefficient of q^(k-1) in the product
    std::vector<long long> a(terms + 1, 0);
    for (int k = 1; k <= terms; ++k) a[k] = f[k - 1];
    return a;
}

// a_n of the weight-2 level-11 newform (eta(z) eta(11z))^2.
inline std::vector<long long> level11_coeffs(int terms) {
    return eta_product_coeffs(2, 11, 2, terms);
}

// tau(n): coefficients of Delta = q prod (1-q^n)^24.
inline std::vector<long long> tau_coeffs(int terms) {
    return eta_product_coeffs(24, 1, 0, terms);
}

// Genus of X_0(N) for a few composite levels, from the classical tables.
inline long known_genus(long N) {
    switch (N) {
        case 1: case 2: case 3: case 4: case 5: case 6: case 7: case 8:
        case 9: case 10: case 12: case 13: case 16: case 18: case 25:
            return 0;
        case 11: case 14: case 15: case 17: case 19: case 20: case 21:
        case 24: case 27: case 32: case 36: case 49:
            return 1;
        case 22: case 23: case 26: case 28: case 29: case 31: case 37:
        case 50:
            return 2;
        default:
            return -1;
    }
}

}  // namespace oracles
