#pragma once

#include <cstdint>
#include <stdexcept>

namespace heckestat {
namespace ffalg {

// Deterministic Miller-Rabin, correct for all n < 2^64.
bool is_prime_u64(std::uint64_t n);

// The coefficient field F_p.  p is restricted to < 2^31 so that a product
// of two residues fits in a 64-bit word.
class PrimeField {
public:
    explicit PrimeField(std::uint32_t p);

    std::uint32_t p() const { return p_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
        return a >= b ? a - b : a + p_ - b;
    }
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(a) * b) % p_);
    }
    std::uint32_t inv(std::uint32_t a) const;
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

    // Reduces an arbitrary signed 64-bit value into [0, p).
    std::uint32_t reduce(std::int64_t a) const {
        std::int64_t r = a % static_cast<std::int64_t>(p_);
        if (r < 0) r += p_;
        return static_cast<std::uint32_t>(r);
    }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }
    bool operator!=(const PrimeField& o) const { return p_ != o.p_; }

private:
    std::uint32_t p_;
};

}  // namespace ffalg
}  // namespace heckestat
