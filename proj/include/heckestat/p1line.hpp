#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

namespace heckestat {
namespace modsym {

// A point of P^1(Z/N) in canonical normalized form.  The normalization
// fixes a unique representative (c, d) per projective class with c a
// divisor of N.
struct P1Element {
    std::uint32_t c = 0;
    std::uint32_t d = 0;
    bool operator==(const P1Element& o) const { return c == o.c && d == o.d; }
};

// Canonical representative of (u : v), or (0, 0) when gcd(u, v, N) > 1
// (an invalid class).
P1Element p1_normalize(std::uint32_t N, std::int64_t u, std::int64_t v);

// Enumerated P^1(Z/N) with constant-time index lookup.
class P1Line {
public:
    explicit P1Line(std::uint32_t N);

    std::uint32_t level() const { return N_; }
    std::size_t size() const { return list_.size(); }
    const P1Element& at(std::size_t i) const { return list_[i]; }

    // Index of the class of (u : v), or -1 if the class is invalid.
    long index_of(std::int64_t u, std::int64_t v) const;

private:
    std::uint32_t N_;
    std::vector<P1Element> list_;
    std::unordered_map<std::uint64_t, std::uint32_t> index_;
};

}  // namespace modsym
}  // namespace heckestat
