#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace heckestat {
namespace modsym {

// 2x2 integer matrix (a, b; c, d).
using Mat22 = std::array<std::int64_t, 4>;

// Cremona's Heilbronn matrices of determinant ell (ell prime), generated
// by the continued-fraction walk.  Deterministic; cached by the caller.
std::vector<Mat22> heilbronn_cremona(std::uint32_t ell);

// Merel's complete set of determinant-n matrices
// {(a,b;c,d) : ad - bc = n, a > b >= 0, d > c >= 0}.  Valid for every n;
// used as an independent cross-check of the Cremona set.
std::vector<Mat22> heilbronn_merel(std::uint32_t n);

}  // namespace modsym
}  // namespace heckestat
