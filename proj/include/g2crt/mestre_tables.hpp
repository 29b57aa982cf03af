#pragma once

// Coefficient tables for Mestre's conic and cubic attached to a binary sextic,
// expressed as polynomials in the Clebsch invariants A, B, C, D.  Entry
// (i, j[, k]) lists monomials A^nA B^nB C^nC D^nD with rational coefficients
// num/den; indices are 1-based and only i <= j (<= k) is stored.

#include <cstdint>

namespace g2crt {
namespace mestre_tables {

struct ConicTerm { int i, j; int nA, nB, nC, nD; long num, den; };
struct CubicTerm { int i, j, k; int nA, nB, nC, nD; long num, den; };

inline constexpr ConicTerm kConic[] = {
    {1, 1, 0, 0, 1, 0, 2, 1},
    {1, 1, 1, 1, 0, 0, 1, 3},
    {1, 2, 0, 2, 0, 0, 2, 3},
    {1, 2, 1, 0, 1, 0, 2, 3},
    {1, 3, 0, 0, 0, 1, 1, 1},
    {2, 2, 0, 0, 0, 1, 1, 1},
    {2, 3, 0, 0, 2, 0, 2, 3},
    {2, 3, 0, 3, 0, 0, 1, 3},
    {2, 3, 1, 1, 1, 0, 4, 9},
    {3, 3, 0, 1, 0, 1, 1, 2},
    {3, 3, 0, 2, 1, 0, 2, 9},
    {3, 3, 1, 0, 2, 0, 2, 9},
};

inline constexpr CubicTerm kCubic[] = {
    {1, 1, 1, 0, 0, 0, 1, 2, 1},
    {1, 1, 1, 0, 1, 1, 0, -4, 3},
    {1, 1, 1, 2, 0, 1, 0, 2, 9},
    {1, 1, 2, 0, 0, 2, 0, 4, 3},
    {1, 1, 2, 0, 3, 0, 0, 2, 9},
    {1, 1, 2, 1, 0, 0, 1, 1, 3},
    {1, 1, 2, 1, 1, 1, 0, 4, 9},
    {1, 1, 3, 0, 1, 0, 1, 1, 3},
    {1, 1, 3, 0, 2, 1, 0, 4, 9},
    {1, 1, 3, 1, 0, 2, 0, 2, 3},
    {1, 1, 3, 1, 3, 0, 0, 1, 9},
    {1, 1, 3, 2, 1, 1, 0, 4, 27},
    {1, 2, 2, 0, 1, 0, 1, 1, 3},
    {1, 2, 2, 0, 2, 1, 0, 4, 9},
    {1, 2, 2, 1, 0, 2, 0, 2, 3},
    {1, 2, 2, 1, 3, 0, 0, 1, 9},
    {1, 2, 2, 2, 1, 1, 0, 4, 27},
    {1, 2, 3, 0, 0, 1, 1, 2, 3},
    {1, 2, 3, 0, 1, 2, 0, 2, 9},
    {1, 2, 3, 0, 4, 0, 0, 1, 9},
    {1, 2, 3, 1, 1, 0, 1, 1, 6},
    {1, 2, 3, 1, 2, 1, 0, 2, 9},
    {1, 2, 3, 2, 0, 2, 0, 2, 27},
    {1, 3, 3, 0, 0, 3, 0, 4, 9},
    {1, 3, 3, 0, 2, 0, 1, 1, 6},
    {1, 3, 3, 0, 3, 1, 0, 8, 27},
    {1, 3, 3, 1, 0, 1, 1, 1, 9},
    {1, 3, 3, 1, 1, 2, 0, 13, 27},
    {1, 3, 3, 1, 4, 0, 0, 1, 18},
    {1, 3, 3, 2, 2, 1, 0, 2, 27},
    {2, 2, 2, 0, 0, 1, 1, -1, 3},
    {2, 2, 2, 0, 1, 2, 0, 2, 9},
    {2, 2, 2, 0, 4, 0, 0, 1, 3},
    {2, 2, 2, 1, 2, 1, 0, 2, 3},
    {2, 2, 2, 2, 0, 2, 0, 8, 27},
    {2, 2, 3, 0, 0, 3, 0, -2, 9},
    {2, 2, 3, 0, 2, 0, 1, 1, 2},
    {2, 2, 3, 0, 3, 1, 0, -1, 27},
    {2, 2, 3, 1, 0, 1, 1, 4, 9},
    {2, 2, 3, 1, 1, 2, 0, -2, 27},
    {2, 3, 3, 0, 0, 0, 2, 1, 2},
    {2, 3, 3, 0, 1, 1, 1, -1, 18},
    {2, 3, 3, 0, 2, 2, 0, 1, 27},
    {2, 3, 3, 0, 5, 0, 0, 1, 18},
    {2, 3, 3, 1, 3, 1, 0, 1, 9},
    {2, 3, 3, 2, 1, 2, 0, 4, 81},
    {3, 3, 3, 0, 0, 2, 1, 5, 9},
    {3, 3, 3, 0, 1, 3, 0, -1, 27},
    {3, 3, 3, 0, 3, 0, 1, 1, 4},
    {3, 3, 3, 0, 4, 1, 0, -1, 18},
    {3, 3, 3, 1, 1, 1, 1, 1, 3},
    {3, 3, 3, 1, 2, 2, 0, -1, 9},
    {3, 3, 3, 2, 0, 3, 0, -4, 81},
};

}  // namespace mestre_tables
}  // namespace g2crt
