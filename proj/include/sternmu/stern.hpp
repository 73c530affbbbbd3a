#pragma once

#include <cstdint>

#include "sternmu/numeric.hpp"

namespace sternmu {

// Stern's diatomic sequence: s(0)=0, s(1)=1, s(2n)=s(n), s(2n+1)=s(n)+s(n+1)
// (OEIS A002487).

/// s(n) by the defining recursion, memoized below a configurable index cap.
bigint stern_recursive(std::uint64_t n);

/// s(n) from the 2-regular matrix representation over the binary digits of n.
/// Rejects n = 0 (empty digit string).
bigint stern_matrix(std::uint64_t n);

/// Indices >= cap are recomputed instead of cached (memory bound).
void stern_memo_cap(std::size_t cap);

/// Sum of s(m) over the block 2^n <= m < 2^{n+1}; equals 3^n.
bigint block_sum(unsigned n);

/// Summatory function: sum of s(n) for 0 <= n <= floor(x), exact.  x >= 1.
bigint summatory(double x);

/// Leading term 3^{floor(log2 x)+1} * f0(2^{<log2 x>-1}) of the summatory
/// asymptotics, with <.> the fractional part.
double summatory_asymptotic(double x);

/// Max of rho(P)^{1/L} over all products P of {S0,S1} with length L <= max_len
/// (exhaustive, max_len <= 16).  Spectral radius in closed form from
/// trace/determinant; every such product has determinant 1.
double jsr_estimate(int max_len);

}  // namespace sternmu
