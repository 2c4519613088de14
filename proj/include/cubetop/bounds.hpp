#pragma once

// Boundary sizes of vertex sets in Q^n and the component-size sum
//   g(s) = sum over connected S with |S| = s of (1-p)^b(S),
// where b(S) counts edges of Q^n with exactly one endpoint in S.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cubetop/cube.hpp"

namespace cubetop {

/// Edges of Q^n leaving S. Duplicate vertices are counted once.
std::uint64_t boundaryCount(int n, std::span<const Vertex> s);

inline constexpr int kMaxEnumerationDimension = 6;
inline constexpr int kGsExactMaxDimension = 5;
inline constexpr int kGsExactMaxSize = 5;

/// Every connected vertex set of Q^n of size s, each exactly once (ESU
/// enumeration). The callback sees the vertices in insertion order.
/// Throws CapacityError for n > kMaxEnumerationDimension.
void forEachConnectedSubset(int n, int s, const std::function<void(std::span<const Vertex>)>& fn);

/// hist[b] = number of connected S of size s with b(S) = b.
std::vector<std::uint64_t> boundaryHistogram(int n, int s);

/// g(s) by exhaustive enumeration. Throws CapacityError beyond n <= 5, s <= 5.
double gsExact(int n, double p, int s);

/// log of 2^n (n s)^s (1-p)^(s (n - floor(log2 s))); -infinity at p = 1.
double logGsBound(int n, double p, int s);
double gsBound(int n, double p, int s);

/// gs-exact <= gs-bound, compared in the log domain at relative tolerance 1e-12.
bool gsExactWithinBound(int n, double p, int s);

/// Sum of gs-bound over sLo <= s <= sHi, accumulated in the log domain.
double logGsBoundSum(int n, double p, int sLo, int sHi);

/// Edge-isoperimetric lower bound s (n - log2 s) for any S of size s.
double isoperimetricBound(int n, int s);
/// The same with log2 s rounded down, as used in the component-size lemma.
/// Not a valid lower bound in general: a 3-vertex path has b = 3n - 4.
long long flooredIsoperimetricBound(int n, int s);

}  // namespace cubetop
