#include "cubetop/bounds.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "cubetop/errors.hpp"

namespace cubetop {

std::uint64_t boundaryCount(int n, std::span<const Vertex> s) {
  const Cube cube(n);
  std::vector<std::uint8_t> in(cube.vertexCount(), 0);
  for (Vertex v : s) {
    if (v >= cube.vertexCount()) throw std::invalid_argument("boundaryCount: vertex outside Q^n");
    in[v] = 1;
  }
  std::uint64_t b = 0;
  for (Vertex v = 0; v < cube.vertexCount(); ++v) {
    if (!in[v]) continue;
    for (int d = 0; d < n; ++d) b += !in[v ^ (Vertex{1} << d)];
  }
  return b;
}

namespace {

struct Esu {
  int s;
  std::vector<std::uint64_t> nbr;
  std::vector<Vertex> sub;
  const std::function<void(std::span<const Vertex>)>& fn;

  void extend(std::uint64_t subMask, std::uint64_t subNbr, std::uint64_t ext, Vertex root) {
    if (static_cast<int>(sub.size()) == s) {
      fn(sub);
      return;
    }
    while (ext) {
      const Vertex w = static_cast<Vertex>(std::countr_zero(ext));
      ext &= ext - 1;
      const std::uint64_t above = ~((std::uint64_t{2} << root) - 1);  // vertices > root
      const std::uint64_t exclusive = nbr[w] & ~subMask & ~subNbr & above;
      sub.push_back(w);
      extend(subMask | (std::uint64_t{1} << w), subNbr | nbr[w], ext | exclusive, root);
      sub.pop_back();
    }
  }
};

}  // namespace

void forEachConnectedSubset(int n, int s, const std::function<void(std::span<const Vertex>)>& fn) {
  if (n < 1 || n > kMaxEnumerationDimension)
    throw CapacityError("connected-subset enumeration supports 1 <= n <= " +
                        std::to_string(kMaxEnumerationDimension));
  if (s < 1) throw std::invalid_argument("subset size must be positive");
  const int count = 1 << n;
  if (s > count) return;
  Esu esu{s, std::vector<std::uint64_t>(count, 0), {}, fn};
  for (int v = 0; v < count; ++v)
    for (int d = 0; d < n; ++d) esu.nbr[v] |= std::uint64_t{1} << (v ^ (1 << d));
  for (int v = 0; v < count; ++v) {
    const std::uint64_t above = (v == 63) ? 0 : ~((std::uint64_t{2} << v) - 1);
    esu.sub.assign(1, static_cast<Vertex>(v));
    esu.extend(std::uint64_t{1} << v, esu.nbr[v], esu.nbr[v] & above, static_cast<Vertex>(v));
  }
}

std::vector<std::uint64_t> boundaryHistogram(int n, int s) {
  std::vector<std::uint64_t> hist(static_cast<std::size_t>(n) * s + 1, 0);
  forEachConnectedSubset(n, s, [&](std::span<const Vertex> set) { ++hist[boundaryCount(n, set)]; });
  return hist;
}

double gsExact(int n, double p, int s) {
  if (n > kGsExactMaxDimension || s > kGsExactMaxSize)
    throw CapacityError("gs-exact is limited to n <= 5 and s <= 5");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  const auto hist = boundaryHistogram(n, s);
  double sum = 0.0;
  for (std::size_t b = 0; b < hist.size(); ++b)
    if (hist[b]) sum += static_cast<double>(hist[b]) * std::pow(1.0 - p, static_cast<double>(b));
  return sum;
}

double logGsBound(int n, double p, int s) {
  if (n < 1 || s < 1) throw std::invalid_argument("gs-bound needs n >= 1 and s >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  const double exponent = static_cast<double>(s) * (n - std::floor(std::log2(static_cast<double>(s))));
  const double base = n * std::log(2.0) + s * std::log(static_cast<double>(n) * s);
  if (p == 1.0) return exponent == 0.0 ? base : -std::numeric_limits<double>::infinity();
  return base + exponent * std::log1p(-p);
}

double gsBound(int n, double p, int s) { return std::exp(logGsBound(n, p, s)); }

bool gsExactWithinBound(int n, double p, int s) {
  const double exact = gsExact(n, p, s);
  if (exact == 0.0) return true;
  return std::log(exact) <= logGsBound(n, p, s) + 1e-12 * std::abs(logGsBound(n, p, s));
}

double logGsBoundSum(int n, double p, int sLo, int sHi) {
  double acc = -std::numeric_limits<double>::infinity();
  for (int s = sLo; s <= sHi; ++s) {
    const double term = logGsBound(n, p, s);
    if (term == -std::numeric_limits<double>::infinity()) continue;
    const double hi = std::max(acc, term);
    acc = hi + std::log(std::exp(acc - hi) + std::exp(term - hi));
  }
  return acc;
}

double isoperimetricBound(int n, int s) {
  if (s < 1) throw std::invalid_argument("s must be positive");
  return s * (n - std::log2(static_cast<double>(s)));
}

long long flooredIsoperimetricBound(int n, int s) {
  if (s < 1) throw std::invalid_argument("s must be positive");
  return static_cast<long long>(s) * (n - (std::bit_width(static_cast<unsigned>(s)) - 1));
}

}  // namespace cubetop
