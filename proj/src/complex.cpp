#include "cubetop/complex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cubetop/rng.hpp"

namespace cubetop {

SquareSet::SquareSet(int n, bool full) : n_(n), bits_(Cube(n).squareCount(), full) {}

SquareSet::SquareSet(int n, BitVector bits) : n_(n), bits_(std::move(bits)) {
  if (bits_.size() != Cube(n).squareCount())
    throw std::invalid_argument("square set length does not match the square count of Q^" + std::to_string(n));
}

SquareSet SquareSet::fromSquares(int n, std::span<const Square> squares) {
  SquareSet set(n);
  for (const auto& s : squares) set.insert(s);
  return set;
}

bool SquareSet::contains(const Square& s) const { return bits_.test(Cube(n_).index(s)); }

void SquareSet::insert(const Square& s) { bits_.set(Cube(n_).index(s)); }

std::vector<Square> SquareSet::squares() const {
  const Cube cube(n_);
  std::vector<Square> out;
  out.reserve(size());
  bits_.forEachSet([&](std::size_t k) { out.push_back(cube.squareAt(k)); });
  return out;
}

std::vector<std::uint64_t> SquareSet::indices() const {
  std::vector<std::uint64_t> out;
  out.reserve(size());
  bits_.forEachSet([&](std::size_t k) { out.push_back(k); });
  return out;
}

Complex::Complex(int n, SquareSet faces, double p, std::uint64_t seed)
    : faces_(std::move(faces)), p_(p), seed_(seed) {
  if (faces_.dimension() != n) throw std::invalid_argument("complex dimension does not match its face set");
  if (n < 2) throw std::invalid_argument("complex dimension must be at least 2");
}

InclusionThreshold inclusionThreshold(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability must lie in [0, 1]");
  if (p >= 1.0) return {0, true};
  // p * 2^64 is exact in binary64; the cast truncates, which is floor here.
  return {static_cast<std::uint64_t>(std::ldexp(p, 64)), false};
}

Complex sample(int n, double p, std::uint64_t seed) {
  if (n < 3 || n > kMaxDimension)
    throw std::invalid_argument("sample: n must be in [3, " + std::to_string(kMaxDimension) + "]");
  const auto thr = inclusionThreshold(p);
  const std::uint64_t count = Cube(n).squareCount();
  BitVector bits(count);
  auto words = bits.mutableWords();
  Xoshiro256ss rng(seed);
  std::uint64_t k = 0;
  for (std::size_t w = 0; w < words.size(); ++w) {
    const std::uint64_t lim = std::min<std::uint64_t>(64, count - k);
    std::uint64_t word = 0;
    for (std::uint64_t b = 0; b < lim; ++b) {
      const std::uint64_t u = rng();
      word |= static_cast<std::uint64_t>(thr.always || u < thr.bound) << b;
    }
    words[w] = word;
    k += lim;
  }
  return Complex(n, SquareSet(n, std::move(bits)), p, seed);
}

EdgeDegreeTable edgeDegrees(const SquareSet& faces) {
  const int n = faces.dimension();
  const Cube cube(n);
  EdgeDegreeTable table{n, std::vector<std::uint8_t>(cube.edgeCount(), 0)};
  auto& deg = table.deg;
  const std::uint64_t perPair = std::uint64_t{1} << (n - 2);
  const auto words = faces.bits().words();
  for (int r = 0; r < cube.pairCount(); ++r) {
    const auto [i, j] = cube.pairAt(r);
    const std::uint64_t offI = static_cast<std::uint64_t>(i) << (n - 1);
    const std::uint64_t offJ = static_cast<std::uint64_t>(j) << (n - 1);
    const std::uint64_t start = static_cast<std::uint64_t>(r) * perPair;
    for (std::uint64_t x = 0; x < perPair; ++x) {
      const std::uint64_t k = start + x;
      if (!((words[k >> 6] >> (k & 63)) & 1u)) continue;
      const std::uint64_t base = insertBit(insertBit(x, i, 0), j, 0);
      const std::uint64_t si = squashBit(base, i);
      const std::uint64_t sj = squashBit(base, j);
      ++deg[offI | si];
      ++deg[offI | (si + (std::uint64_t{1} << (j - 1)))];
      ++deg[offJ | sj];
      ++deg[offJ | (sj + (std::uint64_t{1} << i))];
    }
  }
  return table;
}

EdgeDegreeTable edgeDegrees(const Complex& c) { return edgeDegrees(c.faces()); }

std::size_t maximalEdgeCount(const EdgeDegreeTable& degrees) noexcept {
  std::size_t count = 0;
  for (auto d : degrees.deg) count += (d == 0);
  return count;
}

std::size_t lightEdgeCount(const EdgeDegreeTable& degrees, int m) noexcept {
  std::size_t count = 0;
  for (auto d : degrees.deg) count += (static_cast<int>(d) <= m);
  return count;
}

std::vector<Edge> maximalEdges(const Complex& c) {
  const auto degrees = edgeDegrees(c);
  const Cube cube(c.dimension());
  std::vector<Edge> out;
  for (std::size_t e = 0; e < degrees.deg.size(); ++e)
    if (degrees.deg[e] == 0) out.push_back(cube.edgeAt(e));
  return out;
}

LightHeavyPartition classifyLightHeavy(const Complex& c, int m) {
  if (m < 0) throw std::invalid_argument("light threshold must be non-negative");
  const auto degrees = edgeDegrees(c);
  const Cube cube(c.dimension());
  LightHeavyPartition out;
  for (std::size_t e = 0; e < degrees.deg.size(); ++e)
    (static_cast<int>(degrees.deg[e]) <= m ? out.light : out.heavy).push_back(cube.edgeAt(e));
  return out;
}

double binomialCdfBelow(long long trials, double q, int below) {
  if (trials < 0 || below < 0 || !(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("bad binomial parameters");
  if (below == 0) return 0.0;
  if (below > trials) return 1.0;
  if (q == 0.0) return 1.0;
  if (q == 1.0) return 0.0;
  const double lq = std::log(q);
  const double l1q = std::log1p(-q);
  const double lnFactN = std::lgamma(static_cast<double>(trials) + 1.0);
  double sum = 0.0;
  double comp = 0.0;
  for (int k = 0; k < below; ++k) {
    const double logTerm = lnFactN - std::lgamma(k + 1.0) - std::lgamma(static_cast<double>(trials - k) + 1.0) +
                           k * lq + static_cast<double>(trials - k) * l1q;
    const double y = std::exp(logTerm) - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

Thresholds computeThresholds(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("computeThresholds: p must lie in (0, 1)");
  Thresholds th;
  th.tp = 1;
  while (!(2.0 * std::pow(1.0 - p, th.tp) < 1.0)) ++th.tp;

  const double q = p * p * p;
  const double target = std::pow(0.5, 0.25);
  auto ok = [&](long long m) { return binomialCdfBelow(m, q, th.tp) < target; };
  // The tail probability is non-increasing in the number of trials, so the
  // smallest admissible floor(M/4) is found by doubling then bisection.
  long long hi = 1;
  while (!ok(hi)) {
    if (hi > (1LL << 50)) throw std::overflow_error("M_p search did not terminate");
    hi *= 2;
  }
  long long lo = hi / 2;  // ok(lo) is false unless lo == 0 (Pr = 1 there)
  while (hi - lo > 1) {
    const long long mid = lo + (hi - lo) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  th.mp = 4 * hi;  // smallest M > 0 with floor(M/4) == hi
  return th;
}

}  // namespace cubetop
