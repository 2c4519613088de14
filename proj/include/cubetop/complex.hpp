#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "cubetop/bitvector.hpp"
#include "cubetop/cube.hpp"

namespace cubetop {

/// A set of 4-cycles of Q^n, stored as a bit vector over canonical square
/// indices.
class SquareSet {
 public:
  SquareSet() = default;
  explicit SquareSet(int n, bool full = false);
  SquareSet(int n, BitVector bits);

  static SquareSet fromSquares(int n, std::span<const Square> squares);

  int dimension() const noexcept { return n_; }
  std::uint64_t universeSize() const noexcept { return bits_.size(); }
  std::size_t size() const noexcept { return bits_.count(); }

  bool contains(std::uint64_t index) const noexcept { return bits_.test(index); }
  bool contains(const Square& s) const;
  void insert(std::uint64_t index) noexcept { bits_.set(index); }
  void insert(const Square& s);
  void erase(std::uint64_t index) noexcept { bits_.reset(index); }

  const BitVector& bits() const noexcept { return bits_; }
  BitVector& bits() noexcept { return bits_; }

  std::vector<Square> squares() const;
  std::vector<std::uint64_t> indices() const;

  bool isSubsetOf(const SquareSet& other) const noexcept {
    return n_ == other.n_ && bits_.isSubsetOf(other.bits_);
  }
  friend bool operator==(const SquareSet&, const SquareSet&) = default;

 private:
  int n_ = 0;
  BitVector bits_;
};

/// A 2-complex with the full 1-skeleton of Q^n and a subset of its 2-faces,
/// together with the parameters it was sampled from.
class Complex {
 public:
  Complex(int n, SquareSet faces, double p = 0.0, std::uint64_t seed = 0);

  int dimension() const noexcept { return faces_.dimension(); }
  const SquareSet& faces() const noexcept { return faces_; }
  double p() const noexcept { return p_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t faceCount() const noexcept { return faces_.size(); }
  Cube cube() const { return Cube(dimension()); }

  friend bool operator==(const Complex&, const Complex&) = default;

 private:
  SquareSet faces_;
  double p_ = 0.0;
  std::uint64_t seed_ = 0;
};

/// Inclusion threshold floor(p * 2^64); p >= 1 is reported via `always`.
struct InclusionThreshold {
  std::uint64_t bound = 0;
  bool always = false;
};
InclusionThreshold inclusionThreshold(double p);

/// Q2(n, p): square k is present iff the k-th xoshiro256** draw is below
/// floor(p * 2^64). Requires 3 <= n <= 24 and p in [0, 1].
Complex sample(int n, double p, std::uint64_t seed);

struct EdgeDegreeTable {
  int n = 0;
  std::vector<std::uint8_t> deg;  // indexed by canonical edge index
};

EdgeDegreeTable edgeDegrees(const Complex& c);
EdgeDegreeTable edgeDegrees(const SquareSet& faces);

/// Edges of degree 0, in canonical order.
std::vector<Edge> maximalEdges(const Complex& c);
std::size_t maximalEdgeCount(const EdgeDegreeTable& degrees) noexcept;

struct LightHeavyPartition {
  std::vector<Edge> light;  // degree <= M
  std::vector<Edge> heavy;
};
LightHeavyPartition classifyLightHeavy(const Complex& c, int m);
std::size_t lightEdgeCount(const EdgeDegreeTable& degrees, int m) noexcept;

struct Thresholds {
  int tp = 0;
  long long mp = 0;
};

/// Pr(Binomial(trials, q) < below), summed with Kahan compensation.
double binomialCdfBelow(long long trials, double q, int below);

/// T_p: smallest T with 2 (1-p)^T < 1. M_p: smallest M > 0 with
/// Pr(Binomial(floor(M/4), p^3) < T_p) < 2^(-1/4). Requires p in (0, 1).
Thresholds computeThresholds(double p);

// .qcx binary format, little-endian:
//   "QC2X" | version=1 | n | 0 0 | p:f64 | seed:u64 | bitCount:u64 | payload
// Face k is bit (k mod 8) of payload byte floor(k / 8).
std::vector<std::uint8_t> encodeQcx(const Complex& c);
Complex decodeQcx(std::span<const std::uint8_t> bytes);
void saveQcx(const std::filesystem::path& path, const Complex& c);
Complex loadQcx(const std::filesystem::path& path);

}  // namespace cubetop
