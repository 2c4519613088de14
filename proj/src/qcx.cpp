#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "cubetop/complex.hpp"
#include "cubetop/errors.hpp"

namespace cubetop {
namespace {

constexpr std::uint8_t kMagic[4] = {0x51, 0x43, 0x32, 0x58};
constexpr std::uint8_t kVersion = 1;
constexpr std::size_t kHeaderSize = 32;

void putU64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

std::uint64_t getU64(std::span<const std::uint8_t> bytes, std::size_t at) {
  std::uint64_t v = 0;
  for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(bytes[at + b]) << (8 * b);
  return v;
}

}  // namespace

std::vector<std::uint8_t> encodeQcx(const Complex& c) {
  const auto& bits = c.faces().bits();
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderSize + (bits.size() + 7) / 8);
  for (auto b : kMagic) out.push_back(b);
  out.push_back(kVersion);
  out.push_back(static_cast<std::uint8_t>(c.dimension()));
  out.push_back(0);
  out.push_back(0);
  putU64(out, std::bit_cast<std::uint64_t>(c.p()));
  putU64(out, c.seed());
  putU64(out, bits.size());
  const std::size_t payload = (bits.size() + 7) / 8;
  const auto words = bits.words();
  for (std::size_t k = 0; k < payload; ++k) out.push_back(static_cast<std::uint8_t>(words[k / 8] >> (8 * (k % 8))));
  return out;
}

Complex decodeQcx(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize) throw FormatError("truncated .qcx header", bytes.size());
  for (std::size_t k = 0; k < 4; ++k)
    if (bytes[k] != kMagic[k]) throw FormatError("bad .qcx magic", k);
  if (bytes[4] != kVersion) throw FormatError("unsupported .qcx version " + std::to_string(bytes[4]), 4);
  const int n = bytes[5];
  if (n < 2 || n > kMaxDimension) throw FormatError("dimension out of range: " + std::to_string(n), 5);
  if (bytes[6] != 0) throw FormatError("reserved byte is not zero", 6);
  if (bytes[7] != 0) throw FormatError("reserved byte is not zero", 7);
  const double p = std::bit_cast<double>(getU64(bytes, 8));
  if (!(p >= 0.0 && p <= 1.0)) throw FormatError("probability outside [0, 1]", 8);
  const std::uint64_t seed = getU64(bytes, 16);
  const std::uint64_t count = getU64(bytes, 24);
  const std::uint64_t expected = Cube(n).squareCount();
  if (count != expected)
    throw FormatError("face bit count " + std::to_string(count) + " does not match n=" + std::to_string(n), 24);
  const std::size_t payload = (count + 7) / 8;
  if (bytes.size() < kHeaderSize + payload) throw FormatError("truncated .qcx payload", bytes.size());
  if (bytes.size() > kHeaderSize + payload) throw FormatError("trailing bytes after payload", kHeaderSize + payload);

  BitVector bits(count);
  auto words = bits.mutableWords();
  for (std::size_t k = 0; k < payload; ++k)
    words[k / 8] |= static_cast<std::uint64_t>(bytes[kHeaderSize + k]) << (8 * (k % 8));
  if (count % 8 != 0) {
    const std::uint8_t last = bytes[kHeaderSize + payload - 1];
    if (last >> (count % 8)) throw FormatError("padding bits past the face count are set", kHeaderSize + payload - 1);
  }
  return Complex(n, SquareSet(n, std::move(bits)), p, seed);
}

void saveQcx(const std::filesystem::path& path, const Complex& c) {
  const auto bytes = encodeQcx(c);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

Complex loadQcx(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decodeQcx(bytes);
}

}  // namespace cubetop
