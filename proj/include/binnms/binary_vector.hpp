#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace binnms {

// Fixed-width vector over {0,1}^d, packed 64 components per word.
// Component j lives in word j / 64 at bit j % 64. Pad bits past dim() are
// always zero, so XOR + popcount over whole words is an exact distance.
// Immutable once built; use BitWriter to assemble one component at a time.
class BinaryVector {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  // All-zero vector. dim must be positive.
  explicit BinaryVector(std::size_t dim);

  // Parses a string of '0'/'1' characters, component 0 first.
  static BinaryVector from_string(std::string_view bits);
  static BinaryVector from_bits(std::span<const std::uint8_t> bits);
  static BinaryVector from_bits(std::initializer_list<int> bits);
  // Takes ownership of packed words; pad bits are cleared.
  static BinaryVector from_words(std::size_t dim, std::vector<Word> words);

  std::size_t dim() const noexcept { return dim_; }
  std::span<const Word> words() const noexcept { return words_; }

  bool operator[](std::size_t j) const noexcept {
    return (words_[j / kWordBits] >> (j % kWordBits)) & Word{1};
  }
  // Bounds-checked access.
  bool test(std::size_t j) const;

  std::size_t count() const noexcept;
  // Components [offset, offset + length) as a new vector.
  BinaryVector slice(std::size_t offset, std::size_t length) const;
  std::string to_string() const;

  friend bool operator==(const BinaryVector&, const BinaryVector&) = default;
  // Lexicographic in (dim, packed words); only meant for ordered containers.
  friend bool operator<(const BinaryVector& a, const BinaryVector& b) noexcept {
    if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
    return a.words_ < b.words_;
  }

  static constexpr std::size_t words_for(std::size_t dim) noexcept {
    return (dim + kWordBits - 1) / kWordBits;
  }

 private:
  BinaryVector(std::size_t dim, std::vector<Word> words);

  std::size_t dim_;
  std::vector<Word> words_;
};

struct BinaryVectorHash {
  std::size_t operator()(const BinaryVector& v) const noexcept;
};

// Mutable staging area for building a BinaryVector.
class BitWriter {
 public:
  explicit BitWriter(std::size_t dim);

  void set(std::size_t j, bool value = true);
  // Copies `block` into components [offset, offset + block.dim()).
  void put(std::size_t offset, const BinaryVector& block);
  std::size_t dim() const noexcept { return dim_; }

  BinaryVector build() &&;
  BinaryVector build() const&;

 private:
  std::size_t dim_;
  std::vector<BinaryVector::Word> words_;
};

// Number of mismatching components. Throws DimensionMismatch when dims differ.
std::size_t hamming(const BinaryVector& a, const BinaryVector& b);

// Same count without the dimension check, for inner loops over one dataset.
inline std::size_t hamming_unchecked(const BinaryVector& a, const BinaryVector& b) noexcept {
  const auto wa = a.words();
  const auto wb = b.words();
  std::size_t d = 0;
  for (std::size_t w = 0; w < wa.size(); ++w) d += std::popcount(wa[w] ^ wb[w]);
  return d;
}

enum class Coding { additive, disjunctive };

// Table-style coding of one categorical value (1-based level) into `levels`
// bits: disjunctive is one-hot, additive sets the first `level` bits.
BinaryVector encode_categorical(int level, int levels, Coding coding);

struct DecodedLevel {
  int level;
  bool exact;  // false when v was not a valid codeword
};

// Inverse of encode_categorical. Non-codewords map to the nearest codeword in
// Hamming distance, lowest level on ties, and are reported as inexact.
DecodedLevel decode_categorical(const BinaryVector& v, int levels, Coding coding);

}  // namespace binnms
