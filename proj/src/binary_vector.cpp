#include "binnms/binary_vector.hpp"

#include <limits>
#include <stdexcept>
#include <utility>

#include "binnms/errors.hpp"

namespace binnms {

namespace {

using Word = BinaryVector::Word;

void clear_pad(std::size_t dim, std::vector<Word>& words) {
  const std::size_t tail = dim % BinaryVector::kWordBits;
  if (tail != 0 && !words.empty()) words.back() &= (Word{1} << tail) - 1;
}

void require_positive(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("BinaryVector dimension must be positive");
}

}  // namespace

BinaryVector::BinaryVector(std::size_t dim) : dim_(dim), words_(words_for(dim), 0) {
  require_positive(dim);
}

BinaryVector::BinaryVector(std::size_t dim, std::vector<Word> words)
    : dim_(dim), words_(std::move(words)) {}

BinaryVector BinaryVector::from_string(std::string_view bits) {
  BitWriter w(bits.size());
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j] == '1') {
      w.set(j);
    } else if (bits[j] != '0') {
      throw std::invalid_argument("binary string may only contain '0' and '1'");
    }
  }
  return std::move(w).build();
}

BinaryVector BinaryVector::from_bits(std::span<const std::uint8_t> bits) {
  BitWriter w(bits.size());
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j] > 1) throw std::invalid_argument("binary component must be 0 or 1");
    w.set(j, bits[j] == 1);
  }
  return std::move(w).build();
}

BinaryVector BinaryVector::from_bits(std::initializer_list<int> bits) {
  BitWriter w(bits.size());
  std::size_t j = 0;
  for (int b : bits) {
    if (b != 0 && b != 1) throw std::invalid_argument("binary component must be 0 or 1");
    w.set(j++, b == 1);
  }
  return std::move(w).build();
}

BinaryVector BinaryVector::from_words(std::size_t dim, std::vector<Word> words) {
  require_positive(dim);
  if (words.size() != words_for(dim)) {
    throw std::invalid_argument("word count does not match dimension");
  }
  clear_pad(dim, words);
  return BinaryVector(dim, std::move(words));
}

bool BinaryVector::test(std::size_t j) const {
  if (j >= dim_) throw std::out_of_range("BinaryVector component index out of range");
  return (*this)[j];
}

std::size_t BinaryVector::count() const noexcept {
  std::size_t c = 0;
  for (Word w : words_) c += std::popcount(w);
  return c;
}

BinaryVector BinaryVector::slice(std::size_t offset, std::size_t length) const {
  if (offset + length > dim_ || length == 0) {
    throw std::out_of_range("BinaryVector slice out of range");
  }
  BitWriter w(length);
  for (std::size_t j = 0; j < length; ++j) w.set(j, (*this)[offset + j]);
  return std::move(w).build();
}

std::string BinaryVector::to_string() const {
  std::string s(dim_, '0');
  for (std::size_t j = 0; j < dim_; ++j) {
    if ((*this)[j]) s[j] = '1';
  }
  return s;
}

std::size_t BinaryVectorHash::operator()(const BinaryVector& v) const noexcept {
  // FNV-1a over the packed words, seeded with the dimension.
  std::uint64_t h = 1469598103934665603ULL ^ v.dim();
  for (Word w : v.words()) {
    h ^= w;
    h *= 1099511628211ULL;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

BitWriter::BitWriter(std::size_t dim) : dim_(dim), words_(BinaryVector::words_for(dim), 0) {
  require_positive(dim);
}

void BitWriter::set(std::size_t j, bool value) {
  if (j >= dim_) throw std::out_of_range("BitWriter component index out of range");
  const Word mask = Word{1} << (j % BinaryVector::kWordBits);
  if (value) {
    words_[j / BinaryVector::kWordBits] |= mask;
  } else {
    words_[j / BinaryVector::kWordBits] &= ~mask;
  }
}

void BitWriter::put(std::size_t offset, const BinaryVector& block) {
  if (offset + block.dim() > dim_) throw std::out_of_range("BitWriter block out of range");
  for (std::size_t j = 0; j < block.dim(); ++j) set(offset + j, block[j]);
}

BinaryVector BitWriter::build() && { return BinaryVector::from_words(dim_, std::move(words_)); }

BinaryVector BitWriter::build() const& { return BinaryVector::from_words(dim_, words_); }

std::size_t hamming(const BinaryVector& a, const BinaryVector& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
  return hamming_unchecked(a, b);
}

BinaryVector encode_categorical(int level, int levels, Coding coding) {
  if (levels < 1) throw std::invalid_argument("categorical feature needs at least one level");
  if (level < 1 || level > levels) {
    throw std::out_of_range("level " + std::to_string(level) + " outside [1, " +
                            std::to_string(levels) + "]");
  }
  BitWriter w(static_cast<std::size_t>(levels));
  if (coding == Coding::disjunctive) {
    w.set(static_cast<std::size_t>(level - 1));
  } else {
    for (int j = 0; j < level; ++j) w.set(static_cast<std::size_t>(j));
  }
  return std::move(w).build();
}

DecodedLevel decode_categorical(const BinaryVector& v, int levels, Coding coding) {
  if (levels < 1) throw std::invalid_argument("categorical feature needs at least one level");
  if (v.dim() != static_cast<std::size_t>(levels)) {
    throw DimensionMismatch(static_cast<std::size_t>(levels), v.dim());
  }
  int best = 1;
  std::size_t best_dist = std::numeric_limits<std::size_t>::max();
  for (int level = 1; level <= levels; ++level) {
    const std::size_t d = hamming_unchecked(v, encode_categorical(level, levels, coding));
    if (d < best_dist) {
      best_dist = d;
      best = level;
    }
  }
  return {best, best_dist == 0};
}

}  // namespace binnms
