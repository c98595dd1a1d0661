#pragma once

// Words of the free semigroup on n generators and the graded indexing of
// the truncated Fock basis {e_w : |w| <= D}.

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace fockc {

using Letter = std::uint32_t;   // 0-based generator index
using WordIndex = std::uint64_t;

// A word g_{i1} ... g_{ik}. Letters are stored 0-based; the 1-based form
// (matching g_1 ... g_n) appears only through from_external/to_external.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  // Validates that every letter lies in 1..n.
  static Word from_external(std::span<const int> one_based, std::size_t n);
  std::vector<int> to_external() const;

  std::size_t length() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  std::span<const Letter> letters() const& noexcept { return letters_; }
  // Owning copy for temporaries, so `for (l : e.word(i).letters())` is safe.
  std::vector<Letter> letters() && noexcept { return std::move(letters_); }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  bool operator==(const Word&) const = default;
  // Graded order: shorter words first, then lexicographic with g_1 < g_2 < ...
  std::strong_ordering operator<=>(const Word& other) const;

 private:
  std::vector<Letter> letters_;
};

Word reverse_word(const Word& w);
Word concat(const Word& u, const Word& v);

// Index tables for all words of length <= degree over n letters.
//
// index(w) = offset(|w|) + code(w), where code(w) is the base-n value of the
// letters read with the first letter most significant. The index order is
// therefore the graded order of Word. Construction fails when the total
// dimension does not fit the packed 63-bit range.
class GradedEnumeration {
 public:
  GradedEnumeration(std::size_t n, std::size_t degree);

  std::size_t n() const noexcept { return n_; }
  std::size_t degree() const noexcept { return degree_; }
  WordIndex total_dim() const noexcept { return offsets_.back(); }

  // First index of length k; offset(degree + 1) == total_dim().
  WordIndex offset(std::size_t k) const { return offsets_.at(k); }
  WordIndex count_of_length(std::size_t k) const { return powers_.at(k); }
  WordIndex power(std::size_t k) const { return powers_.at(k); }

  WordIndex index(const Word& w) const;
  Word word(WordIndex i) const;
  std::size_t length_of(WordIndex i) const;

  // Index of the concatenation uv from the indices of u and v.
  WordIndex concat_index(WordIndex u, std::size_t len_u, WordIndex v, std::size_t len_v) const {
    return offsets_[len_u + len_v] + (u - offsets_[len_u]) * powers_[len_v] + (v - offsets_[len_v]);
  }

  bool operator==(const GradedEnumeration& other) const {
    return n_ == other.n_ && degree_ == other.degree_;
  }

 private:
  std::size_t n_;
  std::size_t degree_;
  std::vector<WordIndex> offsets_;  // size degree + 2
  std::vector<WordIndex> powers_;   // n^k for k <= degree
};

// Closed form of sum_{k<=degree} n^k; throws when it overflows the packed range.
WordIndex graded_dimension(std::size_t n, std::size_t degree);

// All words of length <= degree in graded order.
std::vector<Word> enumerate_words(std::size_t n, std::size_t degree);

}  // namespace fockc
