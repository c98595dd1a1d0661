#include "fockc/words.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "fockc/common.hpp"

namespace fockc {

namespace {

constexpr WordIndex kPackedLimit = WordIndex{1} << 62;

}  // namespace

Word Word::from_external(std::span<const int> one_based, std::size_t n) {
  std::vector<Letter> letters;
  letters.reserve(one_based.size());
  for (int l : one_based) {
    if (l < 1 || static_cast<std::size_t>(l) > n) {
      throw PreconditionError("letter " + std::to_string(l) + " outside 1.." + std::to_string(n));
    }
    letters.push_back(static_cast<Letter>(l - 1));
  }
  return Word(std::move(letters));
}

std::vector<int> Word::to_external() const {
  std::vector<int> out;
  out.reserve(letters_.size());
  for (Letter l : letters_) out.push_back(static_cast<int>(l) + 1);
  return out;
}

std::strong_ordering Word::operator<=>(const Word& other) const {
  if (auto c = letters_.size() <=> other.letters_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(letters_.begin(), letters_.end(),
                                                other.letters_.begin(), other.letters_.end());
}

Word reverse_word(const Word& w) {
  std::vector<Letter> l(w.letters().rbegin(), w.letters().rend());
  return Word(std::move(l));
}

Word concat(const Word& u, const Word& v) {
  std::vector<Letter> l(u.letters().begin(), u.letters().end());
  l.insert(l.end(), v.letters().begin(), v.letters().end());
  return Word(std::move(l));
}

WordIndex graded_dimension(std::size_t n, std::size_t degree) {
  if (n == 0) throw PreconditionError("alphabet size must be at least 1");
  WordIndex total = 0;
  WordIndex p = 1;
  for (std::size_t k = 0; k <= degree; ++k) {
    total += p;
    if (total >= kPackedLimit) {
      throw PreconditionError("graded dimension for n=" + std::to_string(n) + ", degree=" +
                              std::to_string(degree) + " exceeds the packed index range");
    }
    if (k < degree) {
      if (p > kPackedLimit / n) {
        throw PreconditionError("graded dimension overflow");
      }
      p *= n;
    }
  }
  return total;
}

GradedEnumeration::GradedEnumeration(std::size_t n, std::size_t degree) : n_(n), degree_(degree) {
  graded_dimension(n, degree);  // validates
  offsets_.resize(degree + 2);
  powers_.resize(degree + 1);
  offsets_[0] = 0;
  WordIndex p = 1;
  for (std::size_t k = 0; k <= degree; ++k) {
    powers_[k] = p;
    offsets_[k + 1] = offsets_[k] + p;
    p *= n;
  }
}

WordIndex GradedEnumeration::index(const Word& w) const {
  if (w.length() > degree_) throw PreconditionError("word longer than the enumeration degree");
  WordIndex code = 0;
  for (Letter l : w.letters()) {
    if (l >= n_) throw PreconditionError("letter outside the alphabet");
    code = code * n_ + l;
  }
  return offsets_[w.length()] + code;
}

std::size_t GradedEnumeration::length_of(WordIndex i) const {
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), i);
  if (it == offsets_.end()) throw PreconditionError("index outside the enumeration");
  return static_cast<std::size_t>(it - offsets_.begin()) - 1;
}

Word GradedEnumeration::word(WordIndex i) const {
  const std::size_t len = length_of(i);
  WordIndex code = i - offsets_[len];
  std::vector<Letter> letters(len);
  for (std::size_t j = len; j-- > 0;) {
    letters[j] = static_cast<Letter>(code % n_);
    code /= n_;
  }
  return Word(std::move(letters));
}

std::vector<Word> enumerate_words(std::size_t n, std::size_t degree) {
  GradedEnumeration e(n, degree);
  std::vector<Word> out;
  out.reserve(e.total_dim());
  for (WordIndex i = 0; i < e.total_dim(); ++i) out.push_back(e.word(i));
  return out;
}

}  // namespace fockc
