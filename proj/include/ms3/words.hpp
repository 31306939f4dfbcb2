#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ms3 {

// One signed letter of a boundary word: an edge label raised to +1 or -1.
struct Letter {
  std::string label;
  int power = 1;

  friend bool operator==(const Letter&, const Letter&) = default;
};

// Fixed letter order: labels lexicographically, positive power before
// negative power of the same label.
inline bool letter_less(const Letter& a, const Letter& b) {
  if (a.label != b.label) return a.label < b.label;
  return a.power > b.power;
}

// A word read cyclically; the stored rotation carries no meaning.
struct CyclicWord {
  std::vector<Letter> letters;

  CyclicWord() = default;
  explicit CyclicWord(std::vector<Letter> ls) : letters(std::move(ls)) {}

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }

  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;
};

inline bool word_less(const CyclicWord& a, const CyclicWord& b) {
  return std::lexicographical_compare(a.letters.begin(), a.letters.end(),
                                      b.letters.begin(), b.letters.end(),
                                      letter_less);
}

// True when some rotation of w1 equals w2 letter for letter.
inline bool rotate_equal(const CyclicWord& w1, const CyclicWord& w2) {
  const std::size_t n = w1.size();
  if (n != w2.size()) return false;
  if (n == 0) return true;
  for (std::size_t r = 0; r < n; ++r) {
    bool match = true;
    for (std::size_t i = 0; i < n && match; ++i)
      match = w1.letters[(r + i) % n] == w2.letters[i];
    if (match) return true;
  }
  return false;
}

// Reverse the letters and negate every power (walk the circle backwards).
inline CyclicWord invert(const CyclicWord& w) {
  std::vector<Letter> out(w.letters.rbegin(), w.letters.rend());
  for (auto& l : out) l.power = -l.power;
  return CyclicWord(std::move(out));
}

inline CyclicWord rotated(const CyclicWord& w, std::size_t r) {
  const std::size_t n = w.size();
  if (n == 0) return w;
  std::vector<Letter> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(w.letters[(r + i) % n]);
  return CyclicWord(std::move(out));
}

// Booth's least-rotation algorithm under letter_less.
inline std::size_t least_rotation_index(const std::vector<Letter>& s) {
  const std::size_t n = s.size();
  if (n <= 1) return 0;
  std::vector<std::ptrdiff_t> f(2 * n, -1);
  std::size_t k = 0;
  for (std::size_t j = 1; j < 2 * n; ++j) {
    const Letter& sj = s[j % n];
    std::ptrdiff_t i = f[j - k - 1];
    while (i != -1 && !(sj == s[(k + i + 1) % n])) {
      if (letter_less(sj, s[(k + i + 1) % n])) k = j - i - 1;
      i = f[i];
    }
    if (i == -1 && !(sj == s[(k + i + 1) % n])) {
      if (letter_less(sj, s[(k + i + 1) % n])) k = j;
      f[j - k] = -1;
    } else {
      f[j - k] = i + 1;
    }
  }
  return k % n;
}

inline CyclicWord least_rotation(const CyclicWord& w) {
  return rotated(w, least_rotation_index(w.letters));
}

// Least sequence among all rotations of w and of invert(w).  Two words have
// equal canonical forms exactly when one is a rotation of the other or of
// the other's inverse.
inline CyclicWord canonical_form(const CyclicWord& w) {
  if (w.empty()) return w;
  CyclicWord a = least_rotation(w);
  CyclicWord b = least_rotation(invert(w));
  return word_less(b, a) ? b : a;
}

// Rewrite letters through an edge relabeling; flipped edges have their
// powers negated before the rename.
inline CyclicWord translate(const CyclicWord& w,
                            const std::map<std::string, std::string>& edge_map,
                            const std::set<std::string>& flips) {
  CyclicWord out = w;
  for (auto& l : out.letters) {
    if (flips.count(l.label)) l.power = -l.power;
    auto it = edge_map.find(l.label);
    if (it == edge_map.end())
      throw std::invalid_argument("translate: unmapped edge label " + l.label);
    l.label = it->second;
  }
  return out;
}

}  // namespace ms3
