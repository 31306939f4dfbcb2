#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ms3/words.hpp"

using namespace ms3;

namespace {

CyclicWord w(std::initializer_list<Letter> ls) {
  return CyclicWord(std::vector<Letter>(ls));
}

// Brute-force oracle: least sequence over all rotations of v and invert(v).
CyclicWord brute_canonical(const CyclicWord& v) {
  CyclicWord best = v;
  bool first = true;
  for (const CyclicWord& base : {v, invert(v)}) {
    for (std::size_t r = 0; r < base.size(); ++r) {
      CyclicWord cand = rotated(base, r);
      if (first || word_less(cand, best)) {
        best = cand;
        first = false;
      }
    }
  }
  return best;
}

CyclicWord random_word(std::mt19937& rng, int max_len = 8, int alphabet = 3) {
  std::uniform_int_distribution<int> len(1, max_len);
  std::uniform_int_distribution<int> lab(0, alphabet - 1);
  std::uniform_int_distribution<int> pow(0, 1);
  CyclicWord out;
  int n = len(rng);
  for (int i = 0; i < n; ++i)
    out.letters.push_back({std::string(1, char('a' + lab(rng))), pow(rng) ? 1 : -1});
  return out;
}

}  // namespace

TEST_CASE("rotate_equal on fixed examples") {
  CHECK(rotate_equal(w({{"a", 1}, {"b", -1}}), w({{"b", -1}, {"a", 1}})));
  CHECK_FALSE(rotate_equal(w({{"a", 1}, {"b", -1}}), w({{"a", -1}, {"b", 1}})));
  // frozen by enumerating the three rotations of the left word
  CHECK(rotate_equal(w({{"a", 1}, {"a", 1}, {"b", 1}}), w({{"a", 1}, {"b", 1}, {"a", 1}})));
  CHECK_FALSE(rotate_equal(w({{"a", 1}}), w({{"a", 1}, {"a", 1}})));
}

TEST_CASE("rotate_equal is an equivalence relation on samples") {
  std::mt19937 rng(7);
  std::vector<CyclicWord> ws;
  for (int i = 0; i < 40; ++i) ws.push_back(random_word(rng, 5, 2));
  for (const auto& a : ws) CHECK(rotate_equal(a, a));
  for (const auto& a : ws)
    for (const auto& b : ws) CHECK(rotate_equal(a, b) == rotate_equal(b, a));
  for (const auto& a : ws)
    for (const auto& b : ws)
      for (const auto& c : ws)
        if (rotate_equal(a, b) && rotate_equal(b, c)) CHECK(rotate_equal(a, c));
}

TEST_CASE("invert reverses order and powers") {
  CHECK(invert(w({{"a", 1}, {"b", -1}})) == w({{"b", 1}, {"a", -1}}));
  CHECK(invert(w({{"a", 1}})) == w({{"a", -1}}));
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    CyclicWord v = random_word(rng);
    CHECK(invert(invert(v)) == v);
  }
}

TEST_CASE("canonical_form fixed examples") {
  // least of { [b- a+], [a+ b-], [a- b+], [b+ a-] }
  CHECK(canonical_form(w({{"b", -1}, {"a", 1}})) == w({{"a", 1}, {"b", -1}}));
  CHECK(canonical_form(w({{"a", 1}})) == w({{"a", 1}}));
  CHECK(canonical_form(w({{"a", -1}})) == w({{"a", 1}}));
}

TEST_CASE("canonical_form equals the brute-force oracle") {
  std::mt19937 rng(13);
  for (int i = 0; i < 500; ++i) {
    CyclicWord v = random_word(rng);
    CHECK(canonical_form(v) == brute_canonical(v));
  }
}

TEST_CASE("canonical_form is inversion and rotation invariant") {
  std::mt19937 rng(17);
  for (int i = 0; i < 200; ++i) {
    CyclicWord v = random_word(rng);
    CHECK(canonical_form(invert(v)) == canonical_form(v));
    std::uniform_int_distribution<std::size_t> rot(0, v.size() - 1);
    CHECK(canonical_form(rotated(v, rot(rng))) == canonical_form(v));
    CyclicWord c = canonical_form(v);
    CHECK((rotate_equal(c, v) || rotate_equal(c, invert(v))));
  }
}

TEST_CASE("least_rotation agrees with direct minimisation") {
  std::mt19937 rng(19);
  for (int i = 0; i < 500; ++i) {
    CyclicWord v = random_word(rng);
    CyclicWord best = v;
    for (std::size_t r = 1; r < v.size(); ++r) {
      CyclicWord cand = rotated(v, r);
      if (word_less(cand, best)) best = cand;
    }
    CHECK(least_rotation(v) == best);
  }
}

TEST_CASE("translate renames and flips") {
  std::map<std::string, std::string> em{{"a", "x"}, {"b", "y"}};
  std::set<std::string> flips{"b"};
  CHECK(translate(w({{"a", 1}, {"b", -1}}), em, flips) == w({{"x", 1}, {"y", 1}}));
  CHECK_THROWS_AS(translate(w({{"z", 1}}), em, flips), std::invalid_argument);
}
