#pragma once

#include <random>
#include <string>

#include "ssg/context.hpp"

namespace ssg::test {

inline std::string corpus(const std::string& file) { return std::string(SSG_CORPUS_DIR) + "/" + file; }

inline std::unique_ptr<Context> load(const std::string& file) { return Context::from_file(corpus(file)); }

inline GroupElement random_element(std::mt19937& rng, const Automaton& aut, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> state(0, static_cast<int>(aut.state_count()) - 1);
  std::bernoulli_distribution inv(0.5);
  std::vector<Generator> gens;
  for (std::size_t n = len(rng); gens.size() < n;) gens.push_back({state(rng), inv(rng)});
  return GroupElement::reduce(gens, aut.identity());
}

inline Word random_word(std::mt19937& rng, int k, std::size_t max_len, std::size_t min_len = 0) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_int_distribution<int> letter(0, k - 1);
  Word w(len(rng));
  for (auto& x : w) x = letter(rng);
  return w;
}

inline EvPeriodicWord random_point(std::mt19937& rng, int k, std::size_t max_pre = 4, std::size_t max_period = 3) {
  return EvPeriodicWord(random_word(rng, k, max_pre), random_word(rng, k, max_period, 1));
}

/// All words of length exactly n.
inline std::vector<Word> all_words(int k, std::size_t n) {
  std::vector<Word> out{Word{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Word> next;
    for (const auto& w : out)
      for (Letter x = 0; x < k; ++x) {
        next.push_back(w);
        next.back().push_back(x);
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace ssg::test
