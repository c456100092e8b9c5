#pragma once

#include <deque>
#include <unordered_map>
#include <vector>

#include "ssg/automaton.hpp"

namespace ssg {

using ElemId = int;

/// Interns group elements up to equality in the group, so that two words
/// acting identically on the tree share one id. Sections, products and
/// inverses of interned ids are memoized.
///
/// Not thread-safe: every query may grow the tables.
class ElementIndex {
 public:
  explicit ElementIndex(const Automaton& aut, std::size_t max_elements = 500'000,
                        std::size_t word_budget = kDefaultTrivialityBudget);

  const Automaton& automaton() const noexcept { return aut_; }
  ElemId identity() const noexcept { return 0; }
  std::size_t size() const noexcept { return entries_.size(); }

  ElemId intern(const GroupElement& g);
  ElemId generator(StateId q, bool inverse = false);
  const GroupElement& element(ElemId id) const { return entries_[static_cast<std::size_t>(id)].rep; }

  Letter image(ElemId g, Letter x) const { return entries_[static_cast<std::size_t>(g)].perm[static_cast<std::size_t>(x)]; }
  bool fixes(ElemId g, Letter x) const { return image(g, x) == x; }
  ElemId section(ElemId g, Letter x);
  ElemId section(ElemId g, const Word& u);
  Word act(ElemId g, const Word& u);

  ElemId product(ElemId a, ElemId b);
  ElemId inverse(ElemId a);

  /// True iff the identity is reachable from g along letters fixed at each step,
  /// i.e. some finite word v has g(v) = v and g|_v = 1.
  bool coaccessible(ElemId g);

 private:
  struct Entry {
    GroupElement rep;
    std::vector<Letter> perm;
    std::vector<ElemId> sections;
    ElemId inverse = -1;
    signed char coaccessible = -1;
  };

  std::string signature(const GroupElement& g) const;

  const Automaton& aut_;
  std::size_t max_elements_;
  std::size_t word_budget_;
  int sig_depth_;
  std::deque<Entry> entries_;
  std::unordered_map<GroupElement, ElemId, GroupElementHash> by_word_;
  std::unordered_map<std::string, std::vector<ElemId>> by_signature_;
  std::unordered_map<std::uint64_t, ElemId> products_;
};

}  // namespace ssg
