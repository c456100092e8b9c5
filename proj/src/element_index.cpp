#include "ssg/element_index.hpp"

namespace ssg {

ElementIndex::ElementIndex(const Automaton& aut, std::size_t max_elements, std::size_t word_budget)
    : aut_(aut), max_elements_(max_elements), word_budget_(word_budget), sig_depth_(1) {
  const int k = aut.alphabet_size();
  std::size_t words = static_cast<std::size_t>(k);
  while (words * static_cast<std::size_t>(k) <= 64) {
    words *= static_cast<std::size_t>(k);
    ++sig_depth_;
  }
  intern(GroupElement{});
}

std::string ElementIndex::signature(const GroupElement& g) const {
  const int k = aut_.alphabet_size();
  std::string sig;
  Word w(static_cast<std::size_t>(sig_depth_), 0);
  while (true) {
    for (Letter y : act_word(aut_, g, w)) sig.push_back(static_cast<char>(y));
    int i = sig_depth_ - 1;
    while (i >= 0 && w[static_cast<std::size_t>(i)] == k - 1) w[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
    ++w[static_cast<std::size_t>(i)];
  }
  return sig;
}

ElemId ElementIndex::intern(const GroupElement& g) {
  if (auto it = by_word_.find(g); it != by_word_.end()) return it->second;
  std::string sig = signature(g);
  auto& bucket = by_signature_[sig];
  for (ElemId id : bucket) {
    if (elements_equal(aut_, g, element(id), word_budget_)) {
      by_word_.emplace(g, id);
      return id;
    }
  }
  if (entries_.size() >= max_elements_)
    throw BudgetExceeded("element index exceeded " + std::to_string(max_elements_) + " elements");
  const auto id = static_cast<ElemId>(entries_.size());
  Entry e;
  e.rep = g;
  const int k = aut_.alphabet_size();
  e.perm.resize(static_cast<std::size_t>(k));
  for (Letter x = 0; x < k; ++x) e.perm[static_cast<std::size_t>(x)] = step(aut_, g, x).image;
  e.sections.assign(static_cast<std::size_t>(k), -1);
  entries_.push_back(std::move(e));
  bucket.push_back(id);
  by_word_.emplace(g, id);
  return id;
}

ElemId ElementIndex::generator(StateId q, bool inverse) {
  return intern(GroupElement::generator(q, aut_.identity(), inverse));
}

ElemId ElementIndex::section(ElemId g, Letter x) {
  ElemId cached = entries_[static_cast<std::size_t>(g)].sections[static_cast<std::size_t>(x)];
  if (cached >= 0) return cached;
  GroupElement s = step(aut_, element(g), x).section;
  ElemId id = intern(s);
  entries_[static_cast<std::size_t>(g)].sections[static_cast<std::size_t>(x)] = id;
  return id;
}

ElemId ElementIndex::section(ElemId g, const Word& u) {
  for (Letter x : u) g = section(g, x);
  return g;
}

Word ElementIndex::act(ElemId g, const Word& u) {
  Word out;
  out.reserve(u.size());
  for (Letter x : u) {
    out.push_back(image(g, x));
    g = section(g, x);
  }
  return out;
}

ElemId ElementIndex::product(ElemId a, ElemId b) {
  if (a == 0) return b;
  if (b == 0) return a;
  const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
  if (auto it = products_.find(key); it != products_.end()) return it->second;
  ElemId id = intern(multiply(element(a), element(b), aut_.identity()));
  products_.emplace(key, id);
  return id;
}

ElemId ElementIndex::inverse(ElemId a) {
  ElemId cached = entries_[static_cast<std::size_t>(a)].inverse;
  if (cached >= 0) return cached;
  ElemId id = intern(invert(element(a)));
  entries_[static_cast<std::size_t>(a)].inverse = id;
  entries_[static_cast<std::size_t>(id)].inverse = a;
  return id;
}

bool ElementIndex::coaccessible(ElemId g) {
  signed char known = entries_[static_cast<std::size_t>(g)].coaccessible;
  if (known >= 0) return known == 1;

  // Collect the fixed-letter graph reachable from g, then solve backwards.
  const int k = aut_.alphabet_size();
  std::vector<ElemId> order{g};
  std::unordered_map<ElemId, std::size_t> pos{{g, 0}};
  std::vector<std::vector<std::size_t>> preds(1);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const ElemId s = order[i];
    if (s == identity()) continue;
    for (Letter x = 0; x < k; ++x) {
      if (!fixes(s, x)) continue;
      const ElemId t = section(s, x);
      auto [it, fresh] = pos.emplace(t, order.size());
      if (fresh) {
        order.push_back(t);
        preds.emplace_back();
      }
      preds[it->second].push_back(i);
    }
  }
  std::vector<char> good(order.size(), 0);
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] == identity() || entries_[static_cast<std::size_t>(order[i])].coaccessible == 1) {
      good[i] = 1;
      stack.push_back(i);
    }
  }
  while (!stack.empty()) {
    std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t p : preds[i]) {
      if (!good[p]) {
        good[p] = 1;
        stack.push_back(p);
      }
    }
  }
  for (std::size_t i = 0; i < order.size(); ++i)
    entries_[static_cast<std::size_t>(order[i])].coaccessible = good[i] ? 1 : 0;
  return good[0] == 1;
}

}  // namespace ssg
