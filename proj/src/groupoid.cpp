#include "ssg/groupoid.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <set>

namespace ssg {

namespace {

bool has_prefix(const Word& w, const Word& p) {
  return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
}

Word concat(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Word suffix(const Word& w, std::size_t from) { return Word(w.begin() + static_cast<std::ptrdiff_t>(from), w.end()); }

std::vector<Word> words_up_to(int k, int depth) {
  std::vector<Word> out{Word{}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (static_cast<int>(out[i].size()) == depth) continue;
    for (Letter x = 0; x < k; ++x) out.push_back(concat(out[i], Word{x}));
  }
  return out;
}

std::vector<std::uint32_t> masks_by_size(int r, int max_size) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = 1; m < (1u << r); ++m)
    if (std::popcount(m) <= max_size) out.push_back(m);
  std::stable_sort(out.begin(), out.end(), [](std::uint32_t a, std::uint32_t b) {
    if (std::popcount(a) != std::popcount(b)) return std::popcount(a) < std::popcount(b);
    // Lexicographic on the sorted index lists.
    for (int i = 0; i < 32; ++i) {
      const bool ia = a >> i & 1u, ib = b >> i & 1u;
      if (ia != ib) return ia;
    }
    return false;
  });
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Cells

std::vector<Arrow> Cell::pieces(Context& ctx) const {
  std::vector<Arrow> out;
  for (const auto& w : tails) out.push_back(restrict_arrow(ctx, Arrow{u, g, v}, w));
  return out;
}

std::vector<Arrow> CompactOpenSet::pieces(Context& ctx) const {
  std::vector<Arrow> out;
  for (const auto& c : cells)
    for (auto& p : c.pieces(ctx)) out.push_back(std::move(p));
  return out;
}

Cell cell_of(const Arrow& a) { return Cell{a.u, a.g, a.v, {Word{}}}; }

Cell unit_cell(Word v) { return Cell{v, 0, v, {Word{}}}; }

std::vector<Word> normalize_tails(std::vector<Word> tails, int alphabet_size) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::sort(tails.begin(), tails.end());
    tails.erase(std::unique(tails.begin(), tails.end()), tails.end());
    std::vector<Word> kept;
    for (const auto& w : tails) {
      bool covered = false;
      for (const auto& p : tails) covered = covered || (p.size() < w.size() && has_prefix(w, p));
      if (!covered) kept.push_back(w);
    }
    changed = kept.size() != tails.size();
    tails = std::move(kept);
    std::map<Word, int> siblings;
    for (const auto& w : tails)
      if (!w.empty()) ++siblings[Word(w.begin(), w.end() - 1)];
    for (const auto& [parent, count] : siblings) {
      if (count != alphabet_size) continue;
      std::erase_if(tails, [&](const Word& w) { return w.size() == parent.size() + 1 && has_prefix(w, parent); });
      tails.push_back(parent);
      changed = true;
      break;
    }
  }
  return tails;
}

Arrow restrict_arrow(Context& ctx, const Arrow& a, const Word& z) {
  ElementIndex& idx = ctx.index();
  return Arrow{concat(a.u, idx.act(a.g, z)), idx.section(a.g, z), concat(a.v, z)};
}

std::optional<Arrow> compose_arrows(Context& ctx, const Arrow& a, const Arrow& b) {
  ElementIndex& idx = ctx.index();
  if (has_prefix(b.u, a.v)) {
    const Word z = suffix(b.u, a.v.size());
    return Arrow{concat(a.u, idx.act(a.g, z)), idx.product(idx.section(a.g, z), b.g), b.v};
  }
  if (has_prefix(a.v, b.u)) {
    const Word z = suffix(a.v, b.u.size());
    const Word zbar = idx.act(idx.inverse(b.g), z);
    return Arrow{a.u, idx.product(a.g, idx.section(b.g, zbar)), concat(b.v, zbar)};
  }
  return std::nullopt;
}

Arrow invert_arrow(Context& ctx, const Arrow& a) { return Arrow{a.v, ctx.index().inverse(a.g), a.u}; }

CompactOpenSet compose_cells(Context& ctx, const Cell& a, const Cell& b) {
  CompactOpenSet out;
  for (const auto& p : a.pieces(ctx))
    for (const auto& q : b.pieces(ctx))
      if (auto r = compose_arrows(ctx, p, q)) out.cells.push_back(cell_of(*r));
  return out;
}

Cell invert_cell(Context& ctx, const Cell& c) {
  Cell out{c.v, ctx.index().inverse(c.g), c.u, {}};
  for (const auto& w : c.tails) out.tails.push_back(ctx.index().act(c.g, w));
  return out;
}

bool germ_equal(Context& ctx, const Germ& a, const Germ& b) {
  if (a.base != b.base) throw IncompatibleBase("germs have different bases");
  const EvPeriodicWord& w = a.base;
  if (!w.starts_with(a.arrow.v) || !w.starts_with(b.arrow.v))
    throw IncompatibleBase("base " + w.to_string() + " is outside the source of a germ");
  const auto shift = [](const Arrow& x) {
    return static_cast<long>(x.u.size()) - static_cast<long>(x.v.size());
  };
  if (shift(a.arrow) != shift(b.arrow)) return false;
  const std::size_t L = std::max(a.arrow.v.size(), b.arrow.v.size());
  const Word prefix = w.prefix(L);
  Arrow x = restrict_arrow(ctx, a.arrow, suffix(prefix, a.arrow.v.size()));
  Arrow y = restrict_arrow(ctx, b.arrow, suffix(prefix, b.arrow.v.size()));
  if (x.u != y.u) return false;
  ElementIndex& idx = ctx.index();
  return tf_classify(ctx, idx.product(idx.inverse(y.g), x.g), w.drop(L)) == TFClass::Interior;
}

bool contains(Context& ctx, const Cell& c, const Germ& g) {
  for (const auto& p : c.pieces(ctx))
    if (g.base.starts_with(p.v) && germ_equal(ctx, Germ{p, g.base}, g)) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Dangerous points and the cover fibers

DangerReport is_dangerous(Context& ctx, const EvPeriodicWord& w) {
  DangerReport r;
  const Nucleus& n = ctx.nucleus();
  const std::size_t span = w.preperiod().size() + w.period().size();
  for (std::size_t l = 0; l < span; ++l) {
    const EvPeriodicWord tail = w.drop(l);
    for (std::size_t i = 1; i < n.size(); ++i)
      if (tf_classify(ctx, n.ids[i], tail) == TFClass::Boundary) r.witnesses.push_back({l, n.ids[i]});
  }
  r.dangerous = !r.witnesses.empty();
  return r;
}

namespace {

std::vector<ElemId> boundary_members(Context& ctx, const EvPeriodicWord& tail) {
  const Nucleus& n = ctx.nucleus();
  ElementIndex& idx = ctx.index();
  std::vector<ElemId> kept;
  for (std::size_t i = 1; i < n.size(); ++i) {
    const ElemId m = n.ids[i];
    if (tf_classify(ctx, m, tail) != TFClass::Boundary) continue;
    bool duplicate = false;
    for (ElemId k : kept)
      duplicate = duplicate || tf_classify(ctx, idx.product(idx.inverse(k), m), tail) == TFClass::Interior;
    if (!duplicate) kept.push_back(m);
  }
  return kept;
}

}  // namespace

Stabilized stabilized_depth(Context& ctx, const EvPeriodicWord& w) {
  const std::size_t pre = w.preperiod().size();
  std::vector<std::size_t> counts;
  for (std::size_t l = 0; l <= pre; ++l) counts.push_back(boundary_members(ctx, w.drop(l)).size());
  std::size_t L = pre;
  while (L > 0 && counts[L - 1] == counts[pre]) --L;
  Stabilized s;
  s.depth = L;
  s.members.push_back(ctx.identity());
  for (ElemId m : boundary_members(ctx, w.drop(L))) s.members.push_back(m);
  return s;
}

std::vector<CoverPoint> fiber(Context& ctx, const EvPeriodicWord& w) {
  const Stabilized st = stabilized_depth(ctx, w);
  const std::size_t L = st.depth;
  const std::vector<ElemId> tracked0(st.members.begin() + 1, st.members.end());
  const auto r = static_cast<int>(tracked0.size());
  if (r == 0) {
    CoverPoint p{w, L, {ctx.identity()}, {}};
    p.patterns.push_back({L, Word{}, w});
    return {p};
  }
  if (r > 20) throw BudgetExceeded("fiber has too many boundary members to enumerate");

  // Follow the members along the base until the (vector, phase) pair repeats.
  ElementIndex& idx = ctx.index();
  const std::size_t pre = w.preperiod().size(), per = w.period().size();
  std::vector<std::pair<std::size_t, std::vector<ElemId>>> trail;
  std::map<std::pair<std::vector<ElemId>, long>, std::size_t> seen;
  std::vector<ElemId> cur = tracked0;
  std::size_t start = 0;
  for (std::size_t l = L;; ++l) {
    const long phase = l >= pre ? static_cast<long>((l - pre) % per) : -1 - static_cast<long>(l);
    auto [it, fresh] = seen.emplace(std::make_pair(cur, phase), trail.size());
    if (!fresh) {
      start = it->second;
      break;
    }
    trail.emplace_back(l, cur);
    for (auto& m : cur) m = idx.section(m, w.at(l));
  }

  struct Phase {
    std::size_t level;
    std::unique_ptr<ProductSpace> space;
    std::set<Truth> realized;
  };
  std::vector<Phase> phases;
  for (std::size_t i = start; i < trail.size(); ++i) {
    std::vector<Atom> atoms;
    for (ElemId m : trail[i].second) atoms.push_back(Atom{{}, m, AtomKind::Tf});
    auto space = std::make_unique<ProductSpace>(ctx, atoms);
    auto real = space->realizable(ProductSpace::initial);
    phases.push_back({trail[i].first, std::move(space), std::set<Truth>(real.begin(), real.end())});
  }

  std::vector<std::uint32_t> masks{0};
  for (auto m : masks_by_size(r, r)) masks.push_back(m);
  std::vector<CoverPoint> out;
  for (std::uint32_t mask : masks) {
    Truth want(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) want[static_cast<std::size_t>(i)] = mask >> i & 1u;
    bool ok = true;
    for (const auto& ph : phases) ok = ok && ph.realized.count(want);
    if (!ok) continue;
    CoverPoint p{w, L, {ctx.identity()}, {}};
    for (int i = 0; i < r; ++i)
      if (mask >> i & 1u) p.members.push_back(tracked0[static_cast<std::size_t>(i)]);
    for (const auto& ph : phases) {
      auto s = ph.space->sample(ProductSpace::initial, [&](const Truth& t) { return t == want; });
      p.patterns.push_back({ph.level, s->decisive, s->point.prepend(w.prefix(ph.level))});
    }
    out.push_back(std::move(p));
  }
  return out;
}

const std::vector<PhasePattern>& realizing_pattern(const CoverPoint& p) { return p.patterns; }

// ---------------------------------------------------------------------------
// Regular open sets

RegularOpenResult regular_open(Context& ctx, const CompactOpenSet& u, int depth) {
  const Nucleus& n = ctx.nucleus();
  const int k = ctx.alphabet_size();
  const std::vector<Arrow> pieces = u.pieces(ctx);
  std::set<Arrow> candidates;
  for (const auto& a : pieces)
    for (const auto& w : words_up_to(k, depth))
      for (ElemId m : n.ids)
        if (auto b = compose_arrows(ctx, a, Arrow{w, m, w})) candidates.insert(*b);

  for (const auto& b : candidates) {
    const Arrow b_inv = invert_arrow(ctx, b);
    std::vector<Atom> atoms;
    Region in = Region::nothing(), cl = Region::nothing();
    for (const auto& a : pieces) {
      auto c = compose_arrows(ctx, b_inv, a);
      if (!c || c->u != c->v) continue;
      in = in | Region::tf(c->g, c->v);
      cl = cl | Region::closure_tf(c->g, c->v);
      atoms.push_back(Atom{c->v, c->g, AtomKind::Tf});
      atoms.push_back(Atom{c->v, c->g, AtomKind::ClosureTf});
    }
    if (atoms.empty()) continue;
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    ProductSpace space(ctx, atoms);
    auto in_pred = in.predicate(space), cl_pred = cl.predicate(space);
    auto escape = space.can_reach([&](const Truth& t) { return !cl_pred(t); });
    auto miss = space.can_reach([&](const Truth& t) { return !in_pred(t); });

    // Breadth-first from the source cylinder of B, keeping the path.
    const int root = space.state_after(b.v);
    std::map<int, Word> path{{root, b.v}};
    std::deque<int> queue{root};
    while (!queue.empty()) {
      const int q = queue.front();
      queue.pop_front();
      if (!escape[static_cast<std::size_t>(q)] && miss[static_cast<std::size_t>(q)]) {
        RegularOpenResult r;
        r.regular = false;
        r.bisection = b;
        auto s = space.sample(q, [&](const Truth& t) { return !in_pred(t); });
        r.point = s->point.prepend(path.at(q));
        return r;
      }
      for (Letter x = 0; x < k; ++x) {
        const int t = space.successor(q, x);
        if (!path.count(t)) {
          path.emplace(t, concat(path.at(q), Word{x}));
          queue.push_back(t);
        }
      }
    }
  }
  return {};
}

bool is_regular_open(Context& ctx, const CompactOpenSet& u, int depth) { return regular_open(ctx, u, depth).regular; }

std::optional<CompactOpenSet> find_nonregular_witness(Context& ctx, int depth) {
  const Nucleus& n = ctx.nucleus();
  const auto r = static_cast<int>(n.size()) - 1;
  const int max_size = std::min(r, 4);
  for (const auto& v : words_up_to(ctx.alphabet_size(), depth)) {
    for (std::uint32_t mask : masks_by_size(r, max_size)) {
      CompactOpenSet u;
      for (int i = 0; i < r; ++i)
        if (mask >> i & 1u) u.cells.push_back(Cell{v, n.ids[static_cast<std::size_t>(i + 1)], v, {Word{}}});
      if (!is_regular_open(ctx, u, depth)) return u;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Extremely dangerous points

const char* to_string(D0Verdict v) {
  switch (v) {
    case D0Verdict::Empty: return "EMPTY";
    case D0Verdict::Nonempty: return "NONEMPTY";
    case D0Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

D0Status d0_status(Context& ctx, int depth) {
  const Nucleus& n = ctx.nucleus();
  const auto r = static_cast<int>(n.size()) - 1;
  D0Status out;
  if (r == 0) {
    out.verdict = D0Verdict::Empty;
    return out;
  }
  std::vector<Atom> atoms;
  for (int i = 1; i <= r; ++i) atoms.push_back(Atom{{}, n.ids[static_cast<std::size_t>(i)], AtomKind::Tf});
  ProductSpace space(ctx, atoms);

  // A subset S works at the cylinder v when the union of the TF sets is dense
  // in vX and misses some point of vX. Over the full subset lattice the empty
  // cylinder alone decides the question, so exhausting it proves emptiness.
  const bool complete = r <= 16;
  const auto masks = masks_by_size(std::min(r, 16), complete ? r : 3);
  const auto words = complete ? std::vector<Word>{Word{}} : words_up_to(ctx.alphabet_size(), depth);
  for (const auto& v : words) {
    const int q = space.state_after(v);
    for (std::uint32_t mask : masks) {
      auto hits = [mask](const Truth& t) {
        for (std::size_t i = 0; i < t.size(); ++i)
          if (t[i] && (mask >> i & 1u)) return true;
        return false;
      };
      if (!space.dense_from(q, hits)) continue;
      auto s = space.sample(q, [&](const Truth& t) { return !hits(t); });
      if (!s) continue;
      out.verdict = D0Verdict::Nonempty;
      out.cylinder = v;
      for (int i = 0; i < r; ++i)
        if (mask >> i & 1u) out.elements.push_back(n.ids[static_cast<std::size_t>(i + 1)]);
      out.point = s->point.prepend(v);
      return out;
    }
  }
  out.verdict = complete ? D0Verdict::Empty : D0Verdict::Inconclusive;
  return out;
}

}  // namespace ssg
