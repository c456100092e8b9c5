#include "ssg/scondition.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace ssg {

std::vector<std::vector<std::size_t>> PatternFamily::sets() const {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& p : patterns) out.push_back(p.members);
  return out;
}

namespace {

/// Product space over the V cylinders and the pairwise coincidence sets TF_{g_j^-1 g_i}.
class CandidateSpace {
 public:
  CandidateSpace(Context& ctx, const Candidate& cand) : n_(cand.elements.size()) {
    ElementIndex& idx = ctx.index();
    std::set<Atom> atoms;
    for (const auto& v : cand.V) atoms.insert(Atom{v, ctx.identity(), AtomKind::Tf});
    auto pair_atom = [&](std::size_t i, std::size_t j) {
      return Atom{{}, idx.product(idx.inverse(cand.elements[j]), cand.elements[i]), AtomKind::Tf};
    };
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) atoms.insert(pair_atom(i, j));
    space_ = std::make_unique<ProductSpace>(ctx, std::vector<Atom>(atoms.begin(), atoms.end()));
    for (const auto& v : cand.V) v_atoms_.push_back(space_->atom_index(Atom{v, ctx.identity(), AtomKind::Tf}));
    pair_.assign(n_, std::vector<int>(n_, -1));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) pair_[i][j] = pair_[j][i] = space_->atom_index(pair_atom(i, j));
  }

  const ProductSpace& space() const { return *space_; }

  bool in_v(const Truth& t) const {
    for (int a : v_atoms_)
      if (t[static_cast<std::size_t>(a)]) return true;
    return false;
  }

  bool coincide(const Truth& t, std::size_t i, std::size_t j) const {
    return t[static_cast<std::size_t>(pair_[i][j])];
  }

  std::vector<std::vector<std::size_t>> classes(const Truth& t) const {
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> placed(n_, false);
    for (std::size_t i = 0; i < n_; ++i) {
      if (placed[i]) continue;
      std::vector<std::size_t> cls{i};
      for (std::size_t j = i + 1; j < n_; ++j)
        if (!placed[j] && coincide(t, i, j)) {
          cls.push_back(j);
          placed[j] = true;
        }
      out.push_back(std::move(cls));
    }
    return out;
  }

  bool exclusive(const Truth& t, std::size_t i) const {
    if (!in_v(t)) return false;
    for (std::size_t j = 0; j < n_; ++j)
      if (j != i && coincide(t, i, j)) return false;
    return true;
  }

 private:
  std::size_t n_;
  std::unique_ptr<ProductSpace> space_;
  std::vector<int> v_atoms_;
  std::vector<std::vector<int>> pair_;
};

PatternFamily patterns_in(const CandidateSpace& cs, std::size_t n) {
  const ProductSpace& space = cs.space();
  std::set<std::vector<std::size_t>> found;
  for (const Truth& t : space.realizable(ProductSpace::initial)) {
    if (!cs.in_v(t)) continue;
    for (auto& c : cs.classes(t))
      if (c.size() > 1) found.insert(std::move(c));
  }
  PatternFamily fam{n, {}};
  for (const auto& members : found) {
    auto s = space.sample(ProductSpace::initial, [&](const Truth& t) {
      if (!cs.in_v(t)) return false;
      for (const auto& c : cs.classes(t))
        if (c == members) return true;
      return false;
    });
    fam.patterns.push_back({members, s->point});
  }
  std::sort(fam.patterns.begin(), fam.patterns.end(), [](const Pattern& a, const Pattern& b) {
    return std::make_pair(a.members.size(), a.members) < std::make_pair(b.members.size(), b.members);
  });
  return fam;
}

std::vector<ExclusivePart> exclusive_in(const CandidateSpace& cs, std::size_t n) {
  std::vector<ExclusivePart> out;
  const ProductSpace& space = cs.space();
  for (std::size_t i = 0; i < n; ++i) {
    auto pred = [&](const Truth& t) { return cs.exclusive(t, i); };
    ExclusivePart e;
    auto s = space.sample(ProductSpace::initial, pred);
    e.nonempty = s.has_value();
    if (s) e.sample = s->point;
    e.empty_interior = !space.has_interior_from(ProductSpace::initial, pred);
    out.push_back(e);
  }
  return out;
}

std::vector<std::int64_t> prime_factors(std::int64_t t) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p * p <= t; ++p)
    if (t % p == 0) {
      out.push_back(p);
      while (t % p == 0) t /= p;
    }
  if (t > 1) out.push_back(t);
  return out;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t p) {
  std::int64_t r = 1, e = p - 2;
  a %= p;
  while (e > 0) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

/// Row reduction over a field; returns a nonzero kernel vector of the rows
/// when they do not have full column rank.
template <class F, class Ops>
std::optional<std::vector<F>> kernel_vector(std::vector<std::vector<F>> m, std::size_t n, const Ops& ops) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && ops.is_zero(m[sel][col])) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    const F inv = ops.inv(m[row][col]);
    for (auto& x : m[row]) x = ops.mul(x, inv);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || ops.is_zero(m[r][col])) continue;
      const F f = m[r][col];
      for (std::size_t c = 0; c < n; ++c) m[r][c] = ops.sub(m[r][c], ops.mul(f, m[row][c]));
    }
    pivots.push_back(col);
    ++row;
  }
  if (pivots.size() == n) return std::nullopt;
  std::size_t free = 0;
  while (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) ++free;
  std::vector<F> x(n, ops.zero());
  x[free] = ops.one();
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = ops.sub(ops.zero(), m[r][free]);
  return x;
}

struct ModP {
  std::int64_t p;
  std::int64_t zero() const { return 0; }
  std::int64_t one() const { return 1; }
  bool is_zero(std::int64_t a) const { return a % p == 0; }
  std::int64_t inv(std::int64_t a) const { return inverse_mod(a, p); }
  std::int64_t mul(std::int64_t a, std::int64_t b) const { return a * b % p; }
  std::int64_t sub(std::int64_t a, std::int64_t b) const { return ((a - b) % p + p) % p; }
};

struct Rationals {
  Coeff zero() const { return Coeff(0); }
  Coeff one() const { return Coeff(1); }
  bool is_zero(const Coeff& a) const { return a.numerator() == 0; }
  Coeff inv(const Coeff& a) const { return Coeff(1) / a; }
  Coeff mul(const Coeff& a, const Coeff& b) const { return a * b; }
  Coeff sub(const Coeff& a, const Coeff& b) const { return a - b; }
};

template <class F>
std::vector<std::vector<F>> indicator_rows(const std::vector<std::vector<std::size_t>>& family, std::size_t n) {
  std::vector<std::vector<F>> rows;
  for (const auto& I : family) {
    std::vector<F> r(n, F(0));
    for (std::size_t i : I) r[i] = F(1);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

PatternFamily realizable_patterns(Context& ctx, const Candidate& cand) {
  CandidateSpace cs(ctx, cand);
  return patterns_in(cs, cand.elements.size());
}

std::vector<ExclusivePart> exclusive_parts(Context& ctx, const Candidate& cand) {
  CandidateSpace cs(ctx, cand);
  return exclusive_in(cs, cand.elements.size());
}

SpanResult span_full(const std::vector<std::vector<std::size_t>>& family, std::size_t n, std::int64_t t) {
  if (t == 1 || t < 0) throw Error("ring parameter must be 0 or at least 2");
  SpanResult r;
  if (t == 0) {
    auto k = kernel_vector(indicator_rows<Coeff>(family, n), n, Rationals{});
    if (!k) return r;
    std::int64_t lcm = 1;
    for (const auto& x : *k) lcm = std::lcm(lcm, x.denominator());
    std::vector<std::int64_t> a;
    std::int64_t g = 0;
    for (const auto& x : *k) {
      a.push_back((x * lcm).numerator());
      g = std::gcd(g, a.back());
    }
    const auto lead = std::find_if(a.begin(), a.end(), [](std::int64_t v) { return v != 0; });
    if (*lead < 0) g = -g;
    for (auto& x : a) x /= g;
    r.full = false;
    r.kernel = std::move(a);
    return r;
  }
  for (std::int64_t p : prime_factors(t)) {
    auto k = kernel_vector(indicator_rows<std::int64_t>(family, n), n, ModP{p});
    if (!k) continue;
    const auto lead = *std::find_if(k->begin(), k->end(), [](std::int64_t v) { return v != 0; });
    const std::int64_t scale = inverse_mod(lead, p);
    std::vector<std::int64_t> a;
    for (auto x : *k) a.push_back(x * scale % p * (t / p) % t);
    r.full = false;
    r.kernel = std::move(a);
    return r;
  }
  return r;
}

namespace {

StVerdict check_in(const CandidateSpace& cs, const Candidate& cand, std::int64_t t) {
  StVerdict v;
  const std::size_t n = cand.elements.size();
  if (cand.V.empty()) {
    v.failed_bullet = 1;
    return v;
  }
  auto excl = exclusive_in(cs, n);
  if (!std::all_of(excl.begin(), excl.end(), [](const ExclusivePart& e) { return e.ok(); })) {
    v.failed_bullet = 2;
    return v;
  }
  PatternFamily fam = patterns_in(cs, n);
  SpanResult span = span_full(fam.sets(), n, t);
  if (span.full) {
    v.failed_bullet = 3;
    return v;
  }
  v.holds = true;
  v.witness = SWitness{cand, std::move(fam), std::move(excl), t, *span.kernel};
  return v;
}

}  // namespace

StVerdict check_St(Context& ctx, const Candidate& cand, std::int64_t t) {
  CandidateSpace cs(ctx, cand);
  return check_in(cs, cand, t);
}

namespace {

std::vector<std::pair<ElemId, int>> ball_layers(Context& ctx, int ball) {
  const Nucleus& nuc = ctx.nucleus();
  std::vector<std::pair<ElemId, int>> out{{ctx.identity(), 0}};
  std::set<ElemId> seen{ctx.identity()};
  std::vector<ElemId> layer{ctx.identity()};
  for (int len = 1; len <= ball; ++len) {
    std::vector<ElemId> next;
    for (ElemId a : layer)
      for (std::size_t i = 1; i < nuc.size(); ++i) {
        const ElemId p = ctx.index().product(a, nuc.ids[i]);
        if (seen.insert(p).second) {
          out.emplace_back(p, len);
          next.push_back(p);
        }
      }
    layer = std::move(next);
  }
  return out;
}

}  // namespace

std::vector<ElemId> element_ball(Context& ctx, int ball) {
  std::vector<ElemId> out;
  for (const auto& [g, len] : ball_layers(ctx, ball)) out.push_back(g);
  return out;
}

SearchResult search_witness(Context& ctx, std::int64_t t, const SearchBudget& budget) {
  std::vector<ElemId> pool;
  std::vector<int> length;
  for (const auto& [g, len] : ball_layers(ctx, budget.elem_ball)) {
    pool.push_back(g);
    length.push_back(len);
  }

  std::vector<std::vector<Word>> cylinders;
  for (int d = 0; d <= budget.cyl_depth; ++d) {
    std::vector<Word> level{Word{}};
    for (int i = 0; i < d; ++i) {
      std::vector<Word> next;
      for (const auto& w : level)
        for (Letter x = 0; x < ctx.alphabet_size(); ++x) {
          next.push_back(w);
          next.back().push_back(x);
        }
      level = std::move(next);
    }
    cylinders.push_back(std::move(level));
  }

  SearchResult result;
  const std::size_t m = pool.size();
  for (std::size_t n = 2; n <= std::min(budget.max_n, m); ++n) {
    std::vector<std::vector<std::size_t>> combos;
    std::vector<std::size_t> c(n);
    std::iota(c.begin(), c.end(), 0);
    for (;;) {
      combos.push_back(c);
      std::size_t i = n;
      while (i > 0 && c[i - 1] == m - n + i - 1) --i;
      if (i == 0) break;
      ++c[i - 1];
      for (std::size_t j = i; j < n; ++j) c[j] = c[j - 1] + 1;
    }
    auto total = [&](const std::vector<std::size_t>& combo) {
      int s = 0;
      for (std::size_t i : combo) s += length[i];
      return s;
    };
    std::stable_sort(combos.begin(), combos.end(),
                     [&](const auto& a, const auto& b) { return total(a) < total(b); });
    std::size_t lo = 0;
    while (lo < combos.size()) {
      std::size_t hi = lo;
      while (hi < combos.size() && total(combos[hi]) == total(combos[lo])) ++hi;
      for (const auto& level : cylinders)
        for (std::size_t ci = lo; ci < hi; ++ci)
          for (const auto& v : level) {
            Candidate cand;
            for (std::size_t i : combos[ci]) cand.elements.push_back(pool[i]);
            cand.V = {v};
            ++result.examined;
            CandidateSpace cs(ctx, cand);
            StVerdict verdict = check_in(cs, cand, t);
            if (verdict.holds) {
              result.witness = std::move(verdict.witness);
              return result;
            }
          }
      lo = hi;
    }
  }
  return result;
}

AlgebraElement build_singular(Context& ctx, const SWitness& w) {
  const Ring ring = w.t == 0 ? Ring::rationals() : Ring::zmod(w.t);
  AlgebraElement f{ring, {}};
  for (std::size_t i = 0; i < w.candidate.elements.size(); ++i)
    f.terms.push_back({Coeff(w.kernel[i]), Cell{{}, w.candidate.elements[i], {}, w.candidate.V}});
  f = normalize(ctx, std::move(f));
  if (!nonzero(ctx, f)) throw VerificationFailed("the element built from the witness is zero");
  if (!is_singular(ctx, f)) throw VerificationFailed("the element built from the witness is not singular");
  return f;
}

const char* to_string(SimplicityVerdict v) {
  switch (v) {
    case SimplicityVerdict::NotSimple: return "NOT_SIMPLE";
    case SimplicityVerdict::ConsistentWithSimple: return "CONSISTENT_WITH_SIMPLE";
    case SimplicityVerdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

SimplicityReport simplicity_report(Context& ctx, std::int64_t p, const SearchBudget& budget, int transitivity_depth) {
  SimplicityReport rep;
  rep.characteristic = p;
  rep.transitivity_depth = transitivity_depth;
  const Automaton& aut = ctx.automaton();
  const int k = aut.alphabet_size();

  std::vector<GroupElement> gens;
  for (StateId q = 0; q < static_cast<StateId>(aut.state_count()); ++q)
    if (q != aut.identity()) gens.push_back(GroupElement::generator(q, aut.identity()));
  std::size_t level_size = 1;
  for (int l = 1; l <= transitivity_depth && !rep.intransitive_level; ++l) {
    level_size *= static_cast<std::size_t>(k);
    std::set<Word> orbit{Word(static_cast<std::size_t>(l), 0)};
    std::deque<Word> queue(orbit.begin(), orbit.end());
    while (!queue.empty()) {
      const Word w = queue.front();
      queue.pop_front();
      for (const auto& g : gens) {
        Word img = act_word(aut, g, w);
        if (orbit.insert(img).second) queue.push_back(std::move(img));
      }
    }
    if (orbit.size() != level_size) rep.intransitive_level = l;
  }

  ElementIndex& idx = ctx.index();
  for (ElemId n : element_ball(ctx, budget.elem_ball)) {
    if (n == ctx.identity() || rep.effectiveness_violation) continue;
    std::vector<Word> level{Word{}};
    for (int d = 0; d <= budget.cyl_depth && !rep.effectiveness_violation; ++d) {
      for (const auto& v : level) {
        if (idx.act(n, v) != v || idx.section(n, v) != ctx.identity()) continue;
        if (region_empty_interior(ctx, Region::cylinder(v) & Region::tf(n))) {
          rep.effectiveness_violation = std::make_pair(n, v);
          break;
        }
      }
      std::vector<Word> next;
      for (const auto& w : level)
        for (Letter x = 0; x < k; ++x) {
          next.push_back(w);
          next.back().push_back(x);
        }
      level = std::move(next);
    }
  }

  rep.search = search_witness(ctx, p, budget);
  const std::string field = p == 0 ? "characteristic 0" : "characteristic " + std::to_string(p);
  if (rep.intransitive_level) {
    rep.verdict = SimplicityVerdict::NotSimple;
    rep.summary = "not minimal: level " + std::to_string(*rep.intransitive_level) + " splits into several orbits";
  } else if (rep.effectiveness_violation) {
    rep.verdict = SimplicityVerdict::NotSimple;
    rep.summary = "not effective: an element fixes a cylinder pointwise without a unit germ";
  } else if (rep.search.witness) {
    rep.verdict = SimplicityVerdict::NotSimple;
    rep.summary = "condition S_" + std::to_string(p) + " holds: Steinberg algebras over fields of " + field +
                  " are not simple";
  } else if (transitivity_depth < 1) {
    rep.verdict = SimplicityVerdict::Inconclusive;
    rep.summary = "no transitivity levels were checked";
  } else {
    rep.verdict = SimplicityVerdict::ConsistentWithSimple;
    rep.summary = "level-transitive to depth " + std::to_string(transitivity_depth) +
                  ", no effectiveness violation and no S_" + std::to_string(p) + " witness at this budget";
  }
  return rep;
}

}  // namespace ssg
