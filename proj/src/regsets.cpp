#include "ssg/regsets.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "scc.hpp"

namespace ssg {

namespace {

constexpr int kAcc = -1;
constexpr int kDead = -2;
constexpr int kMatch0 = -3;

enum : char { kPending = 0, kAccepted = 1, kRejected = 2 };

}  // namespace

// ---------------------------------------------------------------------------
// Region expressions

struct Region::Node {
  enum class Op { Const, Atom, Not, And, Or } op;
  bool value = false;
  ssg::Atom atom;
  std::shared_ptr<const Node> lhs, rhs;
};

Region Region::atom(Atom a) {
  auto n = std::make_shared<Node>();
  n->op = Node::Op::Atom;
  n->atom = std::move(a);
  return Region(n);
}

Region Region::tf(ElemId g, Word prefix) { return atom(Atom{std::move(prefix), g, AtomKind::Tf}); }
Region Region::closure_tf(ElemId g, Word prefix) { return atom(Atom{std::move(prefix), g, AtomKind::ClosureTf}); }
Region Region::cylinder(Word u) { return atom(Atom{std::move(u), 0, AtomKind::Tf}); }

Region Region::everything() {
  auto n = std::make_shared<Node>();
  n->op = Node::Op::Const;
  n->value = true;
  return Region(n);
}

Region Region::nothing() {
  auto n = std::make_shared<Node>();
  n->op = Node::Op::Const;
  return Region(n);
}

Region operator|(const Region& a, const Region& b) {
  auto n = std::make_shared<Region::Node>();
  n->op = Region::Node::Op::Or;
  n->lhs = a.node_;
  n->rhs = b.node_;
  return Region(n);
}

Region operator&(const Region& a, const Region& b) {
  auto n = std::make_shared<Region::Node>();
  n->op = Region::Node::Op::And;
  n->lhs = a.node_;
  n->rhs = b.node_;
  return Region(n);
}

Region operator!(const Region& a) {
  auto n = std::make_shared<Region::Node>();
  n->op = Region::Node::Op::Not;
  n->lhs = a.node_;
  return Region(n);
}

namespace {

void collect(const Region::Node& n, std::vector<Atom>& out) {
  switch (n.op) {
    case Region::Node::Op::Const: break;
    case Region::Node::Op::Atom:
      if (std::find(out.begin(), out.end(), n.atom) == out.end()) out.push_back(n.atom);
      break;
    case Region::Node::Op::Not: collect(*n.lhs, out); break;
    default:
      collect(*n.lhs, out);
      collect(*n.rhs, out);
  }
}

bool eval_node(const Region::Node& n, const std::function<bool(const Atom&)>& f) {
  switch (n.op) {
    case Region::Node::Op::Const: return n.value;
    case Region::Node::Op::Atom: return f(n.atom);
    case Region::Node::Op::Not: return !eval_node(*n.lhs, f);
    case Region::Node::Op::And: return eval_node(*n.lhs, f) && eval_node(*n.rhs, f);
    case Region::Node::Op::Or: return eval_node(*n.lhs, f) || eval_node(*n.rhs, f);
  }
  return false;
}

// Flattened form: postfix program over atom indices.
struct Program {
  struct Ins {
    Region::Node::Op op;
    int arg;
  };
  std::vector<Ins> code;

  bool run(const Truth& t) const {
    std::vector<char> st;
    st.reserve(code.size());
    for (const auto& i : code) {
      switch (i.op) {
        case Region::Node::Op::Const: st.push_back(static_cast<char>(i.arg)); break;
        case Region::Node::Op::Atom: st.push_back(t[static_cast<std::size_t>(i.arg)] ? 1 : 0); break;
        case Region::Node::Op::Not: st.back() = !st.back(); break;
        case Region::Node::Op::And: {
          char b = st.back();
          st.pop_back();
          st.back() = st.back() && b;
          break;
        }
        case Region::Node::Op::Or: {
          char b = st.back();
          st.pop_back();
          st.back() = st.back() || b;
          break;
        }
      }
    }
    return st.back() != 0;
  }
};

void lower(const Region::Node& n, const ProductSpace& space, Program& p) {
  using Op = Region::Node::Op;
  switch (n.op) {
    case Op::Const: p.code.push_back({Op::Const, n.value ? 1 : 0}); break;
    case Op::Atom: {
      int i = space.atom_index(n.atom);
      if (i < 0) throw Error("region atom missing from product space");
      p.code.push_back({Op::Atom, i});
      break;
    }
    case Op::Not:
      lower(*n.lhs, space, p);
      p.code.push_back({Op::Not, 0});
      break;
    default:
      lower(*n.lhs, space, p);
      lower(*n.rhs, space, p);
      p.code.push_back({n.op, 0});
  }
}

}  // namespace

void Region::collect_atoms(std::vector<Atom>& out) const { collect(*node_, out); }

TruthPredicate Region::predicate(const ProductSpace& space) const {
  auto prog = std::make_shared<Program>();
  lower(*node_, space, *prog);
  return [prog](const Truth& t) { return prog->run(t); };
}

bool Region::eval(const std::function<bool(const Atom&)>& atom_value) const { return eval_node(*node_, atom_value); }

// ---------------------------------------------------------------------------
// Product space

ProductSpace::ProductSpace(Context& ctx, std::vector<Atom> atoms, std::size_t max_states)
    : ctx_(ctx), k_(ctx.alphabet_size()), atoms_(std::move(atoms)) {
  for (std::size_t i = 0; i < atoms_.size(); ++i) atom_pos_.emplace(atoms_[i], static_cast<int>(i));

  std::vector<int> init(atoms_.size());
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    init[i] = atoms_[i].prefix.empty() ? normalize(atoms_[i].elem) : kMatch0;
  intern(std::move(init));

  for (std::size_t q = 0; q < states_.size(); ++q) {
    if (states_.size() > max_states) throw BudgetExceeded("product space exceeded " + std::to_string(max_states) + " states");
    std::vector<int> row(static_cast<std::size_t>(k_));
    for (Letter x = 0; x < k_; ++x) {
      std::vector<int> next(atoms_.size());
      for (std::size_t i = 0; i < atoms_.size(); ++i) next[i] = step_atom(i, states_[q][i], x);
      row[static_cast<std::size_t>(x)] = intern(std::move(next));
    }
    succ_.push_back(std::move(row));
  }

  const std::size_t n = states_.size();
  pred_.assign(n, {});
  for (std::size_t q = 0; q < n; ++q)
    for (int t : succ_[q]) pred_[static_cast<std::size_t>(t)].push_back(static_cast<int>(q));

  classes_.resize(n);
  for (std::size_t q = 0; q < n; ++q) {
    classes_[q].resize(atoms_.size());
    for (std::size_t i = 0; i < atoms_.size(); ++i) classes_[q][i] = static_cast<char>(status(i, states_[q][i]));
  }

  // Greatest set of states with a status-preserving successor inside the set.
  stable_.assign(n, 1);
  std::vector<int> keep(n, 0);
  std::vector<std::vector<int>> preserving_pred(n);
  for (std::size_t q = 0; q < n; ++q)
    for (int t : succ_[q])
      if (classes_[static_cast<std::size_t>(t)] == classes_[q]) {
        ++keep[q];
        preserving_pred[static_cast<std::size_t>(t)].push_back(static_cast<int>(q));
      }
  std::vector<int> work;
  for (std::size_t q = 0; q < n; ++q)
    if (keep[q] == 0) {
      stable_[q] = 0;
      work.push_back(static_cast<int>(q));
    }
  while (!work.empty()) {
    const auto q = static_cast<std::size_t>(work.back());
    work.pop_back();
    for (int p : preserving_pred[q]) {
      const auto ps = static_cast<std::size_t>(p);
      if (stable_[ps] && --keep[ps] == 0) {
        stable_[ps] = 0;
        work.push_back(p);
      }
    }
  }

  truth_.resize(n);
  for (std::size_t q = 0; q < n; ++q) {
    truth_[q].resize(atoms_.size());
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      const char c = classes_[q][i];
      truth_[q][i] = c == kAccepted || (c == kPending && atoms_[i].kind == AtomKind::ClosureTf);
    }
  }
}

int ProductSpace::atom_index(const Atom& a) const {
  auto it = atom_pos_.find(a);
  return it == atom_pos_.end() ? -1 : it->second;
}

int ProductSpace::intern(std::vector<int> s) {
  std::string key(reinterpret_cast<const char*>(s.data()), s.size() * sizeof(int));
  auto [it, fresh] = state_ids_.emplace(std::move(key), static_cast<int>(states_.size()));
  if (fresh) states_.push_back(std::move(s));
  return it->second;
}

int ProductSpace::normalize(ElemId g) {
  if (g == ctx_.identity()) return kAcc;
  if (!ctx_.index().coaccessible(g)) return kDead;
  return g;
}

int ProductSpace::step_atom(std::size_t i, int s, Letter x) {
  if (s == kAcc || s == kDead) return s;
  if (s <= kMatch0) {
    const auto p = static_cast<std::size_t>(kMatch0 - s);
    const Atom& a = atoms_[i];
    if (a.prefix[p] != x) return kDead;
    if (p + 1 == a.prefix.size()) return normalize(a.elem);
    return s - 1;
  }
  ElementIndex& idx = ctx_.index();
  if (!idx.fixes(s, x)) return kDead;
  return normalize(idx.section(s, x));
}

int ProductSpace::status(std::size_t, int s) const {
  if (s == kAcc) return kAccepted;
  if (s == kDead) return kRejected;
  return kPending;
}

int ProductSpace::state_after(const Word& u, int from) const {
  int q = from;
  for (Letter x : u) q = successor(q, x);
  return q;
}

std::vector<char> ProductSpace::can_reach(const TruthPredicate& pred) const {
  const std::size_t n = succ_.size();
  std::vector<char> mark(n, 0);
  std::vector<int> work;
  std::map<Truth, bool> memo;
  for (std::size_t q = 0; q < n; ++q) {
    if (!stable_[q]) continue;
    auto it = memo.find(truth_[q]);
    if (it == memo.end()) it = memo.emplace(truth_[q], pred(truth_[q])).first;
    if (it->second) {
      mark[q] = 1;
      work.push_back(static_cast<int>(q));
    }
  }
  while (!work.empty()) {
    const auto q = static_cast<std::size_t>(work.back());
    work.pop_back();
    for (int p : pred_[q])
      if (!mark[static_cast<std::size_t>(p)]) {
        mark[static_cast<std::size_t>(p)] = 1;
        work.push_back(p);
      }
  }
  return mark;
}

bool ProductSpace::forall_from(int q, const TruthPredicate& pred) const {
  return !exists_from(q, [&](const Truth& t) { return !pred(t); });
}

std::vector<int> ProductSpace::reachable_from(int q) const {
  std::vector<char> seen(succ_.size(), 0);
  std::vector<int> out{q};
  seen[static_cast<std::size_t>(q)] = 1;
  for (std::size_t h = 0; h < out.size(); ++h)
    for (int t : succ_[static_cast<std::size_t>(out[h])])
      if (!seen[static_cast<std::size_t>(t)]) {
        seen[static_cast<std::size_t>(t)] = 1;
        out.push_back(t);
      }
  return out;
}

bool ProductSpace::has_interior_from(int q, const TruthPredicate& pred) const {
  auto escape = can_reach([&](const Truth& t) { return !pred(t); });
  for (int r : reachable_from(q))
    if (!escape[static_cast<std::size_t>(r)]) return true;
  return false;
}

bool ProductSpace::dense_from(int q, const TruthPredicate& pred) const {
  auto hit = can_reach(pred);
  for (int r : reachable_from(q))
    if (!hit[static_cast<std::size_t>(r)]) return false;
  return true;
}

Truth ProductSpace::evaluate(const EvPeriodicWord& w) const {
  const std::size_t pre = w.preperiod().size(), per = w.period().size();
  int q = state_after(w.preperiod());
  std::set<std::pair<int, std::size_t>> seen;
  for (std::size_t i = 0;; ++i) {
    if (!seen.emplace(q, i % per).second) break;
    q = successor(q, w.at(pre + i));
  }
  Truth t(atoms_.size());
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const char c = classes_[static_cast<std::size_t>(q)][i];
    t[i] = c == kAccepted || (c == kPending && atoms_[i].kind == AtomKind::ClosureTf);
  }
  return t;
}

std::vector<Truth> ProductSpace::realizable(int q) const {
  std::set<Truth> out;
  for (int r : reachable_from(q))
    if (stable_[static_cast<std::size_t>(r)]) out.insert(truth_[static_cast<std::size_t>(r)]);
  return {out.begin(), out.end()};
}

std::optional<ProductSpace::Sample> ProductSpace::sample(int q, const TruthPredicate& pred) const {
  const std::size_t n = succ_.size();
  std::vector<int> parent(n, -2);
  std::vector<Letter> via(n, 0);
  std::deque<int> queue{q};
  parent[static_cast<std::size_t>(q)] = -1;
  int target = -1;
  while (!queue.empty()) {
    const int s = queue.front();
    queue.pop_front();
    const auto ss = static_cast<std::size_t>(s);
    if (stable_[ss] && pred(truth_[ss])) {
      target = s;
      break;
    }
    for (Letter x = 0; x < k_; ++x) {
      const int t = succ_[ss][static_cast<std::size_t>(x)];
      if (parent[static_cast<std::size_t>(t)] == -2) {
        parent[static_cast<std::size_t>(t)] = s;
        via[static_cast<std::size_t>(t)] = x;
        queue.push_back(t);
      }
    }
  }
  if (target < 0) return std::nullopt;
  Word decisive;
  for (int s = target; parent[static_cast<std::size_t>(s)] >= 0; s = parent[static_cast<std::size_t>(s)])
    decisive.push_back(via[static_cast<std::size_t>(s)]);
  std::reverse(decisive.begin(), decisive.end());

  // Lasso through stable states of the same status.
  std::map<int, std::size_t> seen;
  Word tail;
  int s = target;
  while (!seen.count(s)) {
    seen.emplace(s, tail.size());
    const auto ss = static_cast<std::size_t>(s);
    int next = -1;
    for (Letter x = 0; x < k_ && next < 0; ++x) {
      const int t = succ_[ss][static_cast<std::size_t>(x)];
      if (stable_[static_cast<std::size_t>(t)] && classes_[static_cast<std::size_t>(t)] == classes_[ss]) {
        next = t;
        tail.push_back(x);
      }
    }
    s = next;
  }
  const std::size_t loop = seen.at(s);
  Word pre = decisive;
  pre.insert(pre.end(), tail.begin(), tail.begin() + static_cast<std::ptrdiff_t>(loop));
  Word period(tail.begin() + static_cast<std::ptrdiff_t>(loop), tail.end());
  return Sample{decisive, EvPeriodicWord(std::move(pre), std::move(period))};
}

// ---------------------------------------------------------------------------
// Single-element analyses

const char* to_string(TFClass c) {
  switch (c) {
    case TFClass::Interior: return "INTERIOR";
    case TFClass::Boundary: return "BOUNDARY";
    case TFClass::Outside: return "OUTSIDE";
  }
  return "?";
}

TFClass tf_classify(Context& ctx, ElemId g, const EvPeriodicWord& w) {
  ElementIndex& idx = ctx.index();
  const std::size_t pre = w.preperiod().size(), per = w.period().size();
  std::set<std::pair<ElemId, std::size_t>> seen;
  ElemId s = g;
  for (std::size_t i = 0;; ++i) {
    if (s == idx.identity()) return TFClass::Interior;
    if (!idx.coaccessible(s)) return TFClass::Outside;
    if (i >= pre && !seen.emplace(s, (i - pre) % per).second) return TFClass::Boundary;
    const Letter x = w.at(i);
    if (!idx.fixes(s, x)) return TFClass::Outside;
    s = idx.section(s, x);
  }
}

bool SFAutomaton::accepts(const Word& w) const {
  ElemId s = owner;
  for (Letter x : w) {
    if (s == kAccept) return true;
    auto it = delta.find({s, x});
    if (it == delta.end()) return false;
    s = it->second;
  }
  return s == kAccept;
}

std::vector<Word> SFAutomaton::minimal_words(std::size_t max_len, int alphabet_size) const {
  std::vector<Word> out;
  std::vector<std::pair<Word, ElemId>> layer{{Word{}, owner}};
  if (owner == kAccept) return {Word{}};
  for (std::size_t len = 0; len < max_len && !layer.empty(); ++len) {
    std::vector<std::pair<Word, ElemId>> next;
    for (const auto& [w, s] : layer)
      for (Letter x = 0; x < alphabet_size; ++x) {
        auto it = delta.find({s, x});
        if (it == delta.end()) continue;
        Word v = w;
        v.push_back(x);
        if (it->second == kAccept)
          out.push_back(std::move(v));
        else
          next.emplace_back(std::move(v), it->second);
      }
    layer = std::move(next);
  }
  return out;
}

SFAutomaton sf_automaton(Context& ctx, ElemId g) {
  ElementIndex& idx = ctx.index();
  const int k = ctx.alphabet_size();
  SFAutomaton a;
  if (g == idx.identity()) {
    a.owner = SFAutomaton::kAccept;
    return a;
  }
  a.owner = g;
  std::set<ElemId> seen{g};
  std::vector<ElemId> work{g};
  while (!work.empty()) {
    ElemId s = work.back();
    work.pop_back();
    a.states.push_back(s);
    (idx.coaccessible(s) ? a.coaccessible : a.dead).push_back(s);
    for (Letter x = 0; x < k; ++x) {
      if (!idx.fixes(s, x)) continue;
      ElemId t = idx.section(s, x);
      if (t == idx.identity()) {
        a.delta[{s, x}] = SFAutomaton::kAccept;
        continue;
      }
      a.delta[{s, x}] = t;
      if (seen.insert(t).second) work.push_back(t);
    }
  }
  std::sort(a.states.begin(), a.states.end());
  return a;
}

// ---------------------------------------------------------------------------
// Region decisions

namespace {

ProductSpace compile(Context& ctx, const Region& r) {
  std::vector<Atom> atoms;
  r.collect_atoms(atoms);
  return ProductSpace(ctx, std::move(atoms));
}

}  // namespace

bool region_nonempty(Context& ctx, const Region& r, std::optional<EvPeriodicWord>* sample) {
  ProductSpace space = compile(ctx, r);
  auto pred = r.predicate(space);
  if (!sample) return space.exists_from(ProductSpace::initial, pred);
  auto s = space.sample(ProductSpace::initial, pred);
  if (s) *sample = s->point;
  return s.has_value();
}

bool region_empty_interior(Context& ctx, const Region& r) {
  ProductSpace space = compile(ctx, r);
  return !space.has_interior_from(ProductSpace::initial, r.predicate(space));
}

bool region_dense_in(Context& ctx, const Region& r, const Word& u) {
  ProductSpace space = compile(ctx, r);
  return space.dense_from(space.state_after(u), r.predicate(space));
}

}  // namespace ssg
