#include "ssg/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <map>
#include <memory>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "ssg/scondition.hpp"

namespace ssg {

std::string CriterionResult::line() const {
  std::ostringstream os;
  os << (pass() ? "PASS " : "FAIL ") << id << ' ' << title << " (" << std::fixed << std::setprecision(3) << seconds
     << " s, limit " << std::defaultfloat << limit << " s)";
  if (!detail.empty()) os << ' ' << detail;
  for (std::size_t i = 0; i < failures.size() && i < 5; ++i) os << "\n    " << failures[i];
  if (failures.size() > 5) os << "\n    ... " << failures.size() - 5 << " more";
  return os.str();
}

namespace {

using Clock = std::chrono::steady_clock;
using Names = std::set<std::string>;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Run {
  CriterionResult& r;
  std::string dir;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    r.checks = false;
    r.failures.push_back(what);
  }
  void time(double s) { r.seconds = std::max(r.seconds, s); }
  std::unique_ptr<Context> load(const std::string& file) { return Context::from_file(dir + "/" + file); }
};

EvPeriodicWord pt(const char* s, int k = 2) { return EvPeriodicWord::parse(s, k); }

std::string show(const Names& s) {
  std::string out = "{";
  for (const auto& n : s) out += (out.size() > 1 ? "," : "") + n;
  return out + "}";
}

Names names_of(Context& ctx, const std::vector<ElemId>& ids) {
  Names out;
  for (ElemId id : ids) out.insert(ctx.name(id));
  return out;
}

Word random_word(std::mt19937& rng, int k, std::size_t max_len, std::size_t min_len = 0) {
  Word w(std::uniform_int_distribution<std::size_t>(min_len, max_len)(rng));
  std::uniform_int_distribution<int> letter(0, k - 1);
  for (auto& x : w) x = letter(rng);
  return w;
}

EvPeriodicWord random_point(std::mt19937& rng, int k) {
  return EvPeriodicWord(random_word(rng, k, 4), random_word(rng, k, 3, 1));
}

// --- independent germ oracle: walk a chain of arrows on ever longer prefixes

bool has_prefix(const Word& w, const Word& p) { return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin()); }

std::optional<std::pair<Word, GroupElement>> local_map(Context& ctx, const std::vector<Arrow>& chain,
                                                       const EvPeriodicWord& w, std::size_t l) {
  const Automaton& aut = ctx.automaton();
  Word cur = w.prefix(l);
  GroupElement sec;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    if (!has_prefix(cur, it->v)) return std::nullopt;
    const Word z(cur.begin() + static_cast<std::ptrdiff_t>(it->v.size()), cur.end());
    const GroupElement& g = ctx.index().element(it->g);
    cur = it->u;
    for (Letter x : act_word(aut, g, z)) cur.push_back(x);
    sec = multiply(section(aut, g, z), sec, aut.identity());
  }
  return std::make_pair(cur, sec);
}

bool same_germ(Context& ctx, const std::vector<Arrow>& a, const std::vector<Arrow>& b, const EvPeriodicWord& w) {
  const std::size_t bound = 8 + w.preperiod().size() + 40 * w.period().size();
  for (std::size_t l = 0; l <= bound; ++l) {
    auto x = local_map(ctx, a, w, l), y = local_map(ctx, b, w, l);
    if (!x || !y) continue;
    if (x->first != y->first) return false;
    if (elements_equal(ctx.automaton(), x->second, y->second)) return true;
  }
  return false;
}

Coeff oracle_eval(Context& ctx, const AlgebraElement& f, const Germ& g) {
  Coeff s = 0;
  for (const auto& t : f.terms)
    for (const auto& p : t.cell.pieces(ctx))
      if (g.base.starts_with(p.v) && same_germ(ctx, {p}, {g.arrow}, g.base)) s += t.coeff;
  return f.ring.reduce(s);
}

// --- random algebra elements and probe germs

std::vector<ElemId> products2(Context& ctx) {
  std::vector<ElemId> out;
  for (ElemId a : ctx.nucleus().ids)
    for (ElemId b : ctx.nucleus().ids) out.push_back(ctx.index().product(a, b));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const std::vector<EvPeriodicWord>& probe_bases() {
  static const std::vector<EvPeriodicWord> b = [] {
    std::vector<EvPeriodicWord> out;
    for (const char* s : {"(0)", "(1)", "(01)", "(001)", "(011)", "1(0)", "0(1)", "10(110)", "110(0)", "01(1)"})
      out.push_back(pt(s));
    return out;
  }();
  return b;
}

AlgebraElement random_element(Context& ctx, std::mt19937& rng, Ring r, const std::vector<ElemId>& pool) {
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> coeff(-2, 2), terms(1, 3);
  AlgebraElement f{r, {}};
  for (int i = terms(rng); i > 0; --i)
    f.terms.push_back({r.reduce(coeff(rng)), Cell{random_word(rng, 2, 1), pool[pick(rng)], random_word(rng, 2, 1), {Word{}}}});
  return normalize(ctx, std::move(f));
}

std::vector<Germ> probe_germs(Context& ctx, std::mt19937& rng, const std::vector<const AlgebraElement*>& fs,
                              const std::vector<ElemId>& pool, int count) {
  std::vector<Arrow> arrows;
  for (const auto* f : fs)
    for (const auto& t : f->terms)
      for (auto& p : t.cell.pieces(ctx)) arrows.push_back(std::move(p));
  std::uniform_int_distribution<std::size_t> pick_base(0, probe_bases().size() - 1), pick_elem(0, pool.size() - 1);
  std::vector<Germ> out;
  for (int i = 0; i < count; ++i) {
    Arrow a;
    if (!arrows.empty() && i % 4 != 3)
      a = arrows[std::uniform_int_distribution<std::size_t>(0, arrows.size() - 1)(rng)];
    else
      a = Arrow{random_word(rng, 2, 2), pool[pick_elem(rng)], random_word(rng, 2, 2)};
    out.push_back(Germ{a, probe_bases()[pick_base(rng)].prepend(a.v)});
  }
  return out;
}

// --- criteria

void nucleus_reproduction(Run& run) {
  const std::pair<const char*, Names> cases[] = {{"grigorchuk.ssg", {"e", "a", "b", "c", "d"}},
                                                 {"grigorchuk_erschler.ssg", {"e", "h", "alpha", "beta", "gamma"}},
                                                 {"odometer.ssg", {"e", "a", "a'"}}};
  for (const auto& [file, want] : cases) {
    const auto t0 = Clock::now();
    auto ctx = run.load(file);
    const Nucleus& n = ctx->nucleus();
    run.time(since(t0));
    const Names got(n.names.begin(), n.names.end());
    run.expect(n.size() == want.size() && got == want, std::string(file) + ": nucleus " + show(got));
  }
}

void dangerous_points(Run& run) {
  const auto t0 = Clock::now();
  auto g = run.load("grigorchuk.ssg");
  auto r = is_dangerous(*g, pt("(1)"));
  std::vector<ElemId> wit;
  for (const auto& w : r.witnesses) wit.push_back(w.element);
  run.expect(r.dangerous, "(1) not dangerous");
  run.expect(names_of(*g, wit) == Names{"b", "c", "d"}, "(1) witnesses " + show(names_of(*g, wit)));
  run.expect(!is_dangerous(*g, pt("0(01)")).dangerous, "0(01) dangerous");

  // Dangerous exactly on the tails u 1^inf.
  std::mt19937 rng(2);
  for (int i = 0; i < 40; ++i) {
    const EvPeriodicWord w = random_point(rng, 2);
    const bool tail_ones = w.period() == Word{1};
    run.expect(is_dangerous(*g, w).dangerous == tail_ones, "grigorchuk " + w.to_string());
  }

  auto odo = run.load("odometer.ssg");
  for (int i = 0; i < 50; ++i) {
    const EvPeriodicWord w = random_point(rng, 2);
    run.expect(!is_dangerous(*odo, w).dangerous, "odometer dangerous at " + w.to_string());
  }
  run.time(since(t0));
}

void check_phases(Run& run, Context& ctx, const std::vector<CoverPoint>& f, std::size_t cycle,
                  const std::map<std::string, std::size_t>& zero_phase, const std::string& label) {
  for (const auto& p : f) {
    const auto& pats = realizing_pattern(p);
    run.expect(pats.size() == cycle, label + ": cycle length " + std::to_string(pats.size()));
    if (p.members.size() != 2) continue;
    const std::string who = ctx.name(p.members[1]);
    for (const auto& ph : pats) {
      const bool zero = ph.sample == Word{0};
      run.expect(zero == (ph.level % cycle == zero_phase.at(who)),
                 label + ": member " + who + " level " + std::to_string(ph.level) + " sample " + format_word(ph.sample));
    }
  }
}

void fibers(Run& run) {
  {
    const auto t0 = Clock::now();
    auto g = run.load("grigorchuk.ssg");
    auto f = fiber(*g, pt("(1)"));
    std::set<Names> got;
    for (const auto& p : f) got.insert(names_of(*g, p.members));
    run.expect(got == std::set<Names>{{"e"}, {"e", "b"}, {"e", "c"}, {"e", "d"}}, "grigorchuk fiber over (1)");
    check_phases(run, *g, f, 3, {{"d", 0}, {"c", 1}, {"b", 2}}, "grigorchuk");
    run.expect(fiber(*g, pt("0(01)")).size() == 1, "grigorchuk fiber over 0(01)");
    run.time(since(t0));
  }
  {
    const auto t0 = Clock::now();
    auto ge = run.load("grigorchuk_erschler.ssg");
    auto f = fiber(*ge, pt("(1)"));
    std::set<Names> got;
    for (const auto& p : f) got.insert(names_of(*ge, p.members));
    run.expect(got == std::set<Names>{{"e"}, {"e", "alpha"}, {"e", "beta"}}, "grigorchuk-erschler fiber over (1)");
    check_phases(run, *ge, f, 2, {{"alpha", 0}, {"beta", 1}}, "grigorchuk-erschler");
    run.time(since(t0));
  }
  std::mt19937 rng(3);
  for (const char* file : {"grigorchuk.ssg", "grigorchuk_erschler.ssg", "gupta_sidki3.ssg"}) {
    const auto t0 = Clock::now();
    auto ctx = run.load(file);
    const std::size_t n = ctx->nucleus().size();
    for (int i = 0; i < 20; ++i) {
      const EvPeriodicWord w = random_point(rng, ctx->alphabet_size());
      for (const auto& p : fiber(*ctx, w))
        run.expect(p.members.size() <= n, std::string(file) + ": oversized cover point at " + w.to_string());
    }
    run.time(since(t0));
  }
}

void singular_positive(Run& run) {
  auto ge = run.load("grigorchuk_erschler.ssg");
  ge->nucleus();
  std::ostringstream detail;
  for (std::int64_t t : {0, 2, 3, 6}) {
    const auto t0 = Clock::now();
    auto r = search_witness(*ge, t, {4, 2, 2});
    const std::string tag = "t=" + std::to_string(t);
    run.expect(r.witness.has_value(), tag + ": no witness");
    if (r.witness) {
      run.expect(r.witness->candidate.elements.size() == 4, tag + ": n != 4");
      auto f = build_singular(*ge, *r.witness);
      run.expect(nonzero(*ge, f), tag + ": f is zero");
      run.expect(is_singular(*ge, f), tag + ": f not singular");
    }
    const double s = since(t0);
    run.time(s);
    detail << tag << ':' << std::fixed << std::setprecision(3) << s << "s ";
  }
  run.r.detail = detail.str();
}

// Germs of g and h at w coincide when some prefix is moved alike with equal sections.
bool coincide_at(Context& ctx, ElemId g, ElemId h, const EvPeriodicWord& w) {
  const Automaton& aut = ctx.automaton();
  const GroupElement& a = ctx.index().element(g);
  const GroupElement& b = ctx.index().element(h);
  for (std::size_t l = 0; l <= w.preperiod().size() + 30 * w.period().size(); ++l) {
    const Word p = w.prefix(l);
    if (act_word(aut, a, p) != act_word(aut, b, p)) return false;
    if (elements_equal(aut, section(aut, a, p), section(aut, b, p))) return true;
  }
  return false;
}

void singular_char2(Run& run) {
  const auto t0 = Clock::now();
  auto g = run.load("grigorchuk.ssg");
  auto r = search_witness(*g, 2, {4, 2, 2});
  run.expect(r.witness.has_value(), "t=2: no witness");
  if (r.witness) {
    const auto& w = *r.witness;
    run.expect(names_of(*g, w.candidate.elements) == Names{"e", "b", "c", "d"}, "t=2: elements");
    run.expect(w.candidate.V == std::vector<Word>{Word{}}, "t=2: source is not the whole space");
    run.expect(w.kernel == std::vector<std::int64_t>{1, 1, 1, 1}, "t=2: kernel");

    std::set<Names> found, seen;
    for (const auto& p : w.patterns.patterns) {
      std::vector<ElemId> ids;
      for (std::size_t i : p.members) ids.push_back(w.candidate.elements[i]);
      found.insert(names_of(*g, ids));
    }
    const auto& el = w.candidate.elements;
    for (std::size_t k = 0; k <= 9; ++k) {
      const EvPeriodicWord x(Word(k, 1), Word{0});
      for (std::size_t i = 0; i < el.size(); ++i)
        for (std::size_t j = i + 1; j < el.size(); ++j)
          if (coincide_at(*g, el[i], el[j], x)) seen.insert({g->name(el[i]), g->name(el[j])});
    }
    run.expect(found.size() == 6 && found == seen, "t=2: patterns disagree with coincidences at 1^k0(0)");
    auto f = build_singular(*g, w);
    run.expect(nonzero(*g, f) && is_singular(*g, f), "t=2: built element not nonzero singular");
  }
  run.expect(!search_witness(*g, 0, {4, 2, 2}).witness, "t=0: unexpected witness");
  run.time(since(t0));
}

void regular_open_d0(Run& run) {
  const auto t0 = Clock::now();
  auto g = run.load("grigorchuk.ssg");
  const D0Status s = d0_status(*g, 2);
  run.expect(s.verdict == D0Verdict::Nonempty, std::string("grigorchuk d0 ") + to_string(s.verdict));
  auto w = find_nonregular_witness(*g, 2);
  run.expect(w.has_value(), "grigorchuk: no non-regular-open witness");
  if (w) run.expect(!is_regular_open(*g, *w, 2), "grigorchuk: witness is regular open");
  auto gs = run.load("gupta_sidki3.ssg");
  const D0Status sg = d0_status(*gs, 2);
  run.expect(sg.verdict == D0Verdict::Empty, std::string("gupta-sidki d0 ") + to_string(sg.verdict));
  auto odo = run.load("odometer.ssg");
  const D0Status so = d0_status(*odo, 2);
  run.expect(so.verdict == D0Verdict::Empty, std::string("odometer d0 ") + to_string(so.verdict));
  run.time(since(t0));
}

void algebra_suite(Run& run) {
  const auto t0 = Clock::now();
  auto g = run.load("grigorchuk.ssg");
  const auto pool = products2(*g);
  std::mt19937 rng(7);
  std::size_t probes = 0;
  for (Ring r : {Ring::rationals(), Ring::zmod(6)}) {
    for (int i = 0; i < 50; ++i) {
      auto f1 = random_element(*g, rng, r, pool), f2 = random_element(*g, rng, r, pool),
           f3 = random_element(*g, rng, r, pool);
      auto left = convolve(*g, convolve(*g, f1, f2), f3);
      auto right = convolve(*g, f1, convolve(*g, f2, f3));
      auto inv_left = involute(*g, convolve(*g, f1, f2));
      auto inv_right = convolve(*g, involute(*g, f2), involute(*g, f1));
      const std::string tag = r.name() + " triple " + std::to_string(i);
      int k = 0;
      for (const auto& gm : probe_germs(*g, rng, {&left, &right, &inv_left}, pool, 200)) {
        const Coeff l = evaluate(*g, left, gm);
        run.expect(l == evaluate(*g, right, gm), tag + ": associativity");
        run.expect(evaluate(*g, inv_left, gm) == evaluate(*g, inv_right, gm), tag + ": involution");
        if (k++ % 10 == 0) run.expect(l == oracle_eval(*g, left, gm), tag + ": evaluation oracle");
        ++probes;
      }
    }
  }

  // Decomposition round trip: covers are the one-letter restrictions of the
  // pieces of f, plus an unrelated cell.
  const Ring q = Ring::rationals();
  for (int i = 0; i < 20; ++i) {
    auto f = random_element(*g, rng, q, pool);
    if (f.empty()) f = indicator(q, unit_cell());
    std::vector<Cell> covers;
    for (const auto& t : f.terms)
      for (const auto& p : t.cell.pieces(*g))
        for (Letter x = 0; x < g->alphabet_size(); ++x) covers.push_back(cell_of(restrict_arrow(*g, p, Word{x})));
    covers.push_back(Cell{random_word(rng, 2, 2), pool[rng() % pool.size()], random_word(rng, 2, 2), {Word{}}});
    std::shuffle(covers.begin(), covers.end(), rng);
    const std::string tag = "decomposition " + std::to_string(i);
    try {
      auto parts = decompose(*g, f, covers);
      AlgebraElement sum{q, {}};
      for (std::size_t j = 0; j < parts.size(); ++j) {
        sum = add(*g, sum, parts[j]);
        for (const auto& t : parts[j].terms)
          for (const auto& p : t.cell.pieces(*g))
            run.expect(contains(*g, covers[j], Germ{p, pt("(0)").prepend(p.v)}), tag + ": part leaves its cover");
      }
      run.expect(!nonzero(*g, subtract(*g, sum, f)), tag + ": parts do not sum to f");
      for (const auto& gm : probe_germs(*g, rng, {&f}, pool, 20))
        run.expect(evaluate(*g, sum, gm) == evaluate(*g, f, gm), tag + ": pointwise sum");
    } catch (const CoverInsufficient& e) {
      run.expect(false, tag + ": " + e.what());
    }
  }

  // Cover values are the eventual unit values along the realizing sequences.
  struct Bundled {
    const char* file;
    std::int64_t t;
  };
  for (const Bundled& b : {Bundled{"grigorchuk.ssg", 2}, Bundled{"grigorchuk_erschler.ssg", 0},
                           Bundled{"grigorchuk_erschler.ssg", 2}, Bundled{"grigorchuk_erschler.ssg", 3},
                           Bundled{"grigorchuk_erschler.ssg", 6}}) {
    auto ctx = run.load(b.file);
    auto r = search_witness(*ctx, b.t, {4, 2, 2});
    const std::string tag = std::string(b.file) + " t=" + std::to_string(b.t);
    if (!r.witness) {
      run.expect(false, tag + ": no witness");
      continue;
    }
    const AlgebraElement f = build_singular(*ctx, *r.witness);
    for (const char* base : {"(1)", "01(1)", "0(1)"}) {
      const EvPeriodicWord w = pt(base);
      for (const auto& p : fiber(*ctx, w)) {
        const Coeff want = evaluate_cover(*ctx, f, p);
        const auto& pats = realizing_pattern(p);
        for (const auto& ph : pats) {
          const EvPeriodicWord rel = ph.point.drop(ph.level);
          for (std::size_t j = 1; j <= 3; ++j) {
            const EvPeriodicWord x = rel.prepend(w.prefix(ph.level + j * pats.size()));
            run.expect(evaluate(*ctx, f, Germ{{{}, ctx->identity(), {}}, x}) == want,
                       tag + ": cover value at " + base);
          }
        }
      }
    }
  }
  run.r.detail = std::to_string(probes) + " probes";
  run.time(since(t0));
}

bool acts_trivially_to(const Automaton& aut, const GroupElement& g, std::size_t depth) {
  std::vector<Word> layer{Word{}};
  for (std::size_t i = 0; i < depth; ++i) {
    std::vector<Word> next;
    for (const auto& w : layer)
      for (Letter x = 0; x < aut.alphabet_size(); ++x) {
        next.push_back(w);
        next.back().push_back(x);
      }
    layer = std::move(next);
  }
  for (const auto& w : layer)
    if (act_word(aut, g, w) != w) return false;
  return true;
}

void word_problem(Run& run) {
  const auto t0 = Clock::now();
  const Automaton aut = load_automaton(run.dir + "/grigorchuk.ssg");
  std::vector<Generator> gens;
  for (StateId s = 0; s < static_cast<StateId>(aut.state_count()); ++s) {
    if (s == aut.identity()) continue;
    gens.push_back({s, false});
    gens.push_back({s, true});
  }
  std::vector<std::vector<Generator>> words{{}}, layer{{}};
  for (int len = 1; len <= 3; ++len) {
    std::vector<std::vector<Generator>> next;
    for (const auto& w : layer)
      for (const auto& x : gens) {
        next.push_back(w);
        next.back().push_back(x);
      }
    layer = next;
    words.insert(words.end(), next.begin(), next.end());
  }
  for (const auto& w : words) {
    const GroupElement g = GroupElement::reduce(w, aut.identity());
    run.expect(is_trivial(aut, g) == acts_trivially_to(aut, g, 8), "disagreement on " + format_element(aut, g));
  }
  auto el = [&](const char* s) { return parse_element(aut, s); };
  run.expect(elements_equal(aut, el("b.c"), el("d")), "bc != d");
  for (const char* s : {"b.b", "c.c", "d.d", "a.a"}) run.expect(is_trivial(aut, el(s)), std::string(s) + " nontrivial");
  run.r.detail = std::to_string(words.size()) + " words";
  run.time(since(t0));
}

bool brute_full(const std::vector<std::vector<std::size_t>>& fam, std::size_t n, std::int64_t t) {
  std::set<std::vector<std::int64_t>> reached{std::vector<std::int64_t>(n, 0)};
  for (const auto& I : fam) {
    std::set<std::vector<std::int64_t>> next;
    for (const auto& v : reached)
      for (std::int64_t c = 0; c < t; ++c) {
        auto w = v;
        for (std::size_t i : I) w[i] = (w[i] + c) % t;
        next.insert(w);
      }
    reached = std::move(next);
  }
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= static_cast<std::size_t>(t);
  return reached.size() == total;
}

bool annihilates(const std::vector<std::vector<std::size_t>>& fam, const std::vector<std::int64_t>& a, std::int64_t t) {
  bool nonzero = false;
  for (auto x : a) nonzero = nonzero || (t == 0 ? x != 0 : x % t != 0);
  if (!nonzero) return false;
  for (const auto& I : fam) {
    std::int64_t s = 0;
    for (std::size_t i : I) s += a[i];
    if (t == 0 ? s != 0 : s % t != 0) return false;
  }
  return true;
}

void span_brute_force(Run& run) {
  const auto t0 = Clock::now();
  std::size_t families = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<std::vector<std::size_t>> subsets;
    for (unsigned m = 1; m < (1u << n); ++m) {
      std::vector<std::size_t> s;
      for (std::size_t i = 0; i < n; ++i)
        if (m >> i & 1u) s.push_back(i);
      subsets.push_back(s);
    }
    const std::size_t r = subsets.size();
    // Families of at most 6 subsets, all of them.
    std::function<void(std::size_t, std::vector<std::vector<std::size_t>>&)> walk =
        [&](std::size_t from, std::vector<std::vector<std::size_t>>& fam) {
          ++families;
          for (std::int64_t t : {2, 3}) {
            auto res = span_full(fam, n, t);
            run.expect(res.full == brute_full(fam, n, t), "span verdict differs, n=" + std::to_string(n));
            if (!res.full) run.expect(res.kernel && annihilates(fam, *res.kernel, t), "bad kernel mod " + std::to_string(t));
          }
          auto q = span_full(fam, n, 0);
          if (!q.full) run.expect(q.kernel && annihilates(fam, *q.kernel, 0), "bad rational kernel");
          if (fam.size() == 6) return;
          for (std::size_t i = from; i < r; ++i) {
            fam.push_back(subsets[i]);
            walk(i + 1, fam);
            fam.pop_back();
          }
        };
    std::vector<std::vector<std::size_t>> fam;
    walk(0, fam);
  }
  run.r.detail = std::to_string(families) + " families";
  run.time(since(t0));
}

struct Criterion {
  int id;
  const char* title;
  double limit;
  void (*body)(Run&);
};

const Criterion kCriteria[] = {
    {1, "nucleus reproduction", 1.0, nucleus_reproduction},
    {2, "dangerous points", 1.0, dangerous_points},
    {3, "fibers", 2.0, fibers},
    {4, "singular ideal, positive", 10.0, singular_positive},
    {5, "singular ideal, characteristic 2", 60.0, singular_char2},
    {6, "regular open and D0", 30.0, regular_open_d0},
    {7, "algebra properties", 60.0, algebra_suite},
    {8, "word problem oracle", 5.0, word_problem},
    {9, "span brute force", 5.0, span_brute_force},
};

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::string& corpus_dir, int only, std::ostream* log) {
  std::vector<CriterionResult> out;
  for (const Criterion& s : kCriteria) {
    if (only != 0 && only != s.id) continue;
    CriterionResult r;
    r.id = s.id;
    r.title = s.title;
    r.limit = s.limit;
    Run run{r, corpus_dir};
    try {
      s.body(run);
    } catch (const std::exception& e) {
      run.expect(false, std::string("exception: ") + e.what());
    }
    if (log) *log << r.line() << std::endl;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace ssg
