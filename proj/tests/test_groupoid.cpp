#include <set>

#include "doctest.h"
#include "ssg/groupoid.hpp"
#include "support.hpp"

using namespace ssg;

namespace {

EvPeriodicWord pt(const char* s, int k = 2) { return EvPeriodicWord::parse(s, k); }

std::set<std::string> member_names(Context& ctx, const CoverPoint& p) {
  std::set<std::string> out;
  for (ElemId m : p.members) out.insert(ctx.name(m));
  return out;
}

// Germ oracle: follow both arrows along the base far enough for the sections
// to repeat, comparing ranges and testing the quotient for a trivial section.
bool germ_oracle(Context& ctx, const Germ& a, const Germ& b) {
  const Automaton& aut = ctx.automaton();
  const EvPeriodicWord& w = a.base;
  if (static_cast<long>(a.arrow.u.size()) - static_cast<long>(a.arrow.v.size()) !=
      static_cast<long>(b.arrow.u.size()) - static_cast<long>(b.arrow.v.size()))
    return false;
  const GroupElement& ga = ctx.index().element(a.arrow.g);
  const GroupElement& gb = ctx.index().element(b.arrow.g);
  const std::size_t bound = std::max(a.arrow.v.size(), b.arrow.v.size()) + w.preperiod().size() + 40 * w.period().size();
  for (std::size_t l = std::max(a.arrow.v.size(), b.arrow.v.size()); l <= bound; ++l) {
    const Word p = w.prefix(l);
    const Word za(p.begin() + static_cast<std::ptrdiff_t>(a.arrow.v.size()), p.end());
    const Word zb(p.begin() + static_cast<std::ptrdiff_t>(b.arrow.v.size()), p.end());
    Word ra = a.arrow.u, rb = b.arrow.u;
    for (Letter x : act_word(aut, ga, za)) ra.push_back(x);
    for (Letter x : act_word(aut, gb, zb)) rb.push_back(x);
    if (ra != rb) return false;
    if (elements_equal(aut, section(aut, ga, za), section(aut, gb, zb))) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("germ equality examples") {
  auto g = test::load("grigorchuk.ssg");
  const ElemId b = g->member("b"), c = g->member("c"), e = g->identity();
  CHECK(germ_equal(*g, {{{}, b, {}}, pt("(0)")}, {{{}, c, {}}, pt("(0)")}));
  CHECK_FALSE(germ_equal(*g, {{{}, b, {}}, pt("(1)")}, {{{}, c, {}}, pt("(1)")}));
  CHECK(germ_equal(*g, {{{}, e, {}}, pt("0(1)")}, {{{}, e, {}}, pt("0(1)")}));
  // Restricting an arrow does not change its germ.
  CHECK(germ_equal(*g, {{{}, b, {}}, pt("(1)")}, {{{1}, c, {1}}, pt("(1)")}));
  CHECK(germ_equal(*g, {{{}, b, {}}, pt("(1)")}, {{{1, 1}, g->member("d"), {1, 1}}, pt("(1)")}));
  CHECK_FALSE(germ_equal(*g, {{{}, b, {}}, pt("(1)")}, {{{1}, b, {1}}, pt("(1)")}));
  CHECK_THROWS_AS(germ_equal(*g, {{{}, b, {0}}, pt("(1)")}, {{{}, b, {}}, pt("(1)")}), IncompatibleBase);
  CHECK_THROWS_AS(germ_equal(*g, {{{}, b, {}}, pt("(1)")}, {{{}, b, {}}, pt("(0)")}), IncompatibleBase);
}

TEST_CASE("germ equality agrees with the section oracle and is an equivalence") {
  std::mt19937 rng(11);
  for (const char* f : {"grigorchuk.ssg", "grigorchuk_erschler.ssg", "gupta_sidki3.ssg"}) {
    auto ctx = test::load(f);
    const int k = ctx->alphabet_size();
    const auto& ids = ctx->nucleus().ids;
    std::uniform_int_distribution<std::size_t> pick(0, ids.size() - 1);
    auto random_germ = [&](const EvPeriodicWord& w) {
      const std::size_t vl = std::uniform_int_distribution<std::size_t>(0, 2)(rng);
      const Word v = w.prefix(vl);
      const ElemId n = ids[pick(rng)];
      return Germ{{test::random_word(rng, k, 1), n, v}, w};
    };
    for (int i = 0; i < 170; ++i) {
      EvPeriodicWord w = test::random_point(rng, k, 3, 2);
      Germ a = random_germ(w), b = random_germ(w), c = random_germ(w);
      if (i % 3 == 0) {
        const Word z = w.drop(a.arrow.v.size()).prefix(2);
        b = Germ{restrict_arrow(*ctx, a.arrow, z), w};
      }
      const bool ab = germ_equal(*ctx, a, b), bc = germ_equal(*ctx, b, c), ac = germ_equal(*ctx, a, c);
      CHECK(ab == germ_oracle(*ctx, a, b));
      CHECK(germ_equal(*ctx, a, a));
      CHECK(ab == germ_equal(*ctx, b, a));
      if (ab && bc) CHECK(ac);
    }
  }
}

TEST_CASE("cell composition and inversion") {
  auto g = test::load("grigorchuk.ssg");
  const ElemId a = g->member("a"), b = g->member("b"), c = g->member("c");
  auto bc = compose_cells(*g, cell_of({{}, b, {}}), cell_of({{}, c, {}}));
  REQUIRE(bc.cells.size() == 1);
  CHECK(bc.cells[0] == cell_of({{}, g->index().product(b, c), {}}));
  CHECK(g->name(bc.cells[0].g) == "d");

  auto idem = compose_cells(*g, cell_of({{0}, g->identity(), {}}), cell_of({{}, g->identity(), {0}}));
  REQUIRE(idem.cells.size() == 1);
  CHECK(idem.cells[0] == unit_cell({0}));

  CHECK(invert_cell(*g, cell_of({{0}, a, {1}})) == cell_of({{1}, g->index().inverse(a), {0}}));
  CHECK(compose_cells(*g, cell_of({{}, a, {0}}), cell_of({{1}, a, {}})).cells.empty());

  CHECK(normalize_tails({{0}, {1}}, 2) == std::vector<Word>{Word{}});
  CHECK(normalize_tails({{0, 0}, {0, 1}, {1, 0}, {0, 0, 1}}, 2) == std::vector<Word>{{0}, {1, 0}});
}

TEST_CASE("composition is associative on germs") {
  std::mt19937 rng(13);
  for (const char* f : {"grigorchuk.ssg", "gupta_sidki3.ssg"}) {
    auto ctx = test::load(f);
    const int k = ctx->alphabet_size();
    const auto& ids = ctx->nucleus().ids;
    std::uniform_int_distribution<std::size_t> pick(0, ids.size() - 1);
    auto random_cell = [&] {
      return Cell{test::random_word(rng, k, 2), ids[pick(rng)], test::random_word(rng, k, 2), {Word{}}};
    };
    auto compose_sets = [&](const CompactOpenSet& x, const CompactOpenSet& y) {
      CompactOpenSet out;
      for (const auto& p : x.cells)
        for (const auto& q : y.cells)
          for (auto& r : compose_cells(*ctx, p, q).cells) out.cells.push_back(std::move(r));
      return out;
    };
    auto has_germ = [&](const CompactOpenSet& s, const Germ& gm) {
      for (const auto& cell : s.cells)
        if (contains(*ctx, cell, gm)) return true;
      return false;
    };
    for (int i = 0; i < 100; ++i) {
      const CompactOpenSet c1{{random_cell()}}, c2{{random_cell()}}, c3{{random_cell()}};
      const CompactOpenSet left = compose_sets(compose_sets(c1, c2), c3);
      const CompactOpenSet right = compose_sets(c1, compose_sets(c2, c3));
      // Probe with germs of the pieces on both sides.
      for (const auto* side : {&left, &right})
        for (const auto& p : side->pieces(*ctx)) {
          const Germ gm{p, test::random_point(rng, k, 3, 2).prepend(p.v)};
          CHECK(has_germ(left, gm) == has_germ(right, gm));
        }
    }
  }
}

TEST_CASE("dangerous points") {
  auto g = test::load("grigorchuk.ssg");
  DangerReport r = is_dangerous(*g, pt("(1)"));
  CHECK(r.dangerous);
  std::set<std::string> at0;
  for (const auto& w : r.witnesses)
    if (w.depth == 0) at0.insert(g->name(w.element));
  CHECK(at0 == std::set<std::string>{"b", "c", "d"});
  CHECK_FALSE(is_dangerous(*g, pt("0(01)")).dangerous);
  CHECK(is_dangerous(*g, pt("0110(1)")).dangerous);

  auto odo = test::load("odometer.ssg");
  std::mt19937 rng(17);
  for (int i = 0; i < 50; ++i) {
    EvPeriodicWord w = test::random_point(rng, 2);
    CHECK_FALSE(is_dangerous(*odo, w).dangerous);
    auto f = fiber(*odo, w);
    REQUIRE(f.size() == 1);
    CHECK(f[0].members == std::vector<ElemId>{odo->identity()});
  }
}

TEST_CASE("stabilized depth") {
  auto g = test::load("grigorchuk.ssg");
  Stabilized s = stabilized_depth(*g, pt("(1)"));
  CHECK(s.depth == 0);
  std::set<std::string> names;
  for (ElemId m : s.members) names.insert(g->name(m));
  CHECK(names == std::set<std::string>{"e", "b", "c", "d"});
  CHECK(stabilized_depth(*g, pt("0(01)")).members == std::vector<ElemId>{g->identity()});

  auto ge = test::load("grigorchuk_erschler.ssg");
  Stabilized t = stabilized_depth(*ge, pt("(1)"));
  CHECK(t.depth == 0);
  names.clear();
  for (ElemId m : t.members) names.insert(ge->name(m));
  CHECK(names == std::set<std::string>{"e", "alpha", "beta"});
}

TEST_CASE("Grigorchuk fiber over (1)") {
  auto g = test::load("grigorchuk.ssg");
  auto f = fiber(*g, pt("(1)"));
  std::set<std::set<std::string>> got;
  for (const auto& p : f) got.insert(member_names(*g, p));
  CHECK(got == std::set<std::set<std::string>>{{"e"}, {"e", "b"}, {"e", "c"}, {"e", "d"}});

  // The sample "0" appears at the level where the tracked member has become d.
  const std::map<std::string, std::size_t> zero_phase{{"d", 0}, {"c", 1}, {"b", 2}};
  for (const auto& p : f) {
    CHECK(p.members.front() == g->identity());
    CHECK(realizing_pattern(p).size() == 3);
    if (p.members.size() != 2) continue;
    const std::string who = g->name(p.members[1]);
    for (const auto& ph : realizing_pattern(p)) {
      CHECK(ph.point.starts_with(Word(ph.level, 1)));
      if (ph.level % 3 == zero_phase.at(who)) CHECK(ph.sample == Word{0});
      else CHECK(ph.sample.size() > 1);
    }
  }

  // A shifted base has the same fiber shape.
  auto shifted = fiber(*g, pt("010(1)"));
  CHECK(shifted.size() == 4);
  for (const auto& p : shifted) CHECK(p.depth <= 3);
}

TEST_CASE("Grigorchuk-Erschler fiber over (1)") {
  auto ge = test::load("grigorchuk_erschler.ssg");
  auto f = fiber(*ge, pt("(1)"));
  std::set<std::set<std::string>> got;
  for (const auto& p : f) got.insert(member_names(*ge, p));
  CHECK(got == std::set<std::set<std::string>>{{"e"}, {"e", "alpha"}, {"e", "beta"}});
  const std::map<std::string, std::size_t> zero_phase{{"alpha", 0}, {"beta", 1}};
  for (const auto& p : f) {
    CHECK(realizing_pattern(p).size() == 2);
    if (p.members.size() != 2) continue;
    for (const auto& ph : realizing_pattern(p))
      if (ph.level % 2 == zero_phase.at(ge->name(p.members[1]))) CHECK(ph.sample == Word{0});
  }
}

TEST_CASE("fiber invariants on random points") {
  std::mt19937 rng(19);
  for (const char* f : {"grigorchuk.ssg", "grigorchuk_erschler.ssg", "gupta_sidki3.ssg"}) {
    auto ctx = test::load(f);
    const std::size_t nsize = ctx->nucleus().size();
    for (int i = 0; i < 40; ++i) {
      EvPeriodicWord w = test::random_point(rng, ctx->alphabet_size());
      auto fib = fiber(*ctx, w);
      CHECK(fib.size() <= (std::size_t{1} << nsize));
      const bool trivial = fib.size() == 1 && fib[0].members.size() == 1;
      CHECK(trivial == !is_dangerous(*ctx, w).dangerous);
      for (const auto& p : fib) {
        CHECK(p.members.front() == ctx->identity());
        CHECK(p.members.size() <= nsize);
        const EvPeriodicWord tail = w.drop(p.depth);
        for (std::size_t x = 1; x < p.members.size(); ++x) {
          CHECK(tf_classify(*ctx, p.members[x], tail) == TFClass::Boundary);
          for (std::size_t y = 0; y < x; ++y)
            CHECK_FALSE(germ_equal(*ctx, {{w.prefix(p.depth), p.members[x], w.prefix(p.depth)}, w},
                                   {{w.prefix(p.depth), p.members[y], w.prefix(p.depth)}, w}));
        }
      }
    }
  }
}

TEST_CASE("regular open sets") {
  auto g = test::load("grigorchuk.ssg");
  CHECK(is_regular_open(*g, CompactOpenSet{{unit_cell()}}, 2));
  CHECK(is_regular_open(*g, CompactOpenSet{{unit_cell({0, 1})}}, 2));
  auto witness = find_nonregular_witness(*g, 1);
  REQUIRE(witness);
  std::set<std::string> names;
  for (const auto& c : witness->cells) names.insert(g->name(c.g));
  CHECK(names == std::set<std::string>{"b", "c", "d"});
  auto r = regular_open(*g, *witness, 1);
  CHECK_FALSE(r.regular);
  REQUIRE(r.point);
  CHECK(r.point->starts_with(r.bisection->v));

  auto odo = test::load("odometer.ssg");
  CHECK_FALSE(find_nonregular_witness(*odo, 2).has_value());
}

TEST_CASE("extremely dangerous points") {
  auto g = test::load("grigorchuk.ssg");
  D0Status s = d0_status(*g, 2);
  CHECK(s.verdict == D0Verdict::Nonempty);
  CHECK(s.cylinder.empty());
  std::set<std::string> names;
  for (ElemId n : s.elements) names.insert(g->name(n));
  CHECK(names == std::set<std::string>{"b", "c", "d"});
  REQUIRE(s.point);
  CHECK(*s.point == pt("(1)"));

  CHECK(d0_status(*test::load("gupta_sidki3.ssg"), 2).verdict == D0Verdict::Empty);
  CHECK(d0_status(*test::load("odometer.ssg"), 2).verdict == D0Verdict::Empty);
}
