#include <set>

#include "doctest.h"
#include "ssg/scondition.hpp"
#include "support.hpp"

using namespace ssg;

namespace {

using Family = std::vector<std::vector<std::size_t>>;

std::set<std::set<std::string>> named(Context& ctx, const Candidate& c, const PatternFamily& f) {
  std::set<std::set<std::string>> out;
  for (const auto& p : f.patterns) {
    std::set<std::string> s;
    for (std::size_t i : p.members) s.insert(ctx.name(c.elements[i]));
    out.insert(s);
  }
  return out;
}

Candidate cand(Context& ctx, std::initializer_list<const char*> names) {
  Candidate c;
  for (const char* n : names) c.elements.push_back(ctx.member(n));
  return c;
}

// Germs of g and h at w coincide when some prefix is moved the same way by
// both with equal sections.
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

// Every R_t-combination of the family, enumerated.
bool brute_full(const Family& fam, std::size_t n, std::int64_t t) {
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

bool kernel_ok(const Family& fam, const std::vector<std::int64_t>& a, std::int64_t t) {
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

}  // namespace

TEST_CASE("realizable patterns") {
  auto g = test::load("grigorchuk.ssg");
  const Candidate gc = cand(*g, {"e", "b", "c", "d"});
  const PatternFamily fam = realizable_patterns(*g, gc);
  CHECK(named(*g, gc, fam) == std::set<std::set<std::string>>{{"e", "d"}, {"b", "c"}, {"e", "c"}, {"b", "d"}, {"e", "b"}, {"c", "d"}});

  // Cross-check against coincidences at the points 1^k 0 (0).
  std::set<std::set<std::string>> seen;
  for (std::size_t k = 0; k <= 9; ++k) {
    const EvPeriodicWord w(Word(k, 1), Word{0});
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j)
        if (coincide_at(*g, gc.elements[i], gc.elements[j], w))
          seen.insert({g->name(gc.elements[i]), g->name(gc.elements[j])});
  }
  CHECK(seen == named(*g, gc, fam));
  for (const auto& p : fam.patterns)
    CHECK(coincide_at(*g, gc.elements[p.members[0]], gc.elements[p.members[1]], p.sample));

  auto ge = test::load("grigorchuk_erschler.ssg");
  const Candidate gec = cand(*ge, {"e", "alpha", "beta", "gamma"});
  CHECK(named(*ge, gec, realizable_patterns(*ge, gec)) ==
        std::set<std::set<std::string>>{{"e", "alpha"}, {"beta", "gamma"}, {"e", "beta"}, {"alpha", "gamma"}});

  const Candidate twice = cand(*g, {"e", "e"});
  auto tw = realizable_patterns(*g, twice);
  REQUIRE(tw.patterns.size() == 1);
  CHECK(tw.patterns[0].members == std::vector<std::size_t>{0, 1});
}

TEST_CASE("exclusive parts") {
  auto g = test::load("grigorchuk.ssg");
  for (const auto& e : exclusive_parts(*g, cand(*g, {"e", "b", "c", "d"}))) {
    CHECK(e.ok());
    REQUIRE(e.sample);
    CHECK(e.sample->period() == Word{1});
  }
  auto ge = test::load("grigorchuk_erschler.ssg");
  auto parts = exclusive_parts(*ge, cand(*ge, {"e", "alpha", "beta"}));
  CHECK(parts[1].nonempty);
  CHECK_FALSE(parts[1].empty_interior);
  auto lone = exclusive_parts(*g, cand(*g, {"e"}));
  CHECK(lone[0].nonempty);
  CHECK_FALSE(lone[0].empty_interior);
}

TEST_CASE("span_full examples") {
  const Family tri{{0, 1}, {1, 2}, {0, 2}};
  CHECK(span_full(tri, 3, 0).full);
  auto mod2 = span_full(tri, 3, 2);
  CHECK_FALSE(mod2.full);
  CHECK(*mod2.kernel == std::vector<std::int64_t>{1, 1, 1});

  const Family six{{0, 3}, {1, 2}, {0, 2}, {1, 3}, {0, 1}, {2, 3}};
  CHECK(span_full(six, 4, 0).full);
  CHECK(*span_full(six, 4, 2).kernel == std::vector<std::int64_t>{1, 1, 1, 1});

  const Family four{{0, 1}, {2, 3}, {0, 2}, {1, 3}};
  CHECK(*span_full(four, 4, 0).kernel == std::vector<std::int64_t>{1, -1, -1, 1});
  CHECK(*span_full(four, 4, 3).kernel == std::vector<std::int64_t>{1, 2, 2, 1});
  for (std::int64_t t : {0, 2, 3, 6}) {
    auto r = span_full(four, 4, t);
    CHECK_FALSE(r.full);
    CHECK(kernel_ok(four, *r.kernel, t));
  }
  CHECK_THROWS_AS(span_full(four, 4, 1), Error);
}

TEST_CASE("span_full agrees with exhaustive enumeration") {
  for (std::size_t n = 2; n <= 4; ++n) {
    std::vector<std::vector<std::size_t>> subsets;
    for (unsigned m = 0; m < (1u << n); ++m) {
      if (__builtin_popcount(m) < 2) continue;
      std::vector<std::size_t> s;
      for (std::size_t i = 0; i < n; ++i)
        if (m >> i & 1u) s.push_back(i);
      subsets.push_back(s);
    }
    const std::size_t r = subsets.size();
    for (unsigned pick = 0; pick < (1u << r); ++pick) {
      if (__builtin_popcount(pick) > 6) continue;
      Family fam;
      for (std::size_t i = 0; i < r; ++i)
        if (pick >> i & 1u) fam.push_back(subsets[i]);
      for (std::int64_t t : {2, 3}) {
        auto res = span_full(fam, n, t);
        CHECK(res.full == brute_full(fam, n, t));
        if (!res.full) CHECK(kernel_ok(fam, *res.kernel, t));
      }
      auto q = span_full(fam, n, 0);
      if (!q.full) CHECK(kernel_ok(fam, *q.kernel, 0));
    }
  }
}

TEST_CASE("condition S_t on candidates") {
  auto g = test::load("grigorchuk.ssg");
  const Candidate gc = cand(*g, {"e", "b", "c", "d"});
  CHECK(check_St(*g, gc, 2).holds);
  auto q = check_St(*g, gc, 0);
  CHECK_FALSE(q.holds);
  CHECK(q.failed_bullet == 3);

  auto ge = test::load("grigorchuk_erschler.ssg");
  const Candidate gec = cand(*ge, {"e", "alpha", "beta", "gamma"});
  auto v = check_St(*ge, gec, 0);
  REQUIRE(v.holds);
  // A rational witness gives one in every prime characteristic.
  for (std::int64_t p : {2, 3, 5}) CHECK(check_St(*ge, gec, p).holds);
  CHECK(check_St(*ge, cand(*ge, {"e", "alpha", "beta"}), 0).failed_bullet == 2);
}

TEST_CASE("witness search") {
  auto g = test::load("grigorchuk.ssg");
  auto r2 = search_witness(*g, 2, {4, 1, 0});
  REQUIRE(r2.witness);
  std::set<std::string> names;
  for (ElemId e : r2.witness->candidate.elements) names.insert(g->name(e));
  CHECK(names == std::set<std::string>{"e", "b", "c", "d"});
  CHECK(r2.witness->kernel == std::vector<std::int64_t>{1, 1, 1, 1});
  CHECK(r2.witness->patterns.patterns.size() == 6);
  CHECK(check_St(*g, r2.witness->candidate, 2).holds);
  auto f = build_singular(*g, *r2.witness);
  CHECK(format_algebra_element(*g, f) == "[|e|] + [|b|] + [|c|] + [|d|]");

  CHECK_FALSE(search_witness(*g, 0, {4, 2, 2}).witness);

  auto ge = test::load("grigorchuk_erschler.ssg");
  for (std::int64_t t : {0, 2, 3, 6}) {
    auto r = search_witness(*ge, t, {4, 2, 2});
    REQUIRE(r.witness);
    CHECK(r.witness->candidate.elements.size() == 4);
    CHECK(check_St(*ge, r.witness->candidate, t).holds);
    auto h = build_singular(*ge, *r.witness);
    CHECK(nonzero(*ge, h));
    CHECK(is_singular(*ge, h));
  }
  auto r0 = search_witness(*ge, 0, {4, 2, 2});
  names.clear();
  for (ElemId e : r0.witness->candidate.elements) names.insert(ge->name(e));
  CHECK(names == std::set<std::string>{"e", "alpha", "beta", "gamma"});
  CHECK(r0.witness->kernel == std::vector<std::int64_t>{1, -1, -1, 1});
  CHECK(search_witness(*ge, 3, {4, 2, 2}).witness->kernel == std::vector<std::int64_t>{1, 2, 2, 1});
}

TEST_CASE("element balls") {
  auto g = test::load("grigorchuk.ssg");
  auto b1 = element_ball(*g, 1);
  CHECK(b1.size() == 5);
  CHECK(b1.front() == g->identity());
  auto b2 = element_ball(*g, 2);
  CHECK(b2.size() == 11);
  CHECK(std::set<ElemId>(b2.begin(), b2.end()).size() == b2.size());
}

TEST_CASE("simplicity reports") {
  auto g = test::load("grigorchuk.ssg");
  auto r0 = simplicity_report(*g, 0);
  CHECK_FALSE(r0.intransitive_level);
  CHECK_FALSE(r0.effectiveness_violation);
  CHECK_FALSE(r0.search.witness);
  CHECK(r0.verdict == SimplicityVerdict::ConsistentWithSimple);
  auto r2 = simplicity_report(*g, 2);
  CHECK(r2.verdict == SimplicityVerdict::NotSimple);
  CHECK(r2.search.witness);

  auto ge = test::load("grigorchuk_erschler.ssg");
  for (std::int64_t p : {0, 2, 3}) CHECK(simplicity_report(*ge, p).verdict == SimplicityVerdict::NotSimple);

  auto two = Context(parse_automaton("alphabet: 2\nidentity: e\nstate a: 0 -> 0 / a, 1 -> 1 / e\n"));
  auto rt = simplicity_report(two, 0);
  REQUIRE(rt.intransitive_level);
  CHECK(*rt.intransitive_level == 1);
  CHECK(rt.verdict == SimplicityVerdict::NotSimple);
}
