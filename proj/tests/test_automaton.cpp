#include <fstream>
#include <sstream>

#include "doctest.h"
#include "support.hpp"

using namespace ssg;
using ssg::test::all_words;
using ssg::test::corpus;

namespace {

Automaton grig() { return load_automaton(corpus("grigorchuk.ssg")); }

GroupElement el(const Automaton& aut, const char* s) { return parse_element(aut, s); }

// Exhaustive oracle: g acts trivially on every word of the given length.
bool acts_trivially_to(const Automaton& aut, const GroupElement& g, std::size_t depth) {
  for (const auto& w : all_words(aut.alphabet_size(), depth))
    if (act_word(aut, g, w) != w) return false;
  return true;
}

}  // namespace

TEST_CASE("parsing the Grigorchuk diagram") {
  Automaton aut = grig();
  CHECK(aut.state_count() == 5);
  CHECK(aut.alphabet_size() == 2);
  StateId b = *aut.find("b");
  CHECK(aut.image(b, 0) == 0);
  CHECK(aut.name(aut.section(b, 0)) == "a");
  CHECK(aut.image(b, 1) == 1);
  CHECK(aut.name(aut.section(b, 1)) == "c");
}

TEST_CASE("identity-only automaton") {
  Automaton aut = parse_automaton("alphabet: 2\nidentity: e\nstate e: 0 -> 0 / e, 1 -> 1 / e\n");
  CHECK(aut.state_count() == 1);
  Automaton implicit = parse_automaton("alphabet: 3\nidentity: one\n");
  CHECK(implicit.state_count() == 1);
}

TEST_CASE("parse errors carry their kind") {
  auto kind_of = [](const char* text) {
    try {
      parse_automaton(text);
    } catch (const ParseError& e) {
      return e.kind();
    }
    FAIL("no error");
    return ParseError::Kind::Syntax;
  };
  CHECK(kind_of("alphabet: 2\nidentity: e\nstate a: 0 -> 1 / e, 1 -> 1 / e\n") ==
        ParseError::Kind::NonBijectiveOutput);
  CHECK(kind_of("alphabet: 2\nidentity: e\nstate a: 0 -> 1 / z, 1 -> 0 / e\n") == ParseError::Kind::UnknownState);
  CHECK(kind_of("alphabet: 2\nstate a: 0 -> 1 / a, 1 -> 0 / a\n") == ParseError::Kind::MissingIdentity);
  CHECK(kind_of("alphabet: 2\nidentity: e\nstate a: 0 -> 1 / e, 1 -> 0 / e\nstate a: 0 -> 0 / e, 1 -> 1 / e\n") ==
        ParseError::Kind::DuplicateState);
  CHECK(kind_of("alphabet: 2\nidentity: e\nstate e: 0 -> 1 / e, 1 -> 0 / e\n") == ParseError::Kind::MissingIdentity);
  CHECK(kind_of("alphabet: 2\nidentity: e\nstate a: 0 -> 1 / e\n") == ParseError::Kind::Syntax);
}

TEST_CASE("every bundled automaton round-trips through its text form") {
  for (const char* f : {"grigorchuk.ssg", "grigorchuk_erschler.ssg", "gupta_sidki3.ssg", "odometer.ssg",
                        "multispinal.ssg"}) {
    Automaton aut = load_automaton(corpus(f));
    CHECK(parse_automaton(aut.to_text()) == aut);
  }
}

TEST_CASE("free reduction") {
  Automaton aut = grig();
  const StateId e = aut.identity();
  CHECK(multiply(el(aut, "a"), el(aut, "a'"), e).empty());
  CHECK(format_element(aut, invert(el(aut, "b.c"))) == "c'.b'");
  GroupElement bc = multiply(el(aut, "b"), el(aut, "c"), e);
  CHECK(bc.length() == 2);
  CHECK(format_element(aut, bc) == "b.c");
  CHECK(el(aut, "e.b.e").length() == 1);
  CHECK(invert(invert(el(aut, "a.b'.d"))) == el(aut, "a.b'.d"));
}

TEST_CASE("step, act_word and section on the diagram") {
  Automaton aut = grig();
  auto r = step(aut, el(aut, "b"), 0);
  CHECK(r.image == 0);
  CHECK(format_element(aut, r.section) == "a");
  r = step(aut, el(aut, "a"), 0);
  CHECK(r.image == 1);
  CHECK(r.section.empty());
  r = step(aut, GroupElement{}, 1);
  CHECK(r.image == 1);
  CHECK(r.section.empty());
  CHECK(act_word(aut, el(aut, "b"), Word{1, 1}) == Word{1, 1});
  CHECK(format_element(aut, section(aut, el(aut, "b"), Word{1, 1})) == "d");
  CHECK(act_word(aut, el(aut, "b"), Word{}).empty());
  CHECK(section(aut, el(aut, "d"), Word{0}).empty());
}

TEST_CASE("inverse letters follow the inverse permutation") {
  Automaton aut = load_automaton(corpus("gupta_sidki3.ssg"));
  GroupElement t_inv = el(aut, "t'");
  auto r = step(aut, t_inv, 0);
  CHECK(r.image == 0);
  CHECK(format_element(aut, r.section) == "a'");
  r = step(aut, el(aut, "a'"), 0);
  CHECK(r.image == 2);
  CHECK(elements_equal(aut, el(aut, "a'"), el(aut, "A")));
}

TEST_CASE("word problem examples") {
  Automaton aut = grig();
  CHECK(is_trivial(aut, el(aut, "a.a")));
  CHECK(is_trivial(aut, el(aut, "b.c.d'")));
  CHECK_FALSE(is_trivial(aut, el(aut, "b")));
  CHECK(elements_equal(aut, el(aut, "b.c"), el(aut, "d")));
  CHECK(elements_equal(aut, el(aut, "a.b"), el(aut, "a.b")));
  CHECK_FALSE(elements_equal(aut, el(aut, "a"), el(aut, "b")));
  CHECK_THROWS_AS(is_trivial(aut, el(aut, "a.b.a.c.a.d.a.b"), 2), BudgetExceeded);
}

TEST_CASE("word problem agrees with exhaustive depth-8 action on short words") {
  Automaton aut = grig();
  std::vector<GroupElement> words{GroupElement{}};
  std::vector<Generator> gens;
  for (StateId q = 0; q < static_cast<StateId>(aut.state_count()); ++q) {
    if (q == aut.identity()) continue;
    gens.push_back({q, false});
    gens.push_back({q, true});
  }
  std::vector<GroupElement> layer{GroupElement{}};
  for (int len = 1; len <= 3; ++len) {
    std::vector<GroupElement> next;
    for (const auto& w : layer)
      for (const auto& g : gens) {
        auto letters = w.letters();
        letters.push_back(g);
        GroupElement r = GroupElement::reduce(letters, aut.identity());
        if (r.length() == static_cast<std::size_t>(len)) next.push_back(r);
      }
    layer = next;
    words.insert(words.end(), next.begin(), next.end());
  }
  for (const auto& g : words) CHECK(is_trivial(aut, g) == acts_trivially_to(aut, g, 8));
}

TEST_CASE("recursion laws on random data") {
  std::mt19937 rng(7);
  for (const char* f : {"grigorchuk.ssg", "gupta_sidki3.ssg", "grigorchuk_erschler.ssg"}) {
    Automaton aut = load_automaton(corpus(f));
    const int k = aut.alphabet_size();
    for (int i = 0; i < 500; ++i) {
      GroupElement g = test::random_element(rng, aut, 4);
      Word u = test::random_word(rng, k, 6), v = test::random_word(rng, k, 6);
      Word uv = u;
      uv.insert(uv.end(), v.begin(), v.end());
      Word expect = act_word(aut, g, u);
      Word tail = act_word(aut, section(aut, g, u), v);
      expect.insert(expect.end(), tail.begin(), tail.end());
      CHECK(act_word(aut, g, uv) == expect);
      CHECK(section(aut, g, uv) == section(aut, section(aut, g, u), v));

      GroupElement h = test::random_element(rng, aut, 4);
      Letter x = std::uniform_int_distribution<int>(0, k - 1)(rng);
      auto hx = step(aut, h, x);
      auto ghx = step(aut, g, hx.image);
      auto prod = step(aut, multiply(g, h, aut.identity()), x);
      CHECK(prod.image == ghx.image);
      CHECK(elements_equal(aut, prod.section, multiply(ghx.section, hx.section, aut.identity())));
    }
    for (int i = 0; i < 200; ++i) {
      GroupElement w = test::random_element(rng, aut, 6);
      CHECK(is_trivial(aut, multiply(w, invert(w), aut.identity())));
      EvPeriodicWord p = test::random_point(rng, k);
      CHECK(act_point(aut, w, act_point(aut, invert(w), p)) == p);
    }
  }
}

TEST_CASE("eventually periodic words are canonical") {
  CHECK(EvPeriodicWord::parse("(11)", 2) == EvPeriodicWord::parse("1(1)", 2));
  CHECK(EvPeriodicWord::parse("0(0101)", 2).to_string() == "0(01)");
  CHECK(EvPeriodicWord::parse("0(10)", 2).to_string() == "(01)");
  CHECK(EvPeriodicWord::parse("011(01)", 2).to_string() == "01(10)");
  EvPeriodicWord w = EvPeriodicWord::parse("0(110)", 2);
  CHECK(w.prefix(7) == Word{0, 1, 1, 0, 1, 1, 0});
  CHECK(w.drop(3).to_string() == "(011)");
  CHECK_THROWS_AS(EvPeriodicWord::parse("01", 2), ParseError);
}

TEST_CASE("act_point") {
  Automaton aut = grig();
  auto one = EvPeriodicWord::parse("(1)", 2);
  CHECK(act_point(aut, el(aut, "b"), one) == one);
  CHECK(act_point(aut, GroupElement{}, one) == one);
  Automaton odo = load_automaton(corpus("odometer.ssg"));
  CHECK(act_point(odo, parse_element(odo, "a"), one) == EvPeriodicWord::parse("(0)", 2));
  // Adding one to 1011000... gives 0111000... (least significant letter first).
  CHECK(act_point(odo, parse_element(odo, "a"), EvPeriodicWord::parse("1011(0)", 2)) ==
        EvPeriodicWord::parse("0111(0)", 2));
}

TEST_CASE("conjugated relators are trivial") {
  Automaton aut = grig();
  std::mt19937 rng(11);
  const StateId e = aut.identity();
  for (int i = 0; i < 200; ++i) {
    GroupElement w = test::random_element(rng, aut, 5);
    for (const char* rel : {"a.a", "b.b", "b.c.d", "c.d.b"}) {
      GroupElement conj = multiply(multiply(w, el(aut, rel), e), invert(w), e);
      CHECK(is_trivial(aut, conj));
    }
  }
}
