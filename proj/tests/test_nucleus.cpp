#include <set>

#include "doctest.h"
#include "support.hpp"

using namespace ssg;

namespace {

std::set<std::string> names_of(const Nucleus& n) { return {n.names.begin(), n.names.end()}; }

}  // namespace

TEST_CASE("nuclei of the bundled examples") {
  auto g = test::load("grigorchuk.ssg");
  CHECK(names_of(g->nucleus()) == std::set<std::string>{"e", "a", "b", "c", "d"});
  CHECK(g->nucleus().names.front() == "e");

  auto ge = test::load("grigorchuk_erschler.ssg");
  CHECK(names_of(ge->nucleus()) == std::set<std::string>{"e", "h", "alpha", "beta", "gamma"});

  auto odo = test::load("odometer.ssg");
  CHECK(names_of(odo->nucleus()) == std::set<std::string>{"e", "a", "a'"});

  auto triv = Context(parse_automaton("alphabet: 2\nidentity: e\n"));
  CHECK(triv.nucleus().size() == 1);
  CHECK(triv.certificate().contraction_depth == 0);
}

TEST_CASE("nucleus_step follows the diagram") {
  auto g = test::load("grigorchuk.ssg");
  const Nucleus& n = g->nucleus();
  CHECK(n.names[static_cast<std::size_t>(nucleus_step(n, *n.find("b"), 1))] == "c");
  CHECK(nucleus_step(n, 0, 0) == 0);
  CHECK(nucleus_step(n, 0, 1) == 0);
  CHECK(nucleus_step(n, *n.find("d"), 0) == 0);
}

TEST_CASE("nucleus closure properties") {
  for (const char* f : {"grigorchuk.ssg", "grigorchuk_erschler.ssg", "gupta_sidki3.ssg", "odometer.ssg"}) {
    CAPTURE(f);
    auto ctx = test::load(f);
    const auto& cert = ctx->certificate();
    const Nucleus& n = cert.nucleus;
    const Automaton& aut = ctx->automaton();
    // Members are pairwise distinct in the group.
    for (std::size_t i = 0; i < n.size(); ++i)
      for (std::size_t j = i + 1; j < n.size(); ++j)
        CHECK_FALSE(elements_equal(aut, ctx->index().element(n.ids[i]), ctx->index().element(n.ids[j])));
    // Sections along all words up to depth + 2 stay in the set, checked on words.
    const auto depth = static_cast<std::size_t>(cert.contraction_depth + 2);
    for (std::size_t i = 0; i < n.size(); ++i) {
      for (std::size_t len = 0; len <= depth; ++len)
        for (const auto& w : test::all_words(aut.alphabet_size(), len)) {
          GroupElement s = section(aut, ctx->index().element(n.ids[i]), w);
          bool found = false;
          for (ElemId m : n.ids) found = found || elements_equal(aut, s, ctx->index().element(m));
          CHECK(found);
        }
      CHECK(n.inverse[i] >= 0);
    }
    // Pair products: sections at depth >= contraction_depth land in the set.
    for (ElemId x : n.ids)
      for (ElemId y : n.ids) {
        GroupElement xy = multiply(ctx->index().element(x), ctx->index().element(y), aut.identity());
        for (const auto& w : test::all_words(aut.alphabet_size(), static_cast<std::size_t>(cert.contraction_depth))) {
          ElemId s = ctx->index().intern(section(aut, xy, w));
          CHECK(n.position(s).has_value());
        }
      }
  }
}

TEST_CASE("removing a Grigorchuk member breaks closure of some pair product") {
  auto ctx = test::load("grigorchuk.ssg");
  const Nucleus& n = ctx->nucleus();
  const Automaton& aut = ctx->automaton();
  for (std::size_t drop = 1; drop < n.size(); ++drop) {
    std::set<ElemId> rest;
    for (std::size_t i = 0; i < n.size(); ++i)
      if (i != drop) rest.insert(n.ids[i]);
    bool broken = false;
    for (ElemId x : rest)
      for (ElemId y : rest) {
        GroupElement xy = multiply(ctx->index().element(x), ctx->index().element(y), aut.identity());
        for (const auto& w : test::all_words(2, 6))
          broken = broken || !rest.count(ctx->index().intern(section(aut, xy, w)));
      }
    CHECK(broken);
  }
}
