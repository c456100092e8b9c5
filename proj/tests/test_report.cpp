#include <fstream>

#include "doctest.h"
#include "ssg/report.hpp"
#include "support.hpp"

using namespace ssg;
using report::Json;

namespace {

Json schema() {
  std::ifstream in(SSG_SCHEMA_FILE);
  return Json::parse(in);
}

void has_required(const Json& obj, const Json& def) {
  for (const auto& key : def["required"]) CHECK_MESSAGE(obj.contains(key.get<std::string>()), key);
}

Json fiber_report(const char* file, const char* point) {
  auto ctx = test::load(file);
  Json j = report::make("fiber", {{"point", point}});
  for (const auto& p : fiber(*ctx, EvPeriodicWord::parse(point, ctx->alphabet_size())))
    j["certificates"]["cover_points"].push_back(report::cover_point(*ctx, p));
  return j;
}

Json search_report(const char* file, std::int64_t t) {
  auto ctx = test::load(file);
  auto r = search_witness(*ctx, t, {4, 2, 2});
  REQUIRE(r.witness);
  return report::witness(*ctx, *r.witness);
}

}  // namespace

TEST_CASE("reports carry the schema fields") {
  const Json s = schema();
  has_required(report::make("fiber", Json::object()), s);
  CHECK(s["properties"]["schema_version"]["const"] == report::kSchemaVersion);

  const Json f = fiber_report("grigorchuk.ssg", "(1)");
  REQUIRE(f["certificates"]["cover_points"].size() == 4);
  for (const auto& p : f["certificates"]["cover_points"]) {
    has_required(p, s["$defs"]["cover_point"]);
    for (const auto& ph : p["patterns"]) has_required(ph, s["$defs"]["cover_point"]["properties"]["patterns"]["items"]);
  }
  has_required(search_report("grigorchuk_erschler.ssg", 0), s["$defs"]["witness"]);

  auto g = test::load("grigorchuk.ssg");
  for (const auto& m : report::nucleus(*g)) has_required(m, s["$defs"]["nucleus_member"]);
}

TEST_CASE("reports are deterministic") {
  CHECK(fiber_report("grigorchuk.ssg", "01(1)").dump() == fiber_report("grigorchuk.ssg", "01(1)").dump());
  CHECK(search_report("grigorchuk_erschler.ssg", 3).dump() == search_report("grigorchuk_erschler.ssg", 3).dump());
  auto a = test::load("gupta_sidki3.ssg"), b = test::load("gupta_sidki3.ssg");
  CHECK(report::d0(*a, d0_status(*a, 2)).dump() == report::d0(*b, d0_status(*b, 2)).dump());
}
