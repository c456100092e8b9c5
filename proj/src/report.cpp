#include "ssg/report.hpp"

namespace ssg::report {

Json make(const std::string& command, Json inputs) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["inputs"] = std::move(inputs);
  j["verdicts"] = Json::object();
  j["certificates"] = Json::object();
  j["timings"] = Json::object();
  return j;
}

Json word(const Word& w) { return format_word(w); }

Json elements(Context& ctx, const std::vector<ElemId>& ids) {
  Json a = Json::array();
  for (ElemId id : ids) a.push_back(ctx.name(id));
  return a;
}

Json coeff(const Ring& r, Coeff c) { return r.format(c); }

Json nucleus(Context& ctx) {
  const Nucleus& n = ctx.nucleus();
  Json members = Json::array();
  for (std::size_t i = 0; i < n.size(); ++i) {
    Json m;
    m["name"] = n.names[i];
    m["word"] = format_element(ctx.automaton(), ctx.index().element(n.ids[i]));
    m["inverse"] = n.names[static_cast<std::size_t>(n.inverse[i])];
    Json edges = Json::array();
    for (Letter x = 0; x < ctx.alphabet_size(); ++x)
      edges.push_back({{"letter", x},
                       {"image", n.perm[i][static_cast<std::size_t>(x)]},
                       {"section", n.names[static_cast<std::size_t>(n.next[i][static_cast<std::size_t>(x)])]}});
    m["transitions"] = std::move(edges);
    members.push_back(std::move(m));
  }
  return members;
}

Json danger(Context& ctx, const DangerReport& r) {
  Json w = Json::array();
  for (const auto& x : r.witnesses) w.push_back({{"depth", x.depth}, {"element", ctx.name(x.element)}});
  return w;
}

Json cover_point(Context& ctx, const CoverPoint& p) {
  Json pats = Json::array();
  for (const auto& ph : p.patterns)
    pats.push_back({{"level", ph.level}, {"sample", word(ph.sample)}, {"point", ph.point.to_string()}});
  return {{"base", p.base.to_string()}, {"depth", p.depth}, {"members", elements(ctx, p.members)}, {"patterns", pats}};
}

Json d0(Context& ctx, const D0Status& s) {
  Json j{{"verdict", to_string(s.verdict)}};
  if (s.verdict == D0Verdict::Nonempty) {
    j["cylinder"] = word(s.cylinder);
    j["elements"] = elements(ctx, s.elements);
    j["point"] = s.point->to_string();
  }
  return j;
}

Json cells(Context& ctx, const CompactOpenSet& u) {
  Json a = Json::array();
  for (const auto& c : u.cells) {
    Json tails = Json::array();
    for (const auto& t : c.tails) tails.push_back(word(t));
    a.push_back({{"u", word(c.u)}, {"g", ctx.name(c.g)}, {"v", word(c.v)}, {"tails", tails}});
  }
  return a;
}

Json witness(Context& ctx, const SWitness& w) {
  Json pats = Json::array();
  for (const auto& p : w.patterns.patterns) {
    std::vector<ElemId> ids;
    for (std::size_t i : p.members) ids.push_back(w.candidate.elements[i]);
    pats.push_back({{"members", elements(ctx, ids)}, {"sample", p.sample.to_string()}});
  }
  Json excl = Json::array();
  for (std::size_t i = 0; i < w.exclusive.size(); ++i)
    excl.push_back({{"element", ctx.name(w.candidate.elements[i])},
                    {"sample", w.exclusive[i].sample ? w.exclusive[i].sample->to_string() : ""}});
  Json v = Json::array();
  for (const auto& c : w.candidate.V) v.push_back(word(c));
  return {{"elements", elements(ctx, w.candidate.elements)},
          {"V", v},
          {"t", w.t},
          {"patterns", pats},
          {"exclusive", excl},
          {"kernel", w.kernel}};
}

Json simplicity(Context& ctx, const SimplicityReport& r) {
  Json j{{"characteristic", r.characteristic},
         {"verdict", to_string(r.verdict)},
         {"summary", r.summary},
         {"transitivity_depth", r.transitivity_depth},
         {"level_transitive", !r.intransitive_level.has_value()},
         {"effectiveness_violation", nullptr},
         {"witness", nullptr},
         {"candidates_examined", r.search.examined}};
  if (r.intransitive_level) j["intransitive_level"] = *r.intransitive_level;
  if (r.effectiveness_violation)
    j["effectiveness_violation"] = {{"element", ctx.name(r.effectiveness_violation->first)},
                                    {"cylinder", word(r.effectiveness_violation->second)}};
  if (r.search.witness) j["witness"] = witness(ctx, *r.search.witness);
  return j;
}

}  // namespace ssg::report
