// ssg: command-line front end.
//
// Exit codes: 0 / 1 answer the subcommand's question (see README), 2 means the
// input could not be parsed or is invalid, 3 means a budget ran out.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ssg/acceptance.hpp"
#include "ssg/report.hpp"

using namespace ssg;
using report::Json;

namespace {

struct Outcome {
  explicit Outcome(Json r) : report(std::move(r)) {}

  Json report;
  std::string text;
  int code = 0;
};

std::string join(const std::vector<std::string>& xs, const char* sep = ", ") {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : sep) + x;
  return out;
}

std::vector<std::string> names(Context& ctx, const std::vector<ElemId>& ids) {
  std::vector<std::string> out;
  for (ElemId id : ids) out.push_back(ctx.name(id));
  return out;
}

Outcome cmd_nucleus(const std::string& file) {
  auto ctx = Context::from_file(file);
  const auto& cert = ctx->certificate();
  Outcome o{report::make("nucleus", {{"file", file}})};
  o.report["verdicts"] = {{"size", cert.nucleus.size()}, {"contraction_depth", cert.contraction_depth}};
  o.report["certificates"]["members"] = report::nucleus(*ctx);

  std::ostringstream os;
  os << "nucleus: {" << join(cert.nucleus.names) << "}\n";
  os << "contraction depth: " << cert.contraction_depth << "\n";
  for (const auto& m : o.report["certificates"]["members"]) {
    os << "  " << m["name"].get<std::string>() << " =";
    for (const auto& e : m["transitions"])
      os << "  " << e["letter"].get<int>() << " -> " << e["image"].get<int>() << " / " << e["section"].get<std::string>();
    os << '\n';
  }
  o.text = os.str();
  return o;
}

Outcome cmd_dangerous(const std::string& file, const std::string& point) {
  auto ctx = Context::from_file(file);
  const auto w = EvPeriodicWord::parse(point, ctx->alphabet_size());
  const auto r = is_dangerous(*ctx, w);
  Outcome o{report::make("dangerous", {{"file", file}, {"point", w.to_string()}})};
  o.report["verdicts"]["dangerous"] = r.dangerous;
  o.report["certificates"]["witnesses"] = report::danger(*ctx, r);
  std::ostringstream os;
  os << w.to_string() << (r.dangerous ? " is dangerous" : " is not dangerous") << '\n';
  for (const auto& x : r.witnesses) os << "  " << ctx->name(x.element) << " at depth " << x.depth << '\n';
  o.text = os.str();
  o.code = r.dangerous ? 0 : 1;
  return o;
}

Outcome cmd_fiber(const std::string& file, const std::string& point) {
  auto ctx = Context::from_file(file);
  const auto w = EvPeriodicWord::parse(point, ctx->alphabet_size());
  const auto f = fiber(*ctx, w);
  Outcome o{report::make("fiber", {{"file", file}, {"point", w.to_string()}})};
  o.report["verdicts"]["cover_points"] = f.size();
  Json pts = Json::array();
  std::ostringstream os;
  os << f.size() << " cover point" << (f.size() == 1 ? "" : "s") << " over " << w.to_string() << '\n';
  for (const auto& p : f) {
    pts.push_back(report::cover_point(*ctx, p));
    os << "  {" << join(names(*ctx, p.members)) << "} depth " << p.depth << '\n';
    for (const auto& ph : p.patterns)
      os << "    level " << ph.level << ": tail " << format_word(ph.sample) << "  e.g. " << ph.point.to_string() << '\n';
  }
  o.report["certificates"]["cover_points"] = std::move(pts);
  o.text = os.str();
  return o;
}

Outcome cmd_tf(const std::string& file, const std::string& elem, const std::string& point, std::size_t max_len) {
  auto ctx = Context::from_file(file);
  const ElemId g = ctx->elem(elem);
  const auto w = EvPeriodicWord::parse(point, ctx->alphabet_size());
  const TFClass c = tf_classify(*ctx, g, w);
  std::vector<std::string> words;
  for (const auto& x : sf_automaton(*ctx, g).minimal_words(max_len, ctx->alphabet_size())) words.push_back(format_word(x));
  Outcome o{report::make("tf", {{"file", file}, {"element", ctx->name(g)}, {"point", w.to_string()}})};
  o.report["verdicts"]["class"] = to_string(c);
  o.report["certificates"]["minimal_words"] = words;
  o.text = ctx->name(g) + " at " + w.to_string() + ": " + to_string(c) + "\nminimal fixed words (length <= " +
           std::to_string(max_len) + "): " + (words.empty() ? "none" : join(words, " ")) + '\n';
  return o;
}

Outcome cmd_eval(const std::string& file, const std::string& expr, const std::string& germ, std::int64_t t,
                 const std::string& cover) {
  auto ctx = Context::from_file(file);
  const Ring ring = t == 0 ? Ring::rationals() : Ring::zmod(t);
  const auto f = parse_algebra_element(*ctx, ring, expr);
  Outcome o{report::make("eval", {{"file", file}, {"elem", expr}, {"ring", ring.name()}})};
  const bool nz = nonzero(*ctx, f), sing = is_singular(*ctx, f);
  o.report["verdicts"] = {{"nonzero", nz}, {"singular", sing}};
  o.report["certificates"]["normal_form"] = format_algebra_element(*ctx, f);
  std::ostringstream os;
  os << "f = " << format_algebra_element(*ctx, f) << " over " << ring.name() << '\n';
  os << "nonzero: " << (nz ? "yes" : "no") << ", singular: " << (sing ? "yes" : "no") << '\n';
  if (!germ.empty()) {
    const Coeff v = evaluate(*ctx, f, parse_germ(*ctx, germ));
    o.report["inputs"]["germ"] = germ;
    o.report["verdicts"]["value"] = ring.format(v);
    os << "f(" << germ << ") = " << ring.format(v) << '\n';
  }
  if (!cover.empty()) {
    const auto w = EvPeriodicWord::parse(cover, ctx->alphabet_size());
    o.report["inputs"]["cover"] = w.to_string();
    Json vals = Json::array();
    for (const auto& p : fiber(*ctx, w)) {
      const Coeff v = evaluate_cover(*ctx, f, p);
      vals.push_back({{"members", report::elements(*ctx, p.members)}, {"value", ring.format(v)}});
      os << "  {" << join(names(*ctx, p.members)) << "} -> " << ring.format(v) << '\n';
    }
    o.report["verdicts"]["cover_values"] = std::move(vals);
  }
  o.text = os.str();
  return o;
}

Outcome cmd_search(const std::string& file, std::int64_t t, const SearchBudget& b) {
  auto ctx = Context::from_file(file);
  const auto r = search_witness(*ctx, t, b);
  Outcome o{report::make("singular-search", {{"file", file},
                                             {"t", t},
                                             {"max_n", b.max_n},
                                             {"ball", b.elem_ball},
                                             {"depth", b.cyl_depth}})};
  o.report["verdicts"] = {{"found", r.witness.has_value()}, {"candidates_examined", r.examined}};
  std::ostringstream os;
  if (r.witness) {
    const auto f = build_singular(*ctx, *r.witness);
    o.report["certificates"]["witness"] = report::witness(*ctx, *r.witness);
    o.report["certificates"]["element"] = format_algebra_element(*ctx, f);
    const auto& w = o.report["certificates"]["witness"];
    os << "witness over t = " << t << " after " << r.examined << " candidates\n";
    os << "  elements: " << join(names(*ctx, r.witness->candidate.elements)) << '\n';
    os << "  source: " << w["V"].dump() << '\n';
    os << "  patterns:";
    for (const auto& p : w["patterns"]) os << ' ' << p["members"].dump();
    os << "\n  kernel: " << w["kernel"].dump() << '\n';
    os << "  f = " << format_algebra_element(*ctx, f) << '\n';
  } else {
    os << "no witness at this budget (" << r.examined << " candidates)\n";
    o.code = 1;
  }
  o.text = os.str();
  return o;
}

Outcome cmd_simplicity(const std::string& file, std::int64_t p, const SearchBudget& b) {
  auto ctx = Context::from_file(file);
  const auto r = simplicity_report(*ctx, p, b);
  Outcome o{report::make("simplicity", {{"file", file}, {"char", p}})};
  o.report["verdicts"]["simplicity"] = to_string(r.verdict);
  o.report["certificates"] = report::simplicity(*ctx, r);
  o.text = std::string(to_string(r.verdict)) + ": " + r.summary + '\n';
  o.code = r.verdict == SimplicityVerdict::ConsistentWithSimple ? 0 : 1;
  return o;
}

Outcome cmd_d0(const std::string& file, int depth) {
  auto ctx = Context::from_file(file);
  const auto s = d0_status(*ctx, depth);
  Outcome o{report::make("d0", {{"file", file}, {"depth", depth}})};
  o.report["verdicts"]["d0"] = to_string(s.verdict);
  o.report["certificates"] = report::d0(*ctx, s);
  std::ostringstream os;
  os << to_string(s.verdict) << '\n';
  if (s.verdict == D0Verdict::Nonempty)
    os << "  cylinder " << (s.cylinder.empty() ? "(root)" : format_word(s.cylinder)) << ", elements {"
       << join(names(*ctx, s.elements)) << "}, point " << s.point->to_string() << '\n';
  o.text = os.str();
  o.code = s.verdict == D0Verdict::Empty ? 0 : 1;
  return o;
}

Outcome cmd_regular_open(const std::string& file, int depth) {
  auto ctx = Context::from_file(file);
  const auto w = find_nonregular_witness(*ctx, depth);
  Outcome o{report::make("regular-open", {{"file", file}, {"depth", depth}})};
  o.report["verdicts"]["nonregular_found"] = w.has_value();
  std::ostringstream os;
  if (w) {
    const auto r = regular_open(*ctx, *w, depth);
    o.report["certificates"]["set"] = report::cells(*ctx, *w);
    if (r.bisection)
      o.report["certificates"]["bisection"] = {{"u", format_word(r.bisection->u)},
                                               {"g", ctx->name(r.bisection->g)},
                                               {"v", format_word(r.bisection->v)}};
    if (r.point) o.report["certificates"]["point"] = r.point->to_string();
    std::vector<std::string> cells;
    for (const auto& c : w->cells) cells.push_back("[" + format_word(c.u) + "|" + ctx->name(c.g) + "|" + format_word(c.v) + "]");
    os << "not regular open: " << join(cells, " u ") << '\n';
    if (r.point) os << "  interior of the closure reaches " << r.point->to_string() << '\n';
    o.code = 1;
  } else {
    os << "no non-regular-open set found at depth " << depth << '\n';
  }
  o.text = os.str();
  return o;
}

Outcome cmd_selftest(const std::string& dir, int only, bool json) {
  Outcome o{report::make("selftest", {{"corpus", dir}})};
  const auto rs = run_acceptance(dir, only, json ? nullptr : &std::cout);
  Json crit = Json::array();
  bool ok = true;
  for (const auto& r : rs) {
    ok = ok && r.pass();
    crit.push_back({{"id", r.id},
                    {"title", r.title},
                    {"pass", r.pass()},
                    {"seconds", r.seconds},
                    {"limit", r.limit},
                    {"failures", r.failures}});
    o.report["timings"]["criterion_" + std::to_string(r.id)] = r.seconds;
  }
  o.report["verdicts"]["all_pass"] = ok;
  o.report["certificates"]["criteria"] = std::move(crit);
  o.code = ok ? 0 : 1;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Germ groupoids of contracting self-similar groups"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Machine-readable report");

  std::string file, point, elem, germ, cover;
  std::int64_t t = 0;
  int depth = 2, only = 0;
  std::size_t max_len = 6;
  SearchBudget budget;
  std::string corpus = SSG_CORPUS_DIR;
  std::function<Outcome()> run;

  auto with_file = [&](CLI::App* sub) { sub->add_option("file", file, "Automaton (.ssg)")->required()->check(CLI::ExistingFile); };
  auto budget_flags = [&](CLI::App* sub) {
    sub->add_option("--max-n", budget.max_n, "Largest candidate size")->capture_default_str();
    sub->add_option("--ball", budget.elem_ball, "Element word-length ball")->capture_default_str();
    sub->add_option("--depth", budget.cyl_depth, "Cylinder depth of sources")->capture_default_str();
  };

  auto* nuc = app.add_subcommand("nucleus", "Nucleus, transitions and contraction depth");
  with_file(nuc);
  nuc->callback([&] { run = [&] { return cmd_nucleus(file); }; });

  auto* dan = app.add_subcommand("dangerous", "Whether a boundary point is dangerous");
  with_file(dan);
  dan->add_option("point", point, "Point u(w)")->required();
  dan->callback([&] { run = [&] { return cmd_dangerous(file, point); }; });

  auto* fib = app.add_subcommand("fiber", "Hausdorff cover points over a boundary point");
  with_file(fib);
  fib->add_option("point", point, "Point u(w)")->required();
  fib->callback([&] { run = [&] { return cmd_fiber(file, point); }; });

  auto* tf = app.add_subcommand("tf", "Classify a point against TF of an element");
  with_file(tf);
  tf->add_option("element", elem, "Element literal, e.g. b.c.d'")->required();
  tf->add_option("point", point, "Point u(w)")->required();
  tf->add_option("--max-len", max_len, "Length bound for listed fixed words")->capture_default_str();
  tf->callback([&] { run = [&] { return cmd_tf(file, elem, point, max_len); }; });

  auto* ev = app.add_subcommand("eval", "Evaluate a Steinberg algebra element");
  with_file(ev);
  ev->add_option("--elem", elem, "Expression c*[u|g|v|W] + ...")->required();
  ev->add_option("--germ", germ, "Germ g@point or [u|g|v]@point");
  ev->add_option("--cover", cover, "Also evaluate on the cover points over this point");
  ev->add_option("--t", t, "Coefficients in Z/t; 0 means Q")->capture_default_str();
  ev->callback([&] { run = [&] { return cmd_eval(file, elem, germ, t, cover); }; });

  auto* ss = app.add_subcommand("singular-search", "Search for a singular-ideal witness");
  with_file(ss);
  ss->add_option("--t", t, "Coefficients in Z/t; 0 means Q")->capture_default_str();
  budget_flags(ss);
  ss->callback([&] { run = [&] { return cmd_search(file, t, budget); }; });

  auto* sim = app.add_subcommand("simplicity", "Simplicity report in a characteristic");
  with_file(sim);
  sim->add_option("--char", t, "Characteristic, 0 or prime")->capture_default_str();
  budget_flags(sim);
  sim->callback([&] { run = [&] { return cmd_simplicity(file, t, budget); }; });

  auto* d0 = app.add_subcommand("d0", "Whether extremely dangerous points exist");
  with_file(d0);
  d0->add_option("--depth", depth, "Cylinder depth")->capture_default_str();
  d0->callback([&] { run = [&] { return cmd_d0(file, depth); }; });

  auto* ro = app.add_subcommand("regular-open", "Search for a compact open set that is not regular open");
  with_file(ro);
  ro->add_option("--depth", depth, "Cylinder depth")->capture_default_str();
  ro->callback([&] { run = [&] { return cmd_regular_open(file, depth); }; });

  auto* st = app.add_subcommand("selftest", "Run the acceptance suite");
  st->add_option("--corpus", corpus, "Directory of bundled automata")->capture_default_str();
  st->add_option("--only", only, "Run a single criterion");
  st->callback([&] { run = [&] { return cmd_selftest(corpus, only, json); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    Outcome o = run();
    o.report["timings"]["total_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (json) std::cout << o.report.dump(2) << '\n';
    else std::cout << o.text;
    return o.code;
  } catch (const ssg::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exhausted: " << e.what() << '\n';
    return 3;
  } catch (const NucleusUnavailable& e) {
    std::cerr << "budget exhausted: " << e.what() << '\n';
    return 3;
  } catch (const ssg::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
