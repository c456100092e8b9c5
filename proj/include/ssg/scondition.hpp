#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ssg/steinberg.hpp"

namespace ssg {

class VerificationFailed : public Error {
 public:
  using Error::Error;
};

/// Bisections (eps, g_i, eps; V) sharing the source V.
struct Candidate {
  std::vector<ElemId> elements;
  std::vector<Word> V{Word{}};
};

struct Pattern {
  std::vector<std::size_t> members;  // 0-based, at least two
  EvPeriodicWord sample;             // a point of V where exactly these germs coincide
};

struct PatternFamily {
  std::size_t n = 0;
  std::vector<Pattern> patterns;

  std::vector<std::vector<std::size_t>> sets() const;
};

PatternFamily realizable_patterns(Context& ctx, const Candidate& cand);

struct ExclusivePart {
  bool nonempty = false;
  bool empty_interior = false;
  std::optional<EvPeriodicWord> sample;

  bool ok() const { return nonempty && empty_interior; }
};

std::vector<ExclusivePart> exclusive_parts(Context& ctx, const Candidate& cand);

/// Whether the vectors b_I span R_t^n. Otherwise `kernel` is a nonzero
/// functional vanishing on every b_I: integral for t = 0, residues mod t else.
struct SpanResult {
  bool full = true;
  std::optional<std::vector<std::int64_t>> kernel;
};

SpanResult span_full(const std::vector<std::vector<std::size_t>>& family, std::size_t n, std::int64_t t);

struct SWitness {
  Candidate candidate;
  PatternFamily patterns;
  std::vector<ExclusivePart> exclusive;
  std::int64_t t = 0;
  std::vector<std::int64_t> kernel;
};

struct StVerdict {
  bool holds = false;
  int failed_bullet = 0;  // 1, 2 or 3 when !holds
  std::optional<SWitness> witness;
};

StVerdict check_St(Context& ctx, const Candidate& cand, std::int64_t t);

struct SearchBudget {
  std::size_t max_n = 4;
  int elem_ball = 2;
  int cyl_depth = 2;
};

struct SearchResult {
  std::optional<SWitness> witness;  // empty means none at this budget, not absence
  std::size_t examined = 0;
};

/// Nucleus products of word length <= ball, identity first, then by length.
std::vector<ElemId> element_ball(Context& ctx, int ball);

SearchResult search_witness(Context& ctx, std::int64_t t, const SearchBudget& budget = {});

/// f = sum_i a_i 1_{U_i}; checked to be nonzero and singular.
AlgebraElement build_singular(Context& ctx, const SWitness& w);

enum class SimplicityVerdict { NotSimple, ConsistentWithSimple, Inconclusive };
const char* to_string(SimplicityVerdict v);

struct SimplicityReport {
  std::int64_t characteristic = 0;
  int transitivity_depth = 0;              // levels checked
  std::optional<int> intransitive_level;   // first level with more than one orbit
  std::optional<std::pair<ElemId, Word>> effectiveness_violation;
  SearchResult search;
  SimplicityVerdict verdict = SimplicityVerdict::Inconclusive;
  std::string summary;
};

SimplicityReport simplicity_report(Context& ctx, std::int64_t p, const SearchBudget& budget = {},
                                   int transitivity_depth = 8);

}  // namespace ssg
