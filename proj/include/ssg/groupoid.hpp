#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ssg/regsets.hpp"

namespace ssg {

class IncompatibleBase : public Error {
 public:
  using Error::Error;
};

/// The partial map v w -> u g(w), written u g v*.
struct Arrow {
  Word u;
  ElemId g = 0;
  Word v;

  friend auto operator<=>(const Arrow&, const Arrow&) = default;
  friend bool operator==(const Arrow&, const Arrow&) = default;
};

struct Germ {
  Arrow arrow;
  EvPeriodicWord base;
};

/// Compact open bisection (u, g, v; W): the union over tails w in W of
/// u g(w) (g|_w) (v w)*. W is prefix-free; {""} is the full tail set.
struct Cell {
  Word u;
  ElemId g = 0;
  Word v;
  std::vector<Word> tails{Word{}};

  std::vector<Arrow> pieces(Context& ctx) const;

  friend bool operator==(const Cell&, const Cell&) = default;
};

struct CompactOpenSet {
  std::vector<Cell> cells;

  std::vector<Arrow> pieces(Context& ctx) const;
};

Cell cell_of(const Arrow& a);
Cell unit_cell(Word v = {});

/// Prefix-free, sorted, with complete sibling families merged into their parent.
std::vector<Word> normalize_tails(std::vector<Word> tails, int alphabet_size);

Arrow restrict_arrow(Context& ctx, const Arrow& a, const Word& z);
std::optional<Arrow> compose_arrows(Context& ctx, const Arrow& a, const Arrow& b);
Arrow invert_arrow(Context& ctx, const Arrow& a);
CompactOpenSet compose_cells(Context& ctx, const Cell& a, const Cell& b);
Cell invert_cell(Context& ctx, const Cell& c);

/// Germs at a common base. Throws IncompatibleBase when the bases differ or
/// the base is outside a source.
bool germ_equal(Context& ctx, const Germ& a, const Germ& b);
bool contains(Context& ctx, const Cell& c, const Germ& g);

struct DangerWitness {
  std::size_t depth;
  ElemId element;
};

struct DangerReport {
  bool dangerous = false;
  std::vector<DangerWitness> witnesses;
};

DangerReport is_dangerous(Context& ctx, const EvPeriodicWord& w);

struct Stabilized {
  std::size_t depth = 0;
  std::vector<ElemId> members;  // identity first, then germ-distinct boundary elements
};

Stabilized stabilized_depth(Context& ctx, const EvPeriodicWord& w);

struct PhasePattern {
  std::size_t level;     // absolute depth l along the base
  Word sample;           // shortest tail after the base prefix of length l
  EvPeriodicWord point;  // a full approximating point, base prefix included
};

/// A point of the Hausdorff cover over `base`: the germs of
/// base_L m base_L* for m in `members`.
struct CoverPoint {
  EvPeriodicWord base;
  std::size_t depth = 0;
  std::vector<ElemId> members;
  std::vector<PhasePattern> patterns;
};

std::vector<CoverPoint> fiber(Context& ctx, const EvPeriodicWord& w);
const std::vector<PhasePattern>& realizing_pattern(const CoverPoint& p);

/// Bounded decision: looks for a bisection B = A (w n w*) built from a piece A
/// of U, |w| <= depth, n in the nucleus, inside which int(closure U) exceeds U.
struct RegularOpenResult {
  bool regular = true;
  std::optional<Arrow> bisection;
  std::optional<EvPeriodicWord> point;  // source of a germ in int(cl U) \ U
};

RegularOpenResult regular_open(Context& ctx, const CompactOpenSet& u, int depth);
bool is_regular_open(Context& ctx, const CompactOpenSet& u, int depth);
std::optional<CompactOpenSet> find_nonregular_witness(Context& ctx, int depth);

enum class D0Verdict { Empty, Nonempty, Inconclusive };
const char* to_string(D0Verdict v);

struct D0Status {
  D0Verdict verdict = D0Verdict::Inconclusive;
  Word cylinder;
  std::vector<ElemId> elements;
  std::optional<EvPeriodicWord> point;  // lies in the cylinder but in none of the TF sets
};

D0Status d0_status(Context& ctx, int depth);

}  // namespace ssg
