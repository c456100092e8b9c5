#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "ssg/groupoid.hpp"

namespace ssg {

class RingMismatch : public Error {
 public:
  using Error::Error;
};

class CoverInsufficient : public Error {
 public:
  using Error::Error;
};

using Coeff = boost::rational<std::int64_t>;

/// The rationals (t = 0) or Z/tZ for t >= 2. Residues are kept as integer
/// rationals in [0, t).
struct Ring {
  std::int64_t t = 0;

  static Ring rationals() { return {0}; }
  static Ring zmod(std::int64_t t);

  Coeff reduce(Coeff c) const;
  std::string format(Coeff c) const;
  std::string name() const;

  friend bool operator==(const Ring&, const Ring&) = default;
};

struct Term {
  Coeff coeff;
  Cell cell;
};

/// A finite combination of indicator functions of cells.
struct AlgebraElement {
  Ring ring;
  std::vector<Term> terms;

  bool empty() const noexcept { return terms.empty(); }
};

AlgebraElement indicator(Ring r, Cell c, Coeff coeff = 1);

/// Merges structurally equal cells and drops zero coefficients.
AlgebraElement normalize(Context& ctx, AlgebraElement f);
AlgebraElement add(Context& ctx, const AlgebraElement& f, const AlgebraElement& g);
AlgebraElement scale(Context& ctx, Coeff c, const AlgebraElement& f);
AlgebraElement subtract(Context& ctx, const AlgebraElement& f, const AlgebraElement& g);
AlgebraElement convolve(Context& ctx, const AlgebraElement& f, const AlgebraElement& g);
AlgebraElement involute(Context& ctx, const AlgebraElement& f);

Coeff evaluate(Context& ctx, const AlgebraElement& f, const Germ& g);

/// One germ class of the support partition: the arrows of f that share a germ
/// somewhere, their summed coefficient, and a point where that happens.
struct SupportClass {
  Word u, v;
  std::vector<ElemId> elements;
  Coeff value;
  EvPeriodicWord sample;
};

std::vector<SupportClass> support_partition(Context& ctx, const AlgebraElement& f);
/// f is not the zero function.
bool nonzero(Context& ctx, const AlgebraElement& f);
/// The strict support of f has empty interior.
bool is_singular(Context& ctx, const AlgebraElement& f);

/// Splits f into parts, part i a combination of restrictions of covers[i].
/// Throws CoverInsufficient when no split into clopen pieces of depth at most
/// `depth` reproduces f.
std::vector<AlgebraElement> decompose(Context& ctx, const AlgebraElement& f, const std::vector<Cell>& covers,
                                      int depth = 8);

Coeff evaluate_cover(Context& ctx, const AlgebraElement& f, const CoverPoint& p);

/// Parses "c*[u|g|v|W] + ..." where W is a comma list of tails (empty for all),
/// g an element literal and c an integer or fraction; "c*" may be omitted.
AlgebraElement parse_algebra_element(Context& ctx, Ring r, std::string_view text);
std::string format_algebra_element(Context& ctx, const AlgebraElement& f);

/// Parses "g@point" or "[u|g|v]@point".
Germ parse_germ(Context& ctx, std::string_view text);

}  // namespace ssg
