#pragma once

// Moore-diagram automata over a finite alphabet, group elements as freely
// reduced words over the states, and the wreath recursion
// g(xw) = g(x) g|_x(w) that drives everything else in the library.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ssg {

using Letter = int;
using Word = std::vector<Letter>;
using StateId = int;

inline constexpr std::size_t kDefaultTrivialityBudget = 1'000'000;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  enum class Kind { Syntax, NonBijectiveOutput, UnknownState, MissingIdentity, DuplicateState };

  ParseError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Raised when an exploration exceeds its node bound. Never a mathematical verdict.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

struct Alphabet {
  int size = 2;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

class Automaton {
 public:
  /// perms[q][x] is the output letter, sections[q][x] the target state.
  /// Validates bijectivity and the identity-state conditions.
  Automaton(Alphabet alphabet, std::vector<std::string> names, StateId identity,
            std::vector<std::vector<Letter>> perms, std::vector<std::vector<StateId>> sections);

  int alphabet_size() const noexcept { return alphabet_.size; }
  Alphabet alphabet() const noexcept { return alphabet_; }
  std::size_t state_count() const noexcept { return names_.size(); }
  StateId identity() const noexcept { return identity_; }

  const std::string& name(StateId q) const { return names_.at(static_cast<std::size_t>(q)); }
  std::optional<StateId> find(std::string_view name) const;

  Letter image(StateId q, Letter x) const { return perms_[q][x]; }
  Letter preimage(StateId q, Letter y) const { return inverse_perms_[q][y]; }
  StateId section(StateId q, Letter x) const { return sections_[q][x]; }

  /// Re-serializes in the `.ssg` file format; parse_automaton(to_text()) == *this.
  std::string to_text() const;

  friend bool operator==(const Automaton&, const Automaton&) = default;

 private:
  Alphabet alphabet_;
  std::vector<std::string> names_;
  StateId identity_;
  std::vector<std::vector<Letter>> perms_;
  std::vector<std::vector<Letter>> inverse_perms_;
  std::vector<std::vector<StateId>> sections_;
};

Automaton parse_automaton(std::istream& in);
Automaton parse_automaton(std::string_view text);
Automaton load_automaton(const std::string& path);

struct Generator {
  StateId state = 0;
  bool inverse = false;

  friend auto operator<=>(const Generator&, const Generator&) = default;
};

/// A freely reduced word over the states and their inverses, identity letters
/// removed. The word g1 g2 ... gk acts by applying gk first.
class GroupElement {
 public:
  GroupElement() = default;

  /// Reduces `letters` freely and drops occurrences of `identity`.
  static GroupElement reduce(const std::vector<Generator>& letters, StateId identity);
  static GroupElement generator(StateId q, StateId identity, bool inverse = false);

  const std::vector<Generator>& letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;

 private:
  std::vector<Generator> letters_;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const noexcept;
};

GroupElement multiply(const GroupElement& g, const GroupElement& h, StateId identity);
GroupElement invert(const GroupElement& g);

struct StepResult {
  Letter image;
  GroupElement section;
};

StepResult step(const Automaton& aut, const GroupElement& g, Letter x);
Word act_word(const Automaton& aut, const GroupElement& g, const Word& u);
GroupElement section(const Automaton& aut, const GroupElement& g, const Word& u);

/// Breadth-first closure of {g} under sections; true iff every reached word
/// has trivial letter permutation. Throws BudgetExceeded past `budget` words.
bool is_trivial(const Automaton& aut, const GroupElement& g,
                std::size_t budget = kDefaultTrivialityBudget);
bool elements_equal(const Automaton& aut, const GroupElement& g, const GroupElement& h,
                    std::size_t budget = kDefaultTrivialityBudget);

/// Literal syntax: state names joined by '.', inverse marked with a trailing
/// quote, e.g. "b.c.d'". The empty string and the identity name denote 1.
GroupElement parse_element(const Automaton& aut, std::string_view text);
std::string format_element(const Automaton& aut, const GroupElement& g);

Word parse_word(std::string_view text, int alphabet_size);
std::string format_word(const Word& w);

/// Eventually periodic boundary point u w w w ... kept in canonical form:
/// primitive period and shortest preperiod, so equality is structural.
class EvPeriodicWord {
 public:
  EvPeriodicWord(Word preperiod, Word period);

  /// Literal "u(w)", e.g. "0(110)" or "(1)".
  static EvPeriodicWord parse(std::string_view text, int alphabet_size);

  const Word& preperiod() const noexcept { return preperiod_; }
  const Word& period() const noexcept { return period_; }

  Letter at(std::size_t i) const;
  Word prefix(std::size_t n) const;
  bool starts_with(const Word& u) const;
  EvPeriodicWord drop(std::size_t n) const;
  EvPeriodicWord prepend(const Word& u) const;

  std::string to_string() const;

  friend auto operator<=>(const EvPeriodicWord&, const EvPeriodicWord&) = default;
  friend bool operator==(const EvPeriodicWord&, const EvPeriodicWord&) = default;

 private:
  Word preperiod_;
  Word period_;
};

EvPeriodicWord act_point(const Automaton& aut, const GroupElement& g, const EvPeriodicWord& w);

}  // namespace ssg
