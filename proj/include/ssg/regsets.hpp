#pragma once

// Regular subsets of the boundary X = A^N built from the open sets
// TF_g = union of vX over v in SF_g = {v : g(v) = v, g|_v = 1}, their closures
// and cylinders. Decisions are exact analyses of a finite product automaton.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ssg/context.hpp"

namespace ssg {

enum class AtomKind { Tf, ClosureTf };

/// The set prefix · TF_elem (or prefix · closure(TF_elem)). A cylinder uX is
/// {u, identity, Tf}.
struct Atom {
  Word prefix;
  ElemId elem = 0;
  AtomKind kind = AtomKind::Tf;

  friend auto operator<=>(const Atom&, const Atom&) = default;
  friend bool operator==(const Atom&, const Atom&) = default;
};

using Truth = std::vector<bool>;
using TruthPredicate = std::function<bool(const Truth&)>;

class ProductSpace;

class Region {
 public:
  static Region atom(Atom a);
  static Region tf(ElemId g, Word prefix = {});
  static Region closure_tf(ElemId g, Word prefix = {});
  static Region cylinder(Word u);
  static Region everything();
  static Region nothing();

  friend Region operator|(const Region& a, const Region& b);
  friend Region operator&(const Region& a, const Region& b);
  friend Region operator!(const Region& a);
  friend Region operator-(const Region& a, const Region& b) { return a & !b; }

  void collect_atoms(std::vector<Atom>& out) const;
  /// Evaluates against the truth vector of `space`; every atom must be present there.
  TruthPredicate predicate(const ProductSpace& space) const;
  bool eval(const std::function<bool(const Atom&)>& atom_value) const;

  struct Node;

 private:
  explicit Region(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Deterministic automaton on vectors of per-atom states, explored from the
/// empty prefix over all letters. A state is stable when some infinite path
/// from it never changes any atom's accept/dead/pending status; the truth
/// vector of a stable state is the membership of every point reaching it.
class ProductSpace {
 public:
  ProductSpace(Context& ctx, std::vector<Atom> atoms, std::size_t max_states = 4'000'000);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  int atom_index(const Atom& a) const;
  std::size_t state_count() const noexcept { return succ_.size(); }
  int alphabet_size() const noexcept { return k_; }

  static constexpr int initial = 0;
  int successor(int q, Letter x) const { return succ_[static_cast<std::size_t>(q)][static_cast<std::size_t>(x)]; }
  int state_after(const Word& u, int from = initial) const;
  bool stable(int q) const { return stable_[static_cast<std::size_t>(q)] != 0; }
  const Truth& truth(int q) const { return truth_[static_cast<std::size_t>(q)]; }

  /// Per state: some point beyond it satisfies `pred`.
  std::vector<char> can_reach(const TruthPredicate& pred) const;
  bool exists_from(int q, const TruthPredicate& pred) const { return can_reach(pred)[static_cast<std::size_t>(q)] != 0; }
  bool forall_from(int q, const TruthPredicate& pred) const;
  std::vector<int> reachable_from(int q) const;
  /// Some cylinder below q lies entirely inside `pred`.
  bool has_interior_from(int q, const TruthPredicate& pred) const;
  /// Every cylinder below q meets `pred`.
  bool dense_from(int q, const TruthPredicate& pred) const;

  /// Truth vector of a single point, read off the cycle its run ends in.
  Truth evaluate(const EvPeriodicWord& w) const;

  /// Distinct truth vectors realized by points beyond q.
  std::vector<Truth> realizable(int q) const;

  struct Sample {
    Word decisive;        // shortest word after which membership is settled
    EvPeriodicWord point; // a full point, relative to q
  };
  std::optional<Sample> sample(int q, const TruthPredicate& pred) const;

 private:
  int intern(std::vector<int> s);
  int step_atom(std::size_t i, int s, Letter x);
  int normalize(ElemId g);
  int status(std::size_t i, int s) const;

  Context& ctx_;
  int k_;
  std::vector<Atom> atoms_;
  std::map<Atom, int> atom_pos_;
  std::vector<std::vector<int>> states_;
  std::unordered_map<std::string, int> state_ids_;
  std::vector<std::vector<int>> succ_;
  std::vector<std::vector<int>> pred_;
  std::vector<char> stable_;
  std::vector<Truth> truth_;
  std::vector<std::vector<char>> classes_;
};

enum class TFClass { Interior, Boundary, Outside };
const char* to_string(TFClass c);

TFClass tf_classify(Context& ctx, ElemId g, const EvPeriodicWord& w);

/// SF_g as a finite automaton over fixed letters.
struct SFAutomaton {
  static constexpr ElemId kAccept = -1;
  ElemId owner = 0;
  std::vector<ElemId> states;                       // reachable along fixed letters, excluding Accept
  std::map<std::pair<ElemId, Letter>, ElemId> delta; // defined only on fixed letters
  std::vector<ElemId> coaccessible;
  std::vector<ElemId> dead;

  bool accepts(const Word& w) const;
  /// Words in SF_g no proper prefix of which is in SF_g, up to length max_len.
  std::vector<Word> minimal_words(std::size_t max_len, int alphabet_size) const;
};

SFAutomaton sf_automaton(Context& ctx, ElemId g);

bool region_nonempty(Context& ctx, const Region& r, std::optional<EvPeriodicWord>* sample = nullptr);
bool region_empty_interior(Context& ctx, const Region& r);
bool region_dense_in(Context& ctx, const Region& r, const Word& u);

}  // namespace ssg
