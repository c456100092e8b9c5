#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "ssg/automaton.hpp"
#include "ssg/element_index.hpp"
#include "ssg/nucleus.hpp"

namespace ssg {

class NucleusUnavailable : public Error {
 public:
  using Error::Error;
};

/// Owns an automaton together with its element index and a lazily computed
/// nucleus. All higher layers take a Context&; it is a mutable cache and must
/// not be shared between threads.
class Context {
 public:
  explicit Context(Automaton aut, NucleusBudget budget = {});
  Context(const Context&) = delete;
  Context& operator=(const Context&) = delete;

  static std::unique_ptr<Context> from_file(const std::string& path, NucleusBudget budget = {});

  const Automaton& automaton() const noexcept { return aut_; }
  ElementIndex& index() noexcept { return index_; }
  ElemId identity() const noexcept { return index_.identity(); }
  int alphabet_size() const noexcept { return aut_.alphabet_size(); }

  /// Throws NucleusUnavailable when the closure is inconclusive.
  const ContractionCertificate& certificate();
  const Nucleus& nucleus() { return certificate().nucleus; }

  /// Nucleus member id by name, e.g. "b" or "alpha".
  ElemId member(const std::string& name);
  /// Element from the literal syntax "b.c.d'".
  ElemId elem(std::string_view literal);
  /// Nucleus name when the element is a member, otherwise its word.
  std::string name(ElemId id);

 private:
  Automaton aut_;
  ElementIndex index_;
  NucleusBudget budget_;
  std::optional<ContractionCertificate> cert_;
  std::optional<std::string> failure_;
};

}  // namespace ssg
