#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ssg/element_index.hpp"

namespace ssg {

/// Members are addressed by position 0..size()-1; position 0 is the identity.
/// Order: identity, members equal to states (declared order), members equal to
/// state inverses, then everything else.
struct Nucleus {
  std::vector<ElemId> ids;
  std::vector<std::string> names;
  std::vector<std::vector<int>> next;
  std::vector<std::vector<Letter>> perm;
  std::vector<int> inverse;

  std::size_t size() const noexcept { return ids.size(); }
  std::optional<int> position(ElemId id) const;
  std::optional<int> find(const std::string& name) const;
};

struct ContractionCertificate {
  Nucleus nucleus;
  int contraction_depth = 0;
};

struct Inconclusive {
  std::string reason;
};

struct NucleusBudget {
  std::size_t max_elems = 512;
  int max_depth = 64;
};

std::variant<ContractionCertificate, Inconclusive> compute_nucleus(ElementIndex& index,
                                                                    NucleusBudget budget = {});

int nucleus_step(const Nucleus& n, int member, Letter x);

}  // namespace ssg
