#include "ssg/context.hpp"

namespace ssg {

Context::Context(Automaton aut, NucleusBudget budget)
    : aut_(std::move(aut)), index_(aut_), budget_(budget) {}

std::unique_ptr<Context> Context::from_file(const std::string& path, NucleusBudget budget) {
  return std::make_unique<Context>(load_automaton(path), budget);
}

const ContractionCertificate& Context::certificate() {
  if (cert_) return *cert_;
  if (failure_) throw NucleusUnavailable(*failure_);
  auto result = compute_nucleus(index_, budget_);
  if (auto* c = std::get_if<ContractionCertificate>(&result)) {
    cert_ = std::move(*c);
    return *cert_;
  }
  failure_ = std::get<Inconclusive>(result).reason;
  throw NucleusUnavailable(*failure_);
}

ElemId Context::member(const std::string& name) {
  const Nucleus& n = nucleus();
  auto p = n.find(name);
  if (!p) throw Error("'" + name + "' is not a nucleus member");
  return n.ids[static_cast<std::size_t>(*p)];
}

ElemId Context::elem(std::string_view literal) {
  return index_.intern(parse_element(aut_, literal));
}

std::string Context::name(ElemId id) {
  if (cert_) {
    if (auto p = cert_->nucleus.position(id)) return cert_->nucleus.names[static_cast<std::size_t>(*p)];
  }
  return format_element(aut_, index_.element(id));
}

}  // namespace ssg
