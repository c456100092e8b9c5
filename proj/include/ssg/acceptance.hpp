#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ssg {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool checks = true;
  double seconds = 0;
  double limit = 0;  // seconds; per item where the criterion times items separately
  std::vector<std::string> failures;
  std::string detail;

  bool pass() const { return checks && seconds <= limit; }
  /// "PASS 3 fibers (0.041 s, limit 2 s)" plus the first failures.
  std::string line() const;
};

/// Runs criteria 1..9 against the automata in corpus_dir. `only` restricts to
/// one criterion when nonzero. Each line is also written to `log` as it lands.
std::vector<CriterionResult> run_acceptance(const std::string& corpus_dir, int only = 0, std::ostream* log = nullptr);

}  // namespace ssg
