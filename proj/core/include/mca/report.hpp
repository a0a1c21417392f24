#pragma once

// Law-check reports: one entry per law with counts and the first counterexample.

#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <string_view>

namespace mca {

struct LawResult {
  std::string name;
  /// Negative controls pass when at least one instance fails.
  bool expect_failure = false;
  std::size_t checked = 0;
  std::size_t failed = 0;
  /// Instances whose outcome could not be decided within the fuel budget.
  std::size_t indeterminate = 0;
  /// Of the passing instances, how many were decided exactly / over probes.
  std::size_t exact = 0;
  std::size_t sampled = 0;
  /// Premise-filtered instances whose premise did not hold.
  std::size_t vacuous = 0;
  std::optional<std::string> witness;

  template <class Describe>
  void record(bool ok, Describe&& describe) {
    ++checked;
    if (!ok) {
      ++failed;
      if (!witness) witness = describe();
    }
  }

  bool passed() const { return expect_failure ? failed > 0 : failed == 0; }
};

class Report {
 public:
  explicit Report(std::string suite) : suite_(std::move(suite)) {}

  /// Returns the entry for `name`, creating it on first use. References stay valid.
  LawResult& law(std::string_view name);
  const std::deque<LawResult>& laws() const { return laws_; }
  const std::string& suite() const { return suite_; }

  void merge(const Report& other);
  bool passed() const;

  /// One line per law, human readable.
  std::string text() const;
  /// A single JSON object on one line.
  std::string json() const;

 private:
  std::string suite_;
  std::deque<LawResult> laws_;
};

}  // namespace mca
