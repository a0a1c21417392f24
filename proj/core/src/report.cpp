#include "mca/report.hpp"

#include <json.hpp>

namespace mca {

LawResult& Report::law(std::string_view name) {
  for (auto& l : laws_) {
    if (l.name == name) return l;
  }
  LawResult fresh;
  fresh.name = std::string(name);
  laws_.push_back(std::move(fresh));
  return laws_.back();
}

void Report::merge(const Report& other) {
  for (const auto& l : other.laws_) {
    LawResult& mine = law(l.name);
    mine.expect_failure = l.expect_failure;
    mine.checked += l.checked;
    mine.failed += l.failed;
    mine.indeterminate += l.indeterminate;
    mine.exact += l.exact;
    mine.sampled += l.sampled;
    mine.vacuous += l.vacuous;
    if (!mine.witness) mine.witness = l.witness;
  }
}

bool Report::passed() const {
  for (const auto& l : laws_) {
    if (!l.passed()) return false;
  }
  return true;
}

std::string Report::text() const {
  std::string out;
  for (const auto& l : laws_) {
    out += l.passed() ? "PASS " : "FAIL ";
    out += suite_ + ": " + l.name;
    out += "  checked=" + std::to_string(l.checked) + " failed=" + std::to_string(l.failed);
    if (l.exact || l.sampled) {
      out += " exact=" + std::to_string(l.exact) + " sampled=" + std::to_string(l.sampled);
    }
    if (l.vacuous) out += " vacuous=" + std::to_string(l.vacuous);
    if (l.indeterminate) out += " indeterminate=" + std::to_string(l.indeterminate);
    if (l.expect_failure) out += " (negative control)";
    if (l.witness) out += "\n    witness: " + *l.witness;
    out += '\n';
  }
  return out;
}

std::string Report::json() const {
  nlohmann::json laws = nlohmann::json::array();
  for (const auto& l : laws_) {
    nlohmann::json j = {{"law", l.name},         {"passed", l.passed()},
                        {"checked", l.checked},  {"failed", l.failed},
                        {"exact", l.exact},      {"sampled", l.sampled},
                        {"vacuous", l.vacuous},  {"indeterminate", l.indeterminate},
                        {"negative_control", l.expect_failure}};
    j["witness"] = l.witness ? nlohmann::json(*l.witness) : nlohmann::json(nullptr);
    laws.push_back(std::move(j));
  }
  nlohmann::json out = {{"suite", suite_}, {"passed", passed()}, {"laws", std::move(laws)}};
  return out.dump();
}

}  // namespace mca
