#include "san/candidates.hpp"

#include <algorithm>

#include "san/errors.hpp"

namespace san {

std::size_t CandidateSet::count(Label label) const {
  return static_cast<std::size_t>(std::count_if(
      pairs.begin(), pairs.end(), [label](const CandidatePair& p) { return p.label == label; }));
}

std::string to_string(Task task) {
  return task == Task::kSocialLink ? "links" : "attributes";
}

std::string to_string(Scope scope) {
  switch (scope) {
    case Scope::kHop2Cat1: return "hop2cat1";
    case Scope::kAnyHop: return "anyhop";
    case Scope::kCategory1: return "cat1";
    case Scope::kCategory1and2: return "cat1and2";
  }
  return "unknown";
}

Task parse_task(const std::string& text) {
  if (text == "links") return Task::kSocialLink;
  if (text == "attributes") return Task::kAttributeLink;
  throw DomainError("unknown task '" + text + "'");
}

Scope parse_scope(const std::string& text) {
  for (Scope s : {Scope::kHop2Cat1, Scope::kAnyHop, Scope::kCategory1, Scope::kCategory1and2}) {
    if (to_string(s) == text) return s;
  }
  throw DomainError("unknown scope '" + text + "'");
}

}  // namespace san
