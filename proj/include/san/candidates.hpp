#pragma once

#include <string>
#include <vector>

#include "san/network.hpp"

namespace san {

enum class Task { kSocialLink, kAttributeLink };

// Which candidate pairs enter a link-prediction evaluation.
enum class Scope {
  kHop2Cat1,         // distance-2 pairs sharing a common social neighbor
  kAnyHop,           // every non-linked pair
  kCategory1,        // any hop; positives restricted to endpoints with train links
  kCategory1and2,    // any hop; all positives
};

enum class Label { kPositive, kNegative, kUnlabeled };

struct CandidatePair {
  NodeRef u;
  NodeRef v;
  Label label = Label::kUnlabeled;
};

struct CandidateSet {
  Task task = Task::kSocialLink;
  Scope scope = Scope::kHop2Cat1;
  std::vector<CandidatePair> pairs;
  // True when negatives were sampled rather than enumerated.
  bool negatives_sampled = false;

  std::size_t count(Label label) const;
};

std::string to_string(Task task);
std::string to_string(Scope scope);
Task parse_task(const std::string& text);
Scope parse_scope(const std::string& text);

}  // namespace san
