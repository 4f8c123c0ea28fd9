#include "san/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "san/errors.hpp"

namespace san {

// ---- metrics ---------------------------------------------------------------

namespace {

void require_finite(const std::vector<double>& xs, const char* what) {
  for (double x : xs) {
    if (!std::isfinite(x)) throw DomainError(std::string("non-finite ") + what + " score");
  }
}

}  // namespace

double auc(const std::vector<double>& positive, const std::vector<double>& negative) {
  if (positive.empty() || negative.empty()) {
    throw DomainError("AUC needs at least one positive and one negative score");
  }
  require_finite(positive, "positive");
  require_finite(negative, "negative");
  std::vector<std::pair<double, bool>> all;
  all.reserve(positive.size() + negative.size());
  for (double s : positive) all.emplace_back(s, true);
  for (double s : negative) all.emplace_back(s, false);
  std::sort(all.begin(), all.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  // Twice the Mann-Whitney U, from doubled midranks, in integers.
  std::uint64_t doubled_rank_sum = 0;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    while (j < all.size() && all[j].first == all[i].first) ++j;
    const std::uint64_t doubled_midrank = (i + 1) + j;  // ranks i+1 .. j
    for (std::size_t k = i; k < j; ++k) {
      if (all[k].second) doubled_rank_sum += doubled_midrank;
    }
    i = j;
  }
  const std::uint64_t p = positive.size(), n = negative.size();
  const std::uint64_t doubled_u = doubled_rank_sum - p * (p + 1);
  return static_cast<double>(doubled_u) / static_cast<double>(2 * p * n);
}

std::vector<RocPoint> roc_curve(const std::vector<double>& positive,
                                const std::vector<double>& negative) {
  if (positive.empty() || negative.empty()) {
    throw DomainError("ROC needs at least one positive and one negative score");
  }
  std::vector<std::pair<double, bool>> all;
  for (double s : positive) all.emplace_back(s, true);
  for (double s : negative) all.emplace_back(s, false);
  std::sort(all.begin(), all.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<RocPoint> points{{0.0, 0.0}};
  std::size_t tp = 0, fp = 0;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    for (; j < all.size() && all[j].first == all[i].first; ++j) (all[j].second ? tp : fp) += 1;
    points.push_back({static_cast<double>(fp) / static_cast<double>(negative.size()),
                      static_cast<double>(tp) / static_cast<double>(positive.size())});
    i = j;
  }
  return points;
}

double expected_hits_at_k(const UserRanking& user, int k) {
  if (k < 1) throw DomainError("K must be at least 1");
  if (user.scores.size() != user.relevant.size()) throw DomainError("ranking size mismatch");
  const std::size_t n = user.scores.size();
  if (n <= static_cast<std::size_t>(k)) {
    return static_cast<double>(std::count(user.relevant.begin(), user.relevant.end(), true));
  }
  std::vector<double> sorted = user.scores;
  std::nth_element(sorted.begin(), sorted.begin() + (k - 1), sorted.end(), std::greater<>());
  const double cutoff = sorted[k - 1];
  std::size_t above = 0, above_hits = 0, tied = 0, tied_hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (user.scores[i] > cutoff) {
      ++above;
      above_hits += user.relevant[i];
    } else if (user.scores[i] == cutoff) {
      ++tied;
      tied_hits += user.relevant[i];
    }
  }
  const double slots = static_cast<double>(static_cast<std::size_t>(k) - above);
  return static_cast<double>(above_hits) +
         slots * static_cast<double>(tied_hits) / static_cast<double>(tied);
}

double precision_at_k(const std::vector<UserRanking>& users, int k) {
  if (k < 1) throw DomainError("K must be at least 1");
  if (users.empty()) return 0.0;
  double total = 0.0;
  for (const auto& u : users) total += expected_hits_at_k(u, k);
  return total / static_cast<double>(users.size());
}

// ---- mutex post-processing -------------------------------------------------

namespace {

// Indices of each user's decisions, best first (score desc, attribute asc).
std::map<std::uint32_t, std::vector<std::size_t>> ranked_by_user(
    const std::vector<AttributeDecision>& decisions) {
  std::map<std::uint32_t, std::vector<std::size_t>> by_user;
  for (std::size_t i = 0; i < decisions.size(); ++i) by_user[decisions[i].user].push_back(i);
  for (auto& [_, idx] : by_user) {
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      if (decisions[a].score != decisions[b].score) return decisions[a].score > decisions[b].score;
      return decisions[a].attribute < decisions[b].attribute;
    });
  }
  return by_user;
}

}  // namespace

std::vector<AttributeDecision> top_k_decisions(const ScoreTable& table, int k) {
  if (k < 0) throw DomainError("K must be non-negative");
  std::vector<AttributeDecision> out;
  out.reserve(table.entries.size());
  for (const auto& e : table.entries) {
    if (e.u.is_social() == e.v.is_social()) throw DomainError("expected (user, attribute) entries");
    const NodeRef& user = e.u.is_social() ? e.u : e.v;
    const NodeRef& attr = e.u.is_social() ? e.v : e.u;
    out.push_back({user.index, attr.index, e.score, false, false});
  }
  for (auto& [_, idx] : ranked_by_user(out)) {
    for (std::size_t r = 0; r < idx.size() && r < static_cast<std::size_t>(k); ++r) {
      out[idx[r]].positive = true;
    }
  }
  return out;
}

std::size_t mutex_postprocess(std::vector<AttributeDecision>& decisions,
                              const SocialAttributeNetwork& network) {
  std::size_t demoted = 0;
  for (auto& [user, idx] : ranked_by_user(decisions)) {
    std::vector<std::uint32_t> kept;
    if (user < network.num_social()) {
      auto held = network.attributes_of(user, LinkSign::kPositive);
      kept.assign(held.begin(), held.end());
    }
    for (auto i : idx) {
      auto& d = decisions[i];
      if (!d.positive) continue;
      const bool clash = std::any_of(kept.begin(), kept.end(),
                                     [&](std::uint32_t b) { return network.is_mutex(d.attribute, b); });
      if (clash) {
        d.positive = false;
        d.demoted = true;
        ++demoted;
      } else {
        kept.push_back(d.attribute);
      }
    }
  }
  return demoted;
}

std::vector<double> adjusted_scores(const std::vector<AttributeDecision>& decisions) {
  std::vector<double> out(decisions.size());
  if (decisions.empty()) return out;
  auto [lo, hi] = std::minmax_element(decisions.begin(), decisions.end(),
                                      [](const auto& a, const auto& b) { return a.score < b.score; });
  const double shift = (hi->score - lo->score) + 1.0;
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    out[i] = decisions[i].demoted ? decisions[i].score - shift : decisions[i].score;
  }
  return out;
}

SocialAttributeNetwork with_inferred_attributes(const SocialAttributeNetwork& base,
                                                const std::vector<AttributeDecision>& decisions,
                                                double weight) {
  NetworkBuilder builder(base);
  bool changed = false;
  for (const auto& d : decisions) {
    if (!d.positive || d.demoted) continue;
    if (base.attribute_sign(d.user, d.attribute)) continue;
    builder.add_attribute_link(d.user, d.attribute, LinkSign::kPositive, weight);
    changed = true;
  }
  return changed ? builder.build() : base;
}

// ---- grid search -----------------------------------------------------------

void GridSpec::set(const std::string& name, std::vector<double> values) {
  if (values.empty()) throw DomainError("grid for '" + name + "' is empty");
  for (double v : values) {
    if (!std::isfinite(v)) throw DomainError("grid for '" + name + "' has a non-finite value");
  }
  const bool descending = name == "alpha" || name == "lambda";
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  if (descending) std::reverse(values.begin(), values.end());
  values_[name] = std::move(values);
}

std::vector<GridPoint> GridSpec::points() const {
  std::vector<GridPoint> out{GridPoint{}};
  for (const auto& [name, values] : values_) {
    std::vector<GridPoint> next;
    next.reserve(out.size() * values.size());
    for (const auto& partial : out) {
      for (double v : values) {
        GridPoint p = partial;
        p[name] = v;
        next.push_back(std::move(p));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::string GridSpec::to_string() const {
  std::ostringstream out;
  bool first_name = true;
  for (const auto& [name, values] : values_) {
    if (!first_name) out << ';';
    first_name = false;
    out << name << '=';
    for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << values[i];
  }
  return out.str();
}

GridSpec parse_grid(const std::string& text) {
  GridSpec grid;
  std::stringstream groups(text);
  std::string group;
  while (std::getline(groups, group, ';')) {
    if (group.empty()) continue;
    auto eq = group.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError("--grid", 0, "expected name=v1,v2 in '" + group + "'");
    std::vector<double> values;
    std::stringstream list(group.substr(eq + 1));
    std::string item;
    while (std::getline(list, item, ',')) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw ParseError("--grid", 0, "bad value '" + item + "'");
      }
    }
    try {
      grid.set(group.substr(0, eq), std::move(values));
    } catch (const DomainError& e) {
      throw ParseError("--grid", 0, e.what());
    }
  }
  return grid;
}

GridResult grid_search(const GridSpec& grid, const std::function<double(const GridPoint&)>& metric) {
  GridResult result;
  bool first = true;
  for (const auto& point : grid.points()) {
    const double value = metric(point);
    result.evaluated.emplace_back(point, value);
    if (first || value > result.best_value) {
      result.best = point;
      result.best_value = value;
      first = false;
    }
  }
  return result;
}

ScorerSpec apply_grid_point(ScorerSpec spec, const GridPoint& point) {
  if (auto it = point.find("rank"); it != point.end()) spec.rank = static_cast<int>(std::llround(it->second));
  if (auto it = point.find("alpha"); it != point.end()) spec.alpha = it->second;
  return spec;
}

GridSpec grid_for(const ScorerSpec& spec, const GridSpec& grid) {
  GridSpec out;
  const auto& values = grid.values();
  if (spec.uses_rank() && values.count("rank")) out.set("rank", values.at("rank"));
  if (spec.kind == ScorerKind::kRwwr && values.count("alpha")) out.set("alpha", values.at("alpha"));
  return out;
}

// ---- reports ---------------------------------------------------------------

MetricSummary summarize(const std::string& name, const std::vector<double>& values) {
  MetricSummary s;
  s.name = name;
  s.values = values;
  if (values.empty()) return s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

const MetricSummary& MetricsReport::metric(const std::string& name) const {
  for (const auto& m : metrics) {
    if (m.name == name) return m;
  }
  throw DomainError("report has no metric '" + name + "'");
}

std::string MetricsReport::to_json() const {
  nlohmann::json doc;
  doc["descriptor"] = descriptor;
  doc["trials"] = trials;
  doc["metrics"] = nlohmann::json::array();
  for (const auto& m : metrics) {
    nlohmann::json item = {{"name", m.name}, {"values", m.values}, {"mean", m.mean}};
    if (m.stddev) item["std"] = *m.stddev;
    doc["metrics"].push_back(item);
  }
  return doc.dump(2);
}

MetricsReport MetricsReport::from_json(const std::string& text) {
  MetricsReport r;
  try {
    auto doc = nlohmann::json::parse(text);
    r.descriptor = doc.at("descriptor").get<std::map<std::string, std::string>>();
    r.trials = doc.at("trials").get<std::size_t>();
    for (const auto& item : doc.at("metrics")) {
      MetricSummary m;
      m.name = item.at("name").get<std::string>();
      m.values = item.at("values").get<std::vector<double>>();
      m.mean = item.at("mean").get<double>();
      if (item.contains("std")) m.stddev = item.at("std").get<double>();
      r.metrics.push_back(std::move(m));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("report", 0, e.what());
  }
  return r;
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// ---- result tables ---------------------------------------------------------

TableCell cell_of(const MetricSummary& summary) { return {summary.mean, summary.stddev}; }

namespace {

std::string fixed4(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream in(line);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(item);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& text, std::size_t line) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError("table", line, "bad number '" + text + "'");
}

}  // namespace

std::string format_table(const ResultTable& table, const std::string& corner) {
  std::ostringstream out;
  out << corner;
  for (const auto& c : table.columns) out << ',' << c;
  out << '\n';
  for (const auto& row : table.rows) {
    out << row.label;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      out << ',';
      if (i >= row.cells.size() || !row.cells[i]) continue;
      const auto& cell = *row.cells[i];
      out << fixed4(cell.mean);
      if (cell.stddev) out << '(' << (*cell.stddev == 0.0 ? std::string("0") : fixed4(*cell.stddev)) << ')';
    }
    out << '\n';
  }
  return out.str();
}

ResultTable parse_table(const std::string& csv) {
  ResultTable table;
  std::stringstream in(csv);
  std::string line;
  std::size_t number = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_commas(line);
    if (header) {
      table.columns.assign(fields.begin() + 1, fields.end());
      header = false;
      continue;
    }
    if (fields.size() != table.columns.size() + 1) throw ParseError("table", number, "wrong column count");
    TableRow row;
    row.label = fields[0];
    for (std::size_t i = 1; i < fields.size(); ++i) {
      const auto& f = fields[i];
      if (f.empty()) {
        row.cells.emplace_back();
        continue;
      }
      TableCell cell;
      auto open = f.find('(');
      if (open == std::string::npos) {
        cell.mean = parse_number(f, number);
      } else {
        if (f.back() != ')') throw ParseError("table", number, "unclosed '(' in '" + f + "'");
        cell.mean = parse_number(f.substr(0, open), number);
        cell.stddev = parse_number(f.substr(open + 1, f.size() - open - 2), number);
      }
      row.cells.emplace_back(cell);
    }
    table.rows.push_back(std::move(row));
  }
  if (header) throw ParseError("table", 0, "missing header");
  return table;
}

// ---- experiments -----------------------------------------------------------

LinkScorer unsupervised_link_scorer(const ScorerSpec& spec, bool social_only) {
  return [spec, social_only](const SocialAttributeNetwork& train, const CandidateSet& candidates,
                             const GridPoint& hyper, std::uint64_t seed) {
    ScorerSpec s = apply_grid_point(spec, hyper);
    if (s.kind == ScorerKind::kRandom) s.seed = seed;
    if (s.uses_rank()) s.rank = std::min(s.rank, max_rank(train, s.kind, candidates.task));
    const auto table = social_only ? score_candidates(project_social(train), candidates, s)
                                   : score_candidates(train, candidates, s);
    std::vector<double> scores;
    scores.reserve(table.entries.size());
    for (const auto& e : table.entries) scores.push_back(e.score);
    return scores;
  };
}

SnapshotPair load_pair(const SnapshotStore& store, const std::string& train, const std::string& test) {
  const auto& a = store.manifest().entry(train);
  const auto& b = store.manifest().entry(test);
  const EdgeChoice train_edges = a.ordinal < b.ordinal ? EdgeChoice::kBackfilled : EdgeChoice::kObserved;
  return {store.load(train, train_edges), store.load(test, EdgeChoice::kBackfilled)};
}

namespace {

double candidate_auc(const CandidateSet& set, const std::vector<double>& scores) {
  std::vector<double> pos, neg;
  for (std::size_t i = 0; i < set.pairs.size(); ++i) {
    if (set.pairs[i].label == Label::kPositive) pos.push_back(scores[i]);
    if (set.pairs[i].label == Label::kNegative) neg.push_back(scores[i]);
  }
  return auc(pos, neg);
}

std::string format_value(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

}  // namespace

LinkOutcome run_link_experiment(const LinkExperiment& ex, const LinkScorer& scorer) {
  if (ex.trials < 1) throw DomainError("trials must be at least 1");
  LinkOutcome outcome;
  const bool fixed_labels =
      ex.scope == Scope::kHop2Cat1 || ex.labels.negatives == NegativeMode::kExhaustive;

  if (!ex.grid.empty()) {
    LabelOptions opts = ex.labels;
    opts.seed = ex.seed;
    const auto validation = extract_labels(ex.validation.train, ex.validation.test, Task::kSocialLink,
                                           ex.scope, opts);
    outcome.selection = grid_search(ex.grid, [&](const GridPoint& point) {
      return candidate_auc(validation, scorer(ex.validation.train.network, validation, point, ex.seed));
    });
  }

  CandidateSet labels;
  std::vector<double> values;
  for (std::size_t t = 0; t < ex.trials; ++t) {
    const std::uint64_t seed = trial_seed(ex.seed, t);
    if (t == 0 || !fixed_labels) {
      LabelOptions opts = ex.labels;
      opts.seed = seed;
      labels = extract_labels(ex.test.train, ex.test.test, Task::kSocialLink, ex.scope, opts);
    }
    const auto scores = scorer(ex.test.train.network, labels, outcome.selection.best, seed);
    values.push_back(candidate_auc(labels, scores));
    if (t + 1 == ex.trials) {
      outcome.last_labels = labels;
      outcome.last_scores.task = Task::kSocialLink;
      outcome.last_scores.entries.clear();
      for (std::size_t i = 0; i < labels.pairs.size(); ++i) {
        outcome.last_scores.entries.push_back({labels.pairs[i].u, labels.pairs[i].v, scores[i]});
      }
    }
  }

  auto& report = outcome.report;
  report.descriptor = ex.descriptor;
  report.descriptor["train"] = ex.test.train.label;
  report.descriptor["test"] = ex.test.test.label;
  report.descriptor["validation_train"] = ex.validation.train.label;
  report.descriptor["validation_test"] = ex.validation.test.label;
  report.descriptor["scope"] = to_string(ex.scope);
  report.descriptor["negatives"] = ex.scope == Scope::kHop2Cat1 ? "hop2"
                                   : labels.negatives_sampled   ? "sampled"
                                                                : "exhaustive";
  report.descriptor["positives"] = std::to_string(labels.count(Label::kPositive));
  report.descriptor["negative_count"] = std::to_string(labels.count(Label::kNegative));
  report.descriptor["seed"] = std::to_string(ex.seed);
  for (const auto& [name, value] : outcome.selection.best) {
    report.descriptor["selected." + name] = format_value(value);
  }
  report.trials = ex.trials;
  report.metrics.push_back(summarize("auc", values));
  return outcome;
}

AttributeScorer unsupervised_attribute_scorer(const ScorerSpec& spec) {
  return [spec](const AttributeRemoval& removal, const std::vector<CandidatePair>& candidates,
                std::uint64_t seed) {
    ScorerSpec s = spec;
    if (s.kind == ScorerKind::kRandom) s.seed = seed;
    if (s.uses_rank()) s.rank = std::min(s.rank, max_rank(removal.network, s.kind, Task::kAttributeLink));
    const auto table = score_pairs(removal.network, Task::kAttributeLink, candidates, s);
    std::vector<double> scores;
    scores.reserve(table.entries.size());
    for (const auto& e : table.entries) scores.push_back(e.score);
    return scores;
  };
}

std::vector<CandidatePair> attribute_candidates(const SocialAttributeNetwork& network,
                                                const std::vector<std::uint32_t>& users) {
  std::vector<CandidatePair> out;
  for (auto u : users) {
    for (std::uint32_t a = 0; a < network.num_attributes(); ++a) {
      if (!network.attribute_sign(u, a)) out.push_back({NodeRef::social(u), NodeRef::attribute(a)});
    }
  }
  return out;
}

namespace {

std::uint64_t link_key(std::uint32_t u, std::uint32_t a) {
  return (static_cast<std::uint64_t>(u) << 32) | a;
}

std::size_t mutex_violations(const SocialAttributeNetwork& network) {
  std::size_t count = 0;
  for (const auto& v : validate(network)) count += v.kind == Violation::Kind::kMutexViolation;
  return count;
}

}  // namespace

AttributeOutcome run_attribute_experiment(const AttributeExperiment& ex, const AttributeScorer& scorer) {
  if (ex.trials < 1) throw DomainError("trials must be at least 1");
  if (ex.ks.empty()) throw DomainError("need at least one K");
  const int k_max = *std::max_element(ex.ks.begin(), ex.ks.end());
  if (*std::min_element(ex.ks.begin(), ex.ks.end()) < 1) throw DomainError("K must be at least 1");

  AttributeOutcome outcome;
  std::vector<double> aucs;
  std::map<int, std::vector<double>> pre;
  for (std::size_t t = 0; t < ex.trials; ++t) {
    const std::uint64_t seed = trial_seed(ex.seed, t);
    AttributeTrial trial;
    trial.users = sample_users(ex.network.num_social(), ex.sample_fraction, seed);
    if (trial.users.empty()) throw DomainError("sample fraction selects no users");
    const auto removal = remove_user_attributes(ex.network, trial.users);
    const auto candidates = attribute_candidates(removal.network, trial.users);
    const auto scores = scorer(removal, candidates, seed);

    ScoreTable table;
    table.task = Task::kAttributeLink;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      table.entries.push_back({candidates[i].u, candidates[i].v, scores[i]});
    }
    trial.decisions = top_k_decisions(table, k_max);
    if (ex.mutex_postprocessing) trial.demoted = mutex_postprocess(trial.decisions, removal.network);
    trial.violations = mutex_violations(with_inferred_attributes(removal.network, trial.decisions));
    const auto adjusted = adjusted_scores(trial.decisions);

    std::unordered_set<std::uint64_t> positives, negatives;
    for (const auto& l : removal.removed_positive) positives.insert(link_key(l.user, l.attribute));
    for (const auto& l : removal.retained_negative) negatives.insert(link_key(l.user, l.attribute));
    std::vector<double> pos, neg;
    std::map<std::uint32_t, UserRanking> rankings;
    for (auto u : trial.users) rankings[u];
    for (std::size_t i = 0; i < trial.decisions.size(); ++i) {
      const auto& d = trial.decisions[i];
      const auto key = link_key(d.user, d.attribute);
      const bool is_pos = positives.count(key) > 0;
      if (is_pos) pos.push_back(adjusted[i]);
      if (negatives.count(key)) neg.push_back(adjusted[i]);
      auto& r = rankings[d.user];
      r.scores.push_back(adjusted[i]);
      r.relevant.push_back(is_pos);
    }
    aucs.push_back(auc(pos, neg));
    std::vector<UserRanking> per_user;
    per_user.reserve(rankings.size());
    for (auto& [_, r] : rankings) per_user.push_back(std::move(r));
    for (int k : ex.ks) pre[k].push_back(precision_at_k(per_user, k));
    outcome.trials.push_back(std::move(trial));
  }

  auto& report = outcome.report;
  report.descriptor = ex.descriptor;
  report.descriptor["sample_fraction"] = format_value(ex.sample_fraction);
  report.descriptor["mutex_postprocessing"] = ex.mutex_postprocessing ? "true" : "false";
  report.descriptor["seed"] = std::to_string(ex.seed);
  report.trials = ex.trials;
  report.metrics.push_back(summarize("auc", aucs));
  for (const auto& [k, values] : pre) report.metrics.push_back(summarize("pre@" + std::to_string(k), values));
  return outcome;
}

}  // namespace san
