#include "config.hpp"

#include <fstream>

#include "san/errors.hpp"

namespace san::cli {

void ExperimentConfig::check() const {
  if (!seed) throw DomainError("a seed is required");
  parse_task(task);
  parse_scope(scope);
  for (const auto& s : scorers) parse_scorer_kind(s);
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in (0, 1]");
  for (int r : ranks) {
    if (r < 1) throw DomainError("ranks must be positive");
  }
  if (trials < 1) throw DomainError("trials must be at least 1");
  if (!(sample_fraction >= 0.0 && sample_fraction <= 1.0)) {
    throw DomainError("sample fraction must lie in [0, 1]");
  }
  if (top_k < 0) throw DomainError("top-K must be non-negative");
  for (int k : ks) {
    if (k < 1) throw DomainError("Pre@K needs K >= 1");
  }
  if (negatives != "sampled" && negatives != "exhaustive") {
    throw DomainError("negatives must be 'sampled' or 'exhaustive'");
  }
  if (!(negative_ratio > 0.0)) throw DomainError("negative ratio must be positive");
  if (iterations < 1) throw DomainError("iterations must be at least 1");
}

std::uint64_t ExperimentConfig::seed_value() const {
  if (!seed) throw DomainError("a seed is required");
  return *seed;
}

LabelOptions ExperimentConfig::label_options() const {
  LabelOptions o;
  o.negatives = negatives == "exhaustive" ? NegativeMode::kExhaustive : NegativeMode::kSampled;
  o.negative_ratio = negative_ratio;
  o.seed = seed_value();
  return o;
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json doc = {
      {"manifest", manifest},
      {"train", train},
      {"validate", validate},
      {"test", test},
      {"task", task},
      {"scope", scope},
      {"scorers", scorers},
      {"grid", grid},
      {"alpha", alpha},
      {"ranks", ranks},
      {"variants", variants},
      {"trials", trials},
      {"sample_fraction", sample_fraction},
      {"top_k", top_k},
      {"ks", ks},
      {"negatives", negatives},
      {"negative_ratio", negative_ratio},
      {"iterations", iterations},
      {"mutex_postprocessing", mutex_postprocessing},
      {"out", out},
  };
  doc["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
  return doc;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& doc) {
  ExperimentConfig c;
  try {
    if (!doc.is_object()) throw ParseError("config", 0, "expected a JSON object");
    auto read = [&](const char* key, auto& field) {
      if (doc.contains(key)) field = doc.at(key).get<std::decay_t<decltype(field)>>();
    };
    read("manifest", c.manifest);
    read("train", c.train);
    read("validate", c.validate);
    read("test", c.test);
    read("task", c.task);
    read("scope", c.scope);
    read("scorers", c.scorers);
    read("grid", c.grid);
    read("alpha", c.alpha);
    read("ranks", c.ranks);
    read("variants", c.variants);
    read("trials", c.trials);
    read("sample_fraction", c.sample_fraction);
    read("top_k", c.top_k);
    read("ks", c.ks);
    read("negatives", c.negatives);
    read("negative_ratio", c.negative_ratio);
    read("iterations", c.iterations);
    read("mutex_postprocessing", c.mutex_postprocessing);
    read("out", c.out);
    if (doc.contains("seed") && !doc.at("seed").is_null()) c.seed = doc.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("config", 0, e.what());
  }
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path, 0, e.what());
  }
}

}  // namespace san::cli
