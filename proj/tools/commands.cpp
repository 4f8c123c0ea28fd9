#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "san/errors.hpp"
#include "san/pipeline.hpp"
#include "san/supervised.hpp"

namespace san::cli {

namespace fs = std::filesystem;

namespace {

class Output {
 public:
  explicit Output(const std::string& dir) : dir_(dir.empty() ? fs::path(".") : fs::path(dir)) {
    fs::create_directories(dir_);
  }

  const fs::path& dir() const { return dir_; }

  void text(const std::string& name, const std::string& content) {
    const auto path = dir_ / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write " + path.string());
    out << content;
    written_.push_back(path);
  }

  void note(const fs::path& path) { written_.push_back(path); }

  std::vector<fs::path> take() { return std::move(written_); }

 private:
  fs::path dir_;
  std::vector<fs::path> written_;
};

std::string roc_csv(const CandidateSet& labels, const ScoreTable& table) {
  std::vector<double> pos, neg;
  for (std::size_t i = 0; i < labels.pairs.size(); ++i) {
    if (labels.pairs[i].label == Label::kPositive) pos.push_back(table.entries[i].score);
    if (labels.pairs[i].label == Label::kNegative) neg.push_back(table.entries[i].score);
  }
  std::ostringstream out;
  out.precision(10);
  out << "fpr,tpr\n";
  for (const auto& p : roc_curve(pos, neg)) out << p.fpr << ',' << p.tpr << '\n';
  return out.str();
}

std::string score_csv(const ScoreTable& table, const SocialAttributeNetwork& net) {
  std::ostringstream out;
  write_score_table(out, table, net);
  return out.str();
}

std::vector<ScorerSpec> scorer_specs(const ExperimentConfig& c, const std::vector<std::string>& fallback,
                                     const std::vector<int>& ranks) {
  std::vector<ScorerSpec> specs;
  for (const auto& id : c.scorers.empty() ? fallback : c.scorers) {
    ScorerSpec s;
    s.kind = parse_scorer_kind(id);
    s.alpha = c.alpha;
    s.seed = c.seed_value();
    if (s.uses_rank()) {
      for (int r : ranks) {
        s.rank = r;
        specs.push_back(s);
      }
    } else {
      specs.push_back(s);
    }
  }
  return specs;
}

void require_labels(const ExperimentConfig& c, bool need_all) {
  if (c.manifest.empty()) throw DomainError("--manifest is required");
  if (c.train.empty()) throw DomainError("--train is required");
  if (need_all && (c.validate.empty() || c.test.empty())) {
    throw DomainError("--validate and --test are required");
  }
}

std::map<std::string, std::string> base_descriptor(const ExperimentConfig& c) {
  return {{"config", c.to_json().dump()}};
}

int link_rank(const ExperimentConfig& c) { return c.ranks.empty() ? 10 : c.ranks.front(); }

}  // namespace

std::vector<std::string> default_link_scorers() {
  return {"cn", "aa", "lra", "cn_lra", "aa_lra", "rwwr", "random"};
}

std::vector<std::string> default_attribute_scorers() {
  return {"cn", "aa", "lra", "cn_lra", "aa_lra", "rwwr", "baseline", "random"};
}

// ---- generate --------------------------------------------------------------

CommandResult cmd_generate(const GeneratorParams& params, std::uint64_t seed, const std::string& out) {
  const auto data = generate(params, seed);
  Output o(out);
  const auto manifest = write_synthetic(o.dir(), data);
  for (const char* name : {"nodes.tsv", "attributes.tsv", "mutex.tsv"}) o.note(o.dir() / name);
  for (const auto& s : data.observed) {
    o.note(o.dir() / (s.label + ".edges"));
    o.note(o.dir() / (s.label + ".all.edges"));
  }
  o.note(manifest);
  nlohmann::json doc = {
      {"seed", seed},
      {"nodes", params.nodes},
      {"communities", params.communities},
      {"attributes_per_community", params.attributes_per_community},
      {"min_attributes", params.min_attributes},
      {"max_attributes", params.max_attributes},
      {"homophily", params.homophily},
      {"mutex_pairs", params.mutex_pairs},
      {"extra_negative_attributes", params.extra_negative_attributes},
      {"initial_edges", params.initial_edges},
      {"new_edges", params.new_edges},
      {"missing_edges", params.missing_edges},
      {"p_in", params.p_in},
      {"p_triadic", params.p_triadic},
      {"snapshots", params.snapshots},
  };
  std::ostringstream planted;
  planted << "snapshot,new_links,hidden_links\n";
  for (std::size_t i = 0; i < data.new_links.size(); ++i) {
    planted << data.observed[i + 1].label << ',' << data.new_links[i].size() << ','
            << data.hidden[i].size() << '\n';
  }
  o.text("generator.json", doc.dump(2) + "\n");
  o.text("planted.csv", planted.str());
  return {o.take(), {}};
}

// ---- ingest ----------------------------------------------------------------

CommandResult cmd_ingest(const IngestOptions& options) {
  if (options.manifest.empty()) throw DomainError("--manifest is required");
  if (options.k < 0) throw DomainError("k must be non-negative");
  if (options.min_freq < 1) throw DomainError("min_freq must be at least 1");
  const Manifest raw = read_manifest(options.manifest);
  if (raw.entries.empty()) throw DomainError("manifest lists no snapshots");
  auto resolve = [&](const std::string& f) {
    fs::path p(f);
    return p.is_absolute() ? p : raw.base_dir / p;
  };

  std::vector<std::vector<UndirectedEdge>> edges;
  std::set<std::string> user_set;
  for (const auto& e : raw.entries) {
    edges.push_back(mutualize(read_edges(resolve(e.edge_file))));
    for (const auto& x : edges.back()) {
      user_set.insert(x.u);
      user_set.insert(x.v);
    }
  }
  // Attributes come from the earliest snapshot's profiles.
  const auto& first = raw.entries.front();
  std::vector<AttributeRecord> records;
  if (!first.attribute_file.empty()) records = read_attribute_records(resolve(first.attribute_file));
  std::vector<NamedMutex> mutex;
  if (!first.mutex_file.empty()) mutex = read_mutex_pairs(resolve(first.mutex_file));
  for (const auto& r : records) user_set.insert(r.user);
  const std::vector<std::string> users(user_set.begin(), user_set.end());
  const auto vocabulary = build_vocabulary(records, options.min_freq);

  const auto earliest = assemble_network(users, vocabulary.names, edges.front(), records, mutex);
  const auto core = drop_unused_attributes(select_core(earliest, options.k));

  Output o(options.out);
  Manifest out;
  out.base_dir = o.dir();
  out.nodes_file = "nodes.tsv";
  write_node_list(o.dir() / out.nodes_file, core.social_names());
  o.note(o.dir() / out.nodes_file);
  write_attribute_links(o.dir() / "attributes.tsv", core);
  o.note(o.dir() / "attributes.tsv");
  write_mutex_pairs(o.dir() / "mutex.tsv", core);
  o.note(o.dir() / "mutex.tsv");

  std::ostringstream stats;
  stats << "network,soci_links,all_soci_links,soci_nodes,pos_attri_links,attri_nodes\n";
  Snapshot cumulative;
  for (std::size_t i = 0; i < raw.entries.size(); ++i) {
    const auto& e = raw.entries[i];
    Snapshot observed{assemble_network(core.social_names(), core.attribute_names(), edges[i], records, mutex),
                      e.label, e.ordinal};
    cumulative = i == 0 ? observed : backfill_missing_links(cumulative, observed);
    ManifestEntry m;
    m.label = e.label;
    m.ordinal = e.ordinal;
    m.edge_file = e.label + ".edges";
    m.all_edge_file = e.label + ".all.edges";
    m.attribute_file = "attributes.tsv";
    m.mutex_file = "mutex.tsv";
    write_social_edges(o.dir() / m.edge_file, observed.network);
    write_social_edges(o.dir() / m.all_edge_file, cumulative.network);
    o.note(o.dir() / m.edge_file);
    o.note(o.dir() / m.all_edge_file);
    out.entries.push_back(m);

    std::size_t attribute_nodes = 0;
    for (std::uint32_t a = 0; a < observed.network.num_attributes(); ++a) {
      attribute_nodes += !observed.network.members_of(a, LinkSign::kPositive).empty();
    }
    stats << e.label << options.k << ',' << observed.network.num_social_edges() << ','
          << cumulative.network.num_social_edges() << ',' << observed.network.num_social() << ','
          << observed.network.num_attribute_links(LinkSign::kPositive) << ',' << attribute_nodes << '\n';
  }
  write_manifest(o.dir() / "manifest.json", out);
  o.note(o.dir() / "manifest.json");
  o.text("stats.csv", stats.str());
  return {o.take(), parse_table(stats.str())};
}

// ---- predict ---------------------------------------------------------------

CommandResult cmd_predict(const ExperimentConfig& c) {
  c.check();
  if (c.task_value() == Task::kAttributeLink) return cmd_infer(c);
  require_labels(c, true);
  const SnapshotStore store(read_manifest(c.manifest));
  const auto validation = load_pair(store, c.train, c.validate);
  const auto test = load_pair(store, c.validate, c.test);
  const GridSpec grid = c.grid.empty() ? GridSpec{} : parse_grid(c.grid);

  Output o(c.out);
  o.text("config.json", c.to_json().dump(2) + "\n");

  LinkExperiment ex;
  ex.validation = validation;
  ex.test = test;
  ex.scope = c.scope_value();
  ex.labels = c.label_options();
  ex.trials = c.trials;
  ex.seed = c.seed_value();

  ResultTable table;
  table.columns = {"w/o Attri", "With Attri"};
  const bool any_scorer = c.variants.empty() || !c.scorers.empty();
  for (const auto& spec : any_scorer ? scorer_specs(c, default_link_scorers(), {link_rank(c)})
                                     : std::vector<ScorerSpec>{}) {
    TableRow row{spec.display_name(), {}};
    for (bool social_only : {true, false}) {
      const std::string setting = social_only ? "without" : "with";
      ex.grid = grid_for(spec, grid);
      ex.descriptor = base_descriptor(c);
      ex.descriptor["scorer"] = spec.describe();
      ex.descriptor["setting"] = setting;
      auto outcome = run_link_experiment(ex, unsupervised_link_scorer(spec, social_only));
      outcome.last_scores.scorer = apply_grid_point(spec, outcome.selection.best);
      const std::string stem = spec.id() + "_" + setting;
      const auto& net = social_only ? project_social(test.train.network) : test.train.network;
      o.text("scores_" + stem + ".csv", score_csv(outcome.last_scores, net));
      o.text("roc_" + stem + ".csv", roc_csv(outcome.last_labels, outcome.last_scores));
      o.text("report_" + stem + ".json", outcome.report.to_json() + "\n");
      row.cells.push_back(cell_of(outcome.report.metric("auc")));
    }
    table.rows.push_back(std::move(row));
  }
  if (!table.rows.empty()) o.text("results.csv", format_table(table));

  ResultTable supervised;
  supervised.columns = {"AUC"};
  for (const auto& name : c.variants) {
    const auto variant = parse_variant(name);
    if (variant == FeatureVariant::kSai) throw DomainError("variant sai belongs to --task attributes");
    LinkFeatureConfig features;
    for (GlobalHyper* h : {&features.social, &features.san}) {
      h->lra_rank = h->cn_lra_rank = h->aa_lra_rank = link_rank(c);
      h->alpha = c.alpha;
      h->seed = c.seed_value();
    }
    SupervisedOptions sup;
    sup.seed = c.seed_value();
    ex.grid = GridSpec{};
    ex.descriptor = base_descriptor(c);
    ex.descriptor["variant"] = to_string(variant);
    ex.descriptor["features"] = std::to_string(feature_names(variant).size());
    auto outcome = run_link_experiment(
        ex, slp_link_scorer(validation, ex.scope, ex.labels, variant, features, sup));
    const std::string stem = to_string(variant);
    o.text("scores_" + stem + ".csv", score_csv(outcome.last_scores, test.train.network));
    o.text("roc_" + stem + ".csv", roc_csv(outcome.last_labels, outcome.last_scores));
    o.text("report_" + stem + ".json", outcome.report.to_json() + "\n");
    supervised.rows.push_back({display_name(variant), {cell_of(outcome.report.metric("auc"))}});
  }
  if (!supervised.rows.empty()) o.text("supervised.csv", format_table(supervised));
  return {o.take(), table.rows.empty() ? supervised : table};
}

// ---- infer -----------------------------------------------------------------

CommandResult cmd_infer(const ExperimentConfig& c) {
  c.check();
  require_labels(c, false);
  const SnapshotStore store(read_manifest(c.manifest));
  const auto snapshot = store.load(c.train, EdgeChoice::kBackfilled);
  const std::vector<int> ranks = c.ranks.empty() ? std::vector<int>{100, 1000} : c.ranks;

  Output o(c.out);
  o.text("config.json", c.to_json().dump(2) + "\n");

  AttributeExperiment ex;
  ex.network = snapshot.network;
  ex.sample_fraction = c.sample_fraction;
  ex.ks = c.ks;
  ex.mutex_postprocessing = c.mutex_postprocessing;
  ex.trials = c.trials;
  ex.seed = c.seed_value();

  ResultTable table;
  table.columns.push_back("AUC");
  for (int k : c.ks) table.columns.push_back("Pre@" + std::to_string(k));

  auto record = [&](const std::string& label, const std::string& stem, const AttributeOutcome& outcome) {
    TableRow row{label, {cell_of(outcome.report.metric("auc"))}};
    for (int k : c.ks) row.cells.push_back(cell_of(outcome.report.metric("pre@" + std::to_string(k))));
    table.rows.push_back(std::move(row));
    o.text("report_" + stem + ".json", outcome.report.to_json() + "\n");
    std::ostringstream decisions;
    decisions.precision(17);
    decisions << "user,attribute,score,positive,demoted\n";
    for (const auto& d : outcome.trials.back().decisions) {
      decisions << snapshot.network.social_name(d.user) << ',' << snapshot.network.attribute_name(d.attribute)
                << ',' << d.score << ',' << d.positive << ',' << d.demoted << '\n';
    }
    o.text("decisions_" + stem + ".csv", decisions.str());
  };

  const bool any_scorer = c.variants.empty() || !c.scorers.empty();
  for (const auto& spec : any_scorer ? scorer_specs(c, default_attribute_scorers(), ranks)
                                     : std::vector<ScorerSpec>{}) {
    ex.descriptor = base_descriptor(c);
    ex.descriptor["scorer"] = spec.describe();
    const auto outcome = run_attribute_experiment(ex, unsupervised_attribute_scorer(spec));
    const std::string suffix = spec.uses_rank() ? "_r" + std::to_string(spec.rank) : "";
    const std::string label =
        spec.uses_rank() ? spec.display_name() + " (rank " + std::to_string(spec.rank) + ")" : spec.display_name();
    record(label, spec.id() + suffix, outcome);
  }
  for (const auto& name : c.variants) {
    if (parse_variant(name) != FeatureVariant::kSai) {
      throw DomainError("variant " + name + " belongs to --task links");
    }
    AttributeFeatureConfig features;
    features.rank1 = ranks.front();
    features.rank2 = ranks.size() > 1 ? ranks[1] : ranks.front();
    features.alpha = c.alpha;
    features.seed = c.seed_value();
    SupervisedOptions sup;
    sup.seed = c.seed_value();
    ex.descriptor = base_descriptor(c);
    ex.descriptor["variant"] = "sai";
    const auto outcome = run_attribute_experiment(ex, sai_attribute_scorer(features, sup));
    record(display_name(FeatureVariant::kSai), "sai", outcome);
  }
  o.text("results.csv", format_table(table));
  return {o.take(), table};
}

// ---- iterate ---------------------------------------------------------------

CommandResult cmd_iterate(const ExperimentConfig& c) {
  c.check();
  require_labels(c, true);
  const SnapshotStore store(read_manifest(c.manifest));

  Output o(c.out);
  o.text("config.json", c.to_json().dump(2) + "\n");

  IterativeExperiment ex;
  ex.validation = load_pair(store, c.train, c.validate);
  ex.test = load_pair(store, c.validate, c.test);
  ex.scope = c.scope_value();
  ex.labels = c.label_options();
  ex.grid = c.grid.empty() ? GridSpec{} : parse_grid(c.grid);
  ex.sample_fraction = c.sample_fraction;
  ex.top_k = c.top_k;
  ex.inference.seed = c.seed_value();
  ex.mutex_postprocessing = c.mutex_postprocessing;
  ex.iterations = c.iterations;
  ex.trials = c.trials;
  ex.seed = c.seed_value();

  ResultTable table;
  for (auto v : kIterativeVariants) table.columns.push_back(column_name(v));
  for (const auto& spec : scorer_specs(c, default_link_scorers(), {link_rank(c)})) {
    ex.descriptor = base_descriptor(c);
    const auto outcome = run_iterative_experiment(ex, spec);
    o.text("report_" + spec.id() + ".json", outcome.report.to_json() + "\n");
    TableRow row{spec.display_name(), {}};
    for (auto v : kIterativeVariants) row.cells.push_back(cell_of(outcome.report.metric("auc_" + to_string(v))));
    table.rows.push_back(std::move(row));
  }
  o.text("results.csv", format_table(table));
  return {o.take(), table};
}

}  // namespace san::cli
