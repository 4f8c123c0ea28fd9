#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "commands.hpp"
#include "san/errors.hpp"

namespace {

using san::cli::ExperimentConfig;

// Flags shared by predict, infer and iterate. Values given on the command
// line override those read from --config.
struct ExperimentFlags {
  std::string config_path;
  ExperimentConfig c;
  std::uint64_t seed = 0;
  bool no_mutex = false;
  std::map<std::string, CLI::Option*> options;

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "JSON experiment config")->check(CLI::ExistingFile);
    auto add = [&](const std::string& name, auto& field, const std::string& help) {
      return options[name] = app->add_option(name, field, help);
    };
    add("--manifest", c.manifest, "snapshot manifest");
    add("--train", c.train, "training snapshot label");
    add("--validate", c.validate, "validation snapshot label");
    add("--test", c.test, "test snapshot label");
    add("--task", c.task, "links or attributes")->check(CLI::IsMember({"links", "attributes"}));
    add("--scope", c.scope, "hop2cat1, anyhop, cat1 or cat1and2")
        ->check(CLI::IsMember({"hop2cat1", "anyhop", "cat1", "cat1and2"}));
    add("--scorer", c.scorers, "scorer ids (cn aa lra cn_lra aa_lra rwwr baseline random)")->delimiter(',');
    add("--grid", c.grid, "hyperparameter grid, e.g. rank=5,10;alpha=0.5,0.7");
    add("--alpha", c.alpha, "RWwR restart probability");
    add("--ranks", c.ranks, "LRA ranks")->delimiter(',');
    add("--variant", c.variants, "supervised variants (slp1 slp2 slpsan3 slpsan6 sai)")->delimiter(',');
    add("--trials", c.trials, "number of trials");
    add("--sample-frac", c.sample_fraction, "fraction of users whose attributes are removed");
    add("--topk", c.top_k, "attributes inferred per user");
    add("--ks", c.ks, "K values for Pre@K")->delimiter(',');
    add("--negatives", c.negatives, "sampled or exhaustive")->check(CLI::IsMember({"sampled", "exhaustive"}));
    add("--negative-ratio", c.negative_ratio, "sampled negatives per positive");
    add("--iterations", c.iterations, "inference rounds (more than 1 is experimental)");
    add("--out", c.out, "output directory");
    add("--seed", seed, "random seed");
    app->add_flag("--no-mutex", [this](std::int64_t) { no_mutex = true; }, "skip mutex post-processing");
  }

  ExperimentConfig resolve() const {
    ExperimentConfig out = config_path.empty() ? ExperimentConfig{} : ExperimentConfig::load(config_path);
    auto given = [&](const char* name) { return options.at(name)->count() > 0; };
    if (given("--manifest")) out.manifest = c.manifest;
    if (given("--train")) out.train = c.train;
    if (given("--validate")) out.validate = c.validate;
    if (given("--test")) out.test = c.test;
    if (given("--task")) out.task = c.task;
    if (given("--scope")) out.scope = c.scope;
    if (given("--scorer")) out.scorers = c.scorers;
    if (given("--grid")) out.grid = c.grid;
    if (given("--alpha")) out.alpha = c.alpha;
    if (given("--ranks")) out.ranks = c.ranks;
    if (given("--variant")) out.variants = c.variants;
    if (given("--trials")) out.trials = c.trials;
    if (given("--sample-frac")) out.sample_fraction = c.sample_fraction;
    if (given("--topk")) out.top_k = c.top_k;
    if (given("--ks")) out.ks = c.ks;
    if (given("--negatives")) out.negatives = c.negatives;
    if (given("--negative-ratio")) out.negative_ratio = c.negative_ratio;
    if (given("--iterations")) out.iterations = c.iterations;
    if (given("--out")) out.out = c.out;
    if (given("--seed")) out.seed = seed;
    if (no_mutex) out.mutex_postprocessing = false;
    return out;
  }
};

void print_written(const san::cli::CommandResult& result) {
  for (const auto& p : result.written) std::cout << p.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Link prediction and attribute inference on social-attribute networks"};
  app.require_subcommand(1);

  san::GeneratorParams gen;
  std::uint64_t gen_seed = 0;
  std::string gen_out = "synthetic";
  auto* generate = app.add_subcommand("generate", "write a synthetic snapshot triple");
  generate->add_option("--nodes", gen.nodes, "users")->capture_default_str();
  generate->add_option("--communities", gen.communities, "planted communities")->capture_default_str();
  generate->add_option("--attributes-per-community", gen.attributes_per_community)->capture_default_str();
  generate->add_option("--homophily", gen.homophily, "share of attributes drawn from the own pool")
      ->capture_default_str();
  generate->add_option("--mutex-pairs", gen.mutex_pairs)->capture_default_str();
  generate->add_option("--initial-edges", gen.initial_edges)->capture_default_str();
  generate->add_option("--new-edges", gen.new_edges, "edges added per snapshot")->capture_default_str();
  generate->add_option("--missing-edges", gen.missing_edges, "edges hidden per snapshot")->capture_default_str();
  generate->add_option("--p-in", gen.p_in)->capture_default_str();
  generate->add_option("--p-triadic", gen.p_triadic)->capture_default_str();
  generate->add_option("--snapshots", gen.snapshots)->capture_default_str();
  generate->add_option("--seed", gen_seed, "random seed")->required();
  generate->add_option("--out", gen_out, "output directory")->capture_default_str();

  san::cli::IngestOptions ingest_opts;
  auto* ingest = app.add_subcommand("ingest", "build canonical snapshots from raw crawls");
  ingest->add_option("--manifest", ingest_opts.manifest, "raw manifest")->required();
  ingest->add_option("--k", ingest_opts.k, "minimum positive attributes per user")->capture_default_str();
  ingest->add_option("--min-freq", ingest_opts.min_freq, "minimum attribute frequency")->capture_default_str();
  ingest->add_option("--out", ingest_opts.out, "output directory")->required();

  ExperimentFlags predict_flags, infer_flags, iterate_flags;
  auto* predict = app.add_subcommand("predict", "link prediction on snapshot pairs");
  predict_flags.attach(predict);
  auto* infer = app.add_subcommand("infer", "attribute inference on one snapshot");
  infer_flags.attach(infer);
  auto* iterate = app.add_subcommand("iterate", "infer attributes, then predict links");
  iterate_flags.attach(iterate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? san::cli::kExitOk : san::cli::kExitUsage;
  }

  try {
    if (generate->parsed()) {
      print_written(san::cli::cmd_generate(gen, gen_seed, gen_out));
    } else if (ingest->parsed()) {
      print_written(san::cli::cmd_ingest(ingest_opts));
    } else if (predict->parsed()) {
      print_written(san::cli::cmd_predict(predict_flags.resolve()));
    } else if (infer->parsed()) {
      auto c = infer_flags.resolve();
      c.task = "attributes";
      print_written(san::cli::cmd_infer(c));
    } else if (iterate->parsed()) {
      print_written(san::cli::cmd_iterate(iterate_flags.resolve()));
    }
  } catch (const san::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return san::cli::kExitParse;
  } catch (const san::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return san::cli::kExitDomain;
  } catch (const san::SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return san::cli::kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return san::cli::kExitOther;
  }
  return san::cli::kExitOk;
}
