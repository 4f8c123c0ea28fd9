#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "san/evaluation.hpp"
#include "san/ingest.hpp"
#include "san/network.hpp"

namespace san {

// Planted-community generator for snapshot triples.
//
// Every user belongs to one of `communities` equal-sized groups, and every
// group owns a pool of `attributes_per_community` attributes. Each user draws
// between min_attributes and max_attributes positive attributes: from its
// own pool with probability `homophily`, else uniformly from all attributes.
// Social edges are drawn one at a time: within the community with
// probability p_in, by closing a triangle with probability p_triadic, else
// uniformly. The first initial_edges form the first snapshot; each later
// snapshot adds new_edges more. A snapshot's observed edge file hides
// missing_edges edges of the previous snapshot (and keeps hiding the ones
// hidden before); its backfilled file lists them all.
struct GeneratorParams {
  std::uint32_t nodes = 2000;
  std::uint32_t communities = 40;
  std::uint32_t attributes_per_community = 10;
  int min_attributes = 2;
  int max_attributes = 5;
  double homophily = 0.8;
  std::uint32_t mutex_pairs = 40;  // placed inside community pools
  int extra_negative_attributes = 2;
  std::size_t initial_edges = 6000;
  std::size_t new_edges = 1200;
  std::size_t missing_edges = 300;
  double p_in = 0.5;
  double p_triadic = 0.2;
  std::uint32_t snapshots = 3;

  // Throws DomainError naming the first invalid field.
  void validate() const;
};

struct SyntheticData {
  GeneratorParams params;
  std::uint64_t seed = 0;
  std::vector<Snapshot> observed;    // edges as seen in each snapshot
  std::vector<Snapshot> backfilled;  // every edge created so far
  std::vector<std::uint32_t> community;
  // new_links[i]: edges of snapshot i+1 absent from snapshot i.
  std::vector<std::vector<SocialEdge>> new_links;
  // hidden[i]: edges of earlier snapshots missing from observed[i+1].
  std::vector<std::vector<SocialEdge>> hidden;
};

SyntheticData generate(const GeneratorParams& params, std::uint64_t seed);

// Writes nodes.tsv, per-snapshot edge, backfilled edge, attribute and mutex
// files, and manifest.json into `dir`. Returns the manifest path.
std::filesystem::path write_synthetic(const std::filesystem::path& dir, const SyntheticData& data);

// Snapshot labels of generated data: t1, t2, ...
std::string synthetic_label(std::uint32_t index);

// The in-memory counterpart of load_pair on written files.
SnapshotPair synthetic_pair(const SyntheticData& data, std::uint32_t train, std::uint32_t test);

}  // namespace san
