#pragma once

#include <cstdint>
#include <vector>

#include "san/network.hpp"

namespace san {

struct RwwrParams {
  double alpha = 0.7;  // restart probability, in (0, 1]
  double tol = 1e-10;  // L1 change between sweeps
  int max_iters = 1000;
};

void check_params(const RwwrParams& params);

// Row-normalized walk graph over N + M nodes: social nodes first, then
// attribute nodes at offset N. Only social links and positive attribute
// links are traversable.
class WalkGraph {
 public:
  explicit WalkGraph(const SocialAttributeNetwork& network);

  std::size_t size() const { return offsets_.size() - 1; }
  std::size_t flat_index(const NodeRef& node) const {
    return node.is_social() ? node.index : num_social_ + node.index;
  }

  // Stationary distribution of the walk restarting at `source` with
  // probability alpha per step. Mass at nodes without out-links returns to
  // the source. Throws SolverError if the L1 change stays above tol.
  std::vector<double> stationary(const NodeRef& source, const RwwrParams& params) const;

 private:
  std::uint32_t num_social_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::uint32_t> targets_;
  std::vector<double> probabilities_;  // w(u,t) / sum_t w(u,t)
};

// Convenience wrapper: builds the walk graph and returns the distribution
// indexed by WalkGraph::flat_index.
std::vector<double> rwwr(const SocialAttributeNetwork& network, const NodeRef& source,
                         const RwwrParams& params);

}  // namespace san
