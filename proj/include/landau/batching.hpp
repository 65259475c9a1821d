#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "landau/neighbor.hpp"

namespace landau {

/// Pseudorandom source for batch plans. Fixed algorithm so plans are
/// reproducible across standard library implementations.
using BatchRng = std::mt19937_64;

/// Unbiased integer in [0, bound) by rejection (bound >= 1).
std::uint64_t uniform_below(BatchRng& rng, std::uint64_t bound);

/// One random partition of 0..N-1 into q batches of near-equal size. The
/// first N mod q batches hold one extra index.
struct BatchPlan {
  std::vector<Index> order;           ///< shuffled particle indices
  std::vector<std::size_t> offsets;   ///< batch b is order[offsets[b] .. offsets[b+1])
  std::vector<Index> batch_of;        ///< batch id per particle

  std::size_t particle_count() const { return order.size(); }
  std::size_t batch_count() const { return offsets.size() - 1; }
  std::size_t batch_size(std::size_t b) const { return offsets[b + 1] - offsets[b]; }
  std::span<const Index> batch(std::size_t b) const {
    return {order.data() + offsets[b], order.data() + offsets[b + 1]};
  }
};

/// Fisher-Yates shuffle of 0..N-1 sliced into q contiguous parts.
BatchPlan make_batches(std::size_t n, std::size_t q, BatchRng& rng);

/// Builds a plan from explicit batches (tests and enumeration).
BatchPlan plan_from_batches(const std::vector<std::vector<Index>>& batches);

/// 1 iff i and j share a batch.
int same_batch_indicator(const BatchPlan& plan, std::size_t i, std::size_t j);

}  // namespace landau
