#include "landau/batching.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "landau/core.hpp"

namespace landau {

std::uint64_t uniform_below(BatchRng& rng, std::uint64_t bound) {
  // Lemire's multiply-shift with rejection of the biased low band.
  std::uint64_t x = rng();
  __uint128_t m = static_cast<__uint128_t>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = rng();
      m = static_cast<__uint128_t>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

namespace {

void fill_offsets(BatchPlan& plan, std::size_t n, std::size_t q) {
  plan.offsets.assign(q + 1, 0);
  const std::size_t base = n / q, extra = n % q;
  for (std::size_t b = 0; b < q; ++b)
    plan.offsets[b + 1] = plan.offsets[b] + base + (b < extra ? 1 : 0);
  plan.batch_of.assign(n, 0);
  for (std::size_t b = 0; b < q; ++b)
    for (std::size_t s = plan.offsets[b]; s < plan.offsets[b + 1]; ++s)
      plan.batch_of[plan.order[s]] = static_cast<Index>(b);
}

}  // namespace

BatchPlan make_batches(std::size_t n, std::size_t q, BatchRng& rng) {
  if (q < 1 || q > n)
    throw ConfigError("batch count q=" + std::to_string(q) + " must lie in [1, N=" +
                      std::to_string(n) + "]");
  BatchPlan plan;
  plan.order.resize(n);
  std::iota(plan.order.begin(), plan.order.end(), Index{0});
  for (std::size_t i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i + 1));
    std::swap(plan.order[i], plan.order[j]);
  }
  fill_offsets(plan, n, q);
  return plan;
}

BatchPlan plan_from_batches(const std::vector<std::vector<Index>>& batches) {
  BatchPlan plan;
  plan.offsets.assign(1, 0);
  for (const auto& b : batches) {
    plan.order.insert(plan.order.end(), b.begin(), b.end());
    plan.offsets.push_back(plan.order.size());
  }
  const std::size_t n = plan.order.size();
  std::vector<bool> seen(n, false);
  for (Index i : plan.order) {
    if (i >= n || seen[i]) throw ConfigError("batches must partition 0..N-1");
    seen[i] = true;
  }
  plan.batch_of.assign(n, 0);
  for (std::size_t b = 0; b + 1 < plan.offsets.size(); ++b)
    for (std::size_t s = plan.offsets[b]; s < plan.offsets[b + 1]; ++s)
      plan.batch_of[plan.order[s]] = static_cast<Index>(b);
  return plan;
}

int same_batch_indicator(const BatchPlan& plan, std::size_t i, std::size_t j) {
  const std::size_t n = plan.particle_count();
  if (i >= n || j >= n) throw std::out_of_range("particle index outside the batch plan");
  return plan.batch_of[i] == plan.batch_of[j] ? 1 : 0;
}

}  // namespace landau
