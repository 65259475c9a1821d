#include "landau/neighbor.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace landau {

namespace {

double dist2(const Vec& a, const Vec& b, int d) {
  double r2 = 0.0;
  for (int k = 0; k < d; ++k) {
    const double t = a[k] - b[k];
    r2 += t * t;
  }
  return r2;
}

// Runs fill(t, out) for every target and concatenates the per-target lists in
// target order. Each thread handles one contiguous block.
template <typename Fill>
PairList gather_lists(std::size_t n_targets, Fill fill) {
  int nthreads = 1;
#ifdef _OPENMP
  nthreads = omp_get_max_threads();
#endif
  std::vector<std::vector<std::size_t>> counts(nthreads);
  std::vector<std::vector<Index>> chunks(nthreads);
  std::vector<std::size_t> begin(nthreads + 1);
  for (int t = 0; t <= nthreads; ++t) begin[t] = n_targets * t / nthreads;

#pragma omp parallel num_threads(nthreads)
  {
    int tid = 0;
#ifdef _OPENMP
    tid = omp_get_thread_num();
#endif
    std::vector<Index> scratch;
    auto& cnt = counts[tid];
    auto& out = chunks[tid];
    cnt.reserve(begin[tid + 1] - begin[tid]);
    for (std::size_t t = begin[tid]; t < begin[tid + 1]; ++t) {
      scratch.clear();
      fill(t, scratch);
      cnt.push_back(scratch.size());
      out.insert(out.end(), scratch.begin(), scratch.end());
    }
  }

  PairList pl;
  pl.offsets.assign(n_targets + 1, 0);
  std::size_t total = 0;
  for (const auto& c : chunks) total += c.size();
  pl.indices.reserve(total);
  std::size_t t = 0;
  for (int tid = 0; tid < nthreads; ++tid) {
    for (std::size_t c : counts[tid]) {
      pl.offsets[t + 1] = pl.offsets[t] + c;
      ++t;
    }
    pl.indices.insert(pl.indices.end(), chunks[tid].begin(), chunks[tid].end());
  }
  return pl;
}

}  // namespace

std::int64_t CellList::linear(const std::array<std::int64_t, 3>& c) const {
  return (c[0] * ncell_[1] + c[1]) * ncell_[2] + c[2];
}

std::array<std::int64_t, 3> CellList::cell_of(const Vec& x) const {
  std::array<std::int64_t, 3> c{0, 0, 0};
  for (int k = 0; k < d_; ++k) {
    const double u = std::floor((x[k] - box_min_[k]) / cell_size_);
    // clamp far-away queries so the integer conversion stays defined
    c[k] = static_cast<std::int64_t>(std::clamp(u, -2.0, static_cast<double>(ncell_[k] + 1)));
  }
  return c;
}

std::span<const Index> CellList::bucket(const std::array<std::int64_t, 3>& c) const {
  for (int k = 0; k < 3; ++k)
    if (c[k] < 0 || c[k] >= ncell_[k]) return {};
  const auto l = static_cast<std::size_t>(linear(c));
  return {sorted_.data() + cell_start_[l], sorted_.data() + cell_start_[l + 1]};
}

void CellList::collect_within(const Vec& x, std::vector<Index>& out) const {
  if (points_.empty()) return;
  const auto c = cell_of(x);
  std::array<std::int64_t, 3> lo{0, 0, 0}, hi{0, 0, 0};
  for (int k = 0; k < d_; ++k) {
    lo[k] = std::max<std::int64_t>(c[k] - 1, 0);
    hi[k] = std::min<std::int64_t>(c[k] + 1, ncell_[k] - 1);
    if (lo[k] > hi[k]) return;
  }
  // the last axis is fastest, so each run of cells along it is contiguous
  auto scan = [&](std::array<std::int64_t, 3> from, std::array<std::int64_t, 3> to) {
    const std::size_t first = cell_start_[static_cast<std::size_t>(linear(from))];
    const std::size_t last = cell_start_[static_cast<std::size_t>(linear(to)) + 1];
    std::size_t k = out.size();
    out.resize(k + (last - first));
    for (std::size_t s = first; s < last; ++s) {
      out[k] = sorted_[s];
      k += dist2(x, sorted_points_[s], d_) <= sigma2_ ? 1 : 0;
    }
    out.resize(k);
  };
  if (d_ == 2) {
    for (std::int64_t a = lo[0]; a <= hi[0]; ++a) scan({a, lo[1], 0}, {a, hi[1], 0});
  } else {
    for (std::int64_t a = lo[0]; a <= hi[0]; ++a)
      for (std::int64_t b = lo[1]; b <= hi[1]; ++b) scan({a, b, lo[2]}, {a, b, hi[2]});
  }
}

CellList build_cell_list(std::span<const Vec> points, int d, double sigma) {
  if (d != 2 && d != 3) throw ConfigError("cell list dimension must be 2 or 3");
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw ConfigError("cell list radius must be positive and finite");

  CellList cl;
  cl.d_ = d;
  cl.sigma_ = sigma;
  cl.sigma2_ = sigma * sigma;
  cl.points_.assign(points.begin(), points.end());
  const std::size_t n = points.size();

  Vec lo{0.0, 0.0, 0.0}, hi{0.0, 0.0, 0.0};
  if (n > 0) {
    lo = hi = points[0];
    for (const Vec& p : points)
      for (int k = 0; k < d; ++k) {
        if (!std::isfinite(p[k])) throw NumericalError("cell list got a non-finite point");
        lo[k] = std::min(lo[k], p[k]);
        hi[k] = std::max(hi[k], p[k]);
      }
  }
  cl.box_min_ = lo;

  const double max_cells = std::max<double>(4.0 * static_cast<double>(n), 64.0);
  double cs = sigma;
  for (;;) {
    double total = 1.0;
    for (int k = 0; k < d; ++k) total *= std::floor((hi[k] - lo[k]) / cs) + 1.0;
    if (total <= max_cells) break;
    cs *= 1.25;
  }
  cl.cell_size_ = cs;
  cl.ncell_ = {1, 1, 1};
  for (int k = 0; k < d; ++k)
    cl.ncell_[k] = static_cast<std::int64_t>(std::floor((hi[k] - lo[k]) / cs)) + 1;

  const auto ncells = static_cast<std::size_t>(cl.ncell_[0] * cl.ncell_[1] * cl.ncell_[2]);
  std::vector<std::size_t> cell_id(n);
  cl.cell_start_.assign(ncells + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    auto c = cl.cell_of(points[i]);
    // points on the upper edge of the box round into the last cell
    for (int k = 0; k < d; ++k) c[k] = std::min(c[k], cl.ncell_[k] - 1);
    cell_id[i] = static_cast<std::size_t>(cl.linear(c));
    ++cl.cell_start_[cell_id[i] + 1];
  }
  for (std::size_t l = 0; l < ncells; ++l) cl.cell_start_[l + 1] += cl.cell_start_[l];
  cl.sorted_.resize(n);
  std::vector<std::size_t> fill(cl.cell_start_.begin(), cl.cell_start_.end() - 1);
  for (std::size_t i = 0; i < n; ++i) cl.sorted_[fill[cell_id[i]]++] = static_cast<Index>(i);
  cl.sorted_points_.resize(n);
  for (std::size_t s = 0; s < n; ++s) cl.sorted_points_[s] = points[cl.sorted_[s]];
  return cl;
}

std::vector<Index> query_within(const CellList& cl, const Vec& x, double sigma) {
  if (sigma != cl.sigma())
    throw ConfigError("query radius must equal the radius the cell list was built with");
  std::vector<Index> out;
  cl.collect_within(x, out);
  std::sort(out.begin(), out.end());
  return out;
}

PairList build_pair_list(std::span<const Vec> targets, const CellList& cl, double sigma) {
  if (sigma != cl.sigma())
    throw ConfigError("pair list radius must equal the radius the cell list was built with");
  return gather_lists(targets.size(), [&](std::size_t t, std::vector<Index>& out) {
    cl.collect_within(targets[t], out);
    std::sort(out.begin(), out.end());
  });
}

PairList build_pair_list_brute(std::span<const Vec> targets, std::span<const Vec> sources,
                               int d, double sigma) {
  const double s2 = sigma * sigma;
  return gather_lists(targets.size(), [&](std::size_t t, std::vector<Index>& out) {
    for (std::size_t i = 0; i < sources.size(); ++i)
      if (dist2(targets[t], sources[i], d) <= s2) out.push_back(static_cast<Index>(i));
  });
}

PairList transpose(const PairList& pl, std::size_t source_count) {
  PairList out;
  out.offsets.assign(source_count + 1, 0);
  for (Index s : pl.indices) ++out.offsets[s + 1];
  for (std::size_t s = 0; s < source_count; ++s) out.offsets[s + 1] += out.offsets[s];
  out.indices.resize(pl.indices.size());
  std::vector<std::size_t> fill(out.offsets.begin(), out.offsets.end() - 1);
  for (std::size_t t = 0; t < pl.target_count(); ++t)
    for (Index s : pl.neighbors(t)) out.indices[fill[s]++] = static_cast<Index>(t);
  return out;
}

}  // namespace landau
