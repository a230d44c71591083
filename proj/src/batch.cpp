#include "desynclab/batch.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

#include "desynclab/stats.hpp"

namespace desynclab {

int resolve_thread_count(int requested) {
  if (requested < 0) throw std::invalid_argument("thread count must be >= 0");
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

void run_tasks(long n_tasks, int threads, const std::function<void(long)>& fn) {
  if (threads <= 1 || n_tasks <= 1) {
    for (long i = 0; i < n_tasks; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  auto worker = [&] {
    for (;;) {
      const long i = next.fetch_add(1);
      if (i >= n_tasks) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  const int n = std::min<long>(threads, n_tasks);
  pool.reserve(n);
  for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace

std::vector<TrialRecord> run_cell(const SimConfig& cell, int trials,
                                  std::uint64_t base_seed, int threads) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  std::vector<TrialRecord> records(trials);
  run_tasks(trials, resolve_thread_count(threads), [&](long i) {
    SimConfig c = cell;
    c.seed = base_seed + static_cast<std::uint64_t>(i);
    records[i] = run_trial(c);
  });
  return records;
}

GridSummary summarize(const SimConfig& cell,
                      const std::vector<TrialRecord>& trials) {
  GridSummary s;
  s.protocol = cell.protocol;
  s.w = cell.params.w;
  s.alpha = cell.params.alpha;
  s.b_thres = cell.params.b_thres;
  s.n_trials = static_cast<int>(trials.size());

  std::vector<double> cycles;
  cycles.reserve(trials.size());
  double first_period = 0.0;
  for (const TrialRecord& t : trials) {
    if (t.converged) {
      cycles.push_back(static_cast<double>(t.network_cycles));
    } else {
      s.non_converged += 1;
    }
    first_period +=
        static_cast<double>(t.pco_updates_first_period) / cell.params.w;
  }
  s.mean_cycles = cycles.empty()
                      ? std::numeric_limits<double>::quiet_NaN()
                      : mean(cycles);
  s.std_cycles = sample_std(cycles);
  s.mean_first_period_updates =
      trials.empty() ? 0.0 : first_period / static_cast<double>(trials.size());
  return s;
}

std::vector<GridSummary> run_grid(const std::vector<SimConfig>& cells,
                                  int trials_per_cell,
                                  std::uint64_t base_seed, int threads) {
  if (trials_per_cell < 2)
    throw std::invalid_argument("trials_per_cell must be >= 2");
  const long n_cells = static_cast<long>(cells.size());
  std::vector<std::vector<TrialRecord>> records(n_cells);
  for (long c = 0; c < n_cells; ++c)
    records[c].resize(trials_per_cell);

  run_tasks(n_cells * trials_per_cell, resolve_thread_count(threads),
            [&](long task) {
              const long c = task / trials_per_cell;
              const long i = task % trials_per_cell;
              SimConfig cfg = cells[c];
              cfg.seed = base_seed + static_cast<std::uint64_t>(i);
              records[c][i] = run_trial(cfg);
            });

  std::vector<GridSummary> out;
  out.reserve(n_cells);
  for (long c = 0; c < n_cells; ++c)
    out.push_back(summarize(cells[c], records[c]));
  return out;
}

}  // namespace desynclab
