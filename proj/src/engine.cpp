#include "exit_ibp/engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace exit_ibp {

int auto_worker_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

EngineOutput run_chunked(const EngineOptions& options, int n_outputs, const KernelFactory& factory) {
  if (options.n_samples < 1) throw std::invalid_argument("n_samples must be at least 1");
  if (options.chunk_size < 1) throw std::invalid_argument("chunk_size must be at least 1");
  if (n_outputs < 1) throw std::invalid_argument("kernel must produce at least one output");

  const auto started = std::chrono::steady_clock::now();
  const std::int64_t n_chunks = (options.n_samples + options.chunk_size - 1) / options.chunk_size;
  std::vector<std::vector<McStatistics>> chunks(n_chunks, std::vector<McStatistics>(n_outputs));
  std::vector<std::string> dumps(options.collect_dump ? n_chunks : 0);

  std::atomic<std::int64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    try {
      PathKernel kernel = factory();
      std::vector<double> values(n_outputs);
      for (;;) {
        const std::int64_t c = next.fetch_add(1);
        if (c >= n_chunks || failed.load()) return;
        RngStream rng(options.seed, static_cast<std::uint64_t>(c));
        const std::int64_t begin = c * options.chunk_size;
        const std::int64_t count = std::min(options.chunk_size, options.n_samples - begin);
        auto& stats = chunks[c];
        std::string* dump = options.collect_dump ? &dumps[c] : nullptr;
        for (std::int64_t s = 0; s < count; ++s) {
          if (kernel(rng, values, dump)) {
            for (int k = 0; k < n_outputs; ++k) stats[k].add(values[k]);
          } else {
            for (auto& st : stats) ++st.abort_count;
          }
        }
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      failed.store(true);
    }
  };

  const int workers = std::max(1, std::min<int>(options.workers, static_cast<int>(n_chunks)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  EngineOutput out;
  out.totals.assign(n_outputs, McStatistics{});
  for (const auto& chunk : chunks) {
    for (int k = 0; k < n_outputs; ++k) out.totals[k].merge(chunk[k]);
  }
  for (const auto& d : dumps) out.dump += d;
  out.chunks = std::move(chunks);
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return out;
}

}  // namespace exit_ibp
