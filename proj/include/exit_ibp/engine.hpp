#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "exit_ibp/rng.hpp"
#include "exit_ibp/statistics.hpp"

namespace exit_ibp {

struct EngineOptions {
  std::int64_t n_samples = 0;
  std::int64_t chunk_size = 4096;
  std::uint64_t seed = 0;
  int workers = 1;
  bool collect_dump = false;
};

/// Draws one sample and writes one value per output slot. Returns false when
/// the sample is aborted; the slots are then ignored and the abort counted.
/// `dump` is non-null only when EngineOptions::collect_dump is set.
using PathKernel = std::function<bool(RngStream&, std::span<double>, std::string* dump)>;
/// Each worker builds its own kernel, so kernels may own scratch buffers.
using KernelFactory = std::function<PathKernel()>;

struct EngineOutput {
  std::vector<McStatistics> totals;               ///< one per output slot
  std::vector<std::vector<McStatistics>> chunks;  ///< [chunk][slot]
  std::string dump;                               ///< chunk-ordered dump text
  double seconds = 0.0;
};

/// Splits n_samples into chunks of chunk_size; chunk c draws from
/// RngStream(seed, c). Chunks are merged in index order on the calling
/// thread, so the result does not depend on the worker count. An exception
/// thrown by a kernel stops the run and is rethrown here.
EngineOutput run_chunked(const EngineOptions& options, int n_outputs, const KernelFactory& factory);

/// Worker count for "auto": hardware concurrency, at least 1.
int auto_worker_count();

}  // namespace exit_ibp
