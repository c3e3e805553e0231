#pragma once

// Shared helpers for the test binaries.

#include <algorithm>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "algotrace/runner.hpp"
#include "algotrace/samplers.hpp"

namespace testing {

/// Kind of the algotrace::Error thrown by `f`, or nullopt if it returns normally.
template <class F>
std::optional<algotrace::ErrorKind> error_kind(F&& f) {
  try {
    f();
  } catch (const algotrace::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

/// `count` sampler configs with node counts drawn from [lo, hi] (clamped to
/// the algorithm's minimum). Seeds are distinct per (stream, item).
inline std::vector<algotrace::SamplerConfig> random_configs(std::string_view id, std::size_t count,
                                                            int lo, int hi, std::uint64_t stream) {
  std::mt19937_64 gen(stream);
  lo = std::max(lo, algotrace::minimum_nodes(id));
  hi = std::max(hi, lo);
  std::uniform_int_distribution<int> nodes(lo, hi);
  std::vector<algotrace::SamplerConfig> out;
  for (std::size_t i = 0; i < count; ++i) {
    algotrace::SamplerConfig cfg;
    cfg.algorithm_id = std::string(id);
    cfg.n = algotrace::effective_nodes(id, nodes(gen));
    cfg.seed = gen();
    out.push_back(cfg);
  }
  return out;
}

/// Scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("algotrace-" + tag + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  [[nodiscard]] const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& leaf) const { return path_ / leaf; }

 private:
  std::filesystem::path path_;
};

}  // namespace testing
