#include "algotrace/commands.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "algotrace/dataset_io.hpp"
#include "algotrace/runner.hpp"
#include "algotrace/spec_registry.hpp"

namespace algotrace {
namespace fs = std::filesystem;

namespace {

constexpr std::size_t kChunk = 512;
constexpr Split kSplits[] = {Split::Train, Split::Val, Split::Test};

/// Runs fn(i) for i in [0, count) on up to `jobs` threads; rethrows the first failure.
template <class Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
      }
    }
  };
  std::vector<std::thread> threads;
  for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::vector<std::string> resolve_algorithms(const std::vector<std::string>& requested) {
  std::vector<std::string> out;
  const bool all = requested.empty() ||
                   std::find(requested.begin(), requested.end(), "all") != requested.end();
  if (all) {
    for (auto id : algorithm_ids()) out.emplace_back(id);
    return out;
  }
  std::set<std::string> seen;
  for (const auto& id : requested) {
    get_spec(id);
    if (seen.insert(id).second) out.push_back(id);
  }
  return out;
}

// --- generate -----------------------------------------------------------------

std::vector<GenerateSummary> generate_dataset(const GenerateOptions& options, std::ostream* log) {
  const auto algorithms = resolve_algorithms(options.algorithms);
  std::error_code ec;
  fs::create_directories(options.out, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + options.out.string() + ": " + ec.message());
  write_specs_json(options.out);
  const std::uint32_t flags = options.f32_scalars ? kFlagScalarsF32 : 0;

  std::vector<GenerateSummary> summaries;
  for (const auto& id : algorithms) {
    const AlgorithmSpec& spec = get_spec(id);
    const fs::path dir = options.out / id;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());

    Manifest manifest;
    manifest.algorithm_id = id;
    manifest.seed = options.seed;
    manifest.knobs = options.knobs;
    manifest.spec_sha256 = spec_digest(id);
    manifest.scalar_width = options.f32_scalars ? "f32" : "f64";
    GenerateSummary summary{id, 0, 0, 0};

    for (Split split : kSplits) {
      const SplitPlan plan = plan_split(id, split, options.overrides);
      const std::string file = std::string(to_string(split)) + ".traj";
      TrajWriter writer(dir / file, spec, flags);
      std::vector<std::string> payloads;
      std::vector<std::vector<std::string>> problems;
      for (std::size_t start = 0; start < plan.count; start += kChunk) {
        const std::size_t size = std::min(kChunk, plan.count - start);
        payloads.assign(size, {});
        problems.assign(size, {});
        parallel_for(size, options.jobs, [&](std::size_t k) {
          const auto cfg = split_item_config(id, split, options.seed, start + k, plan, options.knobs);
          const Trajectory traj = generate_trajectory(cfg);
          problems[k] = check_against_spec(traj, spec);
          payloads[k] = encode_record(traj, spec, flags);
        });
        for (std::size_t k = 0; k < size; ++k) {
          writer.append_encoded(payloads[k]);
          if (!problems[k].empty()) {
            ++summary.violations;
            if (log != nullptr) {
              *log << id << '/' << to_string(split) << '[' << start + k << "]: " << problems[k].front()
                   << '\n';
            }
          }
        }
      }
      const auto bytes = writer.close();
      manifest.splits[split] = {plan.count, plan.n, file, sha256_file(dir / file), bytes};
      summary.records += plan.count;
      summary.bytes += bytes;
    }
    write_manifest(dir, manifest);
    if (log != nullptr) {
      *log << id << ": " << summary.records << " trajectories, " << summary.bytes << " bytes\n";
    }
    summaries.push_back(summary);
  }
  return summaries;
}

// --- validate -----------------------------------------------------------------

std::vector<fs::path> algorithm_dirs(const fs::path& path) {
  if (fs::exists(path / "manifest.json")) return {path};
  if (!fs::is_directory(path)) throw Error(ErrorKind::Io, path.string() + " is not a directory");
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(path)) {
    if (entry.is_directory() && fs::exists(entry.path() / "manifest.json")) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());
  return dirs;
}

namespace {

std::string first_difference(const Trajectory& expected, const Trajectory& actual) {
  if (expected.n != actual.n) return "node count differs";
  if (expected.seed != actual.seed) return "seed differs from the derived seed";
  auto compare = [](const Frame& a, const Frame& b, const std::string& where) -> std::string {
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
      if (!(a[i] == b[i])) return where + " probe '" + a[i].name + "' differs";
    }
    return a.size() == b.size() ? "" : where + " probe count differs";
  };
  if (auto d = compare(expected.inputs, actual.inputs, "input"); !d.empty()) return d;
  if (expected.hints.size() != actual.hints.size()) {
    return "hint frame count " + std::to_string(actual.hints.size()) + ", replay gives " +
           std::to_string(expected.hints.size());
  }
  for (std::size_t t = 0; t < expected.hints.size(); ++t) {
    if (auto d = compare(expected.hints[t], actual.hints[t], "hint frame " + std::to_string(t));
        !d.empty()) {
      return d;
    }
  }
  if (auto d = compare(expected.outputs, actual.outputs, "output"); !d.empty()) return d;
  return "encoded bytes differ";
}

std::vector<std::string> check_record(const std::string& payload, std::uint64_t index,
                                      const AlgorithmSpec& spec, const SplitHeader& header,
                                      const Manifest& manifest, Split split,
                                      const SplitPlan& plan) {
  std::vector<std::string> messages;
  Trajectory actual;
  try {
    actual = decode_record(payload, header.spec, header.flags, index);
  } catch (const Error& e) {
    return {e.what()};
  }
  messages = check_against_spec(actual, spec);
  const auto cfg = split_item_config(spec.algorithm_id, split, manifest.seed, index, plan, manifest.knobs);
  try {
    const Trajectory expected = generate_trajectory(cfg);
    if (encode_record(expected, spec, header.flags) != payload) {
      // Decode the replay through the file's own encoding so f32 files compare fairly.
      const Trajectory stored_replay =
          decode_record(encode_record(expected, spec, header.flags), spec, header.flags, index);
      messages.push_back("replay mismatch: " + first_difference(stored_replay, actual));
    }
  } catch (const Error& e) {
    messages.push_back(std::string("replay failed: ") + e.what());
  }
  return messages;
}

void validate_split(const fs::path& dir, const Manifest& manifest, const AlgorithmSpec& spec,
                    Split split, unsigned jobs, ValidateReport& report) {
  const std::string split_name(to_string(split));
  const std::string& id = spec.algorithm_id;
  auto file_problem = [&](std::string message) {
    report.violations.push_back({id, split_name, -1, {std::move(message)}});
  };

  const auto it = manifest.splits.find(split);
  if (it == manifest.splits.end()) return file_problem("manifest lists no " + split_name + " split");
  const SplitEntry& entry = it->second;
  const fs::path path = dir / entry.file;
  if (!fs::exists(path)) return file_problem("missing file " + entry.file);
  const bool digest_ok = sha256_file(path) == entry.sha256;
  const std::size_t violations_before = report.violations.size();

  std::optional<TrajReader> reader;
  try {
    reader.emplace(path);
  } catch (const Error& e) {
    return file_problem(e.what());
  }
  const SplitHeader& header = reader->header();
  if (!(header.spec == spec)) file_problem("embedded spec differs from the registry");
  if (header.count != entry.count) {
    file_problem("CountMismatch: header declares " + std::to_string(header.count) +
                 " records, manifest " + std::to_string(entry.count));
  }
  const SplitPlan plan{entry.count, entry.n};

  std::uint64_t seen = 0;
  bool truncated = false;
  while (!truncated) {
    std::vector<std::string> payloads;
    std::uint64_t first = reader->position();
    try {
      while (payloads.size() < kChunk) {
        auto payload = reader->next_payload();
        if (!payload) break;
        payloads.push_back(std::move(*payload));
      }
    } catch (const Error& e) {
      truncated = true;
      report.violations.push_back({id, split_name, static_cast<std::int64_t>(reader->position()), {e.what()}});
    }
    if (payloads.empty()) break;
    std::vector<std::vector<std::string>> messages(payloads.size());
    parallel_for(payloads.size(), jobs, [&](std::size_t k) {
      messages[k] = check_record(payloads[k], first + k, spec, header, manifest, split, plan);
    });
    for (std::size_t k = 0; k < payloads.size(); ++k) {
      if (!messages[k].empty()) {
        report.violations.push_back(
            {id, split_name, static_cast<std::int64_t>(first + k), std::move(messages[k])});
      }
    }
    seen += payloads.size();
    report.records_checked += payloads.size();
  }
  if (!truncated && seen != entry.count) {
    file_problem("CountMismatch: file holds " + std::to_string(seen) + " records, manifest " +
                 std::to_string(entry.count));
  }
  if (!digest_ok) {
    report.digest_mismatches.push_back(path.string());
    // A record-level finding already explains the changed bytes.
    if (report.violations.size() == violations_before) {
      file_problem("DigestMismatch: " + entry.file + " does not match its manifest digest");
    }
  }
}

}  // namespace

nlohmann::json ValidateReport::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& v : violations) {
    list.push_back({{"algorithm_id", v.algorithm_id},
                    {"split", v.split},
                    {"record", v.record},
                    {"messages", v.messages}});
  }
  return {{"clean", clean()},
          {"records_checked", records_checked},
          {"digest_mismatches", digest_mismatches},
          {"violations", std::move(list)}};
}

ValidateReport validate_dataset(const fs::path& path, unsigned jobs) {
  ValidateReport report;
  const auto dirs = algorithm_dirs(path);
  if (dirs.empty()) {
    report.violations.push_back({"", "", -1, {"no algorithm directories under " + path.string()}});
  }
  for (const auto& dir : dirs) {
    Manifest manifest;
    try {
      manifest = read_manifest(dir);
      get_spec(manifest.algorithm_id);
    } catch (const Error& e) {
      report.violations.push_back({dir.filename().string(), "", -1, {e.what()}});
      continue;
    }
    const AlgorithmSpec& spec = get_spec(manifest.algorithm_id);
    if (manifest.spec_sha256 != spec_digest(spec.algorithm_id)) {
      report.violations.push_back(
          {spec.algorithm_id, "", -1, {"manifest spec digest differs from the registry"}});
    }
    for (Split split : kSplits) validate_split(dir, manifest, spec, split, jobs, report);
  }
  return report;
}

// --- inspect ------------------------------------------------------------------

namespace {

std::string format_scalar(double x) {
  std::ostringstream s;
  s << std::setprecision(6) << x;
  return s.str();
}

/// Order encoded by a node-pointer chain, or empty if it is not a single chain.
std::vector<int> chain_order(const std::vector<std::int32_t>& pred) {
  const int n = static_cast<int>(pred.size());
  std::vector<std::vector<int>> next(static_cast<std::size_t>(n));
  int head = -1;
  for (int i = 0; i < n; ++i) {
    if (pred[i] == i) {
      if (head >= 0) return {};
      head = i;
    } else {
      next[pred[i]].push_back(i);
    }
  }
  if (head < 0) return {};
  std::vector<int> order{head};
  while (static_cast<int>(order.size()) < n) {
    const auto& succ = next[order.back()];
    if (succ.size() != 1) return {};
    order.push_back(succ.front());
  }
  return order;
}

void render_value(std::ostream& out, const ProbeSpec& spec, const ProbeValue& value, int n,
                  const std::vector<double>* keys) {
  out << "  " << value.name << ": ";
  if (spec.type.kind == ProbeKind::Scalar) {
    const auto& xs = value.scalars();
    for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? " " : "") << format_scalar(xs[i]);
    out << '\n';
    return;
  }
  const auto& xs = value.ints();
  if (spec.type.kind == ProbeKind::MaskOne) {
    const auto it = std::find(xs.begin(), xs.end(), 1);
    out << "node " << (it - xs.begin()) << '\n';
    return;
  }
  if (spec.type.kind == ProbeKind::Pointer && spec.location == Location::Node) {
    for (int i = 0; i < n; ++i) out << (i ? " " : "") << i << "→" << xs[i];
    if (const auto order = chain_order(xs); !order.empty()) {
      out << "  | list:";
      for (int v : order) {
        out << ' ' << v;
        if (keys != nullptr) out << '(' << format_scalar((*keys)[v]) << ')';
      }
    }
    out << '\n';
    return;
  }
  if (spec.location == Location::Edge) {
    out << '\n';
    for (int i = 0; i < n; ++i) {
      out << "    " << i << ':';
      for (int j = 0; j < n; ++j) {
        out << ' ';
        if (spec.type.kind == ProbeKind::Pointer) out << j << "→";
        out << xs[static_cast<std::size_t>(i) * n + j];
      }
      out << '\n';
    }
    return;
  }
  for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? " " : "") << xs[i];
  out << '\n';
}

void render_frame(std::ostream& out, const AlgorithmSpec& spec, const Frame& frame, int n,
                  const std::vector<double>* keys) {
  for (const auto& v : frame) {
    const ProbeSpec* p = spec.find(v.name);
    if (p != nullptr) render_value(out, *p, v, n, keys);
  }
}

}  // namespace

std::string render_trajectory(const Trajectory& traj) {
  const AlgorithmSpec& spec = get_spec(traj.algorithm_id);
  const ProbeValue* key = find_value(traj.inputs, "key");
  const std::vector<double>* keys = key != nullptr ? &key->scalars() : nullptr;
  std::ostringstream out;
  out << "algorithm: " << traj.algorithm_id << "  n=" << traj.n << "  seed=" << traj.seed
      << "  T=" << traj.hints.size() << '\n';
  if (!traj.inputs.empty()) {
    out << "inputs:\n";
    render_frame(out, spec, traj.inputs, traj.n, keys);
  }
  for (std::size_t t = 0; t < traj.hints.size(); ++t) {
    out << "hint frame " << t << ":\n";
    render_frame(out, spec, traj.hints[t], traj.n, keys);
  }
  out << "outputs:\n";
  render_frame(out, spec, traj.outputs, traj.n, keys);
  return out.str();
}

Trajectory read_record(const fs::path& file, std::uint64_t index) {
  TrajReader reader(file);
  if (index >= reader.header().count) {
    throw Error(ErrorKind::IndexOutOfRange, "record " + std::to_string(index) + " requested, " +
                                                file.string() + " holds " +
                                                std::to_string(reader.header().count));
  }
  while (reader.position() < index) reader.next_payload();
  return *reader.next();
}

// --- stats --------------------------------------------------------------------

std::vector<SplitStats> dataset_stats(const fs::path& root) {
  std::vector<SplitStats> out;
  for (const auto& dir : algorithm_dirs(root)) {
    const Manifest manifest = read_manifest(dir);
    for (const auto& [split, entry] : manifest.splits) {
      SplitStats s{manifest.algorithm_id, std::string(to_string(split)), 0, entry.n,
                   static_cast<std::uint64_t>(fs::file_size(dir / entry.file)), 0, 0, 0.0};
      TrajReader reader(dir / entry.file);
      std::size_t total = 0;
      while (auto t = reader.next()) {
        const std::size_t len = t->hints.size();
        s.min_length = s.count == 0 ? len : std::min(s.min_length, len);
        s.max_length = std::max(s.max_length, len);
        total += len;
        ++s.count;
      }
      s.mean_length = s.count == 0 ? 0.0 : static_cast<double>(total) / static_cast<double>(s.count);
      out.push_back(s);
    }
  }
  return out;
}

void print_stats(std::ostream& out, const std::vector<SplitStats>& stats) {
  out << std::left << std::setw(24) << "algorithm" << std::setw(7) << "split" << std::right
      << std::setw(8) << "count" << std::setw(5) << "n" << std::setw(7) << "T_min" << std::setw(9)
      << "T_mean" << std::setw(7) << "T_max" << std::setw(14) << "bytes" << '\n';
  std::uint64_t total = 0;
  for (const auto& s : stats) {
    out << std::left << std::setw(24) << s.algorithm_id << std::setw(7) << s.split << std::right
        << std::setw(8) << s.count << std::setw(5) << s.n << std::setw(7) << s.min_length
        << std::setw(9) << std::fixed << std::setprecision(1) << s.mean_length << std::setw(7)
        << s.max_length << std::setw(14) << s.bytes << '\n';
    total += s.bytes;
  }
  out << "total bytes: " << total << " (" << std::setprecision(3)
      << static_cast<double>(total) / 1e9 << " GB)\n";
  out.unsetf(std::ios::fixed);
}

}  // namespace algotrace
