#include "algotrace/dataset_io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <sstream>

#include "algotrace/spec_registry.hpp"

namespace algotrace {
namespace fs = std::filesystem;

namespace {

// --- little-endian primitives ------------------------------------------------

template <class U>
void put_le(std::string& out, U value) {
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    out.push_back(static_cast<char>((value >> (8 * i)) & 0xFF));
  }
}

template <class U>
U get_le(const char* p) {
  U value = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    value |= static_cast<U>(static_cast<unsigned char>(p[i])) << (8 * i);
  }
  return value;
}

[[noreturn]] void corrupt(std::uint64_t index, const std::string& message) {
  throw Error(ErrorKind::CorruptRecord, "record " + std::to_string(index) + ": " + message);
}

std::size_t element_bytes(const ProbeSpec& p, std::uint32_t flags) {
  if (p.type.kind != ProbeKind::Scalar) return 4;
  return (flags & kFlagScalarsF32) ? 4 : 8;
}

using Probes = std::vector<const ProbeSpec*>;

unsigned __int128 frame_bytes(const Probes& probes, int n, std::uint32_t flags) {
  unsigned __int128 total = 0;
  for (const auto* p : probes) {
    total += static_cast<unsigned __int128>(value_size(p->location, n)) * element_bytes(*p, flags);
  }
  return total;
}

void encode_frame(std::string& out, const Frame& frame, const Probes& probes, int n,
                  std::uint32_t flags) {
  for (const auto* p : probes) {
    const ProbeValue& v = value_of(frame, p->name);
    const std::size_t size = value_size(p->location, n);
    if (p->type.kind == ProbeKind::Scalar) {
      const auto* xs = std::get_if<std::vector<double>>(&v.data);
      if (xs == nullptr || xs->size() != size) {
        throw Error(ErrorKind::ShapeMismatch, "probe '" + p->name + "' has the wrong shape");
      }
      for (double x : *xs) {
        if (flags & kFlagScalarsF32) {
          put_le(out, std::bit_cast<std::uint32_t>(static_cast<float>(x)));
        } else {
          put_le(out, std::bit_cast<std::uint64_t>(x));
        }
      }
    } else {
      const auto* xs = std::get_if<std::vector<std::int32_t>>(&v.data);
      if (xs == nullptr || xs->size() != size) {
        throw Error(ErrorKind::ShapeMismatch, "probe '" + p->name + "' has the wrong shape");
      }
      for (std::int32_t x : *xs) put_le(out, static_cast<std::uint32_t>(x));
    }
  }
}

Frame decode_frame(const char*& cursor, const Probes& probes, int n, std::uint32_t flags) {
  Frame frame;
  frame.reserve(probes.size());
  for (const auto* p : probes) {
    const std::size_t size = value_size(p->location, n);
    if (p->type.kind == ProbeKind::Scalar) {
      std::vector<double> xs(size);
      for (auto& x : xs) {
        if (flags & kFlagScalarsF32) {
          x = std::bit_cast<float>(get_le<std::uint32_t>(cursor));
          cursor += 4;
        } else {
          x = std::bit_cast<double>(get_le<std::uint64_t>(cursor));
          cursor += 8;
        }
      }
      frame.push_back({p->name, std::move(xs)});
    } else {
      std::vector<std::int32_t> xs(size);
      for (auto& x : xs) {
        x = static_cast<std::int32_t>(get_le<std::uint32_t>(cursor));
        cursor += 4;
      }
      frame.push_back({p->name, std::move(xs)});
    }
  }
  return frame;
}

constexpr int kMaxNodes = 1 << 16;
constexpr std::uint64_t kMaxRecordBytes = std::uint64_t{1} << 36;

std::string header_bytes(const AlgorithmSpec& spec, std::uint32_t flags, std::uint64_t count) {
  const std::string json = spec_to_json(spec).dump();
  std::string out(kMagic);
  put_le(out, kFormatVersion);
  put_le(out, flags);
  put_le(out, static_cast<std::uint32_t>(json.size()));
  out += json;
  put_le(out, count);
  return out;
}

bool read_exact(std::istream& in, char* dst, std::size_t size) {
  in.read(dst, static_cast<std::streamsize>(size));
  return static_cast<std::size_t>(in.gcount()) == size;
}

}  // namespace

std::string encode_record(const Trajectory& traj, const AlgorithmSpec& spec, std::uint32_t flags) {
  if (traj.algorithm_id != spec.algorithm_id) {
    throw Error(ErrorKind::SchemaMismatch,
                "trajectory of '" + traj.algorithm_id + "' in a '" + spec.algorithm_id + "' file");
  }
  const bool outputs_only = (flags & kFlagOutputsOnly) != 0;
  const auto length = outputs_only ? 0 : traj.hints.size();
  std::string out;
  put_le(out, static_cast<std::uint32_t>(traj.n));
  put_le(out, static_cast<std::uint32_t>(length));
  put_le(out, traj.seed);
  if (!outputs_only) {
    encode_frame(out, traj.inputs, spec.of_stage(Stage::Input), traj.n, flags);
    const auto hints = spec.of_stage(Stage::Hint);
    for (const auto& frame : traj.hints) encode_frame(out, frame, hints, traj.n, flags);
  }
  encode_frame(out, traj.outputs, spec.of_stage(Stage::Output), traj.n, flags);
  return out;
}

Trajectory decode_record(std::string_view bytes, const AlgorithmSpec& spec, std::uint32_t flags,
                         std::uint64_t index) {
  if (bytes.size() < 16) corrupt(index, "record shorter than its fixed fields");
  const char* cursor = bytes.data();
  const auto n = get_le<std::uint32_t>(cursor);
  const auto length = get_le<std::uint32_t>(cursor + 4);
  const auto seed = get_le<std::uint64_t>(cursor + 8);
  cursor += 16;
  if (n < 1 || n > static_cast<std::uint32_t>(kMaxNodes)) {
    corrupt(index, "implausible node count " + std::to_string(n));
  }
  const bool outputs_only = (flags & kFlagOutputsOnly) != 0;
  if (outputs_only && length != 0) corrupt(index, "prediction record carries hints");
  if (!outputs_only && length == 0) corrupt(index, "trajectory without hint frames");

  const int nodes = static_cast<int>(n);
  const auto inputs = spec.of_stage(Stage::Input);
  const auto hints = spec.of_stage(Stage::Hint);
  const auto outputs = spec.of_stage(Stage::Output);
  unsigned __int128 expected = 16 + frame_bytes(outputs, nodes, flags);
  if (!outputs_only) {
    expected += frame_bytes(inputs, nodes, flags) +
                static_cast<unsigned __int128>(length) * frame_bytes(hints, nodes, flags);
  }
  if (expected != bytes.size()) {
    corrupt(index, "payload holds " + std::to_string(bytes.size()) +
                       " bytes, the header fields imply " +
                       std::to_string(static_cast<std::uint64_t>(expected)));
  }

  Trajectory traj;
  traj.algorithm_id = spec.algorithm_id;
  traj.n = nodes;
  traj.seed = seed;
  if (!outputs_only) {
    traj.inputs = decode_frame(cursor, inputs, nodes, flags);
    traj.hints.reserve(length);
    for (std::uint32_t t = 0; t < length; ++t) {
      traj.hints.push_back(decode_frame(cursor, hints, nodes, flags));
    }
  }
  traj.outputs = decode_frame(cursor, outputs, nodes, flags);
  return traj;
}

// --- writer -------------------------------------------------------------------

TrajWriter::TrajWriter(const fs::path& path, const AlgorithmSpec& spec, std::uint32_t flags)
    : path_(path), spec_(spec), flags_(flags) {
  out_.open(path, std::ios::binary | std::ios::trunc);
  if (!out_) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  const std::string header = header_bytes(spec, flags, 0);
  count_offset_ = static_cast<std::streamoff>(header.size() - 8);
  out_.write(header.data(), static_cast<std::streamsize>(header.size()));
}

TrajWriter::~TrajWriter() {
  if (!closed_) {
    try {
      close();
    } catch (...) {  // NOLINT(bugprone-empty-catch): destructor must not throw
    }
  }
}

void TrajWriter::append(const Trajectory& traj) { append_encoded(encode_record(traj, spec_, flags_)); }

void TrajWriter::append_encoded(std::string_view payload) {
  if (closed_) throw Error(ErrorKind::Io, "writer for " + path_.string() + " is closed");
  std::string prefix;
  put_le(prefix, static_cast<std::uint64_t>(payload.size()));
  out_.write(prefix.data(), 8);
  out_.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (!out_) throw Error(ErrorKind::Io, "write failed on " + path_.string());
  ++count_;
}

std::uint64_t TrajWriter::close() {
  if (closed_) throw Error(ErrorKind::Io, "writer for " + path_.string() + " closed twice");
  closed_ = true;
  const auto size = static_cast<std::uint64_t>(out_.tellp());
  std::string count;
  put_le(count, count_);
  out_.seekp(count_offset_);
  out_.write(count.data(), 8);
  out_.close();
  if (!out_) throw Error(ErrorKind::Io, "failed to finish " + path_.string());
  return size;
}

// --- reader -------------------------------------------------------------------

TrajReader::TrajReader(const fs::path& path) {
  in_.open(path, std::ios::binary);
  if (!in_) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::array<char, 20> fixed{};
  if (!read_exact(in_, fixed.data(), fixed.size()) ||
      std::string_view(fixed.data(), kMagic.size()) != kMagic) {
    throw Error(ErrorKind::Parse, path.string() + " is not a trajectory file");
  }
  header_.version = get_le<std::uint32_t>(fixed.data() + 8);
  header_.flags = get_le<std::uint32_t>(fixed.data() + 12);
  if (header_.version != kFormatVersion) {
    throw Error(ErrorKind::VersionMismatch, "file version " + std::to_string(header_.version) +
                                                ", reader supports " +
                                                std::to_string(kFormatVersion));
  }
  if ((header_.flags & ~(kFlagScalarsF32 | kFlagOutputsOnly)) != 0) {
    throw Error(ErrorKind::Parse, "unknown header flags");
  }
  const auto json_size = get_le<std::uint32_t>(fixed.data() + 16);
  std::string json(json_size, '\0');
  std::array<char, 8> count{};
  if (!read_exact(in_, json.data(), json.size()) || !read_exact(in_, count.data(), 8)) {
    throw Error(ErrorKind::Parse, "truncated header in " + path.string());
  }
  try {
    header_.spec = spec_from_json(nlohmann::json::parse(json));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("embedded spec is not JSON: ") + e.what());
  }
  header_.count = get_le<std::uint64_t>(count.data());
}

std::optional<std::string> TrajReader::next_payload() {
  std::array<char, 8> prefix{};
  in_.read(prefix.data(), 8);
  const auto got = in_.gcount();
  if (index_ >= header_.count) {
    if (got != 0) corrupt(index_, "bytes after the declared " + std::to_string(header_.count) + " records");
    return std::nullopt;
  }
  if (got != 8) {
    corrupt(index_, "file ends after " + std::to_string(index_) + " of " +
                        std::to_string(header_.count) + " records");
  }
  const auto size = get_le<std::uint64_t>(prefix.data());
  if (size > kMaxRecordBytes) corrupt(index_, "implausible record length");
  std::string payload(size, '\0');
  if (!read_exact(in_, payload.data(), payload.size())) corrupt(index_, "truncated record");
  ++index_;
  return payload;
}

std::optional<Trajectory> TrajReader::next() {
  const std::uint64_t index = index_;
  auto payload = next_payload();
  if (!payload) return std::nullopt;
  return decode_record(*payload, header_.spec, header_.flags, index);
}

void write_traj(const fs::path& path, const AlgorithmSpec& spec, std::span<const Trajectory> records,
                std::uint32_t flags) {
  TrajWriter writer(path, spec, flags);
  for (const auto& t : records) writer.append(t);
  writer.close();
}

std::vector<Trajectory> read_traj(const fs::path& path, SplitHeader* header) {
  TrajReader reader(path);
  std::vector<Trajectory> out;
  out.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(reader.header().count, 1 << 20)));
  while (auto t = reader.next()) out.push_back(std::move(*t));
  if (header != nullptr) *header = reader.header();
  return out;
}

// --- digests ------------------------------------------------------------------

namespace {

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new()) {
    if (ctx_ == nullptr || EVP_DigestInit_ex(ctx_, EVP_sha256(), nullptr) != 1) {
      throw Error(ErrorKind::Io, "SHA-256 unavailable");
    }
  }
  ~Sha256() { EVP_MD_CTX_free(ctx_); }
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  void update(const char* data, std::size_t size) { EVP_DigestUpdate(ctx_, data, size); }

  std::string hex() {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx_, md.data(), &len);
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
      out.push_back(kHex[md[i] >> 4]);
      out.push_back(kHex[md[i] & 0xF]);
    }
    return out;
  }

 private:
  EVP_MD_CTX* ctx_;
};

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  Sha256 h;
  h.update(bytes.data(), bytes.size());
  return h.hex();
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  Sha256 h;
  std::vector<char> buffer(1 << 20);
  while (in) {
    in.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    h.update(buffer.data(), static_cast<std::size_t>(in.gcount()));
  }
  return h.hex();
}

std::string spec_digest(std::string_view algorithm_id) {
  const nlohmann::json doc = export_specs();
  for (const auto& entry : doc.at("algorithms")) {
    if (entry.at("algorithm_id").get<std::string>() == algorithm_id) return sha256_hex(entry.dump());
  }
  throw Error(ErrorKind::UnknownAlgorithm, std::string(algorithm_id));
}

// --- manifests ----------------------------------------------------------------

nlohmann::json manifest_to_json(const Manifest& m) {
  nlohmann::json splits = nlohmann::json::object();
  for (const auto& [split, e] : m.splits) {
    splits[std::string(to_string(split))] = {{"count", e.count}, {"n", e.n},       {"file", e.file},
                                             {"sha256", e.sha256}, {"bytes", e.bytes}};
  }
  return {{"format_version", m.format_version},
          {"algorithm_id", m.algorithm_id},
          {"prng", m.prng},
          {"seed", m.seed},
          {"splits", std::move(splits)},
          {"sampler",
           {{"er_edge_prob", m.knobs.er_edge_prob},
            {"alphabet_size", m.knobs.alphabet_size},
            {"needle_fraction", m.knobs.needle_fraction},
            {"intersect_fraction", m.knobs.intersect_fraction},
            {"quickselect_k", "floor(n/2), 0-based"},
            {"graph_output_multiplier", kGraphOutputMultiplier}}},
          {"spec_sha256", m.spec_sha256},
          {"scalar_width", m.scalar_width}};
}

Manifest manifest_from_json(const nlohmann::json& doc) {
  try {
    Manifest m;
    m.format_version = doc.at("format_version").get<int>();
    if (m.format_version != static_cast<int>(kFormatVersion)) {
      throw Error(ErrorKind::VersionMismatch,
                  "manifest format_version " + std::to_string(m.format_version));
    }
    m.algorithm_id = doc.at("algorithm_id").get<std::string>();
    m.prng = doc.at("prng").get<std::string>();
    m.seed = doc.at("seed").get<std::uint64_t>();
    for (const auto& [name, e] : doc.at("splits").items()) {
      m.splits[split_from_string(name)] = {e.at("count").get<std::size_t>(), e.at("n").get<int>(),
                                           e.at("file").get<std::string>(),
                                           e.at("sha256").get<std::string>(),
                                           e.at("bytes").get<std::uint64_t>()};
    }
    const auto& s = doc.at("sampler");
    m.knobs.er_edge_prob = s.at("er_edge_prob").get<double>();
    m.knobs.alphabet_size = s.at("alphabet_size").get<int>();
    m.knobs.needle_fraction = s.at("needle_fraction").get<double>();
    m.knobs.intersect_fraction = s.at("intersect_fraction").get<double>();
    m.spec_sha256 = doc.at("spec_sha256").get<std::string>();
    m.scalar_width = doc.at("scalar_width").get<std::string>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed manifest: ") + e.what());
  }
}

void write_manifest(const fs::path& dir, const Manifest& m) {
  std::ofstream out(dir / "manifest.json", std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + (dir / "manifest.json").string());
  out << manifest_to_json(m).dump(2) << '\n';
}

Manifest read_manifest(const fs::path& dir) {
  std::ifstream in(dir / "manifest.json", std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + (dir / "manifest.json").string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("manifest is not JSON: ") + e.what());
  }
  return manifest_from_json(doc);
}

void write_split(std::span<const Trajectory> records, const fs::path& dir, Split split,
                 Manifest& manifest, std::uint32_t flags) {
  const AlgorithmSpec& spec = get_spec(manifest.algorithm_id);
  const std::string file = std::string(to_string(split)) + ".traj";
  for (const auto& t : records) {
    if (!records.empty() && t.n != records.front().n) {
      throw Error(ErrorKind::HeterogeneousBatch, "split mixes node counts");
    }
  }
  TrajWriter writer(dir / file, spec, flags);
  for (const auto& t : records) writer.append(t);
  const auto bytes = writer.close();
  manifest.splits[split] = {records.size(), records.empty() ? 0 : records.front().n, file,
                            sha256_file(dir / file), bytes};
  manifest.scalar_width = (flags & kFlagScalarsF32) ? "f32" : "f64";
}

LoadedSplit read_split(const fs::path& dir, Split split) {
  LoadedSplit out;
  out.manifest = read_manifest(dir);
  const auto it = out.manifest.splits.find(split);
  if (it == out.manifest.splits.end()) {
    throw Error(ErrorKind::Io, "manifest has no " + std::string(to_string(split)) + " split");
  }
  const SplitEntry& entry = it->second;
  const fs::path path = dir / entry.file;
  if (sha256_file(path) != entry.sha256) {
    throw Error(ErrorKind::DigestMismatch, path.string() + " does not match its manifest digest");
  }
  out.records = read_traj(path, &out.header);
  if (out.records.size() != entry.count) {
    throw Error(ErrorKind::CountMismatch, path.string() + " holds " +
                                              std::to_string(out.records.size()) +
                                              " records, manifest says " +
                                              std::to_string(entry.count));
  }
  return out;
}

void write_specs_json(const fs::path& root) {
  std::ofstream out(root / "specs.json", std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + (root / "specs.json").string());
  out << export_specs().dump(2) << '\n';
}

// --- batches ------------------------------------------------------------------

namespace {

std::vector<ProbeTensor> empty_tensors(const AlgorithmSpec& spec, Stage stage, std::size_t b,
                                       std::size_t t_max, int n) {
  std::vector<ProbeTensor> out;
  for (const auto* p : spec.of_stage(stage)) {
    ProbeTensor tensor{*p, {}, {}};
    const std::size_t size = value_size(p->location, n);
    tensor.shape = stage == Stage::Hint ? std::vector<std::size_t>{b, t_max, size}
                                        : std::vector<std::size_t>{b, size};
    std::size_t total = 1;
    for (auto d : tensor.shape) total *= d;
    if (p->type.kind == ProbeKind::Scalar) {
      tensor.data = std::vector<double>(total, 0.0);
    } else {
      tensor.data = std::vector<std::int32_t>(total, 0);
    }
    out.push_back(std::move(tensor));
  }
  return out;
}

void scatter(ProbeTensor& tensor, std::size_t offset, const Payload& value) {
  std::visit(
      [&](auto& dst) {
        using Vec = std::decay_t<decltype(dst)>;
        const auto* src = std::get_if<Vec>(&value);
        if (src == nullptr) {
          throw Error(ErrorKind::ShapeMismatch, "probe '" + tensor.spec.name + "' type differs");
        }
        std::copy(src->begin(), src->end(), dst.begin() + static_cast<std::ptrdiff_t>(offset));
      },
      tensor.data);
}

Payload gather(const ProbeTensor& tensor, std::size_t offset, std::size_t size) {
  return std::visit(
      [&](const auto& src) -> Payload {
        using Vec = std::decay_t<decltype(src)>;
        const auto first = src.begin() + static_cast<std::ptrdiff_t>(offset);
        return Vec(first, first + static_cast<std::ptrdiff_t>(size));
      },
      tensor.data);
}

}  // namespace

Batch assemble_batch(std::span<const Trajectory> records) {
  if (records.empty()) throw Error(ErrorKind::EmptyInput, "cannot batch zero trajectories");
  Batch batch;
  batch.algorithm_id = records.front().algorithm_id;
  batch.n = records.front().n;
  for (const auto& t : records) {
    if (t.algorithm_id != batch.algorithm_id || t.n != batch.n) {
      throw Error(ErrorKind::HeterogeneousBatch,
                  "batch mixes " + batch.algorithm_id + "@" + std::to_string(batch.n) + " with " +
                      t.algorithm_id + "@" + std::to_string(t.n));
    }
    batch.t_max = std::max(batch.t_max, t.hints.size());
  }
  const AlgorithmSpec& spec = get_spec(batch.algorithm_id);
  const std::size_t b = records.size();
  const int n = batch.n;
  batch.inputs = empty_tensors(spec, Stage::Input, b, batch.t_max, n);
  batch.hints = empty_tensors(spec, Stage::Hint, b, batch.t_max, n);
  batch.outputs = empty_tensors(spec, Stage::Output, b, batch.t_max, n);
  batch.valid.assign(b * batch.t_max, 0);

  for (std::size_t i = 0; i < b; ++i) {
    const Trajectory& t = records[i];
    batch.lengths.push_back(static_cast<std::uint32_t>(t.hints.size()));
    batch.seeds.push_back(t.seed);
    for (auto& tensor : batch.inputs) {
      scatter(tensor, i * tensor.shape[1], value_of(t.inputs, tensor.spec.name).data);
    }
    for (auto& tensor : batch.outputs) {
      scatter(tensor, i * tensor.shape[1], value_of(t.outputs, tensor.spec.name).data);
    }
    for (std::size_t step = 0; step < t.hints.size(); ++step) {
      batch.valid[i * batch.t_max + step] = 1;
      for (auto& tensor : batch.hints) {
        const std::size_t size = tensor.shape[2];
        scatter(tensor, (i * batch.t_max + step) * size,
                value_of(t.hints[step], tensor.spec.name).data);
      }
    }
  }
  return batch;
}

std::vector<Trajectory> disassemble_batch(const Batch& batch) {
  std::vector<Trajectory> out;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    Trajectory t;
    t.algorithm_id = batch.algorithm_id;
    t.n = batch.n;
    t.seed = batch.seeds[i];
    for (const auto& tensor : batch.inputs) {
      t.inputs.push_back({tensor.spec.name, gather(tensor, i * tensor.shape[1], tensor.shape[1])});
    }
    for (std::size_t step = 0; step < batch.lengths[i]; ++step) {
      Frame frame;
      for (const auto& tensor : batch.hints) {
        const std::size_t size = tensor.shape[2];
        frame.push_back({tensor.spec.name, gather(tensor, (i * batch.t_max + step) * size, size)});
      }
      t.hints.push_back(std::move(frame));
    }
    for (const auto& tensor : batch.outputs) {
      t.outputs.push_back({tensor.spec.name, gather(tensor, i * tensor.shape[1], tensor.shape[1])});
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Batch> make_batches(std::span<const Trajectory> records, std::size_t size) {
  if (size == 0) throw Error(ErrorKind::InvalidConfig, "batch size must be positive");
  std::vector<Batch> out;
  for (std::size_t i = 0; i < records.size(); i += size) {
    out.push_back(assemble_batch(records.subspan(i, std::min(size, records.size() - i))));
  }
  return out;
}

}  // namespace algotrace
