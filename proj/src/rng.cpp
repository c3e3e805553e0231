#include "algotrace/rng.hpp"

#include <string>

#include "algotrace/error.hpp"

namespace algotrace {

std::string_view to_string(Split split) {
  switch (split) {
    case Split::Train: return "train";
    case Split::Val: return "val";
    case Split::Test: return "test";
  }
  return "?";
}

Split split_from_string(std::string_view text) {
  if (text == "train") return Split::Train;
  if (text == "val") return Split::Val;
  if (text == "test") return Split::Test;
  throw Error(ErrorKind::Parse, "unknown split '" + std::string(text) + "'");
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view algorithm_id, Split split,
                          std::uint64_t index) {
  std::uint64_t h = mix64(seed ^ 0x5EEDC0DE5EEDC0DEULL);
  h = mix64(h ^ fnv1a64(algorithm_id));
  h = mix64(h ^ (static_cast<std::uint64_t>(split) + 1));
  return mix64(h ^ index);
}

}  // namespace algotrace
