#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "steal/detail/text.hpp"
#include "steal/errors.hpp"
#include "steal/makermaker.hpp"
#include "steal/reduction.hpp"

namespace steal {

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Resolves instance-internal references relative to the instance file.
inline FileLoader loader_relative_to(const std::filesystem::path& base) {
  auto dir = base.has_parent_path() ? base.parent_path()
                                    : std::filesystem::path(".");
  return [dir](const std::string& rel) { return read_file(dir / rel); };
}

struct LoadedSmm {
  MakerMakerInstance instance;
  std::optional<ReductionArtifact> artifact;  // set for smmhexred files
};

// Loads any .smm flavor: explicit ('universe'), circuit pair ('smmcirc') or
// reduction descriptor ('smmhexred').
inline LoadedSmm load_smm_file(const std::filesystem::path& path,
                               std::uint64_t audit_seed = 0) {
  const std::string text = read_file(path);
  auto lines = detail::significant_lines(text);
  if (!lines.empty() && detail::tokens(lines[0])[0] == "smmhexred") {
    ReductionArtifact art =
        parse_reduction_descriptor(text, loader_relative_to(path), audit_seed);
    MakerMakerInstance inst = art.instance;
    return LoadedSmm{std::move(inst), std::move(art)};
  }
  return LoadedSmm{parse_smm(text, loader_relative_to(path)), std::nullopt};
}

}  // namespace steal
