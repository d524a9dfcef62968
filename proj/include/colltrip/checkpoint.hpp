#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "colltrip/search.hpp"

namespace colltrip {

// Versioned structured-text snapshot of a psi search:
//
//   {"format": "colltrip.psi-checkpoint", "version": 1, "n": 9, "mode": "unit",
//    "best": 5, "witness": [0, 1, ...], "pending": [[0, 3, 1], ...]}
//
// best and witness are null until the search has completed a transversal.
inline constexpr const char* kCheckpointFormat = "colltrip.psi-checkpoint";
inline constexpr int kCheckpointVersion = 1;

inline nlohmann::json checkpoint_to_json(const PsiState& state) {
  nlohmann::json j;
  j["format"] = kCheckpointFormat;
  j["version"] = kCheckpointVersion;
  j["n"] = state.n;
  j["mode"] = std::string(to_string(state.mode));
  j["best"] = state.best ? nlohmann::json(*state.best) : nlohmann::json(nullptr);
  j["witness"] = state.best ? nlohmann::json(state.witness) : nlohmann::json(nullptr);
  j["pending"] = state.pending;
  return j;
}

inline PsiState checkpoint_from_json(const nlohmann::json& j) {
  auto bad = [](const std::string& why) { return Error(ErrorKind::InvalidArgument, "checkpoint: " + why); };
  try {
    if (j.at("format").get<std::string>() != kCheckpointFormat) throw bad("unknown format tag");
    if (j.at("version").get<int>() != kCheckpointVersion) throw bad("unsupported version");
    PsiState state;
    state.n = j.at("n").get<Residue>();
    const Modulus n(state.n);
    const auto mode = parse_mode(j.at("mode").get<std::string>());
    if (!mode) throw bad("mode must be 'any' or 'unit'");
    state.mode = *mode;
    if (!j.at("best").is_null()) {
      state.best = j.at("best").get<std::int64_t>();
      state.witness = j.at("witness").get<std::vector<Residue>>();
      if (static_cast<Residue>(state.witness.size()) != state.n) throw bad("witness length differs from n");
      const Transversal t(state.witness);
      const auto recount = state.n >= 3 ? count_triples(t, state.mode) : 0;
      if (recount != *state.best) throw bad("witness does not reproduce best value");
    }
    state.pending = j.at("pending").get<std::vector<std::vector<Residue>>>();
    for (const auto& prefix : state.pending) {
      std::vector<bool> seen(static_cast<std::size_t>(state.n), false);
      if (prefix.empty() || static_cast<Residue>(prefix.size()) > state.n) throw bad("bad prefix length");
      for (Residue v : prefix) {
        if (v < 0 || v >= state.n || seen[static_cast<std::size_t>(v)]) throw bad("prefix is not a partial permutation");
        seen[static_cast<std::size_t>(v)] = true;
      }
    }
    return state;
  } catch (const nlohmann::json::exception& e) {
    throw bad(e.what());
  }
}

inline void save_checkpoint(const std::filesystem::path& path, const PsiState& state) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write checkpoint " + tmp.string());
    out << checkpoint_to_json(state).dump(2) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

inline PsiState load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read checkpoint " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("checkpoint: ") + e.what());
  }
  return checkpoint_from_json(j);
}

// Loads a checkpoint for (n, mode); a file for another search is a usage error.
inline PsiState load_checkpoint_for(const std::filesystem::path& path, Residue n, CollinearityMode mode) {
  PsiState state = load_checkpoint(path);
  if (state.n != n || state.mode != mode) {
    throw Error(ErrorKind::InvalidArgument, "checkpoint is for n=" + std::to_string(state.n) + " mode=" +
                                                std::string(to_string(state.mode)) + ", requested n=" +
                                                std::to_string(n) + " mode=" + std::string(to_string(mode)));
  }
  return state;
}

}  // namespace colltrip
