#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include <unistd.h>

#include "colltrip/checkpoint.hpp"

using namespace colltrip;

namespace {

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("colltrip_" + name + "_" + std::to_string(::getpid()) + ".json");
}

PsiState partially_searched(Residue n) {
  PsiState state = psi_initial_state(n, kDefaultMode);
  psi_resume(state, {.max_nodes = 5000});
  return state;
}

}  // namespace

TEST(Checkpoint, JsonRoundTrip) {
  const PsiState state = partially_searched(9);
  ASSERT_FALSE(state.pending.empty());
  const PsiState back = checkpoint_from_json(checkpoint_to_json(state));
  EXPECT_EQ(back.n, state.n);
  EXPECT_EQ(back.mode, state.mode);
  EXPECT_EQ(back.best, state.best);
  EXPECT_EQ(back.witness, state.witness);
  EXPECT_EQ(back.pending, state.pending);
}

TEST(Checkpoint, FileRoundTrip) {
  const auto path = temp_path("file");
  const PsiState state = partially_searched(8);
  save_checkpoint(path, state);
  const PsiState back = load_checkpoint_for(path, 8, kDefaultMode);
  EXPECT_EQ(back.pending, state.pending);
  EXPECT_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  std::filesystem::remove(path);
}

TEST(Checkpoint, RejectsMismatchedRun) {
  const auto path = temp_path("mismatch");
  save_checkpoint(path, psi_initial_state(7, CollinearityMode::UnitLine));
  EXPECT_THROW(load_checkpoint_for(path, 8, CollinearityMode::UnitLine), Error);
  EXPECT_THROW(load_checkpoint_for(path, 7, CollinearityMode::AnyLine), Error);
  EXPECT_NO_THROW(load_checkpoint_for(path, 7, CollinearityMode::UnitLine));
  std::filesystem::remove(path);
}

TEST(Checkpoint, RejectsCorruptContent) {
  PsiState finished = psi_initial_state(7, kDefaultMode);
  psi_resume(finished, {});
  auto j = checkpoint_to_json(finished);
  ASSERT_EQ(j["best"], 3);

  auto wrong_value = j;
  wrong_value["best"] = 2;
  EXPECT_THROW(checkpoint_from_json(wrong_value), Error);

  auto not_a_permutation = j;
  not_a_permutation["witness"] = std::vector<int>{0, 0, 1, 2, 3, 4, 5};
  EXPECT_THROW(checkpoint_from_json(not_a_permutation), Error);

  auto wrong_format = j;
  wrong_format["format"] = "something-else";
  EXPECT_THROW(checkpoint_from_json(wrong_format), Error);

  auto bad_prefix = j;
  bad_prefix["pending"] = std::vector<std::vector<int>>{{0, 9}};
  EXPECT_THROW(checkpoint_from_json(bad_prefix), Error);

  const auto path = temp_path("garbage");
  std::ofstream(path) << "{ not json";
  EXPECT_THROW(load_checkpoint(path), Error);
  std::filesystem::remove(path);
}

TEST(Checkpoint, InterruptedSearchResumesToSameAnswer) {
  const auto path = temp_path("resume");
  PsiState state = psi_initial_state(9, kDefaultMode);
  const auto first = psi_resume(state, {.max_nodes = 20000});
  ASSERT_FALSE(first.exact);
  save_checkpoint(path, state);

  PsiState restored = load_checkpoint_for(path, 9, kDefaultMode);
  SearchOutcome out;
  int rounds = 0;
  do {
    out = psi_resume(restored, {.max_nodes = 20000});
    save_checkpoint(path, restored);
    restored = load_checkpoint_for(path, 9, kDefaultMode);
  } while (!out.exact && ++rounds < 10000);
  EXPECT_TRUE(out.exact);
  EXPECT_EQ(out.value, 5);
  EXPECT_EQ(out.value, psi(9).value);
  std::filesystem::remove(path);
}
