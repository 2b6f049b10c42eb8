#pragma once

// Eligibility filtering and selection of the top-most influenceable targets
// from a member ranking.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "egorank/corpus.hpp"
#include "egorank/labels.hpp"
#include "egorank/recommend.hpp"

namespace egorank::targets {

inline constexpr std::size_t kMinTargets = 50;
inline constexpr std::uint64_t kDefaultThreshold = 5000;

// Drops Group members; every other kind can be a target.
std::vector<InteractedMember> filter_eligible(std::span<const InteractedMember> members);

struct SelectionLimits {
  bool allow_small = false;  // lifts the lower bound of kMinTargets
  std::size_t network_size = 0;
};

// First n_it member ids of the ranking. NItOutOfRange outside
// [kMinTargets, network_size] (lower bound lifted by allow_small, n_it >= 1
// always); RankingTooSmall when the ranking is shorter than n_it.
std::vector<std::string> select_targets(const recommend::MemberRanking& ranking, std::size_t n_it,
                                        const SelectionLimits& limits);

struct DefaultRemoval {
  std::vector<std::string> effective;
  std::vector<std::string> defaults_removed;
  std::vector<std::string> warnings;
};

// Removes members with more than `threshold` connections. Members with an
// unknown count, or absent from `members`, are kept and reported in
// warnings. BadParams when threshold is 0.
DefaultRemoval remove_defaults(std::span<const std::string> selected,
                               std::span<const InteractedMember> members,
                               std::uint64_t threshold = kDefaultThreshold);

struct TargetSelection {
  Bucket bucket;
  std::size_t n_it = 0;
  std::vector<std::string> selected;
  std::vector<std::string> defaults_removed;
  std::vector<std::string> effective;
  std::vector<std::string> warnings;

  std::size_t d_it() const { return defaults_removed.size(); }
};

struct TargetConfig {
  std::uint64_t threshold = kDefaultThreshold;
  SelectionLimits limits;
};

TargetSelection top_most(const recommend::MemberRanking& ranking, std::size_t n_it,
                         std::span<const InteractedMember> members, const TargetConfig& config);

// Checks the count identities of a selection; returns a description of
// every violation (empty when consistent).
std::vector<std::string> validate(const TargetSelection& selection);

}  // namespace egorank::targets
