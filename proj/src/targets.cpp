#include "egorank/targets.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "egorank/error.hpp"

namespace egorank::targets {

std::vector<InteractedMember> filter_eligible(std::span<const InteractedMember> members) {
  std::vector<InteractedMember> out;
  out.reserve(members.size());
  std::copy_if(members.begin(), members.end(), std::back_inserter(out),
               [](const InteractedMember& m) { return m.kind != MemberKind::kGroup; });
  return out;
}

std::vector<std::string> select_targets(const recommend::MemberRanking& ranking, std::size_t n_it,
                                        const SelectionLimits& limits) {
  const std::size_t lower = limits.allow_small ? 1 : kMinTargets;
  if (n_it < lower || n_it > limits.network_size) {
    throw Error(ErrorCode::kNItOutOfRange,
                "n_it = " + std::to_string(n_it) + " must satisfy " + std::to_string(lower) +
                    " <= n_it <= network size " + std::to_string(limits.network_size) +
                    (limits.allow_small ? "" : " (the lower bound of 50 is lifted by --allow-small)"));
  }
  if (ranking.entries.size() < n_it) {
    throw Error(ErrorCode::kRankingTooSmall, "ranking of " + to_string(ranking.bucket) + " has " +
                                                 std::to_string(ranking.entries.size()) +
                                                 " members, n_it = " + std::to_string(n_it));
  }
  std::vector<std::string> out;
  out.reserve(n_it);
  for (std::size_t i = 0; i < n_it; ++i) out.push_back(ranking.entries[i].member_id);
  return out;
}

DefaultRemoval remove_defaults(std::span<const std::string> selected,
                               std::span<const InteractedMember> members, std::uint64_t threshold) {
  if (threshold == 0) throw Error(ErrorCode::kBadParams, "default threshold must be positive");
  std::unordered_map<std::string, const InteractedMember*> by_id;
  for (const InteractedMember& m : members) by_id.emplace(m.member_id, &m);
  DefaultRemoval out;
  for (const std::string& id : selected) {
    auto it = by_id.find(id);
    if (it == by_id.end()) {
      out.warnings.push_back(id + ": not in the interaction list, kept");
      out.effective.push_back(id);
    } else if (!it->second->connections_count) {
      out.warnings.push_back(id + ": connection count unknown, kept");
      out.effective.push_back(id);
    } else if (*it->second->connections_count > threshold) {
      out.defaults_removed.push_back(id);
    } else {
      out.effective.push_back(id);
    }
  }
  return out;
}

TargetSelection top_most(const recommend::MemberRanking& ranking, std::size_t n_it,
                         std::span<const InteractedMember> members, const TargetConfig& config) {
  TargetSelection s;
  s.bucket = ranking.bucket;
  s.n_it = n_it;
  s.selected = select_targets(ranking, n_it, config.limits);
  DefaultRemoval r = remove_defaults(s.selected, members, config.threshold);
  s.effective = std::move(r.effective);
  s.defaults_removed = std::move(r.defaults_removed);
  s.warnings = std::move(r.warnings);
  if (s.effective.empty()) s.warnings.push_back("every selected member is a default influencer");
  return s;
}

std::vector<std::string> validate(const TargetSelection& s) {
  std::vector<std::string> problems;
  if (s.selected.size() != s.n_it) {
    problems.push_back("|selected| = " + std::to_string(s.selected.size()) + ", n_it = " +
                       std::to_string(s.n_it));
  }
  if (s.effective.size() + s.defaults_removed.size() != s.n_it) {
    problems.push_back("|effective| = " + std::to_string(s.effective.size()) + " but n_it - D_it = " +
                       std::to_string(s.n_it) + " - " + std::to_string(s.defaults_removed.size()));
  }
  // effective and defaults_removed must interleave back into selected.
  std::size_t e = 0, d = 0;
  for (const std::string& id : s.selected) {
    if (e < s.effective.size() && s.effective[e] == id) {
      ++e;
    } else if (d < s.defaults_removed.size() && s.defaults_removed[d] == id) {
      ++d;
    } else {
      problems.push_back(id + " is in neither effective nor defaults_removed, or is out of order");
      break;
    }
  }
  if (e != s.effective.size() || d != s.defaults_removed.size()) {
    problems.push_back("effective/defaults_removed are not an order-preserving split of selected");
  }
  std::unordered_set<std::string> seen(s.selected.begin(), s.selected.end());
  if (seen.size() != s.selected.size()) problems.push_back("selected contains duplicates");
  return problems;
}

}  // namespace egorank::targets
