#pragma once

#include <cstdint>
#include <vector>

#include "hamdet/sparse_vector.hpp"

namespace hamdet {

enum class ClusterId : std::uint8_t { a, b };

/// Result of splitting a member list into two medoid clusters. Heads are
/// positions into the member list, and every member is assigned to the
/// head it is nearer to (distance ties go to cluster A, except that each
/// head always belongs to its own cluster).
struct MedoidClustering {
  std::size_t head_a = 0;
  std::size_t head_b = 0;
  std::vector<ClusterId> assignment;
  std::uint64_t cost = 0;  // sum over members of distance to nearer head

  std::vector<std::size_t> members_of(ClusterId id) const;
};

/// Exhaustive two-medoid partition: every unordered pair of members is
/// evaluated as a candidate head pair and the one with minimal total
/// assignment cost wins. Ties are resolved toward the lexicographically
/// first (head_a, head_b) pair, so the result is deterministic.
/// Requires at least two members.
MedoidClustering two_medoid_cluster(
    const std::vector<SparseBinaryVector>& members);

/// Per-member score: distance to head A plus distance to head B.
std::vector<std::uint32_t> ch_distance_scores(
    const std::vector<SparseBinaryVector>& members,
    const MedoidClustering& clustering);

}  // namespace hamdet
