#include "hamdet/kmedoids.hpp"

#include <stdexcept>

namespace hamdet {

std::vector<std::size_t> MedoidClustering::members_of(ClusterId id) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] == id) out.push_back(i);
  }
  return out;
}

MedoidClustering two_medoid_cluster(
    const std::vector<SparseBinaryVector>& members) {
  const std::size_t n = members.size();
  if (n < 2) {
    throw std::invalid_argument("two-medoid clustering needs >= 2 members");
  }

  std::vector<std::uint32_t> dist(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::uint32_t d = hamming_distance(members[i], members[j]);
      dist[i * n + j] = d;
      dist[j * n + i] = d;
    }
  }

  MedoidClustering best;
  bool have_best = false;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      std::uint64_t cost = 0;
      for (std::size_t i = 0; i < n; ++i) {
        cost += std::min(dist[i * n + a], dist[i * n + b]);
      }
      if (!have_best || cost < best.cost) {
        best.head_a = a;
        best.head_b = b;
        best.cost = cost;
        have_best = true;
      }
    }
  }

  best.assignment.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == best.head_a) {
      best.assignment[i] = ClusterId::a;
    } else if (i == best.head_b) {
      best.assignment[i] = ClusterId::b;
    } else {
      best.assignment[i] = dist[i * n + best.head_b] < dist[i * n + best.head_a]
                               ? ClusterId::b
                               : ClusterId::a;
    }
  }
  return best;
}

std::vector<std::uint32_t> ch_distance_scores(
    const std::vector<SparseBinaryVector>& members,
    const MedoidClustering& clustering) {
  if (clustering.assignment.size() != members.size()) {
    throw std::invalid_argument("clustering does not match member list");
  }
  std::vector<std::uint32_t> scores;
  scores.reserve(members.size());
  const auto& ha = members[clustering.head_a];
  const auto& hb = members[clustering.head_b];
  for (const auto& m : members) {
    scores.push_back(hamming_distance(m, ha) + hamming_distance(m, hb));
  }
  return scores;
}

}  // namespace hamdet
