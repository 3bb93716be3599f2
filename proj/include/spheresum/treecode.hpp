#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "spheresum/face_tree.hpp"
#include "spheresum/geometry.hpp"
#include "spheresum/sbb.hpp"

namespace spheresum {

struct TraversalConfig {
  double theta = 0.7;     // multipole acceptance criterion, in (0, 1]
  int n_threshold = 32;   // bin size above which a node counts as a cluster
  int degree = 6;         // SBB interpolation degree
  int max_depth = 10;     // deepest tree level

  void validate() const;
};

enum class InteractionKind : std::uint8_t { PP, PC, CP, CC };

struct Interaction {
  int target = -1;
  int source = -1;
  InteractionKind kind = InteractionKind::PP;
};

using InteractionList = std::vector<Interaction>;

template <int D>
using PotentialField = std::vector<std::array<double, D>>;

// (r_t + r_s)/R < theta with R the great-circle distance between the
// circumcenters; R = 0 never qualifies.
bool mac_well_separated(const TreeNode& tn, const TreeNode& sn, double theta);

// Dual traversal over all 400 root pairs. Pairs with an empty bin are
// skipped; well-separated pairs are emitted with the kind given by the bin
// sizes against n_threshold; otherwise both-small pairs interact directly and
// larger pairs recurse into the children of the node with the bigger bin
// (ties toward the source), falling back to PP at leaves and at max_depth.
InteractionList dual_traversal(const FaceTree& target_tree, const FaceTree& source_tree,
                               const TraversalConfig& cfg);

// Proxy weights w_k = sum_j B_k(y_j) q_j A_j over the source bin.
std::vector<double> compute_proxy_weights(const FaceTree& tree, int source_node,
                                          const SBBBasis& basis,
                                          const std::vector<UnitVector3>& positions,
                                          const std::vector<double>& strengths);

// Per-interaction evaluation. These add raw kernel sums into `field`
// (no prefactor); treecode_sum applies Kernel::prefactor() at the end.
template <class Kernel>
void eval_pp(const FaceTree& tree, const Interaction& it,
             const std::vector<UnitVector3>& positions, const std::vector<double>& strengths,
             PotentialField<Kernel::dim>& field);

template <class Kernel>
void eval_pc(const FaceTree& tree, const Interaction& it,
             const std::vector<UnitVector3>& positions, const std::vector<double>& strengths,
             const TraversalConfig& cfg, PotentialField<Kernel::dim>& field);

template <class Kernel>
void eval_cp(const FaceTree& tree, const Interaction& it,
             const std::vector<UnitVector3>& positions, const std::vector<double>& strengths,
             const TraversalConfig& cfg, PotentialField<Kernel::dim>& field);

template <class Kernel>
void eval_cc(const FaceTree& tree, const Interaction& it,
             const std::vector<UnitVector3>& positions, const std::vector<double>& strengths,
             const TraversalConfig& cfg, PotentialField<Kernel::dim>& field);

struct TreecodeStats {
  double bin_seconds = 0.0;
  double traversal_seconds = 0.0;
  double eval_seconds = 0.0;
  std::array<std::size_t, 4> interaction_counts{};  // indexed by InteractionKind
};

// Exact O(N^2) sum phi_i = prefactor * sum_{j != i} K(x_i, x_j) q_j,
// accumulated in ascending j. Single-threaded; this is the oracle.
template <class Kernel>
PotentialField<Kernel::dim> direct_sum(const std::vector<UnitVector3>& positions,
                                       const std::vector<double>& strengths);

// Fast summation: bins the particles into `tree`, traverses, evaluates.
// Per-particle accumulation runs in a fixed order (direct terms merged in
// ascending source index, then cluster terms along the root-to-leaf path), so
// the output is byte-identical for any worker count, and reduces to
// direct_sum exactly when theta disables the MAC.
template <class Kernel>
PotentialField<Kernel::dim> treecode_sum(const std::vector<UnitVector3>& positions,
                                         const std::vector<double>& strengths,
                                         const TraversalConfig& cfg, FaceTree& tree,
                                         int workers = 1, TreecodeStats* stats = nullptr);

}  // namespace spheresum
