#include "spheresum/treecode.hpp"

#include <algorithm>
#include <chrono>
#include <utility>

#include "spheresum/errors.hpp"
#include "spheresum/kernels.hpp"
#include "spheresum/parallel.hpp"

namespace spheresum {

void TraversalConfig::validate() const {
  if (!(theta > 0.0 && theta <= 1.0)) throw ConfigError("theta must be in (0, 1]");
  if (n_threshold < 1) throw ConfigError("n_threshold must be >= 1");
  if (degree < 1 || degree > kMaxSbbDegree) {
    throw ConfigError("degree must be in [1, " + std::to_string(kMaxSbbDegree) + "]");
  }
  if (max_depth < 1 || max_depth > 40) throw ConfigError("max_depth must be in [1, 40]");
}

bool mac_well_separated(const TreeNode& tn, const TreeNode& sn, double theta) {
  const double r = great_circle_distance(tn.circumcenter, sn.circumcenter);
  return r > 0.0 && (tn.radius + sn.radius) / r < theta;
}

namespace {

InteractionKind classify(int nt, int ns, int n_threshold) {
  const bool t_big = nt > n_threshold;
  const bool s_big = ns > n_threshold;
  if (t_big && s_big) return InteractionKind::CC;
  if (s_big) return InteractionKind::PC;
  if (t_big) return InteractionKind::CP;
  return InteractionKind::PP;
}

void traverse(const FaceTree& ttree, const FaceTree& stree, const TraversalConfig& cfg, int t,
              int s, InteractionList& out) {
  const TreeNode& tn = ttree.node(t);
  const TreeNode& sn = stree.node(s);
  if (tn.bin.empty() || sn.bin.empty()) return;
  if (mac_well_separated(tn, sn, cfg.theta)) {
    out.push_back({t, s, classify(tn.size(), sn.size(), cfg.n_threshold)});
    return;
  }
  if (tn.size() <= cfg.n_threshold && sn.size() <= cfg.n_threshold) {
    out.push_back({t, s, InteractionKind::PP});
    return;
  }
  // Refine the node with the larger bin; ties go to the source node.
  const bool refine_target = tn.size() > sn.size();
  const TreeNode& r = refine_target ? tn : sn;
  if (!r.has_children() || r.level >= cfg.max_depth) {
    out.push_back({t, s, InteractionKind::PP});
    return;
  }
  for (int c = r.child_base; c < r.child_base + 4; ++c) {
    if (refine_target) {
      traverse(ttree, stree, cfg, c, s, out);
    } else {
      traverse(ttree, stree, cfg, t, c, out);
    }
  }
}

}  // namespace

InteractionList dual_traversal(const FaceTree& target_tree, const FaceTree& source_tree,
                               const TraversalConfig& cfg) {
  cfg.validate();
  InteractionList out;
  for (int t = 0; t < 20; ++t) {
    for (int s = 0; s < 20; ++s) traverse(target_tree, source_tree, cfg, t, s, out);
  }
  return out;
}

std::vector<double> compute_proxy_weights(const FaceTree& tree, int source_node,
                                          const SBBBasis& basis,
                                          const std::vector<UnitVector3>& positions,
                                          const std::vector<double>& strengths) {
  const TreeNode& sn = tree.node(source_node);
  std::vector<double> weights(basis.size(), 0.0);
  std::vector<double> bvals(basis.size());
  for (int j : sn.bin) {
    basis.eval(spherical_barycentric(sn.triangle, positions[j]), bvals.data());
    for (int k = 0; k < basis.size(); ++k) weights[k] += bvals[k] * strengths[j];
  }
  return weights;
}

namespace {

constexpr int kMaxBasisSize = sbb_basis_size(kMaxSbbDegree);

// phi is column-major (point index fast, component slow), P x D.
template <class Kernel>
void accumulate_exact_proxy_potentials(const std::vector<UnitVector3>& proxy_pts,
                                       const std::vector<int>& source_bin,
                                       const std::vector<UnitVector3>& positions,
                                       const std::vector<double>& strengths, double* phi) {
  constexpr int D = Kernel::dim;
  const int p = static_cast<int>(proxy_pts.size());
  double term[D];
  for (int n = 0; n < p; ++n) {
    for (int j : source_bin) {
      Kernel::eval(proxy_pts[n], positions[j], term);
      for (int d = 0; d < D; ++d) phi[d * p + n] += term[d] * strengths[j];
    }
  }
}

template <class Kernel>
void accumulate_approx_proxy_potentials(const std::vector<UnitVector3>& target_proxy_pts,
                                        const std::vector<UnitVector3>& source_proxy_pts,
                                        const std::vector<double>& w_hat, double* phi) {
  constexpr int D = Kernel::dim;
  const int p = static_cast<int>(target_proxy_pts.size());
  const int q = static_cast<int>(source_proxy_pts.size());
  double term[D];
  for (int n = 0; n < p; ++n) {
    for (int m = 0; m < q; ++m) {
      Kernel::eval(target_proxy_pts[n], source_proxy_pts[m], term);
      for (int d = 0; d < D; ++d) phi[d * p + n] += term[d] * w_hat[m];
    }
  }
}

// Adds sum_m K(x, y_m) w_hat_m for one evaluation point.
template <class Kernel>
void add_pc_contribution(const UnitVector3& x, const std::vector<UnitVector3>& source_proxy_pts,
                         const std::vector<double>& w_hat, double* acc) {
  constexpr int D = Kernel::dim;
  double term[D];
  for (std::size_t m = 0; m < source_proxy_pts.size(); ++m) {
    Kernel::eval(x, source_proxy_pts[m], term);
    for (int d = 0; d < D; ++d) acc[d] += term[d] * w_hat[m];
  }
}

// Adds the fitted polynomial value at x; coeff is P x D column-major.
void add_fitted_value(const SBBBasis& basis, const SphericalTriangle& tri,
                      const std::vector<double>& coeff, int dim, const UnitVector3& x,
                      double* acc) {
  double bvals[kMaxBasisSize];
  basis.eval(spherical_barycentric(tri, x), bvals);
  const int p = basis.size();
  for (int d = 0; d < dim; ++d) {
    double v = 0.0;
    const double* col = coeff.data() + static_cast<std::size_t>(d) * p;
    for (int k = 0; k < p; ++k) v += col[k] * bvals[k];
    acc[d] += v;
  }
}

std::vector<double> transformed_proxy_weights(const FaceTree& tree, int source_node,
                                              const SBBBasis& basis, const ProxyFit& fit,
                                              const std::vector<UnitVector3>& positions,
                                              const std::vector<double>& strengths) {
  const std::vector<double> w =
      compute_proxy_weights(tree, source_node, basis, positions, strengths);
  std::vector<double> w_hat(w.size());
  fit.solve_transposed(w.data(), w_hat.data(), 1);
  return w_hat;
}

}  // namespace

template <class Kernel>
void eval_pp(const FaceTree& tree, const Interaction& it,
             const std::vector<UnitVector3>& positions, const std::vector<double>& strengths,
             PotentialField<Kernel::dim>& field) {
  constexpr int D = Kernel::dim;
  const TreeNode& tn = tree.node(it.target);
  const TreeNode& sn = tree.node(it.source);
  double term[D];
  for (int i : tn.bin) {
    auto& acc = field[i];
    for (int j : sn.bin) {
      if (j == i) continue;
      Kernel::eval(positions[i], positions[j], term);
      for (int d = 0; d < D; ++d) acc[d] += term[d] * strengths[j];
    }
  }
}

template <class Kernel>
void eval_pc(const FaceTree& tree, const Interaction& it,
             const std::vector<UnitVector3>& positions, const std::vector<double>& strengths,
             const TraversalConfig& cfg, PotentialField<Kernel::dim>& field) {
  const SBBBasis basis(cfg.degree);
  const ProxyFit& fit = lattice_fit(cfg.degree);
  const std::vector<UnitVector3> pts =
      proxy_points(tree.node(it.source).triangle, cfg.degree).points;
  const std::vector<double> w_hat =
      transformed_proxy_weights(tree, it.source, basis, fit, positions, strengths);
  for (int i : tree.node(it.target).bin) {
    add_pc_contribution<Kernel>(positions[i], pts, w_hat, field[i].data());
  }
}

template <class Kernel>
void eval_cp(const FaceTree& tree, const Interaction& it,
             const std::vector<UnitVector3>& positions, const std::vector<double>& strengths,
             const TraversalConfig& cfg, PotentialField<Kernel::dim>& field) {
  constexpr int D = Kernel::dim;
  const SBBBasis basis(cfg.degree);
  const ProxyFit& fit = lattice_fit(cfg.degree);
  const TreeNode& tn = tree.node(it.target);
  const std::vector<UnitVector3> pts = proxy_points(tn.triangle, cfg.degree).points;
  const int p = basis.size();
  std::vector<double> phi(static_cast<std::size_t>(p) * D, 0.0);
  accumulate_exact_proxy_potentials<Kernel>(pts, tree.node(it.source).bin, positions, strengths,
                                            phi.data());
  std::vector<double> coeff(phi.size());
  fit.solve(phi.data(), coeff.data(), D);
  for (int i : tn.bin) {
    add_fitted_value(basis, tn.triangle, coeff, D, positions[i], field[i].data());
  }
}

template <class Kernel>
void eval_cc(const FaceTree& tree, const Interaction& it,
             const std::vector<UnitVector3>& positions, const std::vector<double>& strengths,
             const TraversalConfig& cfg, PotentialField<Kernel::dim>& field) {
  constexpr int D = Kernel::dim;
  const SBBBasis basis(cfg.degree);
  const ProxyFit& fit = lattice_fit(cfg.degree);
  const TreeNode& tn = tree.node(it.target);
  const std::vector<UnitVector3> tpts = proxy_points(tn.triangle, cfg.degree).points;
  const std::vector<UnitVector3> spts =
      proxy_points(tree.node(it.source).triangle, cfg.degree).points;
  const std::vector<double> w_hat =
      transformed_proxy_weights(tree, it.source, basis, fit, positions, strengths);
  const int p = basis.size();
  std::vector<double> phi(static_cast<std::size_t>(p) * D, 0.0);
  accumulate_approx_proxy_potentials<Kernel>(tpts, spts, w_hat, phi.data());
  std::vector<double> coeff(phi.size());
  fit.solve(phi.data(), coeff.data(), D);
  for (int i : tn.bin) {
    add_fitted_value(basis, tn.triangle, coeff, D, positions[i], field[i].data());
  }
}

template <class Kernel>
PotentialField<Kernel::dim> direct_sum(const std::vector<UnitVector3>& positions,
                                       const std::vector<double>& strengths) {
  constexpr int D = Kernel::dim;
  const int n = static_cast<int>(positions.size());
  PotentialField<D> field(n);
  const double pref = Kernel::prefactor();
  double term[D];
  for (int i = 0; i < n; ++i) {
    std::array<double, D> acc{};
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      Kernel::eval(positions[i], positions[j], term);
      for (int d = 0; d < D; ++d) acc[d] += term[d] * strengths[j];
    }
    for (int d = 0; d < D; ++d) field[i][d] = pref * acc[d];
  }
  return field;
}

template <class Kernel>
PotentialField<Kernel::dim> treecode_sum(const std::vector<UnitVector3>& positions,
                                         const std::vector<double>& strengths,
                                         const TraversalConfig& cfg, FaceTree& tree, int workers,
                                         TreecodeStats* stats) {
  cfg.validate();
  constexpr int D = Kernel::dim;
  using clock = std::chrono::steady_clock;
  const auto seconds_since = [](clock::time_point a, clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
  };

  const auto t0 = clock::now();
  tree.bin_particles(positions, cfg.n_threshold, cfg.max_depth);
  const auto t1 = clock::now();
  const InteractionList list = dual_traversal(tree, tree, cfg);
  const auto t2 = clock::now();

  const SBBBasis basis(cfg.degree);
  const ProxyFit& fit = lattice_fit(cfg.degree);
  const int p = basis.size();
  const int n_nodes = tree.node_count();

  // Per-target-node evaluation lists, in emission order.
  std::vector<std::vector<int>> pp_sources(n_nodes);
  std::vector<std::vector<int>> pc_sources(n_nodes);
  std::vector<std::vector<std::pair<int, InteractionKind>>> cluster_targets(n_nodes);
  std::vector<char> needs_proxy(n_nodes, 0);
  std::vector<char> needs_weights(n_nodes, 0);
  for (const Interaction& it : list) {
    if (stats) ++stats->interaction_counts[static_cast<int>(it.kind)];
    switch (it.kind) {
      case InteractionKind::PP:
        pp_sources[it.target].push_back(it.source);
        break;
      case InteractionKind::PC:
        pc_sources[it.target].push_back(it.source);
        needs_proxy[it.source] = 1;
        needs_weights[it.source] = 1;
        break;
      case InteractionKind::CP:
        cluster_targets[it.target].emplace_back(it.source, InteractionKind::CP);
        needs_proxy[it.target] = 1;
        break;
      case InteractionKind::CC:
        cluster_targets[it.target].emplace_back(it.source, InteractionKind::CC);
        needs_proxy[it.target] = 1;
        needs_proxy[it.source] = 1;
        needs_weights[it.source] = 1;
        break;
    }
  }

  std::vector<int> proxy_nodes, weight_nodes, fit_nodes;
  for (int id = 0; id < n_nodes; ++id) {
    if (needs_proxy[id]) proxy_nodes.push_back(id);
    if (needs_weights[id]) weight_nodes.push_back(id);
    if (!cluster_targets[id].empty()) fit_nodes.push_back(id);
  }

  // Phase 1: proxy points for every node that interpolates.
  std::vector<std::vector<UnitVector3>> proxy_pts(n_nodes);
  parallel_for_items(static_cast<int>(proxy_nodes.size()), workers, [&](int idx) {
    const int id = proxy_nodes[idx];
    proxy_pts[id] = proxy_points(tree.node(id).triangle, cfg.degree).points;
  });

  // Phase 2: transformed proxy weights for PC/CC source nodes. Computed once
  // per node per evaluation and shared by every interaction using the node.
  std::vector<std::vector<double>> w_hat(n_nodes);
  parallel_for_items(static_cast<int>(weight_nodes.size()), workers, [&](int idx) {
    const int id = weight_nodes[idx];
    w_hat[id] = transformed_proxy_weights(tree, id, basis, fit, positions, strengths);
  });

  // Phase 3: accumulate proxy potentials per CP/CC target node (in emission
  // order) and fit the potential polynomial once per node.
  std::vector<std::vector<double>> coeff(n_nodes);
  parallel_for_items(static_cast<int>(fit_nodes.size()), workers, [&](int idx) {
    const int t = fit_nodes[idx];
    std::vector<double> phi(static_cast<std::size_t>(p) * D, 0.0);
    for (const auto& [s, kind] : cluster_targets[t]) {
      if (kind == InteractionKind::CP) {
        accumulate_exact_proxy_potentials<Kernel>(proxy_pts[t], tree.node(s).bin, positions,
                                                  strengths, phi.data());
      } else {
        accumulate_approx_proxy_potentials<Kernel>(proxy_pts[t], proxy_pts[s], w_hat[s],
                                                   phi.data());
      }
    }
    coeff[t].resize(phi.size());
    fit.solve(phi.data(), coeff[t].data(), D);
  });

  // Phase 4: per-particle accumulation, parallel over the 20 root faces
  // (particles live under exactly one root face). Per particle: direct terms
  // merged in ascending source index, then cluster terms along the
  // root-to-leaf path. The order is fixed, so bytes match for any worker
  // count, and the direct part reproduces direct_sum exactly when the MAC
  // never fires.
  PotentialField<D> field(positions.size());
  const double pref = Kernel::prefactor();
  parallel_for_items(20, workers, [&](int g) {
    std::vector<int> gather;
    double term[D];
    for (int i : tree.node(g).bin) {
      int path[48];
      int path_len = 0;
      for (int id = tree.leaf_of_particle(i); id >= 0; id = tree.node(id).parent) {
        path[path_len++] = id;
      }
      // path[] holds leaf..root; walk it backwards for root-to-leaf order.
      gather.clear();
      for (int q = path_len - 1; q >= 0; --q) {
        for (int s : pp_sources[path[q]]) {
          const std::vector<int>& bin = tree.node(s).bin;
          gather.insert(gather.end(), bin.begin(), bin.end());
        }
      }
      std::sort(gather.begin(), gather.end());
      std::array<double, D> acc{};
      for (int j : gather) {
        if (j == i) continue;
        Kernel::eval(positions[i], positions[j], term);
        for (int d = 0; d < D; ++d) acc[d] += term[d] * strengths[j];
      }
      for (int q = path_len - 1; q >= 0; --q) {
        for (int s : pc_sources[path[q]]) {
          add_pc_contribution<Kernel>(positions[i], proxy_pts[s], w_hat[s], acc.data());
        }
      }
      for (int q = path_len - 1; q >= 0; --q) {
        const int t = path[q];
        if (coeff[t].empty()) continue;
        add_fitted_value(basis, tree.node(t).triangle, coeff[t], D, positions[i], acc.data());
      }
      for (int d = 0; d < D; ++d) field[i][d] = pref * acc[d];
    }
  });
  const auto t3 = clock::now();

  if (stats) {
    stats->bin_seconds += seconds_since(t0, t1);
    stats->traversal_seconds += seconds_since(t1, t2);
    stats->eval_seconds += seconds_since(t2, t3);
  }
  return field;
}

#define SPHERESUM_INSTANTIATE_TREECODE(K)                                                       \
  template void eval_pp<K>(const FaceTree&, const Interaction&,                                 \
                           const std::vector<UnitVector3>&, const std::vector<double>&,         \
                           PotentialField<K::dim>&);                                            \
  template void eval_pc<K>(const FaceTree&, const Interaction&,                                 \
                           const std::vector<UnitVector3>&, const std::vector<double>&,         \
                           const TraversalConfig&, PotentialField<K::dim>&);                    \
  template void eval_cp<K>(const FaceTree&, const Interaction&,                                 \
                           const std::vector<UnitVector3>&, const std::vector<double>&,         \
                           const TraversalConfig&, PotentialField<K::dim>&);                    \
  template void eval_cc<K>(const FaceTree&, const Interaction&,                                 \
                           const std::vector<UnitVector3>&, const std::vector<double>&,         \
                           const TraversalConfig&, PotentialField<K::dim>&);                    \
  template PotentialField<K::dim> direct_sum<K>(const std::vector<UnitVector3>&,                \
                                                const std::vector<double>&);                    \
  template PotentialField<K::dim> treecode_sum<K>(const std::vector<UnitVector3>&,              \
                                                  const std::vector<double>&,                   \
                                                  const TraversalConfig&, FaceTree&, int,       \
                                                  TreecodeStats*)

SPHERESUM_INSTANTIATE_TREECODE(LogPotentialKernel);
SPHERESUM_INSTANTIATE_TREECODE(BiotSavartKernel);

#undef SPHERESUM_INSTANTIATE_TREECODE

}  // namespace spheresum
