#include "spheresum/sbb.hpp"

#include <Eigen/Dense>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "spheresum/errors.hpp"

namespace spheresum {

SBBBasis::SBBBasis(int degree) : degree_(degree) {
  if (degree < 1 || degree > kMaxSbbDegree) {
    throw std::invalid_argument("SBB degree must be in [1, " + std::to_string(kMaxSbbDegree) +
                                "]");
  }
  index_set_.reserve(sbb_basis_size(degree));
  for (int k = 0; k <= degree; ++k) {
    for (int j = 0; j <= degree - k; ++j) {
      index_set_.push_back({degree - k - j, j, k});
    }
  }
}

void SBBBasis::eval(const BarycentricCoords& b, double* out) const {
  double p1[kMaxSbbDegree + 1], p2[kMaxSbbDegree + 1], p3[kMaxSbbDegree + 1];
  p1[0] = p2[0] = p3[0] = 1.0;  // 0^0 = 1
  for (int n = 1; n <= degree_; ++n) {
    p1[n] = p1[n - 1] * b.b1;
    p2[n] = p2[n - 1] * b.b2;
    p3[n] = p3[n - 1] * b.b3;
  }
  for (std::size_t m = 0; m < index_set_.size(); ++m) {
    const auto& [i, j, k] = index_set_[m];
    out[m] = p1[i] * p2[j] * p3[k];
  }
}

std::vector<double> SBBBasis::eval(const BarycentricCoords& b) const {
  std::vector<double> out(index_set_.size());
  eval(b, out.data());
  return out;
}

ProxyPointSet proxy_points_from_barycentric(const SphericalTriangle& t, int degree,
                                            std::vector<BarycentricCoords> bary) {
  ProxyPointSet set{t, degree, {}, std::move(bary)};
  set.points.reserve(set.barycentric.size());
  for (const BarycentricCoords& b : set.barycentric) {
    set.points.push_back(
        UnitVector3(b.b1 * t.v1.vec() + b.b2 * t.v2.vec() + b.b3 * t.v3.vec()));
  }
  return set;
}

ProxyPointSet proxy_points(const SphericalTriangle& t, int degree) {
  const SBBBasis basis(degree);
  std::vector<BarycentricCoords> bary;
  bary.reserve(basis.size());
  const double d = static_cast<double>(degree);
  for (const auto& [i, j, k] : basis.index_set()) bary.push_back({i / d, j / d, k / d});
  // Trip the conditioning guard early for degenerate configurations.
  lattice_fit(degree);
  return proxy_points_from_barycentric(t, degree, std::move(bary));
}

struct ProxyFit::Impl {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  Eigen::MatrixXd matrix;
  double rcond = 0.0;
};

ProxyFit::ProxyFit(const SBBBasis& basis, const std::vector<BarycentricCoords>& bary)
    : impl_(std::make_unique<Impl>()) {
  const int n = basis.size();
  if (static_cast<int>(bary.size()) != n) {
    throw std::invalid_argument("proxy point count must equal the basis size");
  }
  Eigen::MatrixXd v(n, n);
  std::vector<double> row(n);
  for (int m = 0; m < n; ++m) {
    basis.eval(bary[m], row.data());
    for (int k = 0; k < n; ++k) v(m, k) = row[k];
  }
  impl_->matrix = v;
  impl_->lu.compute(v);
  impl_->rcond = impl_->lu.rcond();
  if (!(impl_->rcond > 1e-12)) {
    throw ConditioningError("proxy Vandermonde too ill-conditioned (rcond estimate " +
                                std::to_string(impl_->rcond) + ")",
                            impl_->rcond);
  }
}

ProxyFit::~ProxyFit() = default;
ProxyFit::ProxyFit(ProxyFit&&) noexcept = default;
ProxyFit& ProxyFit::operator=(ProxyFit&&) noexcept = default;

int ProxyFit::size() const { return static_cast<int>(impl_->matrix.rows()); }
double ProxyFit::rcond() const { return impl_->rcond; }

void ProxyFit::solve(const double* rhs, double* out, int ncols) const {
  const int n = size();
  Eigen::Map<const Eigen::MatrixXd> b(rhs, n, ncols);
  Eigen::Map<Eigen::MatrixXd> x(out, n, ncols);
  x = impl_->lu.solve(b);
}

void ProxyFit::solve_transposed(const double* rhs, double* out, int ncols) const {
  const int n = size();
  Eigen::Map<const Eigen::MatrixXd> b(rhs, n, ncols);
  Eigen::Map<Eigen::MatrixXd> x(out, n, ncols);
  x = impl_->lu.transpose().solve(b);
}

double ProxyFit::residual(const double* rhs, const double* x) const {
  const int n = size();
  Eigen::Map<const Eigen::VectorXd> b(rhs, n);
  Eigen::Map<const Eigen::VectorXd> xv(x, n);
  return (impl_->matrix * xv - b).cwiseAbs().maxCoeff();
}

const ProxyFit& lattice_fit(int degree) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<ProxyFit>> cache;
  std::scoped_lock lock(mu);
  auto it = cache.find(degree);
  if (it == cache.end()) {
    const SBBBasis basis(degree);
    std::vector<BarycentricCoords> bary;
    bary.reserve(basis.size());
    const double d = static_cast<double>(degree);
    for (const auto& [i, j, k] : basis.index_set()) bary.push_back({i / d, j / d, k / d});
    it = cache.emplace(degree, std::make_unique<ProxyFit>(basis, bary)).first;
  }
  return *it->second;
}

SBBInterpolant fit_coefficients(const ProxyPointSet& pts, const std::vector<double>& values,
                                int dim) {
  const SBBBasis basis(pts.degree);
  const int n = basis.size();
  if (static_cast<int>(values.size()) != n * dim) {
    throw std::invalid_argument("value count must equal proxy point count times dim");
  }
  const ProxyFit fit(basis, pts.barycentric);
  SBBInterpolant out{pts.triangle, pts.degree, dim, std::vector<double>(values.size())};
  fit.solve(values.data(), out.coefficients.data(), dim);
  return out;
}

void interpolant_eval(const SBBInterpolant& f, const UnitVector3& p, double* out) {
  const SBBBasis basis(f.degree);
  const int n = basis.size();
  double bvals[(kMaxSbbDegree + 1) * (kMaxSbbDegree + 2) / 2];
  basis.eval(spherical_barycentric(f.triangle, p), bvals);
  for (int d = 0; d < f.dim; ++d) {
    double acc = 0.0;
    const double* col = f.coefficients.data() + static_cast<std::size_t>(d) * n;
    for (int k = 0; k < n; ++k) acc += col[k] * bvals[k];
    out[d] = acc;
  }
}

double interpolant_eval(const SBBInterpolant& f, const UnitVector3& p) {
  double out = 0.0;
  interpolant_eval(f, p, &out);
  return out;
}

}  // namespace spheresum
