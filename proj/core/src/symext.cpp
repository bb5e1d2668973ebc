/*
 * Copyright 2026 The sepkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "sepkit/symext.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <string>

#include "sepkit/error.hpp"

namespace sepkit {

namespace {

std::vector<std::size_t> extension_dims(std::size_t dimA, std::size_t dimB, std::size_t copies) {
  std::vector<std::size_t> dims{dimA};
  dims.insert(dims.end(), copies, dimB);
  return dims;
}

std::size_t checked_total(std::size_t dimA, std::size_t dimB, std::size_t copies, std::size_t cap) {
  std::size_t total = dimA;
  for (std::size_t i = 0; i < copies; ++i) {
    if (total > cap / dimB) {
      throw CapExceededError("extension dimension exceeds cap " + std::to_string(cap));
    }
    total *= dimB;
  }
  return total;
}

void require_extension_size(const Matrix& x, std::size_t dimA, std::size_t dimB, std::size_t copies) {
  const std::size_t total = checked_total(dimA, dimB, copies, static_cast<std::size_t>(-1));
  if (x.rows() != x.cols() || static_cast<std::size_t>(x.rows()) != total) {
    throw DimensionError("operator size does not match dimA * dimB^k");
  }
}

// Permutation of A B_1..B_k that keeps A and swaps B_i, B_{i+1}.
std::vector<std::size_t> adjacent_swap(std::size_t copies, std::size_t i) {
  std::vector<std::size_t> perm(copies + 1);
  std::iota(perm.begin(), perm.end(), 0);
  std::swap(perm[i + 1], perm[i + 2]);
  return perm;
}

}  // namespace

std::string_view status_name(FeasibilityStatus s) {
  switch (s) {
    case FeasibilityStatus::Feasible:
      return "feasible";
    case FeasibilityStatus::InfeasibleEvidence:
      return "infeasible-evidence";
    case FeasibilityStatus::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

ExtensionProblem::ExtensionProblem(DensityMatrix base, std::size_t copies, std::size_t cap)
    : base_(std::move(base)), copies_(copies) {
  if (copies_ < 2) throw PreconditionError("symmetric extension needs k >= 2 copies");
  total_ = checked_total(dimA(), dimB(), copies_, cap);
  dims_ = extension_dims(dimA(), dimB(), copies_);
}

Matrix symmetrize_B(const Matrix& x, std::size_t dimA, std::size_t dimB, std::size_t copies) {
  require_extension_size(x, dimA, dimB, copies);
  const auto dims = extension_dims(dimA, dimB, copies);
  std::vector<std::size_t> bperm(copies);
  std::iota(bperm.begin(), bperm.end(), 1);
  Matrix acc = Matrix::Zero(x.rows(), x.cols());
  std::size_t count = 0;
  do {
    std::vector<std::size_t> perm{0};
    perm.insert(perm.end(), bperm.begin(), bperm.end());
    acc += permute_systems(x, dims, perm);
    ++count;
  } while (std::next_permutation(bperm.begin(), bperm.end()));
  return acc / static_cast<double>(count);
}

Matrix symmetrize_B(const Matrix& x, const ExtensionProblem& problem) {
  return symmetrize_B(x, problem.dimA(), problem.dimB(), problem.copies());
}

Matrix extension_marginal(const Matrix& x, std::size_t dimA, std::size_t dimB, std::size_t copies) {
  require_extension_size(x, dimA, dimB, copies);
  const auto dims = extension_dims(dimA, dimB, copies);
  const std::size_t keep[] = {0, 1};
  return partial_trace_systems(x, dims, keep);
}

Matrix project_affine(const Matrix& x, const ExtensionProblem& p) {
  // With S the symmetrizer and T the marginal map, T S (Y (x) I) =
  // c [ (dB/k) Y + ((k-1)/k) Tr_B(Y) (x) I ],  c = dB^{k-2}. The correction
  // below inverts that map on the residual, so the result is the exact
  // orthogonal projection onto {S X = X, T X = rho}.
  const double k = static_cast<double>(p.copies());
  const double dB = static_cast<double>(p.dimB());
  const double c = std::pow(dB, k - 2.0);

  const Matrix sym = symmetrize_B(x, p);
  const Matrix r = p.base().matrix() - extension_marginal(sym, p.dimA(), p.dimB(), p.copies());
  const Matrix rA = partial_trace(r, p.base().shape(), Subsystem::A);
  const Matrix y = (k / (c * dB)) * r - ((k - 1.0) / dB) * tensor(Matrix(rA / (c * dB)), identity(p.dimB()));

  std::size_t rest = 1;
  for (std::size_t i = 1; i < p.copies(); ++i) rest *= p.dimB();
  Matrix out = sym + symmetrize_B(tensor(y, identity(rest)), p);
  return 0.5 * (out + out.adjoint());
}

Matrix project_psd(const Matrix& x) {
  const EigenDecomposition e = hermitian_eig(0.5 * (x + x.adjoint()));
  const RealVector clipped = e.values.cwiseMax(0.0);
  Matrix out = e.vectors * clipped.cast<Complex>().asDiagonal() * e.vectors.adjoint();
  return 0.5 * (out + out.adjoint());
}

Matrix extend_separable(const ProductEnsemble& ens, std::size_t copies, std::size_t cap) {
  if (copies < 2) throw PreconditionError("symmetric extension needs k >= 2 copies");
  const BipartiteShape s = ens.shape();
  const std::size_t total = checked_total(s.dimA, s.dimB, copies, cap);
  Matrix acc = Matrix::Zero(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(total));
  for (const auto& m : ens.members()) {
    Matrix term = m.stateA.matrix();
    for (std::size_t i = 0; i < copies; ++i) term = tensor(term, m.stateB.matrix());
    acc += m.weight * term;
  }
  return acc;
}

ExtensionCheck verify_extension(const Matrix& x, const DensityMatrix& rho, std::size_t copies) {
  const BipartiteShape s = rho.shape();
  require_extension_size(x, s.dimA, s.dimB, copies);
  const auto dims = extension_dims(s.dimA, s.dimB, copies);

  ExtensionCheck out;
  out.hermitian_error = max_abs(x - x.adjoint());
  for (std::size_t i = 0; i + 1 < copies; ++i) {
    const auto perm = adjacent_swap(copies, i);
    out.symmetry_error = std::max(out.symmetry_error, max_abs(permute_systems(x, dims, perm) - x));
  }
  out.marginal_error = max_abs(extension_marginal(x, s.dimA, s.dimB, copies) - rho.matrix());
  out.psd_margin = psd_margin(0.5 * (x + x.adjoint()));
  return out;
}

namespace {

// Every extension of rho lives on V = intersection over j of
// range(rho)_{A B_j} (x) H_rest, a subspace invariant under B permutations.
// Iterating inside that face restores a relative interior for rank-deficient
// inputs; the full-support case reduces to the closed-form projection.
class FaceProjector {
 public:
  explicit FaceProjector(const ExtensionProblem& p) : p_(p) {
    const EigenDecomposition e = hermitian_eig(p.base().matrix());
    const double cutoff = kSupportRelTol * std::max(1.0, e.values.cwiseAbs().maxCoeff());
    Eigen::Index rank = 0;
    while (rank < e.values.size() && e.values(rank) > cutoff) ++rank;
    const std::size_t m = p.base().dim();
    if (static_cast<std::size_t>(rank) == m) return;

    const Matrix support = e.vectors.leftCols(rank) * e.vectors.leftCols(rank).adjoint();
    std::size_t rest = p.total_dim() / m;
    const Matrix q1 = tensor(support, identity(rest));
    Matrix complement = Matrix::Zero(q1.rows(), q1.cols());
    for (std::size_t j = 1; j <= p.copies(); ++j) {
      std::vector<std::size_t> perm(p.copies() + 1);
      std::iota(perm.begin(), perm.end(), 0);
      std::swap(perm[1], perm[j]);
      complement += identity(p.total_dim()) - permute_systems(q1, p.dims(), perm);
    }
    const EigenDecomposition c = hermitian_eig(0.5 * (complement + complement.adjoint()));
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < c.values.size(); ++i)
      if (c.values(i) < kFaceTol) keep.push_back(i);
    Matrix basis(c.vectors.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i) basis.col(static_cast<Eigen::Index>(i)) = c.vectors.col(keep[i]);
    face_ = basis * basis.adjoint();

    // Gram operator G = T C on Hermitian operators of A B_1, in an orthonormal
    // real basis; pseudo-inverted because directions outside supp(rho) vanish.
    basis_ = hermitian_basis(m);
    const auto n = static_cast<Eigen::Index>(basis_.size());
    Eigen::MatrixXd g(n, n);
    for (Eigen::Index col = 0; col < n; ++col) {
      const Matrix image = p_marginal(correction(basis_[static_cast<std::size_t>(col)]));
      for (Eigen::Index row = 0; row < n; ++row) g(row, col) = inner(basis_[static_cast<std::size_t>(row)], image);
    }
    g = 0.5 * (g + g.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ge(g);
    const double gmax = ge.eigenvalues().cwiseAbs().maxCoeff();
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i)
      if (ge.eigenvalues()(i) > kGramPinvTol * gmax) inv(i) = 1.0 / ge.eigenvalues()(i);
    gram_pinv_ = ge.eigenvectors() * inv.asDiagonal() * ge.eigenvectors().transpose();
  }

  bool restricted() const { return face_.has_value(); }

  Matrix project(const Matrix& x) const {
    if (!face_) return project_affine(x, p_);
    const Matrix& f = *face_;
    const Matrix sym = symmetrize_B(Matrix(f * x * f), p_);
    const Matrix r = p_.base().matrix() - p_marginal(sym);
    Eigen::VectorXd coeffs(static_cast<Eigen::Index>(basis_.size()));
    for (std::size_t i = 0; i < basis_.size(); ++i) coeffs(static_cast<Eigen::Index>(i)) = inner(basis_[i], r);
    const Eigen::VectorXd y = gram_pinv_ * coeffs;
    Matrix ym = Matrix::Zero(r.rows(), r.cols());
    for (std::size_t i = 0; i < basis_.size(); ++i) ym += y(static_cast<Eigen::Index>(i)) * basis_[i];
    Matrix out = sym + correction(ym);
    return 0.5 * (out + out.adjoint());
  }

 private:
  static constexpr double kSupportRelTol = 1e-10;
  static constexpr double kFaceTol = 1e-9;
  static constexpr double kGramPinvTol = 1e-12;

  static double inner(const Matrix& a, const Matrix& b) { return a.cwiseProduct(b.conjugate()).sum().real(); }

  static std::vector<Matrix> hermitian_basis(std::size_t m) {
    const auto n = static_cast<Eigen::Index>(m);
    const double r2 = 1.0 / std::sqrt(2.0);
    std::vector<Matrix> out;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i; j < n; ++j) {
        Matrix re = Matrix::Zero(n, n);
        if (i == j) {
          re(i, i) = 1.0;
          out.push_back(re);
          continue;
        }
        re(i, j) = re(j, i) = r2;
        out.push_back(re);
        Matrix im = Matrix::Zero(n, n);
        im(i, j) = Complex(0.0, -r2);
        im(j, i) = Complex(0.0, r2);
        out.push_back(im);
      }
    }
    return out;
  }

  Matrix p_marginal(const Matrix& x) const { return extension_marginal(x, p_.dimA(), p_.dimB(), p_.copies()); }

  // Adjoint of the marginal map restricted to symmetric operators on the face.
  Matrix correction(const Matrix& y) const {
    const Matrix& f = *face_;
    return symmetrize_B(Matrix(f * tensor(y, identity(p_.total_dim() / p_.base().dim())) * f), p_);
  }

  const ExtensionProblem& p_;
  std::optional<Matrix> face_;
  std::vector<Matrix> basis_;
  Eigen::MatrixXd gram_pinv_;
};

}  // namespace

namespace {
constexpr double kEmptyFaceTol = 1e-6;
}  // namespace

FeasibilityResult has_symmetric_extension(const DensityMatrix& rho, std::size_t copies, const SymExtOptions& opts) {
  const ExtensionProblem problem(rho, copies);
  const FaceProjector affine(problem);
  const std::size_t rest = problem.total_dim() / rho.dim();

  // Start from rho (x) maximally mixed, or the warm start, moved onto the affine set.
  if (opts.warm_start && (opts.warm_start->rows() != static_cast<Eigen::Index>(problem.total_dim()) ||
                          opts.warm_start->cols() != opts.warm_start->rows())) {
    throw DimensionError("has_symmetric_extension: warm start has the wrong size");
  }
  Matrix x = affine.project(opts.warm_start ? *opts.warm_start
                                            : Matrix(tensor(rho.matrix(), identity(rest) / static_cast<double>(rest))));
  Matrix increment = Matrix::Zero(x.rows(), x.cols());
  std::deque<double> gaps;

  FeasibilityResult result;
  auto accept = [&](const Matrix& candidate) {
    const ExtensionCheck check = verify_extension(candidate, rho, copies);
    if (!check.ok(opts.tol)) return false;
    result.status = FeasibilityStatus::Feasible;
    result.residual = std::max({check.hermitian_error, check.symmetry_error, check.marginal_error,
                                std::max(0.0, -check.psd_margin)});
    result.witness_extension = candidate;
    return true;
  };

  // Inside the support face the affine set can already be empty: no operator
  // supported there reproduces rho, so no extension exists at all.
  const double marginal_error = max_abs(extension_marginal(x, problem.dimA(), problem.dimB(), copies) - rho.matrix());
  if (affine.restricted() && marginal_error > kEmptyFaceTol) {
    result.status = FeasibilityStatus::InfeasibleEvidence;
    result.gap = marginal_error;
    result.residual = marginal_error;
    return result;
  }

  Matrix previous = x;
  double momentum = 1.0;
  double last_gap = std::numeric_limits<double>::infinity();

  for (std::size_t it = 0; it <= opts.max_iters; ++it) {
    result.iterations = it;
    const double margin = psd_margin(x);
    result.residual = std::max(0.0, -margin);
    if (margin >= -opts.tol && accept(x)) return result;
    if (it == opts.max_iters) break;

    const Matrix shifted = opts.dykstra ? Matrix(x + increment) : x;
    const Matrix y = project_psd(shifted);
    if (opts.dykstra) increment = shifted - y;
    // The symmetrized PSD iterate is PSD and symmetric exactly; only its
    // marginal can be off.
    if (accept(symmetrize_B(y, problem))) {
      result.iterations = it + 1;
      return result;
    }
    Matrix next = affine.project(y);
    result.gap = (next - y).norm();

    if (opts.accelerate && !opts.dykstra) {
      if (result.gap > last_gap) {
        momentum = 1.0;
      } else {
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
        const Matrix extrapolated = next + ((momentum - 1.0) / t_next) * (next - previous);
        previous = next;
        next = affine.project(extrapolated);
        momentum = t_next;
      }
    }
    last_gap = result.gap;
    x = next;

    gaps.push_back(result.gap);
    if (gaps.size() > opts.plateau_window + 1) gaps.pop_front();
    if (gaps.size() == opts.plateau_window + 1 && result.gap > 10.0 * opts.tol &&
        std::abs(gaps.back() - gaps.front()) <= opts.plateau_rel_change * result.gap) {
      result.status = FeasibilityStatus::InfeasibleEvidence;
      result.iterations = it + 1;
      return result;
    }
  }
  result.status = FeasibilityStatus::Inconclusive;
  return result;
}

Verdict symmetric_extension_test(const DensityMatrix& rho, std::size_t copies, const SymExtOptions& opts) {
  const FeasibilityResult r = has_symmetric_extension(rho, copies, opts);
  const std::string name = "symmetric_extension";
  Verdict v;
  switch (r.status) {
    case FeasibilityStatus::Feasible:
      v = make_verdict(name, -r.residual, opts.tol);
      break;
    case FeasibilityStatus::InfeasibleEvidence:
      v = make_verdict(name, -r.gap, opts.tol);
      break;
    case FeasibilityStatus::Inconclusive:
      v = make_verdict(name, 0.0, opts.tol);
      v.outcome = Outcome::Inconclusive;
      v.notes.push_back("no extension found and no infeasibility plateau within " + std::to_string(r.iterations) +
                        " iterations");
      break;
  }
  v.details["copies"] = {static_cast<double>(copies)};
  v.details["residual"] = {r.residual};
  v.details["gap"] = {r.gap};
  v.details["iterations"] = {static_cast<double>(r.iterations)};
  v.notes.push_back(std::string("solver status: ") + std::string(status_name(r.status)));
  return v;
}

}  // namespace sepkit
