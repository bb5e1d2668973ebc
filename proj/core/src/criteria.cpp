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

#include "sepkit/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sepkit {

namespace {

std::vector<double> to_std(const RealVector& v) { return {v.data(), v.data() + v.size()}; }

RealVector padded_prefix_sums(const RealVector& sorted, Eigen::Index length) {
  RealVector out = RealVector::Zero(length);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < length; ++i) {
    if (i < sorted.size()) acc += sorted(i);
    out(i) = acc;
  }
  return out;
}

}  // namespace

std::string_view criterion_name(Criterion c) {
  switch (c) {
    case Criterion::Ppt:
      return "ppt";
    case Criterion::Reduction:
      return "reduction";
    case Criterion::Entropic2:
      return "entropic2";
    case Criterion::EntropicVonNeumann:
      return "entropic_vn";
    case Criterion::Majorization:
      return "majorization";
    case Criterion::CrossNorm:
      return "cross_norm";
    case Criterion::SymmetricExtension:
      return "symmetric_extension";
  }
  return "unknown";
}

std::optional<Criterion> parse_criterion(std::string_view name) {
  if (name == "ppt") return Criterion::Ppt;
  if (name == "reduction") return Criterion::Reduction;
  if (name == "entropic" || name == "entropic2") return Criterion::Entropic2;
  if (name == "entropic_vn" || name == "entropic-vn" || name == "vonneumann") return Criterion::EntropicVonNeumann;
  if (name == "majorization") return Criterion::Majorization;
  if (name == "crossnorm" || name == "cross_norm" || name == "cross-norm") return Criterion::CrossNorm;
  if (name == "symext" || name == "symmetric_extension") return Criterion::SymmetricExtension;
  return std::nullopt;
}

double renyi_entropy(const RealVector& spectrum, EntropyOrder order) {
  if (order == EntropyOrder::Two) {
    double purity = 0.0;
    for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
      if (spectrum(i) > 0.0) purity += spectrum(i) * spectrum(i);
    }
    return -std::log2(purity);
  }
  double s = 0.0;
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
    const double p = spectrum(i);
    if (p > 0.0) s -= p * std::log2(p);
  }
  return s;
}

Verdict ppt_test(const DensityMatrix& rho) {
  const RealVector ev = hermitian_eigenvalues(partial_transpose(rho.matrix(), rho.shape()));
  Verdict v = make_verdict("ppt", ev.minCoeff(), kSpectralRelTol * ev.cwiseAbs().maxCoeff());
  v.details["eigenvalues"] = to_std(ev);
  return v;
}

Verdict reduction_test(const DensityMatrix& rho) {
  const BipartiteShape s = rho.shape();
  const Matrix rhoA = partial_trace(rho.matrix(), s, Subsystem::A);
  const Matrix rhoB = partial_trace(rho.matrix(), s, Subsystem::B);
  const RealVector evB = hermitian_eigenvalues(tensor(identity(s.dimA), rhoB) - rho.matrix());
  const RealVector evA = hermitian_eigenvalues(tensor(rhoA, identity(s.dimB)) - rho.matrix());
  const double scale = std::max(evA.cwiseAbs().maxCoeff(), evB.cwiseAbs().maxCoeff());
  Verdict v = make_verdict("reduction", std::min(evA.minCoeff(), evB.minCoeff()), kSpectralRelTol * scale);
  v.details["eigenvalues_I_rhoB"] = to_std(evB);
  v.details["eigenvalues_rhoA_I"] = to_std(evA);
  return v;
}

Verdict entropic_test(const DensityMatrix& rho, EntropyOrder order) {
  const BipartiteShape s = rho.shape();
  const double sAB = renyi_entropy(hermitian_eigenvalues(rho.matrix()), order);
  const double sA = renyi_entropy(hermitian_eigenvalues(partial_trace(rho.matrix(), s, Subsystem::A)), order);
  const double sB = renyi_entropy(hermitian_eigenvalues(partial_trace(rho.matrix(), s, Subsystem::B)), order);
  Verdict v = make_verdict(order == EntropyOrder::Two ? "entropic2" : "entropic_vn", std::min(sAB - sA, sAB - sB),
                           kEntropyTol);
  v.details["entropy_AB"] = {sAB};
  v.details["entropy_A"] = {sA};
  v.details["entropy_B"] = {sB};
  return v;
}

Verdict majorization_test(const DensityMatrix& rho) {
  const BipartiteShape s = rho.shape();
  const RealVector lAB = hermitian_eigenvalues(rho.matrix());
  const RealVector lA = hermitian_eigenvalues(partial_trace(rho.matrix(), s, Subsystem::A));
  const RealVector lB = hermitian_eigenvalues(partial_trace(rho.matrix(), s, Subsystem::B));
  const Eigen::Index n = lAB.size();
  const RealVector pAB = padded_prefix_sums(lAB, n);
  const RealVector gapA = padded_prefix_sums(lA, n) - pAB;
  const RealVector gapB = padded_prefix_sums(lB, n) - pAB;
  Verdict v = make_verdict("majorization", std::min(gapA.minCoeff(), gapB.minCoeff()), kPrefixSumTol);
  v.details["spectrum_AB"] = to_std(lAB);
  v.details["spectrum_A"] = to_std(lA);
  v.details["spectrum_B"] = to_std(lB);
  v.details["prefix_gap_A"] = to_std(gapA);
  v.details["prefix_gap_B"] = to_std(gapB);
  return v;
}

Verdict cross_norm_test(const DensityMatrix& rho) {
  const RealVector sv = singular_values(realign(rho.matrix(), rho.shape()));
  const double norm = sv.sum();
  Verdict v = make_verdict("cross_norm", 1.0 - norm, kCrossNormTol);
  v.details["singular_values"] = to_std(sv);
  v.details["trace_norm"] = {norm};
  return v;
}

Verdict evaluate(Criterion c, const DensityMatrix& rho, const RunAllOptions& opts) {
  switch (c) {
    case Criterion::Ppt:
      return ppt_test(rho);
    case Criterion::Reduction:
      return reduction_test(rho);
    case Criterion::Entropic2:
      return entropic_test(rho, EntropyOrder::Two);
    case Criterion::EntropicVonNeumann:
      return entropic_test(rho, EntropyOrder::VonNeumann);
    case Criterion::Majorization:
      return majorization_test(rho);
    case Criterion::CrossNorm:
      return cross_norm_test(rho);
    case Criterion::SymmetricExtension:
      return symmetric_extension_test(rho, opts.symext_copies, opts.symext);
  }
  return ppt_test(rho);
}

std::vector<Verdict> run_all(const DensityMatrix& rho, const RunAllOptions& opts) {
  std::vector<Criterion> list = {Criterion::Ppt, Criterion::Reduction, Criterion::Entropic2, Criterion::Majorization,
                                 Criterion::CrossNorm};
  if (opts.include_symmetric_extension) list.push_back(Criterion::SymmetricExtension);

  std::vector<Verdict> out;
  out.reserve(list.size());
  for (Criterion c : list) {
    Verdict v = evaluate(c, rho, opts);
    if (opts.entanglement_certificate && v.passed) {
      v.notes.push_back("entangled by " + *opts.entanglement_certificate + " despite " + v.criterion + " pass");
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace sepkit
