// Copyright 2026 The contextcost Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "contextcost/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace contextcost {

void require_dimension(Eigen::Index rows, Eigen::Index cols) {
  if (rows != cols) throw ValidationError("matrix is not square");
  if (rows < 1 || rows > kMaxDimension) {
    throw ValidationError("matrix dimension " + std::to_string(rows) + " outside [1, 8]");
  }
}

ComplexMatrix zero_matrix(int d) {
  require_dimension(d, d);
  return ComplexMatrix::Zero(d, d);
}

ComplexMatrix projector(const ComplexVector& v) {
  require_dimension(v.size(), v.size());
  return v * v.adjoint();
}

double hermitian_defect(const ComplexMatrix& a) { return (a - a.adjoint()).cwiseAbs().maxCoeff(); }

Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& a) {
  require_dimension(a.rows(), a.cols());
  const Eigen::Index d = a.rows();
  const Eigen::Index n = 2 * d;
  Eigen::MatrixXd s(n, n);
  s.topLeftCorner(d, d) = a.real();
  s.topRightCorner(d, d) = -a.imag();
  s.bottomLeftCorner(d, d) = a.imag();
  s.bottomRightCorner(d, d) = a.real();
  s = 0.5 * (s + s.transpose()).eval();

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) off += s(p, q) * s(p, q);
    }
    if (off <= 1e-30 * std::max(1.0, s.squaredNorm())) break;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = s(p, q);
        if (apq == 0.0) continue;
        const double theta = (s(q, q) - s(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double skp = s(k, p);
          const double skq = s(k, q);
          s(k, p) = c * skp - sn * skq;
          s(k, q) = sn * skp + c * skq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double spk = s(p, k);
          const double sqk = s(q, k);
          s(p, k) = c * spk - sn * sqk;
          s(q, k) = sn * spk + c * sqk;
        }
      }
    }
  }
  std::vector<double> all(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = s(i, i);
  std::sort(all.begin(), all.end());
  Eigen::VectorXd out(d);
  for (Eigen::Index i = 0; i < d; ++i) out(i) = all[static_cast<std::size_t>(2 * i)];
  return out;
}

namespace {

void require_psd(const ComplexMatrix& a, const std::string& what) {
  const double herm = hermitian_defect(a);
  if (herm > kHermitianTolerance) {
    throw ValidationError(what + " is not Hermitian (defect " + format_double(herm) + ")");
  }
  const double min_eig = hermitian_eigenvalues(a).minCoeff();
  if (min_eig < -kPsdTolerance) {
    throw ValidationError(what + " is not positive semidefinite (min eigenvalue " + format_double(min_eig) + ")");
  }
}

}  // namespace

Povm::Povm(std::vector<ComplexMatrix> effects) : effects_(std::move(effects)) {
  if (effects_.empty()) throw ValidationError("POVM has no effects");
  const auto d = effects_.front().rows();
  ComplexMatrix sum = zero_matrix(static_cast<int>(d));
  for (std::size_t i = 0; i < effects_.size(); ++i) {
    require_dimension(effects_[i].rows(), effects_[i].cols());
    if (effects_[i].rows() != d) throw ValidationError("POVM effects have different dimensions");
    require_psd(effects_[i], "effect " + std::to_string(i));
    sum += effects_[i];
  }
  const double defect = (sum - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (defect > kPsdTolerance) {
    throw ValidationError("POVM effects do not sum to the identity (defect " + format_double(defect) + ")");
  }
}

void require_density_operator(const ComplexMatrix& rho) {
  require_dimension(rho.rows(), rho.cols());
  require_psd(rho, "state");
  const double trace_defect = std::abs(rho.trace() - Complex(1.0, 0.0));
  if (trace_defect > kPsdTolerance) {
    throw ValidationError("state trace differs from 1 by " + format_double(trace_defect));
  }
}

Dist<double> born_probabilities(const ComplexMatrix& rho, const Povm& povm) {
  require_density_operator(rho);
  if (rho.rows() != povm.dimension()) throw ValidationError("state and POVM dimensions differ");
  std::vector<std::string> labels;
  std::vector<double> p;
  for (std::size_t i = 0; i < povm.size(); ++i) {
    double v = (rho * povm.effects()[i]).trace().real();
    if (v < 0.0) {
      if (v < -kPsdTolerance) throw ValidationError("negative Born probability " + format_double(v));
      v = 0.0;
    }
    labels.push_back(std::to_string(i));
    p.push_back(v);
  }
  double total = 0.0;
  for (double v : p) total += v;
  if (std::abs(total - 1.0) > kPsdTolerance) {
    throw ValidationError("Born probabilities sum to " + format_double(total));
  }
  for (double& v : p) v /= total;
  return Dist<double>(std::move(labels), std::move(p));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Eigen::Index d = a.rows() * b.rows();
  require_dimension(d, a.cols() * b.cols());
  ComplexMatrix out(d, d);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix singlet_state() {
  ComplexVector psi = ComplexVector::Zero(4);
  psi(1) = 1.0 / std::sqrt(2.0);
  psi(2) = -1.0 / std::sqrt(2.0);
  return projector(psi);
}

Povm spin_measurement(double theta) {
  ComplexMatrix sx(2, 2), sz(2, 2);
  sx << 0.0, 1.0, 1.0, 0.0;
  sz << 1.0, 0.0, 0.0, -1.0;
  const ComplexMatrix n_sigma = std::sin(theta) * sx + std::cos(theta) * sz;
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  return Povm({0.5 * (id + n_sigma), 0.5 * (id - n_sigma)});
}

ChshAngles tsirelson_angles() {
  constexpr double pi = std::numbers::pi;
  return ChshAngles{{0.0, pi / 2.0}, {pi / 4.0, -pi / 4.0}};
}

EmpiricalModel<double> chsh_model(const ChshAngles& angles) {
  const std::vector<std::string> bits{"0", "1"};
  Scenario sc({{"A0", bits}, {"A1", bits}, {"B0", bits}, {"B1", bits}},
              {{"A0", "B0"}, {"A0", "B1"}, {"A1", "B0"}, {"A1", "B1"}});
  const ComplexMatrix rho = singlet_state();
  std::vector<JointTable<double>> tables;
  for (std::size_t a = 0; a < 2; ++a) {
    const Povm pa = spin_measurement(angles.alice[a]);
    for (std::size_t b = 0; b < 2; ++b) {
      const Povm pb = spin_measurement(angles.bob[b]);
      std::vector<ComplexMatrix> joint;
      for (const auto& ea : pa.effects()) {
        for (const auto& eb : pb.effects()) joint.push_back(kron(ea, eb));
      }
      const Dist<double> p = born_probabilities(rho, Povm(std::move(joint)));
      tables.emplace_back(sc.context_variables(2 * a + b), p.mass());
    }
  }
  return EmpiricalModel<double>(std::move(sc), std::move(tables));
}

}  // namespace contextcost
