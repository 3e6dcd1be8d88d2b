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

#pragma once

// Born-rule statistics for small finite-dimensional systems, used to build
// quantum empirical models such as CHSH.

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <vector>

#include "contextcost/scenario.hpp"

namespace contextcost {

inline constexpr int kMaxDimension = 8;

using Complex = std::complex<double>;
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDimension, kMaxDimension>;
using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDimension, 1>;

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-9;

/// Square, 1 <= d <= 8; throws ValidationError otherwise.
void require_dimension(Eigen::Index rows, Eigen::Index cols);

/// Zero matrix of dimension d after the dimension check.
ComplexMatrix zero_matrix(int d);

/// |v><v|.
ComplexMatrix projector(const ComplexVector& v);

/// Largest |A - A^†| entry.
double hermitian_defect(const ComplexMatrix& a);

/// Eigenvalues of a Hermitian matrix in ascending order, by cyclic Jacobi
/// rotations on the real symmetric embedding [[Re, -Im], [Im, Re]] (each
/// eigenvalue of A appears twice there; one copy of each is returned).
Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& a);

/// Effects summing to the identity. Each effect is Hermitian within 1e-10
/// and positive semidefinite within 1e-9.
class Povm {
 public:
  explicit Povm(std::vector<ComplexMatrix> effects);

  const std::vector<ComplexMatrix>& effects() const { return effects_; }
  int dimension() const { return static_cast<int>(effects_.front().rows()); }
  std::size_t size() const { return effects_.size(); }

 private:
  std::vector<ComplexMatrix> effects_;
};

/// Validates a density operator: Hermitian, unit trace within 1e-9, PSD
/// within 1e-9. Throws ValidationError with the measured defect.
void require_density_operator(const ComplexMatrix& rho);

/// p(o) = Tr(ρ E_o) over effect indices "0", "1", ...
Dist<double> born_probabilities(const ComplexMatrix& rho, const Povm& povm);

/// Kronecker product.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// (|01> - |10>)/√2 as a density operator.
ComplexMatrix singlet_state();

/// Spin projectors {(I + n·σ)/2, (I - n·σ)/2} along n = (sin θ, 0, cos θ).
/// Outcome "0" is spin up (+1), "1" spin down (-1).
Povm spin_measurement(double theta);

struct ChshAngles {
  std::array<double, 2> alice{};
  std::array<double, 2> bob{};
};

ChshAngles tsirelson_angles();

/// Observables A0, A1, B0, B1 (outcomes "0", "1"), contexts {Ai, Bj} in the
/// order A0B0, A0B1, A1B0, A1B1, tables from the Born rule on the singlet.
EmpiricalModel<double> chsh_model(const ChshAngles& angles);

/// |E(A0,B0) + E(A0,B1) + E(A1,B0) - E(A1,B1)| with E = p(same) - p(different),
/// read from a CHSH model's tables.
template <class S>
double chsh_value(const EmpiricalModel<S>& em) {
  const double sign[4] = {1.0, 1.0, 1.0, -1.0};
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& t = em.table(i);
    const double e = to_double(t[0]) - to_double(t[1]) - to_double(t[2]) + to_double(t[3]);
    s += sign[i] * e;
  }
  return std::abs(s);
}

}  // namespace contextcost
