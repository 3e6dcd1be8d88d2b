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

#include "contextcost/simplex.hpp"

#include <algorithm>
#include <stdexcept>

namespace contextcost {
namespace {

class RevisedSimplex {
 public:
  explicit RevisedSimplex(const BinaryColumnSystem& sys)
      : sys_(sys),
        m_(sys.rows),
        n_(sys.columns),
        basis_(m_),
        in_basis_(n_ + m_, false),
        x_(sys.rhs),
        binv_(m_ * m_, Rational(0)) {
    if (sys.rhs.size() != m_) throw std::invalid_argument("rhs size does not match row count");
    for (std::size_t i = 0; i < m_; ++i) {
      if (sgn(sys.rhs[i]) < 0) throw std::invalid_argument("phase one needs b >= 0");
      basis_[i] = n_ + i;
      in_basis_[n_ + i] = true;
      binv_[i * m_ + i] = 1;
    }
  }

  PhaseOneResult run() {
    PhaseOneResult result;
    std::vector<Rational> y(m_);
    std::vector<Rational> d(m_);
    std::vector<std::size_t> support;
    while (true) {
      duals(y);
      // Bland: first column (structural, then artificial) with negative reduced cost.
      std::size_t entering = kNone;
      for (std::size_t j = 0; j < n_ + m_ && entering == kNone; ++j) {
        if (is_basic(j)) continue;
        if (j < n_) {
          support.clear();
          sys_.column(j, support);
          Rational priced(0);
          for (std::size_t r : support) priced += y[r];
          if (sgn(priced) > 0) entering = j;  // reduced cost 0 - y·A_j < 0
        } else if (y[j - n_] > 1) {
          entering = j;  // reduced cost 1 - y_i < 0
        }
      }
      if (entering == kNone) break;

      direction(entering, d, support);
      std::size_t leave = kNone;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (sgn(d[i]) <= 0) continue;
        Rational ratio = x_[i] / d[i];
        if (leave == kNone || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      // Phase one is bounded below by zero, so some d_i > 0 must exist.
      if (leave == kNone) throw std::logic_error("phase one reported unbounded");
      pivot(leave, entering, d);
      ++result.pivots;
    }

    Rational objective(0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] >= n_) objective += x_[i];
    }
    result.feasible = sgn(objective) == 0;
    if (result.feasible) {
      for (std::size_t i = 0; i < m_; ++i) {
        if (basis_[i] < n_ && sgn(x_[i]) != 0) result.solution.emplace_back(basis_[i], x_[i]);
      }
      std::sort(result.solution.begin(), result.solution.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
    } else {
      // Optimal phase-one duals satisfy y·A_j <= 0 and y·b = objective > 0.
      result.farkas.resize(m_);
      for (std::size_t i = 0; i < m_; ++i) result.farkas[i] = -y[i];
    }
    return result;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  bool is_basic(std::size_t j) const { return in_basis_[j]; }

  // y^T = c_B^T B^{-1}; artificial costs are 1, structural 0.
  void duals(std::vector<Rational>& y) {
    for (std::size_t k = 0; k < m_; ++k) y[k] = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (std::size_t k = 0; k < m_; ++k) {
        const Rational& v = binv_[i * m_ + k];
        if (sgn(v) != 0) y[k] += v;
      }
    }
  }

  // d = B^{-1} A_j.
  void direction(std::size_t j, std::vector<Rational>& d, std::vector<std::size_t>& support) {
    for (std::size_t i = 0; i < m_; ++i) d[i] = 0;
    if (j < n_) {
      support.clear();
      sys_.column(j, support);
      for (std::size_t i = 0; i < m_; ++i) {
        for (std::size_t r : support) d[i] += binv_[i * m_ + r];
      }
    } else {
      const std::size_t r = j - n_;
      for (std::size_t i = 0; i < m_; ++i) d[i] = binv_[i * m_ + r];
    }
  }

  void pivot(std::size_t row, std::size_t entering, const std::vector<Rational>& d) {
    const Rational piv = d[row];
    for (std::size_t k = 0; k < m_; ++k) binv_[row * m_ + k] /= piv;
    x_[row] /= piv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row || sgn(d[i]) == 0) continue;
      const Rational f = d[i];
      for (std::size_t k = 0; k < m_; ++k) {
        const Rational& v = binv_[row * m_ + k];
        if (sgn(v) != 0) binv_[i * m_ + k] -= f * v;
      }
      x_[i] -= f * x_[row];
    }
    in_basis_[basis_[row]] = false;
    in_basis_[entering] = true;
    basis_[row] = entering;
  }

  const BinaryColumnSystem& sys_;
  std::size_t m_;
  std::size_t n_;
  std::vector<std::size_t> basis_;
  std::vector<bool> in_basis_;
  std::vector<Rational> x_;
  std::vector<Rational> binv_;  // row-major m x m
};

}  // namespace

PhaseOneResult solve_phase_one(const BinaryColumnSystem& system) { return RevisedSimplex(system).run(); }

}  // namespace contextcost
