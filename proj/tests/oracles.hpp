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

// Independent reference computations. None of these call into the code paths
// they are used to check: information quantities are summed directly over
// dense long double arrays, and marginal feasibility is decided by rational
// Gaussian elimination over column subsets (basic solutions).

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "contextcost/scenario.hpp"

namespace contextcost::oracle {

/// Dense table over `dims` (row-major, last fastest) in long double.
struct Dense {
  std::vector<std::size_t> dims;
  std::vector<long double> p;

  std::vector<std::size_t> tuple(std::size_t flat) const {
    std::vector<std::size_t> t(dims.size());
    for (std::size_t i = dims.size(); i-- > 0;) {
      t[i] = flat % dims[i];
      flat /= dims[i];
    }
    return t;
  }
};

inline long double entropy(const std::vector<long double>& p) {
  long double h = 0;
  for (long double x : p) {
    if (x > 0) h -= x * std::log2(x);
  }
  return h;
}

/// Marginal on the listed axes, indexed as a flat mixed-radix code.
inline std::vector<long double> marginal(const Dense& d, const std::vector<std::size_t>& axes) {
  std::size_t n = 1;
  for (std::size_t a : axes) n *= d.dims[a];
  std::vector<long double> out(n, 0.0L);
  for (std::size_t flat = 0; flat < d.p.size(); ++flat) {
    const auto t = d.tuple(flat);
    std::size_t code = 0;
    for (std::size_t a : axes) code = code * d.dims[a] + t[a];
    out[code] += d.p[flat];
  }
  return out;
}

/// I(X;Y|Z) = H(XZ) + H(YZ) - H(XYZ) - H(Z) by direct summation.
inline long double cmi(const Dense& d, const std::vector<std::size_t>& x, const std::vector<std::size_t>& y,
                       const std::vector<std::size_t>& z) {
  auto cat = [](std::vector<std::size_t> a, const std::vector<std::size_t>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  const long double hz = z.empty() ? 0.0L : entropy(marginal(d, z));
  return entropy(marginal(d, cat(x, z))) + entropy(marginal(d, cat(y, z))) - entropy(marginal(d, cat(cat(x, y), z))) -
         hz;
}

/// Solves A_S w = b for a column subset by exact Gaussian elimination.
/// Returns nullopt if the columns are dependent or the system inconsistent.
inline std::optional<std::vector<Rational>> solve_subset(const std::vector<std::vector<Rational>>& a,
                                                        const std::vector<Rational>& b,
                                                        const std::vector<std::size_t>& cols) {
  const std::size_t m = a.size();
  const std::size_t k = cols.size();
  std::vector<std::vector<Rational>> aug(m, std::vector<Rational>(k + 1));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j < k; ++j) aug[r][j] = a[r][cols[j]];
    aug[r][k] = b[r];
  }
  std::size_t row = 0;
  for (std::size_t j = 0; j < k; ++j) {
    std::size_t piv = row;
    while (piv < m && aug[piv][j] == 0) ++piv;
    if (piv == m) return std::nullopt;  // dependent columns
    std::swap(aug[piv], aug[row]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == row || aug[r][j] == 0) continue;
      const Rational f = aug[r][j] / aug[row][j];
      for (std::size_t c = j; c <= k; ++c) aug[r][c] -= f * aug[row][c];
    }
    ++row;
  }
  for (std::size_t r = row; r < m; ++r) {
    if (aug[r][k] != 0) return std::nullopt;  // inconsistent
  }
  std::vector<Rational> w(k);
  for (std::size_t j = 0; j < k; ++j) w[j] = aug[j][k] / aug[j][j];
  return w;
}

/// Feasibility of A w = b, w >= 0 by enumerating every independent column
/// subset: a feasible system always has a nonnegative basic solution.
inline bool feasible_by_enumeration(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b) {
  const std::size_t n = a.empty() ? 0 : a.front().size();
  bool all_zero = true;
  for (const auto& x : b) all_zero = all_zero && x == 0;
  if (all_zero) return true;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < n; ++j) {
      if (mask & (std::uint64_t{1} << j)) cols.push_back(j);
    }
    if (cols.size() > a.size()) continue;
    auto w = solve_subset(a, b, cols);
    if (!w) continue;
    bool nonneg = true;
    for (const auto& x : *w) nonneg = nonneg && sgn(x) >= 0;
    if (nonneg) return true;
  }
  return false;
}


/// Decides global-joint feasibility of an exact empirical model by building
/// the assignment/cell incidence matrix from scratch and enumerating basic
/// solutions. Exponential; desk scale only.
inline bool global_joint_feasible(const EmpiricalModel<Rational>& em) {
  const Scenario& sc = em.scenario();
  const std::size_t n = sc.observables().size();
  std::vector<std::size_t> radix;
  std::size_t count = 1;
  for (const auto& o : sc.observables()) {
    radix.push_back(o.outcomes.size());
    count *= o.outcomes.size();
  }
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  std::vector<std::size_t> value(n);
  for (std::size_t c = 0; c < sc.contexts().size(); ++c) {
    const auto& table = em.table(c);
    for (std::size_t cell = 0; cell < table.size(); ++cell) {
      const auto want = table.tuple_of(cell);
      std::vector<Rational> row(count, Rational(0));
      for (std::size_t g = 0; g < count; ++g) {
        std::size_t rest = g;
        for (std::size_t i = 0; i < n; ++i) {
          value[i] = rest % radix[i];  // first observable fastest here
          rest /= radix[i];
        }
        bool match = true;
        for (std::size_t k = 0; k < sc.contexts()[c].size(); ++k) {
          match = match && value[sc.observable_index(sc.contexts()[c][k])] == want[k];
        }
        if (match) row[g] = 1;
      }
      a.push_back(std::move(row));
      b.push_back(table[cell]);
    }
  }
  a.emplace_back(count, Rational(1));
  b.emplace_back(1);
  return feasible_by_enumeration(a, b);
}

}  // namespace contextcost::oracle
