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

#include <doctest.h>

#include "contextcost/ontmodel.hpp"
#include "contextcost/scenario.hpp"
#include "support.hpp"

using namespace contextcost;

namespace {

const std::vector<std::string> kBits{"0", "1"};

EmpiricalModel<Rational> with_cell(const EmpiricalModel<Rational>& em, std::size_t context, std::size_t cell,
                                   const Rational& value) {
  std::vector<JointTable<Rational>> tables = em.tables();
  std::vector<Rational> cells = tables[context].cells();
  cells[cell] = value;
  tables[context] = JointTable<Rational>(tables[context].variables(), cells);
  return EmpiricalModel<Rational>(em.scenario(), tables);
}

}  // namespace

TEST_CASE("scenario structural invariants") {
  CHECK_NOTHROW(Scenario({{"a", kBits}, {"b", kBits}}, {{"a", "b"}, {"b"}}));
  CHECK_THROWS_AS(Scenario({{"a", kBits}, {"a", kBits}}, {{"a"}}), ValidationError);
  CHECK_THROWS_AS(Scenario({{"a", kBits}}, {{"a"}, {"a"}}), ValidationError);
  CHECK_THROWS_AS(Scenario({{"a", kBits}, {"b", kBits}}, {{"a", "b"}, {"b", "a"}}), ValidationError);
  CHECK_THROWS_AS(Scenario({{"a", kBits}}, {{}}), ValidationError);
  CHECK_THROWS_AS(Scenario({{"a", kBits}}, {{"z"}}), ValidationError);
  CHECK_THROWS_AS(Scenario({{"a|b", kBits}}, {{"a|b"}}), ValidationError);
  CHECK_THROWS_AS(Scenario({{"a", {"0", "0"}}}, {{"a"}}), ValidationError);
}

TEST_CASE("context and tuple keys") {
  Scenario sc({{"x", kBits}, {"y", {"u", "d", "z"}}}, {{"y", "x"}});
  CHECK(sc.context_key(0) == "y|x");
  CHECK(sc.context_outcome_keys(0) == std::vector<std::string>{"u,0", "u,1", "d,0", "d,1", "z,0", "z,1"});
  CHECK(split_key("a|b|c", '|') == std::vector<std::string>{"a", "b", "c"});
  CHECK(sc.context_index("y|x") == 0);
  CHECK_THROWS_AS(sc.context_index("x|y"), LookupError);
}

TEST_CASE("triangle example") {
  const auto tri = triangle_example();
  CHECK(tri.scenario().contexts().size() == 3);
  for (const auto& t : tri.tables()) {
    CHECK(t.total() == 1);
    CHECK(t.at({"0", "0"}) == 0);
    CHECK(t.at({"1", "1"}) == 0);
    CHECK(t.at({"0", "1"}) == Rational(1, 2));
  }
  const ValidationReport r = validate(tri);
  CHECK(r.consistent);
  // Marginalization oracle: every single-observable marginal is uniform.
  for (std::size_t c = 0; c < 3; ++c) {
    for (const auto& name : tri.scenario().contexts()[c]) {
      const auto m = marginalize(tri.table(c), {name});
      CHECK(m.cells() == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
    }
  }
}

TEST_CASE("validate reports a normalization failure on the offending context") {
  auto bad = with_cell(triangle_example(), 1, 1, Rational(2, 5));  // table sums to 9/10
  const ValidationReport r = validate(bad);
  CHECK_FALSE(r.consistent);
  REQUIRE(r.normalization.size() == 1);
  CHECK(r.normalization[0].context_key == "o2|o3");
  CHECK(r.normalization[0].sum == doctest::Approx(0.9));
}

TEST_CASE("validate reports a no-disturbance deviation") {
  Scenario sc({{"a", kBits}, {"b", kBits}, {"c", kBits}}, {{"a", "b"}, {"a", "c"}});
  // p(a=0) = 1/2 in the first context, 7/10 in the second.
  JointTable<Rational> ab(sc.context_variables(0), {Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)});
  JointTable<Rational> ac(sc.context_variables(1), {Rational(7, 20), Rational(7, 20), Rational(3, 20), Rational(3, 20)});
  EmpiricalModel<Rational> em(sc, {ab, ac});
  const ValidationReport r = validate(em);
  CHECK_FALSE(r.consistent);
  CHECK(r.normalization.empty());
  REQUIRE(r.disturbance.size() == 1);
  CHECK(r.disturbance[0].shared == std::vector<std::string>{"a"});
  CHECK(r.disturbance[0].max_deviation == doctest::Approx(0.2));
  CHECK_THROWS_AS(require_consistent(em), ValidationError);

  // Float mode: deviations below tolerance pass, above fail.
  auto emf = cast_model<double>(em);
  CHECK_FALSE(validate(emf, 1e-9).consistent);
  CHECK(validate(emf, 0.25).consistent);
}

TEST_CASE("perturbing any triangle cell by 0.1 breaks validation") {
  const auto tri = triangle_example();
  for (std::size_t c = 0; c < 3; ++c) {
    for (std::size_t k = 0; k < 4; ++k) {
      for (int sign : {-1, 1}) {
        const Rational v = tri.table(c)[k] + Rational(sign, 10);
        if (sgn(v) < 0) continue;
        CHECK_FALSE(validate(with_cell(tri, c, k, v)).consistent);
      }
    }
  }
}

TEST_CASE("empirical model tables must match their contexts") {
  Scenario sc({{"a", kBits}, {"b", kBits}}, {{"a", "b"}});
  JointTable<Rational> wrong({{"b", kBits}, {"a", kBits}}, {Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)});
  CHECK_THROWS_AS(EmpiricalModel<Rational>(sc, {wrong}), ValidationError);
  CHECK_THROWS_AS(EmpiricalModel<Rational>(sc, {}), ValidationError);
}

TEST_CASE("statistics of non-overlapping single-state models always validate") {
  testing::Rng rng(testing::suite_seed() + 10);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = testing::random_model(rng, 1 + trial % 4, 1 + trial % 3);
    CHECK(validate(to_empirical_model(m)).consistent);
  }
}
