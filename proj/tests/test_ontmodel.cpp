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
#include "support.hpp"

using namespace contextcost;

namespace {

const std::vector<std::string> kBits{"0", "1"};
constexpr double kH14 = 0.811278124459132863909695792039;

InterventionBit bijective() { return InterventionBit{{{"c1", 0}, {"c2", 1}}}; }

double binary_entropy_of_pushforward(const InterventionBit& f, const Dist<Rational>& prior) {
  Rational p1(0);
  for (std::size_t i = 0; i < prior.size(); ++i) {
    if (f(prior.alphabet()[i]) == 1) p1 += prior[i];
  }
  const double q = nearest_double(p1);
  double h = 0;
  for (double x : {q, 1.0 - q}) {
    if (x > 0) h -= x * std::log2(x);
  }
  return h;
}

SingleStateModel<Rational> duplicate_responses(const SingleStateModel<Rational>& m) {
  std::vector<std::vector<Dist<Rational>>> rows(m.contexts().size(), m.responses().front());
  return SingleStateModel<Rational>(m.scenario(), m.preparation(), m.context_prior(), rows);
}

}  // namespace

TEST_CASE("reproduce_statistics examples") {
  SUBCASE("XOR with uniform lambda is unbiased in every context") {
    const auto m = xor_example(bijective(), Dist<Rational>::uniform({"c1", "c2"}));
    for (const auto& d : reproduce_statistics(m)) CHECK(d.mass() == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  }
  SUBCASE("deterministic response on a point-mass preparation") {
    Scenario sc({{"a", kBits}}, {{"a"}});
    SingleStateModel<Rational> m(sc, Dist<Rational>::point({"l0", "l1"}, "l1"), Dist<Rational>::uniform({"a"}),
                                 {{Dist<Rational>::point(kBits, "0"), Dist<Rational>::point(kBits, "1")}});
    CHECK(reproduce_statistics(m)[0] == Dist<Rational>::point(kBits, "1"));
  }
  SUBCASE("random 3-context, 4-state models match brute-force summation") {
    testing::Rng rng(testing::suite_seed() + 30);
    for (int trial = 0; trial < 50; ++trial) {
      const auto m = testing::random_model(rng, 3, 4);
      const auto stats = reproduce_statistics(m);
      for (std::size_t c = 0; c < 3; ++c) {
        for (std::size_t o = 0; o < 2; ++o) {
          Rational want(0);
          for (std::size_t l = 0; l < 4; ++l) want += m.preparation()[l] * m.response(c, l)[o];
          CHECK(stats[c][o] == want);
        }
      }
    }
  }
}

TEST_CASE("joint_law examples") {
  const auto m = xor_example(bijective(), Dist<Rational>::uniform({"c1", "c2"}));
  const auto j = joint_law(m);
  // Enumeration: (c, λ, o) nonzero iff o = λ ⊕ f(c); 4 of the 8 cells carry 1/4.
  std::size_t nonzero = 0;
  for (std::size_t flat = 0; flat < j.size(); ++flat) {
    const auto t = j.tuple_of(flat);
    const bool hit = static_cast<int>(t[2]) == (static_cast<int>(t[1]) ^ static_cast<int>(t[0]));
    CHECK(j[flat] == (hit ? Rational(1, 4) : Rational(0)));
    nonzero += hit;
  }
  CHECK(nonzero == 4);
  CHECK(mutual_information(j, kContextVar, kOnticVar) == 0.0);
  CHECK(mutual_information(j, kOnticVar, kOutcomeVar) == 0.0);
}

TEST_CASE("XOR context and ontic state are independent and uniform") {
  const auto m = xor_example(bijective(), Dist<Rational>::uniform({"c1", "c2"}));
  const auto cl = marginalize(joint_law(m), {kContextVar, kOnticVar});
  for (const auto& x : cl.cells()) CHECK(x == Rational(1, 4));
}

TEST_CASE("contextual_dependence examples") {
  CHECK(contextual_dependence(xor_example(bijective(), Dist<Rational>::uniform({"c1", "c2"}))) == 1.0);
  const Dist<Rational> skewed({"c1", "c2"}, {Rational(1, 4), Rational(3, 4)});
  CHECK(std::abs(contextual_dependence(xor_example(bijective(), skewed)) - kH14) < 1e-12);
  const InterventionBit constant{{{"c1", 0}, {"c2", 0}}};
  CHECK(contextual_dependence(xor_example(constant, Dist<Rational>::uniform({"c1", "c2"}))) == 0.0);
  testing::Rng rng(testing::suite_seed() + 31);
  CHECK(contextual_dependence(duplicate_responses(testing::random_model(rng, 3, 3))) == 0.0);
}

TEST_CASE("xor_example hides the outcome from lambda when f(C) is balanced") {
  testing::Rng rng(testing::suite_seed() + 32);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + trial % 4;
    const auto ctx = testing::labels("c", k);
    InterventionBit f;
    std::bernoulli_distribution coin(0.5);
    for (const auto& c : ctx) f.bit[c] = coin(rng);
    const auto prior = testing::random_dist(rng, ctx, 0.2);
    const auto m = xor_example(f, prior);
    const auto j = joint_law(m);
    const double h = binary_entropy_of_pushforward(f, prior);
    // O is uniform and p(o|λ) is the law of f(C) up to a flip, so I(λ;O) = 1 - H(f(C)).
    CHECK(std::abs(mutual_information(j, kOnticVar, kOutcomeVar) - (1.0 - h)) < 1e-10);
    CHECK(mutual_information(j, kContextVar, kOnticVar) == 0.0);
    CHECK(std::abs(contextual_dependence(m) - h) < 1e-10);
  }
  CHECK_THROWS_AS(xor_example(InterventionBit{{{"c1", 0}}}, Dist<Rational>::uniform({"c1", "c2"})), LookupError);
}

TEST_CASE("is_response_noncontextual") {
  CHECK_FALSE(is_response_noncontextual(xor_example(bijective(), Dist<Rational>::uniform({"c1", "c2"}))));
  CHECK(is_response_noncontextual(xor_example(InterventionBit{{{"c1", 1}}}, Dist<Rational>::uniform({"c1"}))));
  testing::Rng rng(testing::suite_seed() + 33);
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = duplicate_responses(testing::random_model(rng, 2 + trial % 3, 3));
    // Equality oracle: every context's responses equal the first context's.
    for (std::size_t c = 1; c < m.contexts().size(); ++c) CHECK(m.responses()[c] == m.responses()[0]);
    CHECK(is_response_noncontextual(m));
  }
}

TEST_CASE("model structural and normalization errors") {
  Scenario sc({{"a", kBits}, {"b", kBits}}, {{"a"}, {"b"}});
  const auto mu = Dist<Rational>::uniform({"l0", "l1"});
  const auto prior = Dist<Rational>::uniform({"a", "b"});
  const auto r = Dist<Rational>::uniform(kBits);
  CHECK_THROWS_AS(SingleStateModel<Rational>(sc, mu, prior, {{r, r}}), ModelIncompleteError);
  CHECK_THROWS_AS(SingleStateModel<Rational>(sc, mu, prior, {{r, r}, {r}}), ModelIncompleteError);
  CHECK_THROWS_AS(SingleStateModel<Rational>(sc, mu, Dist<Rational>::uniform({"b", "a"}), {{r, r}, {r, r}}),
                  ValidationError);
  const Dist<Rational> half(kBits, {Rational(1, 4), Rational(1, 4)});
  SingleStateModel<Rational> unnormalized(sc, mu, prior, {{r, half}, {r, r}});
  CHECK_THROWS_WITH_AS(reproduce_statistics(unnormalized), doctest::Contains("(a, l1)"), ValidationError);
  Scenario mixed({{"a", kBits}, {"b", {"x", "y", "z"}}}, {{"a"}, {"b"}});
  CHECK_THROWS_AS(SingleStateModel<Rational>(mixed, mu, prior, {{r, r}, {r, r}}), ValidationError);
}

TEST_CASE("single-state model properties over random models") {
  testing::Rng rng(testing::suite_seed() + 34);
  for (int trial = 0; trial < 300; ++trial) {
    const auto m = testing::random_model(rng, 1 + trial % 4, 1 + trial % 4);
    const auto j = joint_law(m);
    CHECK(mutual_information(j, kContextVar, kOnticVar) == 0.0);
    // Statistics agree with the (C, O) marginal divided by p(c).
    const auto co = marginalize(j, {kContextVar, kOutcomeVar});
    const auto stats = reproduce_statistics(m);
    for (std::size_t c = 0; c < m.contexts().size(); ++c) {
      for (std::size_t o = 0; o < 2; ++o) CHECK(co[c * 2 + o] == m.context_prior()[c] * stats[c][o]);
    }
    if (is_response_noncontextual(m)) CHECK(contextual_dependence(m) < 1e-10);
  }
  // Deterministic responses with full-support μ and prior: zero dependence iff noncontextual.
  for (int trial = 0; trial < 300; ++trial) {
    const auto m = testing::random_deterministic_model(rng, 2 + trial % 3, 1 + trial % 3);
    CHECK((contextual_dependence(m) < 1e-10) == is_response_noncontextual(m));
  }
}

TEST_CASE("float-mode models agree with exact ones") {
  testing::Rng rng(testing::suite_seed() + 35);
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = testing::random_model(rng, 3, 3);
    std::vector<std::vector<Dist<double>>> rows;
    for (const auto& row : m.responses()) {
      std::vector<Dist<double>> r;
      for (const auto& d : row) r.emplace_back(d.alphabet(), testing::to_doubles(d.mass()));
      rows.push_back(std::move(r));
    }
    SingleStateModel<double> f(m.scenario(), Dist<double>(m.ontic_states(), testing::to_doubles(m.preparation().mass())),
                               Dist<double>(m.contexts(), testing::to_doubles(m.context_prior().mass())), rows);
    CHECK(std::abs(contextual_dependence(f) - contextual_dependence(m)) < 1e-9);
  }
}
