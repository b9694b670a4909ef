#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "motifsig/classifier.hpp"
#include "motifsig/errors.hpp"
#include "oracles.hpp"

using namespace motifsig;

namespace {

ZSignature sig(std::initializer_list<double> head) {
  ZSignature s;
  std::size_t i = 0;
  for (double v : head) s.z[i++] = v;
  return s;
}

AttackSignature attack(std::string id, ZSignature s, std::optional<std::string> label = {}) {
  return {std::move(id), std::move(s), std::move(label), std::nullopt};
}

std::vector<AttackSignature> random_attacks(std::size_t k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<AttackSignature> result;
  for (std::size_t i = 0; i < k; ++i) {
    ZSignature s;
    for (auto& v : s.z) v = noise(rng);
    // a few coarse directions so clusters exist
    s.z[i % 4] += 4.0;
    result.push_back(attack("a" + std::to_string(i), s));
  }
  return result;
}

}  // namespace

TEST_CASE("classify picks the closest reference above tau") {
  ReferenceSet refs;
  refs.add("x", sig({1, 0}));
  refs.add("y", sig({0, 1}));
  const std::vector<AttackSignature> attacks = {attack("a", sig({1, 0})), attack("b", sig({1, 1})),
                                                attack("c", sig({-1, -1}))};
  const auto out = classify(attacks, refs, 0.9);
  CHECK(out[0].label == "x");
  CHECK(out[0].best_similarity == 1.0);
  CHECK(out[1].label == kUnmatched);  // equidistant at 0.75
  CHECK_FALSE(out[1].matched());
  CHECK(out[2].label == kUnmatched);

  const auto loose = classify(attacks, refs, 0.7);
  CHECK(loose[1].label == "x");  // tie goes to the first reference

  for (const auto& a : classify(attacks, refs, 0.0)) CHECK(a.matched());
}

TEST_CASE("classify argument checks") {
  const std::vector<AttackSignature> attacks = {attack("a", sig({1}))};
  CHECK_THROWS_AS(classify(attacks, ReferenceSet{}, 0.5), ParameterError);
  ReferenceSet refs;
  refs.add("x", sig({1}));
  CHECK_THROWS_AS(classify(attacks, refs, 1.5), ParameterError);
  CHECK_THROWS_AS(classify(attacks, refs, -0.1), ParameterError);
  CHECK_THROWS_AS(refs.add("x", sig({2})), ParameterError);
}

TEST_CASE("classify returns the argmax") {
  const auto attacks = random_attacks(40, 1);
  ReferenceSet refs;
  for (int r = 0; r < 5; ++r) refs.add("r" + std::to_string(r), random_attacks(5, 100 + r)[r % 4].signature);
  for (const auto& a : classify(attacks, refs, 0.6)) {
    const auto& self = *std::find_if(attacks.begin(), attacks.end(),
                                     [&](const auto& x) { return x.cluster_id == a.cluster_id; });
    for (const auto& e : refs.entries())
      CHECK(a.best_similarity >= similarity(self.signature, e.signature).value);
    if (a.matched()) CHECK(a.best_similarity >= 0.6);
    else CHECK(a.best_similarity < 0.6);
  }
}

TEST_CASE("similarity matrix") {
  const auto attacks = random_attacks(17, 2);
  const auto m1 = SimilarityMatrix::compute(attacks, 1);
  const auto m4 = SimilarityMatrix::compute(attacks, 4);
  REQUIRE(m1.size() == 17);
  for (std::size_t i = 0; i < 17; ++i) {
    CHECK(m1.at(i, i) == 1.0);
    for (std::size_t j = 0; j < 17; ++j) {
      CHECK(m1.at(i, j) == m1.at(j, i));
      CHECK(m1.at(i, j) == m4.at(i, j));
      if (i != j) CHECK(m1.at(i, j) == similarity(attacks[i].signature, attacks[j].signature).value);
    }
  }
}

TEST_CASE("hcluster small cases") {
  SUBCASE("single attack") {
    const std::vector<AttackSignature> one = {attack("a", sig({1}))};
    const auto r = hcluster(one, 0.5);
    REQUIRE(r.clusters.size() == 1);
    CHECK(r.clusters[0].members == std::vector<std::string>{"a"});
    CHECK(r.dendrogram.merges.empty());
  }
  SUBCASE("two attacks") {
    const std::vector<AttackSignature> two = {attack("a", sig({1, 0})), attack("b", sig({1, 1}))};
    CHECK(hcluster(two, 0.74).clusters.size() == 1);
    CHECK(hcluster(two, 0.76).clusters.size() == 2);
  }
  SUBCASE("empty input") {
    CHECK_THROWS_AS(hcluster(std::vector<AttackSignature>{}, 0.5), ParameterError);
  }
}

TEST_CASE("hcluster properties on random signatures") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto attacks = random_attacks(30 + seed, seed);
    const auto sims = SimilarityMatrix::compute(attacks, 1);
    const auto d = complete_linkage(sims);
    REQUIRE(d.merges.size() == attacks.size() - 1);
    for (std::size_t s = 1; s < d.merges.size(); ++s)
      CHECK(d.merges[s].distance >= d.merges[s - 1].distance);
    CHECK(d.merges.back().size == attacks.size());

    CHECK(cut_dendrogram(d, 0.0).size() == 1);

    std::vector<std::vector<std::size_t>> previous;
    for (double tau : {0.0, 0.3, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 1.0}) {
      const auto clusters = cut_dendrogram(d, tau);
      std::size_t covered = 0;
      for (const auto& c : clusters) {
        covered += c.size();
        for (auto i : c)
          for (auto j : c) CHECK(sims.at(i, j) >= tau);  // complete-linkage guarantee
      }
      CHECK(covered == attacks.size());
      // every cluster at a higher tau sits inside one cluster of the lower tau
      for (const auto& c : clusters) {
        if (previous.empty()) break;
        const auto owner = std::find_if(previous.begin(), previous.end(), [&](const auto& p) {
          return std::find(p.begin(), p.end(), c.front()) != p.end();
        });
        for (auto i : c) CHECK(std::find(owner->begin(), owner->end(), i) != owner->end());
      }
      previous = clusters;
    }
    CHECK(cut_dendrogram(d, 1.0).size() == attacks.size());
  }
}

TEST_CASE("tau 1 only joins identical signatures") {
  const std::vector<AttackSignature> attacks = {attack("a", sig({1, 2})), attack("b", sig({2, 4})),
                                                attack("c", sig({1, 2.001}))};
  const auto r = hcluster(attacks, 1.0);
  REQUIRE(r.clusters.size() == 2);
  CHECK(r.clusters[0].members == std::vector<std::string>{"a", "b"});
}

TEST_CASE("ties merge the lowest index pair first") {
  const std::vector<AttackSignature> attacks = {attack("a", sig({1})), attack("b", sig({1})),
                                                attack("c", sig({1})), attack("d", sig({1}))};
  const auto d = complete_linkage(SimilarityMatrix::compute(attacks, 1));
  CHECK(d.merges[0].left == 0);
  CHECK(d.merges[0].right == 1);
}

TEST_CASE("medoid") {
  SUBCASE("singleton") {
    const std::vector<ZSignature> one = {sig({1, 2})};
    CHECK(derive_reference(one) == one[0]);
  }
  SUBCASE("majority") {
    const std::vector<ZSignature> members = {sig({1, 0}), sig({1, 0}), sig({0, 1})};
    CHECK(medoid_index(members) == 0);
    const std::vector<ZSignature> later = {sig({0, 1}), sig({1, 0}), sig({1, 0})};
    CHECK(medoid_index(later) == 1);
  }
  SUBCASE("matches exhaustive search") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const auto attacks = random_attacks(10 + seed, 500 + seed);
      std::vector<ZSignature> members;
      for (const auto& a : attacks) members.push_back(a.signature);
      std::size_t best = 0;
      double best_sum = -1;
      for (std::size_t i = 0; i < members.size(); ++i) {
        double sum = 0;
        for (std::size_t j = 0; j < members.size(); ++j) sum += oracle::similarity(members[i].z, members[j].z);
        if (sum > best_sum + 1e-12) {
          best_sum = sum;
          best = i;
        }
      }
      CHECK(medoid_index(members) == best);
    }
  }
  SUBCASE("empty") { CHECK_THROWS_AS(medoid_index(std::vector<ZSignature>{}), ParameterError); }
}

TEST_CASE("dendrogram exports") {
  const std::vector<AttackSignature> attacks = {attack("a", sig({1, 0})), attack("b", sig({1, 1})),
                                                attack("c", sig({0, 1}))};
  const auto r = hcluster(attacks, 0.5);
  const auto json = dendrogram_to_json(r.dendrogram, attacks);
  CHECK(json.find("\"leaves\"") != std::string::npos);
  CHECK(json.find("\"merges\"") != std::string::npos);
  const auto dot = dendrogram_to_dot(r.dendrogram, attacks);
  CHECK(dot.rfind("digraph dendrogram {", 0) == 0);
  CHECK(dot.find("n3 -> n4") != std::string::npos);
}
