#include <doctest.h>

#include <algorithm>

#include "motifsig/errors.hpp"
#include "motifsig/evaluation.hpp"

using namespace motifsig;

namespace {

AttackSignature labeled(std::string id, std::string label, std::initializer_list<double> head,
                        std::uint64_t hosts = 0) {
  AttackSignature a{std::move(id), {}, std::move(label), hosts ? std::optional(hosts) : std::nullopt};
  std::size_t i = 0;
  for (double v : head) a.signature.z[i++] = v;
  return a;
}

}  // namespace

TEST_CASE("supervised rates on a hand-computed confusion matrix") {
  std::map<std::string, std::string> truth;
  for (int i = 1; i <= 4; ++i) truth["a" + std::to_string(i)] = "ddos";
  for (int i = 5; i <= 7; ++i) truth["a" + std::to_string(i)] = "scan";
  for (int i = 8; i <= 10; ++i) truth["a" + std::to_string(i)] = "worm";
  const std::string um(kUnmatched);
  const std::vector<Assignment> predicted = {
      {"a1", "ddos", 1}, {"a2", "ddos", 1}, {"a3", "scan", 1}, {"a4", um, 0},  {"a5", "scan", 1},
      {"a6", "scan", 1}, {"a7", "ddos", 1}, {"a8", "worm", 1}, {"a9", "worm", 1}, {"a10", "worm", 1}};
  const auto r = eval_supervised(predicted, truth);
  REQUIRE(r.per_scenario.size() == 3);

  const auto& ddos = r.per_scenario[0];
  CHECK(ddos.scenario == "ddos");
  CHECK(ddos.tp == 2);
  CHECK(ddos.fp == 1);
  CHECK(ddos.fn == 2);
  CHECK(ddos.tn == 5);
  CHECK(ddos.tpr == doctest::Approx(0.5));
  CHECK(ddos.fpr == doctest::Approx(1.0 / 6));
  CHECK(ddos.accuracy == doctest::Approx(0.7));

  const auto& scan = r.per_scenario[1];
  CHECK(scan.tp == 2);
  CHECK(scan.fp == 1);
  CHECK(scan.fn == 1);
  CHECK(scan.tn == 6);
  CHECK(scan.tpr == doctest::Approx(2.0 / 3));
  CHECK(scan.fpr == doctest::Approx(1.0 / 7));
  CHECK(scan.accuracy == doctest::Approx(0.8));

  const auto& worm = r.per_scenario[2];
  CHECK(worm.tpr == 1.0);
  CHECK(worm.fpr == 0.0);
  CHECK(worm.accuracy == 1.0);

  CHECK(r.macro_accuracy == doctest::Approx((0.7 + 0.8 + 1.0) / 3));
  CHECK(r.macro_tpr == doctest::Approx((0.5 + 2.0 / 3 + 1.0) / 3));
}

TEST_CASE("supervised edge cases") {
  const std::map<std::string, std::string> truth = {{"a", "x"}, {"b", "y"}};
  const std::vector<Assignment> perfect = {{"a", "x", 1}, {"b", "y", 1}};
  const auto p = eval_supervised(perfect, truth);
  CHECK(p.macro_tpr == 1.0);
  CHECK(p.macro_fpr == 0.0);
  CHECK(p.macro_accuracy == 1.0);

  const std::string um(kUnmatched);
  const std::vector<Assignment> none = {{"a", um, 0}, {"b", um, 0}};
  const auto n = eval_supervised(none, truth);
  CHECK(n.macro_tpr == 0.0);
  CHECK(n.macro_fpr == 0.0);

  const std::vector<Assignment> stranger = {{"zz", "x", 1}};
  CHECK_THROWS_AS(eval_supervised(stranger, truth), ParameterError);
}

TEST_CASE("overlap metrics") {
  SUBCASE("identical partitions") {
    const std::vector<Group> g = {{"r1", {"a", "b"}}, {"r2", {"c"}}};
    const auto r = eval_overlap(g, g);
    CHECK(r.equivalent == 1.0);
    CHECK(r.homogeneity == 1.0);
  }
  SUBCASE("one cluster spanning two equal scenarios") {
    const std::vector<Group> ref = {{"r1", {"a", "b"}}, {"r2", {"c", "d"}}};
    const std::vector<Group> unsup = {{"u", {"a", "b", "c", "d"}}};
    CHECK(eval_overlap(ref, unsup).homogeneity == 0.5);
  }
  SUBCASE("three clusters with one swapped pair") {
    const std::vector<Group> ref = {{"r1", {"a", "b", "c"}}, {"r2", {"d", "e", "f"}}, {"r3", {"g", "h", "i"}}};
    const std::vector<Group> unsup = {{"u1", {"a", "b", "d"}}, {"u2", {"c", "e", "f"}}, {"u3", {"g", "h", "i"}}};
    const auto r = eval_overlap(ref, unsup);
    CHECK(r.equivalent == doctest::Approx(2.0 / 3));
    CHECK(r.homogeneity == doctest::Approx(7.0 / 9));
  }
  SUBCASE("unsupervised clusters without referenced attacks are ignored") {
    const std::vector<Group> ref = {{"r1", {"a"}}};
    const std::vector<Group> unsup = {{"u1", {"a"}}, {"u2", {"z", "y"}}};
    const auto r = eval_overlap(ref, unsup);
    CHECK(r.equivalent == 1.0);
    CHECK(r.homogeneity == 1.0);
  }
  SUBCASE("id universes must line up") {
    const std::vector<Group> ref = {{"r1", {"a", "q"}}};
    const std::vector<Group> unsup = {{"u1", {"a"}}};
    CHECK_THROWS_AS(eval_overlap(ref, unsup), ParameterError);
    const std::vector<Group> dup = {{"u1", {"a"}}, {"u2", {"a"}}};
    CHECK_THROWS_AS(eval_overlap(std::vector<Group>{{"r", {"a"}}}, dup), ParameterError);
  }
}

TEST_CASE("class separation and windows") {
  const std::vector<AttackSignature> attacks = {
      labeled("x1", "x", {1, 0.1}, 10), labeled("x2", "x", {1, -0.1}, 20),
      labeled("y1", "y", {0.1, 1}, 10), labeled("y2", "y", {-0.1, 1}, 30)};
  const auto sims = SimilarityMatrix::compute(attacks, 1);
  const auto rows = class_separation(attacks, sims);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].scenario == "x");
  CHECK(rows[0].attacks == 2);
  REQUIRE(rows[0].lowest_intra);
  CHECK(rows[0].lowest_intra->similarity == doctest::Approx(sims.at(0, 1)));
  REQUIRE(rows[0].highest_inter);
  CHECK(rows[0].highest_inter->other_scenario == "y");
  CHECK(rows[0].highest_inter->similarity == doctest::Approx(std::max({sims.at(0, 2), sims.at(0, 3),
                                                                       sims.at(1, 2), sims.at(1, 3)})));

  const auto w = tau_window(attacks, sims);
  CHECK(w.feasible());
  CHECK(w.min_intra == doctest::Approx(std::min(sims.at(0, 1), sims.at(2, 3))));
  CHECK(w.midpoint() == doctest::Approx((w.min_intra + w.max_inter) / 2));

  const auto by_size = tau_windows_by_size(attacks, sims);
  REQUIRE(by_size.size() == 3);
  CHECK(by_size[0].size_upper_bound == 10);
  CHECK(by_size[0].attacks == 2);
  CHECK(by_size[0].min_intra == 1.0);  // no intra pair yet
  CHECK(by_size[2].attacks == 4);

  auto unlabeled = attacks;
  unlabeled[1].label.reset();
  CHECK_THROWS_AS(class_separation(unlabeled, sims), ParameterError);
  unlabeled = attacks;
  unlabeled[0].hosts.reset();
  CHECK_THROWS_AS(tau_windows_by_size(unlabeled, sims), ParameterError);
}

TEST_CASE("identical signatures have intra similarity 1") {
  const std::vector<AttackSignature> attacks = {labeled("a", "s", {1, 2, 3}), labeled("b", "s", {1, 2, 3}),
                                                labeled("c", "s", {1, 2, 3})};
  const auto rows = class_separation(attacks, SimilarityMatrix::compute(attacks, 1));
  CHECK(rows[0].lowest_intra->similarity == 1.0);
  CHECK_FALSE(rows[0].highest_inter);
}

TEST_CASE("group builders") {
  ReferenceSet refs;
  refs.add("x", {});
  refs.add("y", {});
  const std::string um(kUnmatched);
  const std::vector<Assignment> a = {{"1", "y", 1}, {"2", um, 0}, {"3", "y", 1}};
  const auto groups = groups_from_assignments(a, refs);
  REQUIRE(groups.size() == 1);
  CHECK(groups[0].name == "y");
  CHECK(groups[0].members == std::vector<std::string>{"1", "3"});
}
