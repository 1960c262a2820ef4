#include "brute.hpp"
#include "doctest.h"
#include "revxdt/io.hpp"
#include "revxdt/oneway.hpp"
#include "revxdt/oracle.hpp"

using namespace revxdt;

namespace {

Transducer fixture(const std::string& name) {
  return load_transducer(std::string(REVXDT_FIXTURES_DIR) + "/" + name + ".json");
}

const std::vector<Letter> kAB{"a", "b"};

brute::Rel reversed_rel(const brute::Rel& r) {
  brute::Rel out;
  for (const auto& [u, vs] : r)
    for (const auto& v : vs) out[brute::reversed(u)].insert(brute::reversed(v));
  return out;
}

}  // namespace

TEST_CASE("enriched letters") {
  CHECK(enriched_letter("a", "q1") == "(a,q1)");
  CHECK(enriched_letter(kBegin, "qI") == "(" + kBegin + ",qI)");
}

TEST_CASE("mult") {
  auto t = fixture("t1");
  auto m = build_mult(t);
  CHECK(m.size() == 1);
  CHECK(check_properties(m).reversible);
  CHECK(m.output_alphabet.size() == 4 * 5 + 1);
  auto r = run_deterministic(m, {"b"});
  REQUIRE(r.kind == Outcome::Kind::Accepted);
  // one block per endmarked letter: n enriched copies then the reset
  REQUIRE(r.output.size() == 3 * 6);
  CHECK(r.output[0] == enriched_letter(kBegin, "0"));
  CHECK(r.output[5] == kReset);
  CHECK(r.output[6] == enriched_letter("b", "0"));
  CHECK(r.output[10] == enriched_letter("b", "qF"));
  CHECK(r.output[17] == kReset);
}

TEST_CASE("desync") {
  auto t = fixture("t1");
  auto d = build_desync(t);
  CHECK(d.size() == 2 * 5 + 2);
  auto p = check_properties(d);
  CHECK(p.one_way);
  CHECK(p.codeterministic);
  CHECK(p.weakly_branching);
  CHECK(d.id(d.initial) == "init");
  CHECK(d.id(d.final) == "fin");

  // mult then desync is T again
  brute::Rng rng(51);
  std::vector<Transducer> ts{t};
  for (int i = 0; i < 15; ++i) ts.push_back(brute::random_codet(rng, 2 + static_cast<int>(rng() % 2), kAB, kAB));
  for (const auto& x : ts) {
    auto dx = build_desync(x);
    CHECK(check_properties(dx).weakly_branching);
    CHECK(check_properties(dx).codeterministic);
    CHECK(brute::compose(build_mult(x), dx, 3) == brute::relation(x, 3));
  }

  CHECK_THROWS_WITH_AS(build_desync(fixture("a1")), doctest::Contains("not-codeterministic"), Error);
  CHECK_THROWS_WITH_AS(build_desync(fixture("a2")), doctest::Contains("not-one-way"), Error);
}

TEST_CASE("reverse") {
  auto t = fixture("t1");
  auto r = reverse_1ft(t);
  CHECK(structurally_equal(reverse_1ft(r), t));
  CHECK(check_properties(r).deterministic);
  CHECK(brute::relation(r, 4) == reversed_rel(brute::relation(t, 4)));

  brute::Rng rng(52);
  for (int i = 0; i < 40; ++i) {
    auto d = brute::random_det(rng, 4, kAB, kAB);
    auto rd = reverse_1ft(d);
    CHECK(check_properties(rd).codeterministic);
    CHECK(brute::relation(rd, 4) == reversed_rel(brute::relation(d, 4)));
  }
}

TEST_CASE("mirror") {
  auto m = build_mirror(kAB);
  CHECK(m.size() == 3);
  CHECK(check_properties(m).reversible);
  CHECK(structurally_equal(m, fixture("mirror")));
  for (const auto& u : brute::words_upto(kAB, 6)) CHECK(brute::outputs(m, u) == std::set<Word>{brute::reversed(u)});
  CHECK_THROWS_WITH_AS(build_mirror({}), doctest::Contains("empty-alphabet"), Error);
}

TEST_CASE("co-deterministic pipeline") {
  auto t = fixture("t1");
  auto full = codet1ft_to_reversible(t);
  CHECK(full.size() == static_cast<int>(codet_pipeline_states(5)));
  CHECK(codet_pipeline_states(5) == 552);
  CHECK(check_properties(full).reversible);
  CHECK(check_equiv(full, t, 4).equal);

  auto lazy = codet1ft_to_reversible(t, {.reachable_only = true});
  CHECK(lazy.size() < full.size());
  CHECK(check_properties(lazy).reversible);
  CHECK(check_equiv(lazy, t, 6).equal);

  brute::Rng rng(53);
  for (int i = 0; i < 15; ++i) {
    auto c = brute::random_codet(rng, 2 + static_cast<int>(rng() % 3), kAB, kAB);
    auto r = codet1ft_to_reversible(c, {.reachable_only = true});
    CHECK(brute::reversible(r));
    CHECK(brute::relation(r, 4) == brute::relation(c, 4));
  }

  CHECK_THROWS_WITH_AS(codet1ft_to_reversible(fixture("a1")), doctest::Contains("not-codeterministic"), Error);
  CHECK_THROWS_WITH_AS(codet1ft_to_reversible(t, {.max_states = 100}), doctest::Contains("state-budget-exceeded"),
                       Error);
}

TEST_CASE("deterministic pipeline") {
  auto a1 = fixture("a1");
  auto r = det1ft_to_reversible(a1, {.reachable_only = true});
  CHECK(check_properties(r).reversible);
  CHECK(check_equiv(r, a1, 6).equal);
  CHECK(det_pipeline_states(3) == 9 * codet_pipeline_states(3));

  auto full = det1ft_to_reversible(fixture("a1_copy"));
  CHECK(full.size() == static_cast<int>(det_pipeline_states(fixture("a1_copy").size())));
  CHECK(check_properties(full).reversible);
  CHECK(check_equiv(full, fixture("a1_copy"), 4).equal);

  brute::Rng rng(54);
  for (int i = 0; i < 10; ++i) {
    auto d = brute::random_det(rng, 2 + static_cast<int>(rng() % 2), kAB, kAB);
    auto x = det1ft_to_reversible(d, {.reachable_only = true});
    CHECK(brute::reversible(x));
    CHECK(brute::relation(x, 4) == brute::relation(d, 4));
  }
  CHECK_THROWS_WITH_AS(det1ft_to_reversible(fixture("t1")), doctest::Contains("not-deterministic"), Error);
}
