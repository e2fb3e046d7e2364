#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "grid_oracle.hpp"
#include "random_cases.hpp"
#include "structbandit/errors.hpp"
#include "structbandit/structure.hpp"

using namespace structbandit;

namespace {

const Family kGauss = Family::gaussian(1.0);

void check_vec(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(tol));
}

}  // namespace

TEST_CASE("structure validation") {
  CHECK_THROWS_AS(Structure(1, Unconstrained{}), DomainError);
  CHECK_THROWS_AS(Structure(3, Sparse{0, 0.0}), DomainError);
  CHECK_THROWS_AS(Structure(3, Sparse{4, 0.0}), DomainError);
  CHECK_NOTHROW(Structure(3, Sparse{3, 0.0}));
  CHECK_THROWS_AS(Structure(3, Lipschitz{0.0}), DomainError);
  CHECK_THROWS_AS(Structure(3, Categorised{{0, 1}}), DimensionError);
  CHECK_THROWS_AS(Structure(3, Categorised{{0, 0, 0}}), DomainError);
  CHECK_THROWS_AS(Structure(3, Categorised{{0, 1, 2}}), DomainError);
  CHECK_THROWS_AS(Structure(2, Linear{{{1.0, 0.0}, {0.0}}}), DimensionError);
  CHECK_THROWS_AS(Structure(2, Linear{{{1.0, 0.0, 1.0}, {0.0, 1.0, 1.0}}}), DimensionError);
  CHECK_THROWS_AS(Structure(2, Unconstrained{}, Box{1.0, 0.0}), DomainError);
}

TEST_CASE("default box rule") {
  Structure s(2, Unconstrained{});
  std::vector<double> mu{0.2, 0.7};
  Box g = s.box_for(Family::gaussian(4.0), mu);
  CHECK(g.lo == doctest::Approx(0.2 - 10.0));
  CHECK(g.hi == doctest::Approx(0.7 + 10.0));
  Box b = s.box_for(Family::bernoulli(), mu);
  CHECK(b.lo == doctest::Approx(1e-6));
  CHECK(b.hi == doctest::Approx(1.0 - 1e-6));
  Structure c(2, Unconstrained{}, Box{-1.0, 3.0});
  CHECK(c.box_for(kGauss, mu).hi == 3.0);
}

TEST_CASE("unconstrained cell pools the pair") {
  Structure s(2, Unconstrained{});
  std::vector<double> mu{1.0, 0.0}, w{1.0, 1.0};
  AltMinResult r = alt_min(s, kGauss, mu, w, 0, 1);
  check_vec(r.minimiser, {0.5, 0.5}, 1e-12);
  CHECK(r.value == doctest::Approx(0.25));

  oracle::GridResult g = oracle::grid_alt_min(s, kGauss, mu, w, 0, 1, 0.001);
  CHECK(g.value == doctest::Approx(0.25).epsilon(1e-3));
}

TEST_CASE("feasible points cost nothing") {
  std::vector<double> mu{0.1, 0.3, 0.6, 0.4}, w{1.0, 2.0, 0.5, 1.0};
  std::vector<Structure> structures{Structure(4, Unconstrained{}), Structure(4, Unimodal{}),
                                    Structure(4, Lipschitz{0.5}),
                                    Structure(4, Categorised{{0, 1, 1, 1}})};
  for (const auto& s : structures) {
    AltMinResult r = alt_min(s, kGauss, mu, w, 1, 2);
    CHECK(r.value == doctest::Approx(0.0).epsilon(1e-12));
    check_vec(r.minimiser, mu, 1e-9);
  }
  std::vector<double> sp{0.3, 0.9, 0.3, 0.5};
  AltMinResult r = alt_min(Structure(4, Sparse{2, 0.3}), kGauss, sp, w, 3, 1);
  CHECK(r.value == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("unimodal example against the grid oracle") {
  Structure s(5, Unimodal{});
  std::vector<double> mu{0.2, 0.4, 0.9, 0.7, 0.1}, w(5, 1.0);
  AltMinResult r = alt_min(s, kGauss, mu, w, 2, 3);
  oracle::GridResult g = oracle::grid_alt_min(s, kGauss, mu, w, 2, 3, 0.005);
  CHECK(std::abs(r.value - g.value) <= 1e-2);
  for (std::size_t i = 0; i < 5; ++i) CHECK(std::abs(r.minimiser[i] - g.lambda[i]) <= 1e-2);
  CHECK(r.minimiser[3] >= r.minimiser[2] - 1e-9);
  CHECK(membership(s, r.minimiser, 1e-7));
}

TEST_CASE("best response picks the cheapest cell") {
  Structure s(3, Unconstrained{});
  std::vector<double> mu{1.0, 0.5, 0.0}, w{1.0, 1.0, 1.0};
  CellResponse c = best_response_neg(s, kGauss, mu, w, 0);
  CHECK(c.witness == 1);
  check_vec(c.result.minimiser, {0.75, 0.75, 0.0}, 1e-12);
  // (1 - 0.75)^2 / 2 + (0.5 - 0.75)^2 / 2
  CHECK(c.result.value == doctest::Approx(0.0625));

  std::vector<double> tied{0.4, 0.4}, w2{3.0, 1.0};
  CHECK(best_response_neg(Structure(2, Unimodal{}), kGauss, tied, w2, 0).result.value ==
        doctest::Approx(0.0));

  CHECK(alternative_exceeds(s, kGauss, mu, w, 0, 0.06));
  CHECK_FALSE(alternative_exceeds(s, kGauss, mu, w, 0, 0.0625));
}

TEST_CASE("one-dimensional linear cell matches a scan over the parameter") {
  Structure s(2, Linear{{{1.0}, {2.0}}});
  std::vector<double> mu{1.0, 2.0}, w{1.0, 1.0};
  AltMinResult r = alt_min(s, kGauss, mu, w, 1, 0);
  double best = 1e300;
  for (int i = -200000; i <= 200000; ++i) {
    double eta = i * 1e-5;
    if (eta > 1e-12) continue;  // lambda_1 >= lambda_2 needs eta <= 0
    double v = 0.5 * (1.0 - eta) * (1.0 - eta) + 0.5 * (2.0 - 2.0 * eta) * (2.0 - 2.0 * eta);
    best = std::min(best, v);
  }
  CHECK(r.value == doctest::Approx(best).epsilon(1e-6));
  CHECK(r.minimiser[0] >= r.minimiser[1] - 1e-9);
  CHECK_THROWS_AS(alt_min(s, Family::bernoulli(), std::vector<double>{0.2, 0.4}, w, 1, 0),
                  DomainError);
}

TEST_CASE("membership rules") {
  std::vector<double> peak{0.0, 1.0, 0.0}, valley{1.0, 0.0, 1.0};
  Structure u(3, Unimodal{});
  CHECK(membership(u, peak, 0.0));
  CHECK_FALSE(membership(u, valley, 0.0));
  CHECK(membership(u, valley, 0.5));

  Structure sp(3, Sparse{1, 0.3});
  CHECK(membership(sp, std::vector<double>{0.8, 0.3, 0.3}, 0.0));
  CHECK_FALSE(membership(sp, std::vector<double>{0.8, 0.5, 0.3}, 1e-7));
  CHECK_FALSE(membership(sp, std::vector<double>{0.8, 0.2, 0.3}, 1e-7));

  Structure lip(3, Lipschitz{0.2});
  CHECK(membership(lip, std::vector<double>{0.0, 0.2, 0.35}, 1e-9));
  CHECK_FALSE(membership(lip, std::vector<double>{0.0, 0.3, 0.35}, 1e-7));

  Structure cat(4, Categorised{{0, 1, 1, 0}});
  CHECK(membership(cat, std::vector<double>{2.0, 1.0, 0.5, 1.5}, 0.0));
  CHECK(membership(cat, std::vector<double>{0.2, 1.0, 0.5, 0.1}, 0.0));
  CHECK_FALSE(membership(cat, std::vector<double>{2.0, 1.0, 0.5, 0.7}, 1e-7));

  Structure lin(3, Linear{{{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}});
  CHECK(membership(lin, std::vector<double>{0.3, 0.4, 0.7}, 1e-9));
  CHECK_FALSE(membership(lin, std::vector<double>{0.3, 0.4, 0.9}, 1e-7));
}

TEST_CASE("zero weights leave the coordinate at its estimate when possible") {
  Structure s(3, Unconstrained{});
  std::vector<double> mu{1.0, 0.0, 0.4}, w{1.0, 1.0, 0.0};
  AltMinResult r = alt_min(s, kGauss, mu, w, 0, 1);
  CHECK(r.minimiser[2] == doctest::Approx(0.4));
  std::vector<double> zero(3, 0.0);
  CHECK(alt_min(s, kGauss, mu, zero, 0, 1).value == 0.0);
}

TEST_CASE("categorised pair across categories meets at the level") {
  // j in the top category, k below: lambda_j = lambda_k at the separating level
  // beats lifting the whole lower category.
  Structure s(4, Categorised{{0, 1, 1, 1}});
  std::vector<double> mu{2.0, 1.0, 0.96, 0.0}, w(4, 1.0);
  AltMinResult r = alt_min(s, kGauss, mu, w, 0, 1);
  oracle::GridResult g = oracle::grid_alt_min(s, kGauss, mu, w, 0, 1, 0.005);
  CHECK(std::abs(r.value - g.value) <= 1e-3);
  CHECK(r.minimiser[0] == doctest::Approx(r.minimiser[1]));
}

TEST_CASE("alt-min agrees with the grid oracle and keeps its invariants") {
  for (const std::string& kind : oracle::kStructureKinds) {
    CAPTURE(kind);
    auto cases = oracle::random_altmin_cases(kind, 15, 0xA17 + kind.size());
    for (const auto& c : cases) {
      AltMinResult r = alt_min(c.structure, c.family, c.mu, c.w, c.j, c.k);
      oracle::GridResult g =
          oracle::grid_alt_min(c.structure, c.family, c.mu, c.w, c.j, c.k, 0.005);
      CAPTURE(c.mu);
      CAPTURE(c.j);
      CAPTURE(c.k);
      CHECK(std::abs(r.value - g.value) <= 1e-2);
      CHECK(r.value >= 0.0);
      CHECK(membership(c.structure, r.minimiser, 1e-7));
      CHECK(r.minimiser[c.k] >= r.minimiser[c.j] - 1e-9);
      CHECK(std::abs(weighted_divergence(c.family, c.mu, c.w, r.minimiser) - r.value) <= 1e-7);

      std::vector<double> scaled(c.w);
      for (auto& x : scaled) x *= 3.5;
      AltMinResult r2 = alt_min(c.structure, c.family, c.mu, scaled, c.j, c.k);
      CHECK(r2.value == doctest::Approx(3.5 * r.value).epsilon(1e-7));
      for (std::size_t i = 0; i < r.minimiser.size(); ++i)
        CHECK(std::abs(r2.minimiser[i] - r.minimiser[i]) <= 1e-7);
    }
  }
}
