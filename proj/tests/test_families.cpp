#include "doctest.h"

#include "gmebound/bloch.hpp"
#include "gmebound/families.hpp"
#include "gmebound/gme.hpp"
#include "gmebound/prodrad.hpp"
#include "test_util.hpp"

#include <cmath>

using namespace gmebound;
using namespace gmebound::families;
using gmebound::testing::ginibre;

namespace {

std::vector<double> lambda_from_Lambda(int d, double Lambda) {
  std::vector<double> l(static_cast<std::size_t>(d), (1.0 - Lambda) / (d - 1.0));
  l[0] = Lambda;
  return l;
}

}  // namespace

TEST_CASE("builders") {
  const auto bell = build(GeneralizedWerner{2, 0.0, {0.5, 0.5}});
  CVector phi = CVector::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  CHECK((bell.matrix() - phi * phi.adjoint()).cwiseAbs().maxCoeff() < 1e-15);

  // (I - V)/2 at d = 2 is the singlet projector.
  const auto singlet = build(OriginalWerner{2, -1.0});
  CVector s = CVector::Zero(4);
  s(1) = 1.0 / std::sqrt(2.0);
  s(2) = -1.0 / std::sqrt(2.0);
  CHECK((singlet.matrix() - s * s.adjoint()).cwiseAbs().maxCoeff() < 1e-15);

  const auto be = build(BoundEntangled{3.5});
  CHECK(be.dims().dims() == std::vector<int>{3, 3});
  CHECK(min_hermitian_eigenvalue(partial_transpose(be, 1)) >= -1e-12);

  const auto ghz = build(GhzMixture{4, 0.3});
  CHECK(ghz.dims().dims() == std::vector<int>{2, 2, 2, 2});

  CHECK(build(GeneralizedWerner{3, 0.2, {}}).matrix().isApprox(
      build(GeneralizedWerner{3, 0.2, {1.0 / 3, 1.0 / 3, 1.0 / 3}}).matrix()));
}

TEST_CASE("invariant violations") {
  CHECK_THROWS_AS(build(GeneralizedWerner{2, 1.2, {}}), StateError);
  CHECK_THROWS_AS(build(GeneralizedWerner{3, 0.2, {0.5, 0.5, 0.1}}), StateError);
  CHECK_THROWS_AS(build(GeneralizedWerner{3, 0.2, {0.5, 0.5}}), StateError);
  CHECK_THROWS_AS(build(GeneralizedWerner{2, 0.2, {1.5, -0.5}}), StateError);
  CHECK_THROWS_AS(build(OriginalWerner{3, 1.5}), StateError);
  CHECK_THROWS_AS(build(BoundEntangled{1.0}), StateError);
  CHECK_THROWS_AS(build(GhzMixture{1, 0.1}), StateError);
}

TEST_CASE("reference purities match the built states") {
  for (int d : {2, 3, 4}) {
    for (double p : {0.0, 0.3, 0.8, 1.0}) {
      for (double Lambda : {1.0 / d, 0.5 + 0.5 / d, 1.0}) {
        const GeneralizedWerner s{d, p, lambda_from_Lambda(d, Lambda)};
        CHECK(std::abs(purity(build(s)) - *reference_values(s).purity) <= 1e-12);
      }
    }
    for (double a : {-1.0, -0.5, 0.0, 0.7, 1.0}) {
      const OriginalWerner s{d, a};
      CHECK(std::abs(purity(build(s)) - *reference_values(s).purity) <= 1e-12);
    }
  }
  for (int i = 0; i <= 30; ++i) {
    const BoundEntangled s{2.0 + 0.1 * i};
    CHECK(std::abs(purity(build(s)) - *reference_values(s).purity) <= 1e-12);
  }
  for (int K = 2; K <= 5; ++K) {
    for (double p : {0.0, 0.4, 1.0}) {
      const GhzMixture s{K, p};
      CHECK(std::abs(purity(build(s)) - *reference_values(s).purity) <= 1e-12);
    }
  }
}

TEST_CASE("reference radii match the see-saw") {
  prodrad::SeeSawConfig cfg;
  for (int d : {2, 3, 4}) {
    for (double Lambda : {1.0 / d, 0.6, 0.9}) {
      const GeneralizedWerner s{d, 0.3, lambda_from_Lambda(d, Lambda)};
      CHECK(std::abs(prodrad::product_radius(build(s), 2, cfg).L - *reference_values(s).L) <= 1e-6);
    }
    for (double a : {-1.0, -0.4, 0.5}) {
      const OriginalWerner s{d, a};
      CHECK(std::abs(prodrad::product_radius(build(s), 2, cfg).L - *reference_values(s).L) <= 1e-6);
    }
  }
  for (int i = 0; i <= 30; ++i) {
    const BoundEntangled s{2.0 + 0.1 * i};
    CHECK(std::abs(prodrad::product_radius(build(s), 2, cfg).L - *reference_values(s).L) <= 1e-6);
  }
}

TEST_CASE("bound-entangled radius off the vertex branches") {
  // Between (5 + sqrt 5)/2 and 4 the maximum sits inside the simplex and
  // exceeds max(11/3, alpha)/21; elsewhere the two agree.
  const double lo = (5.0 + std::sqrt(5.0)) / 2.0;
  for (double a : {2.0, 3.0, 3.5, 3.6, lo, 4.0, 4.5, 5.0}) {
    CHECK(std::abs(*reference_values(BoundEntangled{a}).L - std::max(11.0 / 3.0, a) / 21.0) <= 1e-12);
  }
  for (double a : {3.7, 3.8, 3.9}) {
    const double L = prodrad::product_radius(build(BoundEntangled{a}), 2, prodrad::SeeSawConfig{}).L;
    CHECK(L > std::max(11.0 / 3.0, a) / 21.0 + 1e-5);
    CHECK(L == doctest::Approx((a + (4.0 - a) * (4.0 - a) / 3.0) / 21.0).epsilon(1e-9));
  }
}

TEST_CASE("GHZ radius does not depend on m") {
  prodrad::SeeSawConfig cfg;
  cfg.restarts = 16;
  for (int K = 2; K <= 4; ++K) {
    for (double p : {0.1, 0.6}) {
      const GhzMixture s{K, p};
      const auto rho = build(s);
      for (int m = 2; m <= K; ++m) {
        CHECK(std::abs(prodrad::product_radius(rho, m, cfg).L - *reference_values(s).L) <= 1e-6);
      }
    }
  }
}

TEST_CASE("thresholds") {
  CHECK(reference_values(GeneralizedWerner{2, 0.1, {0.5, 0.5}}).thresholds.at("criterion") ==
        doctest::Approx(2.0 / 3.0));
  CHECK(reference_values(BoundEntangled{3.0}).thresholds.at("alpha_det") == doctest::Approx(3.26376).epsilon(1e-5));
  CHECK(reference_values(GhzMixture{2, 0.1}).thresholds.at("p_gme") == doctest::Approx(2.0 / 3.0));
  CHECK(threshold::ghz_biseparability(3) == doctest::Approx(4.0 / 7.0));
  CHECK(threshold::werner_ppt(0.5) == doctest::Approx(2.0 / 3.0));
  CHECK(threshold::werner_purity_test() == doctest::Approx(0.42265).epsilon(1e-5));
  CHECK(threshold::isotropic_critical(3) == doctest::Approx(0.75));
  CHECK(threshold::isotropic_critical(10) == doctest::Approx(10.0 / 11.0));
}

TEST_CASE("isotropic separability point agrees with PPT") {
  for (int d : {2, 3, 4}) {
    const double p_cr = threshold::isotropic_critical(d);
    auto ev = [&](double p) { return min_hermitian_eigenvalue(partial_transpose(build(GeneralizedWerner{d, p, {}}), 1)); };
    CHECK(ev(p_cr - 1e-6) < 0.0);
    CHECK(ev(p_cr + 1e-6) > 0.0);
    CHECK(std::abs(ev(p_cr)) < 1e-12);
  }
}

TEST_CASE("original Werner Bloch structure") {
  for (int d : {2, 3}) {
    const auto bf = bloch::bloch_decompose(build(OriginalWerner{d, -0.7}));
    CHECK(bf.q.cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(bf.p.cwiseAbs().maxCoeff() <= 1e-12);
    const RMatrix off = bf.B - RMatrix(bf.B.diagonal().asDiagonal());
    CHECK(off.cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((bf.B.diagonal().array() - bf.B(0, 0)).abs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("swap identity") {
  std::mt19937_64 rng(61);
  for (int d : {2, 3, 4}) {
    const CMatrix V = swap_operator(d);
    for (int trial = 0; trial < 10; ++trial) {
      const CMatrix a = ginibre(d, d, rng), b = ginibre(d, d, rng);
      CHECK(std::abs((kron(a, b) * V).trace() - (a * b).trace()) <= 1e-12);
    }
  }
}

TEST_CASE("spec strings") {
  const auto g = parse("gwerner:d=3,p=0.2,lambda=0.5/0.3/0.2");
  REQUIRE(std::holds_alternative<GeneralizedWerner>(g));
  CHECK(std::get<GeneralizedWerner>(g).lambda == std::vector<double>{0.5, 0.3, 0.2});
  CHECK(std::get<GeneralizedWerner>(g).Lambda() == 0.5);
  const auto g2 = parse("gwerner:d=2,p=0.1,lambda=0.3");
  CHECK(std::get<GeneralizedWerner>(g2).lambda[1] == doctest::Approx(0.7));
  const auto g3 = parse("gwerner:d=4,p=0.1,Lambda=0.7");
  CHECK(std::get<GeneralizedWerner>(g3).lambda[3] == doctest::Approx(0.1));
  CHECK(std::holds_alternative<OriginalWerner>(parse("owerner:d=4,alpha=-0.8")));
  CHECK(std::get<BoundEntangled>(parse("boundent:alpha=3.5")).alpha == 3.5);
  CHECK(std::get<GhzMixture>(parse("ghz:K=4,p=0.3")).K == 4);

  for (const char* text : {"gwerner:d=3,p=0.2,lambda=0.5/0.3/0.2", "owerner:d=4,alpha=-0.8", "boundent:alpha=3.5",
                           "ghz:K=4,p=0.3"}) {
    const auto spec = parse(text);
    CHECK(build(parse(to_string(spec))).matrix() == build(spec).matrix());
  }
  CHECK_THROWS_AS(parse("qutrit:alpha=3"), StateError);
  CHECK_THROWS_AS(parse("ghz:K=4,p=abc"), StateError);
  CHECK_THROWS_AS(parse("ghz:K=4,q=0.3"), StateError);
  CHECK_THROWS_AS(parse("boundent:alpha"), StateError);
}

TEST_CASE("named parameters") {
  FamilySpec s = GeneralizedWerner{3, 0.2, {}};
  set_parameter(s, "Lambda", 0.6);
  CHECK(get_parameter(s, "Lambda") == doctest::Approx(0.6));
  set_parameter(s, "p", 0.4);
  CHECK(get_parameter(s, "p") == 0.4);
  FamilySpec w = GeneralizedWerner{2, 0.2, {0.5, 0.5}};
  set_parameter(w, "lambda", 0.8);
  CHECK(get_parameter(w, "lambda") == 0.8);
  CHECK(std::get<GeneralizedWerner>(w).lambda[1] == doctest::Approx(0.2));
  FamilySpec b = BoundEntangled{3.0};
  set_parameter(b, "alpha", 4.5);
  CHECK(get_parameter(b, "alpha") == 4.5);
  CHECK_THROWS_AS(set_parameter(b, "p", 0.1), StateError);
}
