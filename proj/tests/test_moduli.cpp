#include <doctest.h>

#include <cmath>

#include "apvar/moduli.hpp"

using namespace apvar;

TEST_CASE("family construction and parameter guards") {
  CHECK_THROWS_AS(ModuliFamily::power(2.0), std::domain_error);  // integer c
  CHECK_THROWS_AS(ModuliFamily::power(0.5), std::domain_error);
  CHECK_THROWS_AS(ModuliFamily::subexp(1.5), std::domain_error);
  CHECK_THROWS_AS(ModuliFamily::subexp(1.0), std::domain_error);

  ModuliFamily idf = ModuliFamily::identity();
  CHECK(idf.y0 == 2.0);
  ModuliFamily pw = ModuliFamily::power(1.5);
  CHECK(pw.F(pw.y0) >= 2.0);
  CHECK(pw.Fprime(pw.y0) >= 1.0);
  ModuliFamily se = ModuliFamily::subexp(1.2);
  CHECK(se.F(se.y0) >= 2.0);
  CHECK(se.Fprime(se.y0) >= 1.0);
}

TEST_CASE("F, F', f evaluation") {
  ModuliFamily pw = ModuliFamily::power(1.5);
  CHECK(pw.F(4.0) == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(pw.f(4) == 8);
  CHECK(pw.f(5) == 11); // 5^1.5 = 11.1803...
  CHECK(pw.Fprime(4.0) == doctest::Approx(1.5 * 8.0 / 4.0).epsilon(1e-14));

  ModuliFamily idf = ModuliFamily::identity();
  CHECK(idf.F(7.0) == 7.0);
  CHECK(idf.f(7) == 7);
  CHECK(idf.Fprime(7.0) == 1.0);

  CHECK_THROWS_AS(pw.F(0.5), std::domain_error);
}

TEST_CASE("floor guard for near-integer F values") {
  // k^1.5 is exactly k'^3 on squares; a sloppy floor would lose 1
  ModuliFamily pw = ModuliFamily::power(1.5);
  for (u64 r = 2; r <= 50; ++r) CHECK(pw.f(r * r) == r * r * r);
}

TEST_CASE("F inverse") {
  ModuliFamily pw = ModuliFamily::power(1.5);
  CHECK(pw.F_inverse(8.0) == doctest::Approx(4.0).epsilon(1e-12));
  ModuliFamily se = ModuliFamily::subexp(1.2);
  CHECK(se.F_inverse(se.F(100.0)) == doctest::Approx(100.0).epsilon(1e-9));
  ModuliFamily idf = ModuliFamily::identity();
  CHECK(idf.F_inverse(13.7) == 13.7);
  CHECK_THROWS_AS(pw.F_inverse(0.5), std::domain_error);

  // round trip on a log-spaced grid
  for (const ModuliFamily& fam : {ModuliFamily::identity(), pw, se})
    for (double t = 4.0; t < 1e6; t *= 3.7) {
      double v = fam.F(t);
      CHECK(fam.F_inverse(v) == doctest::Approx(t).epsilon(1e-9));
    }
}

TEST_CASE("window bounds y1 and y(h)") {
  ModuliFamily idf = ModuliFamily::identity();
  WindowParams w{10000, 1.0, 2.0, 0.0};
  double l = std::log(1e4);
  CHECK(y1_bound(idf, w) == doctest::Approx(1e4 / (l * l)).epsilon(1e-12));

  ModuliFamily pw = ModuliFamily::power(1.5);
  WindowParams w2{1000000, 1.0, 2.0, 0.0};
  double l6 = std::log(1e6);
  CHECK(y1_bound(pw, w2) ==
        doctest::Approx(std::pow(1e6 / (l6 * l6), 2.0 / 3.0)).epsilon(1e-12));

  WindowParams w0{10000, 1.0, 0.0, 0.0}; // B = 0 degenerate knob
  CHECK(y1_bound(idf, w0) == doctest::Approx(1e4).epsilon(1e-12));

  CHECK(y_of_h(idf, 1, 100, 50.0) == doctest::Approx(50.0).epsilon(1e-12));
  CHECK(y_of_h(idf, 4, 100, 50.0) == doctest::Approx(25.0).epsilon(1e-12));
  CHECK(y_of_h(pw, 3, 10000, 400.0) ==
        doctest::Approx(std::pow(10000.0 / 3.0, 2.0 / 3.0)).epsilon(1e-12));
  CHECK_THROWS_AS(y_of_h(idf, 100, 100, 50.0), std::domain_error); // x/h < F(y0)
}

TEST_CASE("dyadic moduli sets") {
  ModuliFamily pw = ModuliFamily::power(1.5);
  DyadicSet s = dyadic_set(pw, 8);
  REQUIRE(s.members.size() == 2);
  CHECK(s.members[0] == std::pair<u64, u64>{5, 11});
  CHECK(s.members[1] == std::pair<u64, u64>{6, 14});

  ModuliFamily idf = ModuliFamily::identity();
  DyadicSet si = dyadic_set(idf, 4);
  REQUIRE(si.members.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(si.members[i].second == 5 + i);

  // subexp at tiny Q: enumerate from y0 upward directly as the oracle
  ModuliFamily se = ModuliFamily::subexp(1.2);
  DyadicSet ss = dyadic_set(se, 2);
  std::vector<std::pair<u64, u64>> expect;
  for (u64 k = (u64)se.y0; k <= 64; ++k) {
    if ((double)k < se.y0) continue;
    u64 f = se.f(k);
    if (f > 2 && f <= 4) expect.emplace_back(k, f);
  }
  CHECK(ss.members == expect);
}

TEST_CASE("floor stays within one of F, and the derivative sandwich") {
  ModuliFamily pw = ModuliFamily::power(1.5);
  ModuliFamily se = ModuliFamily::subexp(1.2);
  ModuliFamily idf = ModuliFamily::identity();
  for (const ModuliFamily& fam : {idf, pw, se}) {
    for (double kd = 8.0; kd < 2e5; kd *= 2.3) {
      u64 k = (u64)kd;
      double F = fam.F((double)k), f = (double)fam.f(k);
      CHECK(F - f >= 0.0);
      CHECK(F - f < 1.0);
      // f/k <= F/k and F/(2k) <= F' <= 2 (F/k) log k
      double Fp = fam.Fprime((double)k);
      CHECK(f / (double)k <= F / (double)k + 1e-15);
      CHECK(F / (2.0 * (double)k) <= Fp * (1.0 + 1e-12));
      CHECK(Fp <= 2.0 * (F / (double)k) * std::log((double)k) * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("theorem-2 window start") {
  double v = subexp_window_start(10000000, 2.0);
  double ll = std::log(std::log(1e7));
  CHECK(v == doctest::Approx(std::exp(ll * ll)).epsilon(1e-13));
}
