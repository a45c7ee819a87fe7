#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "olab/carleson.hpp"
#include "olab/concave.hpp"
#include "olab/errors.hpp"
#include "olab/orlicz.hpp"
#include "olab/symbols.hpp"

using namespace olab;

namespace {

using cd = std::complex<double>;

std::vector<double> integer_grid(int from, int to) {
  std::vector<double> g;
  for (int x = from; x <= to; ++x) g.push_back(x);
  return g;
}

// property (1) of the recurrence on a dense grid: f(x) <= a_{n+1} forces
// g(x) <= a_{n+2}
void check_property_one(const SequenceBuild& seq, const MonotoneFunction& f,
                        const MonotoneFunction& g) {
  const double x_hi =
      std::min({f.domain_max(), g.domain_max(), seq.a.back() * 2.0});
  for (int i = 0; i <= 400; ++i) {
    const double x = x_hi * i / 400.0;
    const double fx = f.evaluate(x);
    const double gx = g.evaluate(x);
    for (std::size_t n = 0; n + 2 < seq.a.size(); ++n) {
      if (fx <= seq.a[n + 1]) CHECK(gx <= seq.a[n + 2] * (1 + 1e-12));
    }
  }
}

void check_property_two(const std::vector<double>& a) {
  for (std::size_t n = 0; n + 2 < a.size(); ++n) {
    CHECK(a[n + 1] - a[n] >= 1.0);
    CHECK(a[n + 2] - a[n + 1] >= a[n + 1] - a[n]);
  }
}

}  // namespace

TEST_CASE("breakpoint recurrence follows both clauses") {
  const auto id = MonotoneFunction::power(1);
  const auto sq = MonotoneFunction::power(2);

  SUBCASE("equal functions advance by unit steps") {
    const auto seq = build_sequence(id, id, 10);
    REQUIRE(seq.a.size() == 11);
    CHECK_FALSE(seq.exhausted);
    for (int n = 0; n <= 10; ++n) CHECK(seq.a[n] == doctest::Approx(n));
    check_property_two(seq.a);
  }

  SUBCASE("quadratic growth takes over from the spacing clause") {
    const auto seq = build_sequence(id, sq, 5);
    REQUIRE(seq.a.size() == 6);
    const std::vector<double> want = {0, 1, 2, 4, 16, 256};
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(seq.a[i] == want[i]);
    check_property_two(seq.a);
    check_property_one(seq, id, sq);
  }

  SUBCASE("square root stays below the spacing clause") {
    const auto seq = build_sequence(sq, id, 10);
    REQUIRE(seq.a.size() == 11);
    for (int n = 0; n <= 10; ++n) CHECK(seq.a[n] == doctest::Approx(n));
    check_property_two(seq.a);
    check_property_one(seq, sq, id);
  }

  SUBCASE("closed-form overflow stops the build") {
    const auto seq = build_sequence(id, MonotoneFunction::exp_form(1, 1), 12);
    CHECK(seq.exhausted);
    CHECK(seq.a.size() == 6);
    CHECK(seq.a[2] == doctest::Approx(2.0));  // spacing beats e - 1
    CHECK(seq.a[5] == doctest::Approx(std::expm1(seq.a[4])));
    check_property_two(seq.a);
  }

  SUBCASE("tabulated f runs out of range") {
    std::vector<double> xs, ys;
    for (int i = 0; i <= 10; ++i) {
      xs.push_back(i);
      ys.push_back(i);
    }
    const auto f_tab = MonotoneFunction::tabulated(xs, ys);
    const auto seq = build_sequence(f_tab, sq, 8);
    CHECK(seq.exhausted);
    REQUIRE(seq.a.size() == 5);
    CHECK(seq.a[4] == 16.0);
  }

  CHECK_THROWS_AS(build_sequence(id, id, 2), std::invalid_argument);
}

TEST_CASE("majorant values telescope exactly") {
  const auto id = MonotoneFunction::power(1);
  const auto v = build_v(build_sequence(id, id, 12));
  REQUIRE(v.breakpoints.size() == 13);
  REQUIRE(v.values.size() == 13);
  REQUIRE(v.slopes.size() == 12);

  CHECK(v.values[0] == 0.0);
  CHECK(v.values[1] == 1.0);
  CHECK(v.slopes[0] == 1.0);
  for (std::size_t n = 1; n + 1 < v.breakpoints.size(); ++n) {
    CHECK(v.values[n + 1] ==
          v.values[n] + 1.0 / std::sqrt(static_cast<double>(n)));
  }

  // nonincreasing slopes, with the only tie allowed at the unit first slope
  CHECK(v.slopes[1] <= v.slopes[0]);
  for (std::size_t i = 1; i + 1 < v.slopes.size(); ++i)
    CHECK(v.slopes[i + 1] < v.slopes[i]);

  // unit spacing makes the tie exact here
  CHECK(v.slopes[1] == v.slopes[0]);

  CHECK(v.evaluate(3.0) == doctest::Approx(2.0 + 1.0 / std::sqrt(2.0)));
  for (std::size_t i = 0; i < v.breakpoints.size(); ++i)
    CHECK(v.evaluate(v.breakpoints[i]) == v.values[i]);

  // beyond the last breakpoint the final slope continues
  const double beyond = v.breakpoints.back() + 3.0;
  CHECK(v.evaluate(beyond) ==
        doctest::Approx(v.values.back() + 3.0 * v.slopes.back()));

  // unboundedness proxy
  const double m = static_cast<double>(v.breakpoints.size() - 1);
  CHECK(v.values.back() >= 2.0 * (std::sqrt(m + 1.0) - 1.0));

  SequenceBuild tiny;
  tiny.a = {0.0, 1.0};
  CHECK_THROWS_AS(build_v(tiny), std::invalid_argument);
}

TEST_CASE("partial sum floor fixtures") {
  CHECK(partial_sum_bound(1) == doctest::Approx(0.437740775137503).epsilon(1e-12));
  CHECK(partial_sum_bound(2) == doctest::Approx(0.613084256751571).epsilon(1e-12));
  CHECK(partial_sum_bound(10) == doctest::Approx(0.894819624634398).epsilon(1e-12));
  CHECK_THROWS_AS(partial_sum_bound(0), std::invalid_argument);
}

TEST_CASE("ratio floor for the quadratic pair") {
  const auto id = MonotoneFunction::power(1);
  const auto sq = MonotoneFunction::power(2);

  SUBCASE("minimum sits at the first interior grid point") {
    const auto v = build_v(build_sequence(id, sq, 5));
    const auto rd = ratio_delta(v, id, sq, integer_grid(1, 16));
    CHECK(rd.delta_hat == doctest::Approx(0.7387961250362586).epsilon(1e-14));
    CHECK(rd.argmin_x == 2.0);
    CHECK(rd.argmin_n == 2);
    CHECK(rd.bound == doctest::Approx(0.613084256751571).epsilon(1e-12));
    CHECK(rd.bound_holds);
    CHECK_FALSE(rd.truncated);

    // the floor family undercuts the ratio pointwise, not just at the min
    for (int x = 1; x <= 16; ++x) {
      const double fx = id.evaluate(x);
      std::size_t n = 0;
      while (n + 2 < v.breakpoints.size() && v.breakpoints[n + 1] <= fx) ++n;
      const double ratio = v.evaluate(fx) / v.evaluate(sq.evaluate(x));
      CHECK(ratio >= partial_sum_bound(static_cast<int>(std::max<std::size_t>(
                         n, 1))) -
                         1e-12);
    }
  }

  SUBCASE("deep grid stays above one half") {
    const auto v = build_v(build_sequence(id, sq, 7));
    std::vector<double> grid;
    for (double x = 16; x <= 65536; x *= 1.5) grid.push_back(x);
    const auto rd = ratio_delta(v, id, sq, grid);
    CHECK(rd.delta_hat > 0.5);
    CHECK(rd.bound_holds);
  }

  SUBCASE("equal functions give ratio one") {
    const auto v = build_v(build_sequence(id, id, 8));
    const auto rd = ratio_delta(v, id, id, integer_grid(1, 8));
    CHECK(rd.delta_hat == 1.0);
    CHECK(rd.bound < 1.0);
    CHECK(rd.bound_holds);
  }

  SUBCASE("grid points outside the built range are dropped") {
    const auto v = build_v(build_sequence(id, sq, 5));
    auto grid = integer_grid(1, 16);
    grid.push_back(1e6);
    const auto rd = ratio_delta(v, id, sq, grid);
    CHECK(rd.truncated);
    REQUIRE(rd.notes.size() == 1);
    CHECK(rd.delta_hat == doctest::Approx(0.7387961250362586));

    CHECK_THROWS_AS(ratio_delta(v, id, sq, {0.25, 0.5}),
                    std::invalid_argument);
  }
}

TEST_CASE("tabulated exponential pair exhausts its table") {
  std::vector<double> xs, ys;
  for (int i = 0; i <= 8192; ++i) {
    const double x = 16.0 * i / 8192.0;
    xs.push_back(x);
    ys.push_back(std::exp(x));
  }
  const auto g = MonotoneFunction::tabulated(xs, ys);
  const auto f = MonotoneFunction::power(1);

  const auto seq = build_sequence(f, g, 4);
  REQUIRE(seq.a.size() == 5);
  CHECK_FALSE(seq.exhausted);
  CHECK(seq.a[2] == doctest::Approx(std::exp(1.0)).epsilon(1e-6));
  CHECK(seq.a[3] == doctest::Approx(15.154262241479262).epsilon(1e-5));
  CHECK(seq.a[4] == doctest::Approx(3814279.1047602156).epsilon(1e-3));
  check_property_two(seq.a);
  check_property_one(seq, f, g);

  // asking for more breakpoints stops at the same prefix and flags it
  const auto longer = build_sequence(f, g, 8);
  CHECK(longer.exhausted);
  REQUIRE(longer.a.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(longer.a[i] == seq.a[i]);

  const auto v = build_v(longer);
  CHECK(v.exhausted);
  for (std::size_t n = 1; n + 1 < v.breakpoints.size(); ++n)
    CHECK(v.values[n + 1] ==
          v.values[n] + 1.0 / std::sqrt(static_cast<double>(n)));

  const auto rd = ratio_delta(v, f, g, integer_grid(1, 15));
  CHECK(rd.delta_hat == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(rd.argmin_x == 1.0);
  CHECK(rd.argmin_n == 1);
  CHECK(rd.bound_holds);
}

TEST_CASE("monotone function kinds invert") {
  const auto pw = MonotoneFunction::power(2.5);
  const auto ef = MonotoneFunction::exp_form(0.5, 2);
  const auto lf = MonotoneFunction::log_form(2, 3);
  std::vector<double> xs = {0, 1, 2, 4, 8}, ys = {0.5, 1, 3, 10, 40};
  const auto tb = MonotoneFunction::tabulated(xs, ys);

  for (double x : {0.25, 1.0, 3.0, 7.5}) {
    CHECK(pw.inverse(pw.evaluate(x)) == doctest::Approx(x).epsilon(1e-12));
    CHECK(ef.inverse(ef.evaluate(x)) == doctest::Approx(x).epsilon(1e-12));
    CHECK(lf.inverse(lf.evaluate(x)) == doctest::Approx(x).epsilon(1e-12));
    CHECK(tb.inverse(tb.evaluate(x)) == doctest::Approx(x).epsilon(1e-12));
  }
  CHECK(pw.domain_max() == std::numeric_limits<double>::infinity());
  CHECK(tb.domain_max() == 8.0);
  CHECK(tb.range_max() == 40.0);
  CHECK(tb.evaluate(3.0) == doctest::Approx(6.5));  // midpoint of (2,3)-(4,10)

  CHECK_THROWS_AS(tb.evaluate(9.0), std::domain_error);
  CHECK_THROWS_AS(tb.evaluate(-1.0), std::domain_error);
  CHECK_THROWS_AS(tb.inverse(0.25), std::domain_error);
  CHECK_THROWS_AS(tb.inverse(41.0), std::domain_error);
  CHECK_THROWS_AS(pw.inverse(-1.0), std::domain_error);

  CHECK_THROWS_AS(MonotoneFunction::power(0), std::invalid_argument);
  CHECK_THROWS_AS(MonotoneFunction::exp_form(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(MonotoneFunction::log_form(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(MonotoneFunction::tabulated({0, 1}, {1, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(MonotoneFunction::tabulated({1, 2}, {1, 2}),
                  std::invalid_argument);

  for (const auto& fn : {pw, ef, lf, tb}) {
    CHECK_FALSE(fn.describe().empty());
    const auto back = MonotoneFunction::from_json(fn.to_json());
    CHECK(back.kind() == fn.kind());
    for (double x : {0.5, 2.0, 6.0})
      CHECK(back.evaluate(x) == fn.evaluate(x));
  }
  CHECK_THROWS_AS(MonotoneFunction::from_json("{\"kind\":\"cubic\"}"),
                  ConfigError);
  CHECK_THROWS_AS(MonotoneFunction::from_json("not json"), ConfigError);
}

TEST_CASE("orlicz export inverts the majorant") {
  const auto id = MonotoneFunction::power(1);
  const auto v = build_v(build_sequence(id, id, 12));
  const auto psi = orlicz_from_v(v);
  CHECK(psi.family() == OrliczFamily::kPiecewiseAffineInverse);

  for (std::size_t i = 0; i < v.breakpoints.size(); ++i) {
    CHECK(psi.evaluate(v.values[i]) ==
          doctest::Approx(v.breakpoints[i]).epsilon(1e-12));
    CHECK(psi.inverse(v.breakpoints[i]) ==
          doctest::Approx(v.values[i]).epsilon(1e-12));
  }
  CHECK(psi.evaluate(0.0) == 0.0);
  CHECK(psi.evaluate(1.0) == doctest::Approx(1.0));

  // convexity of the inverse: psi(x)/x nondecreasing at the node images
  double prev = 0;
  for (std::size_t i = 1; i < v.values.size(); ++i) {
    const double ratio = psi.evaluate(v.values[i]) / v.values[i];
    CHECK(ratio >= prev - 1e-12);
    prev = ratio;
  }

  // the unit-spacing build ties its first two slopes; strictification
  // breaks the tie without disturbing the nodes beyond 1e-5
  CHECK(psi.evaluate(2.0) / 2.0 == doctest::Approx(1.0));
  const auto strict = orlicz_from_v(v, true);
  CHECK(strict.evaluate(2.0) / 2.0 > strict.evaluate(1.0) / 1.0);
  for (std::size_t i = 0; i < v.breakpoints.size(); ++i)
    CHECK(strict.inverse(v.breakpoints[i]) ==
          doctest::Approx(v.values[i]).epsilon(1e-5));

  SequenceBuild three;
  three.a = {0.0, 1.0, 2.0};
  CHECK_THROWS_AS(orlicz_from_v(build_v(three)), std::invalid_argument);
}

TEST_CASE("majorant JSON round trip") {
  const auto v = build_v(
      build_sequence(MonotoneFunction::power(1), MonotoneFunction::power(2), 5));
  const auto back = ConcaveMajorant::from_json(v.to_json());
  CHECK(back.breakpoints == v.breakpoints);
  CHECK(back.values == v.values);
  CHECK(back.slopes == v.slopes);
  CHECK(back.f_text == v.f_text);
  CHECK(back.g_text == v.g_text);
  CHECK(back.n_requested == 5);
  CHECK_FALSE(back.exhausted);

  auto tampered = v;
  tampered.slopes[2] = tampered.slopes[1] * 2;
  CHECK_THROWS_AS(ConcaveMajorant::from_json(tampered.to_json()), ConfigError);

  auto short_values = v;
  short_values.values.pop_back();
  CHECK_THROWS_AS(ConcaveMajorant::from_json(short_values.to_json()),
                  ConfigError);
  CHECK_THROWS_AS(ConcaveMajorant::from_json("[]"), ConfigError);
}

TEST_CASE("measured profile feeds the builder") {
  const auto phi = SymbolMap::lens_1d(0.5);
  const std::vector<cd> zeta = {cd(1, 0)};
  const auto r_grid = default_r_grid();

  std::vector<double> xs = {0.0}, ys = {1.0};
  for (int k = 1; k <= 5; ++k) {
    const double h = std::ldexp(1.0, -k);
    const auto mass =
        hardy_window_mass(phi, zeta, h, r_grid, 1 << 15, 7 + k);
    REQUIRE(mass.sup.estimate > 0);
    xs.push_back(1.0 / h);
    ys.push_back(1.0 / mass.sup.estimate);
  }
  const auto g = MonotoneFunction::tabulated(xs, ys);
  const auto f = MonotoneFunction::power(1);

  const auto seq = build_sequence(f, g, 6);
  CHECK(seq.exhausted);  // the window ladder only reaches h = 2^-5
  REQUIRE(seq.a.size() >= 4);
  const auto v = build_v(seq);
  const auto psi = orlicz_from_v(v);

  const auto rd = ratio_delta(v, f, g, integer_grid(1, 12));
  CHECK(rd.delta_hat == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rd.argmin_x == 1.0);
  CHECK(rd.bound_holds);

  // the exported psi witnesses the same floor through its own inverse
  for (int x = 1; x <= 6; ++x) {
    const double gx = g.evaluate(x);
    if (gx > v.breakpoints.back()) break;
    const double ratio = psi.inverse(x) / psi.inverse(gx);
    CHECK(ratio >= rd.delta_hat - 1e-9);
  }
}
