#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <vector>

#include "olab/ball.hpp"
#include "olab/carleson.hpp"
#include "olab/criteria.hpp"
#include "olab/errors.hpp"
#include "olab/orlicz.hpp"
#include "olab/symbols.hpp"

using namespace olab;

namespace {

using cd = std::complex<double>;

constexpr double kInf = std::numeric_limits<double>::infinity();

// every report must survive an audit from its evidence rows alone
void check_sealed(const CriterionReport& rep) {
  CHECK(recompute_verdict(rep) == rep.verdict);
}

CarlesonProfile volume_profile(const SymbolMap& phi, double alpha,
                               const std::vector<double>& h_grid,
                               std::size_t n, std::uint64_t seed) {
  return build_profile(phi, MeasureSpec::ball_weighted(phi.dim(), alpha),
                       h_grid, CenterStrategy{0, 0, 0}, n, seed);
}

// dyadic grid with half steps, from 2^-2a down to 2^-2b in 2^-1/2 ratios
std::vector<double> half_step_grid(int twice_from, int twice_to) {
  std::vector<double> grid;
  for (int k = twice_from; k <= twice_to; ++k)
    grid.push_back(std::pow(2.0, -0.5 * k));
  return grid;
}

std::size_t count_zero_rows(const CriterionReport& rep) {
  std::size_t z = 0;
  for (const auto& row : rep.evidence)
    if (row.rhs == -kInf) ++z;
  return z;
}

}  // namespace

TEST_CASE("power function keeps the window product flat: bounded, not vanishing") {
  const auto psi = OrliczFunction::power(2);
  const auto ident = SymbolMap::dilation(1, 1);
  const std::vector<double> h = {0.5, 0.25, 0.125, 0.0625, 0.03125};
  const auto prof = volume_profile(ident, 0, h, std::size_t{1} << 18, 20260817);

  auto big = psi_carleson_fit(prof, psi, 0, FitMode::kBigOh);
  check_sealed(big);
  CHECK(big.verdict == Verdict::kPass);
  // the bounding constant is the near-constant product area(h)/h^2 ~ 1/2
  CHECK(big.margin < 0.0);
  CHECK(big.margin > -1.5);

  auto little = psi_carleson_fit(prof, psi, 0, FitMode::kLittleOh);
  check_sealed(little);
  CHECK(little.verdict == Verdict::kFail);
  CHECK(little.margin > -0.05);
  CHECK(little.margin < 0.5);

  // the evidence grid carries one block per A value
  CHECK(big.evidence.size() == 5 * 5);
  CHECK(big.evidence.front().parameter == 1.0);
  CHECK(big.evidence.back().parameter == 16.0);

  // explicit exponent must match the measure; the natural one for alpha = 0
  // in dimension 1 is 2
  CHECK_THROWS_AS(psi_carleson_fit(prof, psi, 1.0, FitMode::kBigOh),
                  std::invalid_argument);
  auto pinned = psi_carleson_fit(prof, psi, 2.0, FitMode::kBigOh);
  CHECK(pinned.verdict == Verdict::kPass);
}

TEST_CASE("eventually-zero profile vanishes for every orlicz function") {
  const auto w = SymbolMap::constant({cd(0.9, 0)});
  const std::vector<double> h = {0.5,    0.25,    0.125,
                                 0.0625, 0.03125, 0.015625};
  const auto prof = volume_profile(w, 0, h, 2000, 5);

  for (const auto& psi :
       {OrliczFunction::power(2), OrliczFunction::exp_power(1, 1)}) {
    auto little = psi_carleson_fit(prof, psi, 0, FitMode::kLittleOh);
    check_sealed(little);
    CHECK(little.verdict == Verdict::kPass);
    CHECK(little.margin == -kInf);

    auto big = psi_carleson_fit(prof, psi, 0, FitMode::kBigOh);
    check_sealed(big);
    CHECK(big.verdict == Verdict::kPass);

    // three trailing windows saw nothing; each A block records them
    CHECK(count_zero_rows(little) == 3 * 5);
  }

  // round trip keeps the zero markers and the audit intact
  const auto little =
      psi_carleson_fit(prof, OrliczFunction::exp_power(1, 1), 0,
                       FitMode::kLittleOh);
  const auto parsed = CriterionReport::from_json(little.to_json());
  CHECK(parsed.verdict == Verdict::kPass);
  CHECK(parsed.evidence.size() == little.evidence.size());
  CHECK(count_zero_rows(parsed) == 3 * 5);
  CHECK(recompute_verdict(parsed) == Verdict::kPass);
}

TEST_CASE("lens against the exponential function: bounded but the product persists") {
  const auto psi = OrliczFunction::exp_power(1, 1);
  const auto lens = SymbolMap::lens_1d(0.5);
  const auto prof =
      volume_profile(lens, 0, half_step_grid(2, 6), std::size_t{1} << 18, 31);

  auto little = psi_carleson_fit(prof, psi, 0, FitMode::kLittleOh);
  check_sealed(little);
  CHECK(little.verdict == Verdict::kFail);
  // the worst A blows the product up like h^(4-2A)
  CHECK(little.margin > 5.0);

  auto big = psi_carleson_fit(prof, psi, 0, FitMode::kBigOh);
  check_sealed(big);
  CHECK(big.verdict == Verdict::kPass);
}

TEST_CASE("boundary ratio with weighted exponents") {
  const auto expo = OrliczFunction::exp_power(1, 1);
  const auto pw = OrliczFunction::power(2);

  // fixed image: the numerator freezes while the denominator grows, but the
  // tail is still above the threshold, so the extrapolated limit decides
  const auto c = boundary_ratio_alpha(
      expo, SymbolMap::constant({cd(0.3, 0.4)}), 1, 0.0, {}, 64, 3);
  check_sealed(c);
  CHECK(c.verdict == Verdict::kPass);
  CHECK(c.evidence.back().lhs > 0.01);
  CHECK(c.margin < 0.1);

  const auto ident = boundary_ratio_alpha(expo, SymbolMap::dilation(1, 2), 2,
                                          0.0, {}, 64, 3);
  check_sealed(ident);
  CHECK(ident.verdict == Verdict::kFail);
  CHECK(ident.margin == doctest::Approx(1.0));

  // the lens ratio plateaus at the lens exponent for every weight and for
  // the boundary measure
  for (double alpha : {0.0, 1.0, kHardyAlpha}) {
    const auto r = boundary_ratio_alpha(expo, SymbolMap::lens_1d(0.5), 1,
                                        alpha, {}, 128, 7);
    check_sealed(r);
    CHECK(r.verdict == Verdict::kFail);
    CHECK(r.margin == doctest::Approx(0.5).epsilon(0.04));
  }

  // a power function sends the same lens ratio to zero
  const auto p =
      boundary_ratio_alpha(pw, SymbolMap::lens_1d(0.5), 1, 0.0, {}, 64, 3);
  check_sealed(p);
  CHECK(p.verdict == Verdict::kPass);
  CHECK(p.evidence.back().lhs < 0.01);

  CHECK_THROWS_AS(
      boundary_ratio_alpha(expo, SymbolMap::lens_1d(0.5), 2, 0.0, {}, 64, 3),
      std::invalid_argument);
  CHECK_THROWS_AS(
      boundary_ratio_alpha(expo, SymbolMap::lens_1d(0.5), 1, -2.0, {}, 64, 3),
      std::invalid_argument);
}

TEST_CASE("simplified ratio cross-checks the weighted family") {
  const auto sq = OrliczFunction::exp_power(1, 2);
  const auto lens = SymbolMap::lens_1d(0.5);

  const auto rep = boundary_ratio_simplified(sq, lens, {}, 128, 7);
  check_sealed(rep);
  CHECK(rep.verdict == Verdict::kFail);
  CHECK(rep.margin == doctest::Approx(std::sqrt(0.5)).epsilon(0.03));
  REQUIRE(rep.consistency.size() == 3);
  for (const auto& row : rep.consistency) CHECK(row.status == "holds");

  const auto cst =
      boundary_ratio_simplified(sq, SymbolMap::constant({cd(0.5, 0)}), {}, 64, 3);
  check_sealed(cst);
  CHECK(cst.verdict == Verdict::kPass);
  for (const auto& row : cst.consistency) CHECK(row.status == "holds");

  // without a square-growth certificate the shortcut is heuristic: the
  // comparisons are skipped, not silently reconciled
  const auto heur =
      boundary_ratio_simplified(OrliczFunction::power(2), lens, {}, 64, 3);
  check_sealed(heur);
  REQUIRE(heur.consistency.size() == 3);
  for (const auto& row : heur.consistency)
    CHECK(row.status == "not_applicable");
  CHECK(!heur.notes.empty());
}

TEST_CASE("classical angular ratio") {
  const auto ident = classical_angular_ratio(SymbolMap::dilation(1, 2), {}, 64, 3);
  check_sealed(ident);
  CHECK(ident.verdict == Verdict::kFail);
  CHECK(ident.margin == doctest::Approx(1.0));

  const auto dil = classical_angular_ratio(SymbolMap::dilation(0.5, 1), {}, 64, 3);
  check_sealed(dil);
  CHECK(dil.verdict == Verdict::kPass);
  CHECK(dil.evidence.back().lhs < 1e-4);

  // the diagonal maximum sits on the second axis; the coordinate probes hit it
  const auto diag = classical_angular_ratio(
      SymbolMap::diagonal_linear({cd(0.6, 0), cd(0, 0.8)}), {}, 64, 3);
  check_sealed(diag);
  CHECK(diag.verdict == Verdict::kPass);

  const auto lens = classical_angular_ratio(SymbolMap::lens_1d(0.5), {}, 64, 3);
  check_sealed(lens);
  CHECK(lens.verdict == Verdict::kPass);
  CHECK(lens.evidence.back().lhs == doctest::Approx(std::pow(2.0, -10)));
}

TEST_CASE("sup norm verdict") {
  const auto cst = h_infty_compact(SymbolMap::constant({cd(0.3, 0)}), 1024, 3);
  check_sealed(cst);
  CHECK(cst.verdict == Verdict::kPass);
  CHECK(cst.margin == doctest::Approx(0.7).epsilon(1e-4));
  REQUIRE(!cst.evidence.empty());
  CHECK(cst.evidence.front().parameter == 0.0);

  const auto near = h_infty_compact(SymbolMap::dilation(0.99, 1), 1024, 3);
  check_sealed(near);
  CHECK(near.verdict == Verdict::kPass);
  CHECK(near.margin == doctest::Approx(0.01).epsilon(1e-3));

  const auto lens = h_infty_compact(SymbolMap::lens_1d(0.5), 1024, 3);
  check_sealed(lens);
  CHECK(lens.verdict == Verdict::kFail);
  CHECK(lens.margin < 0.0);

  // a radially restricted lens has no closed form; the sampled bound decides
  const auto held =
      h_infty_compact(SymbolMap::lens_1d(0.5).radial_restriction(0.9), 4096, 3);
  check_sealed(held);
  CHECK(held.verdict == Verdict::kPass);
  CHECK(!held.notes.empty());
  for (const auto& row : held.evidence) CHECK(row.parameter == 1.0);
}

TEST_CASE("lens exponent regression") {
  const auto hg = half_step_grid(2, 6);

  // equal-hits budget: the pulled-back window shrinks like h^4, so the
  // sample counts grow by the same factor to keep every cell at ~250 hits
  const std::vector<std::size_t> vol_budget = {
      std::size_t{1} << 13, std::size_t{1} << 15, std::size_t{1} << 17,
      std::size_t{1} << 19, std::size_t{1} << 21};
  const auto vol = lens_exponent_check(0.5, MeasureSpec::ball_weighted(1, 0),
                                       hg, vol_budget, 11);
  check_sealed(vol);
  CHECK(vol.verdict == Verdict::kPass);
  CHECK(std::abs(vol.margin - 4.0) < 0.2);
  for (const auto& row : vol.evidence) CHECK(row.rhs == 4.0);
  CHECK(vol.inputs.find("\"slope\"") != std::string::npos);

  const std::vector<std::size_t> bdry_budget = {
      std::size_t{1} << 12, std::size_t{1} << 13, std::size_t{1} << 14,
      std::size_t{1} << 15, std::size_t{1} << 16};
  const auto bdry =
      lens_exponent_check(0.5, MeasureSpec::sphere(1), hg, bdry_budget, 13);
  check_sealed(bdry);
  CHECK(bdry.verdict == Verdict::kPass);
  CHECK(std::abs(bdry.margin - 2.0) < 0.2);

  // beta = 1 degenerates to the identity; the rate is the full exponent 2+alpha
  const auto ident = lens_exponent_check(1.0, MeasureSpec::ball_weighted(1, 1),
                                         hg, {std::size_t{1} << 17}, 17);
  check_sealed(ident);
  CHECK(ident.verdict == Verdict::kPass);
  CHECK(std::abs(ident.margin - 3.0) < 0.5);

  // windows too small for the budget: every cell is dropped, nothing decides
  const auto inc =
      lens_exponent_check(0.5, MeasureSpec::ball_weighted(1, 0),
                          {0.015625, 0.0078125}, {1000}, 19);
  check_sealed(inc);
  CHECK(inc.verdict == Verdict::kInconclusive);
  CHECK(inc.evidence.empty());
  CHECK(!inc.notes.empty());

  CHECK_THROWS_AS(lens_exponent_check(0.0, MeasureSpec::ball_weighted(1, 0),
                                      hg, {2000}, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(lens_exponent_check(1.2, MeasureSpec::ball_weighted(1, 0),
                                      hg, {2000}, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(lens_exponent_check(0.5, MeasureSpec::ball_weighted(2, 0),
                                      hg, {2000}, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(lens_exponent_check(0.5, MeasureSpec::ball_weighted(1, 0),
                                      hg, {2000, 2000}, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(lens_exponent_check(0.5, MeasureSpec::ball_weighted(1, 0),
                                      {0.125, 0.25}, {2000}, 1),
                  std::invalid_argument);
}

TEST_CASE("scale sufficiency") {
  const auto grow = delta2sharp_sufficiency(OrliczFunction::exp_power(1, 1),
                                            0.5, 1);
  check_sealed(grow);
  CHECK(grow.verdict == Verdict::kPass);
  CHECK(grow.margin >= 0.0);
  REQUIRE(grow.consistency.size() == 1);
  CHECK(grow.consistency.front().status == "holds");

  const auto fail =
      delta2sharp_sufficiency(OrliczFunction::power(2), 0.25, 1);
  check_sealed(fail);
  CHECK(fail.verdict == Verdict::kFail);
  CHECK(fail.margin < 0.0);
  CHECK(fail.consistency.front().status == "not_applicable");

  // exponent at most 1 is settled by C = 1
  const auto triv = delta2sharp_sufficiency(OrliczFunction::power(2), 1.0, 2);
  check_sealed(triv);
  CHECK(triv.verdict == Verdict::kPass);
  CHECK(triv.margin >= 0.0);

  const auto sq =
      delta2sharp_sufficiency(OrliczFunction::exp_power(1, 2), 0.5, 1);
  check_sealed(sq);
  CHECK(sq.verdict == Verdict::kPass);
  CHECK(sq.consistency.front().status == "holds");

  const auto custom = delta2sharp_sufficiency(
      OrliczFunction::power(3), 1.0, 1, {1.5, 3.0}, {8.0, 64.0, 512.0});
  check_sealed(custom);
  CHECK(custom.evidence.size() == 6);
  CHECK(custom.evidence.front().parameter == 1.5);
  CHECK(custom.evidence.back().parameter == 3.0);

  CHECK_THROWS_AS(
      delta2sharp_sufficiency(OrliczFunction::power(2), 0.0, 1),
      std::invalid_argument);
  CHECK_THROWS_AS(
      delta2sharp_sufficiency(OrliczFunction::power(2), 1.0, 0),
      std::invalid_argument);
  CHECK_THROWS_AS(delta2sharp_sufficiency(OrliczFunction::power(2), 1.0, 1,
                                          {0.5}, {8.0}),
                  std::invalid_argument);
}

TEST_CASE("aperture prediction") {
  const auto certs_reg = certify_all(OrliczFunction::power(2));
  const auto certs_sharp = certify_all(OrliczFunction::exp_power(1, 1));

  // wide lens in dimension 2, regular growth class: aperture under threshold
  const auto wide = SymbolMap::embedded_lens(beta_from_aperture(1.2), 2);
  const auto pass = koranyi_aperture_verdict(wide, certs_reg);
  check_sealed(pass);
  CHECK(pass.verdict == Verdict::kPass);
  CHECK(pass.margin == doctest::Approx(std::sqrt(2.0) - 1.2));
  REQUIRE(!pass.consistency.empty());
  CHECK(pass.consistency.front().status == "holds");

  // dimension 1 has no finite threshold
  const auto dim1 = koranyi_aperture_verdict(SymbolMap::lens_1d(0.5), certs_reg);
  check_sealed(dim1);
  CHECK(dim1.verdict == Verdict::kPass);
  CHECK(std::isinf(dim1.margin));

  // square-growth class: counterexample regime regardless of aperture
  const auto sharp =
      koranyi_aperture_verdict(SymbolMap::lens_1d(0.5), certs_sharp);
  check_sealed(sharp);
  CHECK(sharp.verdict == Verdict::kFail);

  // aperture beyond the threshold: the theorem is silent
  const auto narrow = SymbolMap::embedded_lens(beta_from_aperture(1.5), 2);
  const auto silent = koranyi_aperture_verdict(narrow, certs_reg);
  check_sealed(silent);
  CHECK(silent.verdict == Verdict::kInconclusive);

  // borderline aperture: bounded, compactness undecided
  const auto edge = SymbolMap::embedded_lens(
      beta_from_aperture(koranyi_aperture_bound(2)), 2);
  const auto border = koranyi_aperture_verdict(edge, certs_reg);
  check_sealed(border);
  CHECK(border.verdict == Verdict::kInconclusive);
  CHECK(std::abs(border.margin) < 1e-9);

  // no containment knowledge outside the lens families
  const auto cst = koranyi_aperture_verdict(
      SymbolMap::constant({cd(0.5, 0)}), certs_reg);
  check_sealed(cst);
  CHECK(cst.verdict == Verdict::kInconclusive);
  CHECK(cst.evidence.empty());
  CHECK(!cst.notes.empty());

  // a radially restricted lens never reaches the boundary
  const auto held = koranyi_aperture_verdict(
      SymbolMap::lens_1d(0.5).radial_restriction(0.9), certs_sharp);
  check_sealed(held);
  CHECK(held.verdict == Verdict::kInconclusive);

  // no certificates at all: the class is undecided
  const auto bare = koranyi_aperture_verdict(SymbolMap::lens_1d(0.5), {});
  check_sealed(bare);
  CHECK(bare.verdict == Verdict::kInconclusive);
  REQUIRE(bare.evidence.size() == 1);
  CHECK(bare.evidence.front().parameter == 2.0);
}

TEST_CASE("cross checks between criteria") {
  const auto psi = OrliczFunction::power(2);

  // a compact symbol: the sup-norm shortcut agrees with everything present
  const auto dil = SymbolMap::dilation(0.5, 1);
  std::vector<CriterionReport> agree;
  agree.push_back(h_infty_compact(dil, 1024, 3));
  agree.push_back(classical_angular_ratio(dil, {}, 64, 3));
  agree.push_back(boundary_ratio_alpha(psi, dil, 1, 0.0, {}, 64, 3));
  const auto rows = cross_checks(agree);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].name == "h_infty_implies_compactness");
  CHECK(rows[0].status == "holds");
  CHECK(rows[1].status == "not_applicable");
  CHECK(rows[2].status == "not_applicable");

  // mixing reports from different symbols is exactly how a violation looks
  std::vector<CriterionReport> broken;
  broken.push_back(h_infty_compact(SymbolMap::constant({cd(0.3, 0)}), 1024, 3));
  broken.push_back(classical_angular_ratio(SymbolMap::dilation(1, 2), {}, 64, 3));
  CHECK(cross_checks(broken)[0].status == "violated");

  // vanishing profile forces the boundary ratio: both Pass on the same symbol
  const auto w = SymbolMap::constant({cd(0.9, 0)});
  const auto prof = volume_profile(
      w, 0, {0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625}, 2000, 5);
  std::vector<CriterionReport> chain;
  chain.push_back(psi_carleson_fit(prof, psi, 0, FitMode::kLittleOh));
  chain.push_back(boundary_ratio_alpha(psi, w, 1, 0.0, {}, 64, 3));
  const auto chain_rows = cross_checks(chain);
  CHECK(chain_rows[1].name == "little_oh_implies_boundary_ratio");
  CHECK(chain_rows[1].status == "holds");

  // aperture prediction against the measured ratio, matching and not
  const auto certs_sharp = certify_all(OrliczFunction::exp_power(1, 1));
  const auto lens = SymbolMap::lens_1d(0.5);
  std::vector<CriterionReport> match;
  match.push_back(koranyi_aperture_verdict(lens, certs_sharp));
  match.push_back(boundary_ratio_alpha(OrliczFunction::exp_power(1, 1), lens,
                                       1, 0.0, {}, 128, 7));
  CHECK(cross_checks(match)[2].status == "holds");

  std::vector<CriterionReport> clash;
  clash.push_back(koranyi_aperture_verdict(lens, certs_sharp));
  clash.push_back(boundary_ratio_alpha(psi, lens, 1, 0.0, {}, 64, 3));
  CHECK(cross_checks(clash)[2].status == "violated");
}

TEST_CASE("report round trip, CSV, and tamper detection") {
  const auto rep = classical_angular_ratio(SymbolMap::dilation(1, 2), {}, 64, 3);
  CHECK(rep.verdict == Verdict::kFail);

  const auto parsed = CriterionReport::from_json(rep.to_json());
  CHECK(parsed.criterion == rep.criterion);
  CHECK(parsed.verdict == rep.verdict);
  CHECK(parsed.margin == rep.margin);
  CHECK(parsed.inputs == rep.inputs);
  REQUIRE(parsed.evidence.size() == rep.evidence.size());
  for (std::size_t i = 0; i < rep.evidence.size(); ++i) {
    CHECK(parsed.evidence[i].parameter == rep.evidence[i].parameter);
    CHECK(parsed.evidence[i].lhs == rep.evidence[i].lhs);
    CHECK(parsed.evidence[i].rhs == rep.evidence[i].rhs);
  }
  CHECK(recompute_verdict(parsed) == Verdict::kFail);

  // an edited report no longer re-derives its stored verdict
  auto tampered = parsed;
  tampered.evidence.resize(3);
  CHECK(recompute_verdict(tampered) == Verdict::kInconclusive);
  CHECK(recompute_verdict(tampered) != tampered.verdict);

  std::ostringstream csv;
  rep.write_csv(csv);
  const std::string text = csv.str();
  CHECK(text.rfind("parameter,lhs,rhs\n", 0) == 0);
  std::size_t lines = 0;
  for (char ch : text)
    if (ch == '\n') ++lines;
  CHECK(lines == rep.evidence.size() + 1);

  CHECK_THROWS_AS(CriterionReport::from_json("{"), ConfigError);
  CHECK_THROWS_AS(CriterionReport::from_json("{}"), ConfigError);
  CHECK_THROWS_AS(
      CriterionReport::from_json(
          R"({"criterion":"no_such","verdict":"Pass","margin":0,"evidence":[]})"),
      ConfigError);
  CHECK_THROWS_AS(
      CriterionReport::from_json(
          R"({"criterion":"h_infty_compact","verdict":"Pass","margin":0,"evidence":[[1,2]]})"),
      ConfigError);
}

TEST_CASE("default radius ladder") {
  const auto grid = default_ratio_r_grid();
  REQUIRE(grid.size() == 20);
  CHECK(grid.front() == 0.5);
  CHECK(grid.back() == 1.0 - std::ldexp(1.0, -20));
  for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
}
