#include "olab/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "json.hpp"
#include "olab/errors.hpp"
#include "olab/numfmt.hpp"
#include "olab/rng.hpp"

namespace olab {

namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Decision constants. Evaluators and recompute_verdict share these through
// the rule functions below, so a report's verdict stays reproducible from
// its evidence rows.
constexpr double kRatioTheta = 0.01;
constexpr double kBigOhSlopeSlack = 0.1;
constexpr double kLittleOhSlope = -0.05;
constexpr double kLensSlopeSlack = 0.15;
constexpr double kRatioDecaySlope = -0.1;
constexpr double kSupThreshold = 1.0 - 1e-6;
constexpr double kLogSlack = 1e-6;
constexpr double kApertureTol = 1e-12;
constexpr std::size_t kMinHits = 25;
constexpr std::size_t kMinRatioRows = 5;
constexpr std::size_t kMinFitRows = 4;
constexpr std::size_t kZeroTail = 3;
constexpr std::size_t kRatioFitRows = 8;
constexpr std::size_t kPlateauRows = 5;

constexpr std::uint64_t kRatioStream = 51;

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

struct LineFit {
  double slope = 0;
  double intercept = 0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  LineFit f;
  const std::size_t n = x.size();
  if (n == 0) return f;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0) {
    f.intercept = my;
    return f;
  }
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  return f;
}

// Rows sharing a parameter value, in first-seen order.
std::vector<std::vector<const EvidenceRow*>> group_rows(
    const std::vector<EvidenceRow>& rows) {
  std::vector<double> keys;
  std::vector<std::vector<const EvidenceRow*>> groups;
  for (const auto& row : rows) {
    std::size_t g = keys.size();
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (keys[i] == row.parameter) {
        g = i;
        break;
      }
    }
    if (g == keys.size()) {
      keys.push_back(row.parameter);
      groups.emplace_back();
    }
    groups[g].push_back(&row);
  }
  return groups;
}

Verdict rule_psi_carleson(const std::vector<EvidenceRow>& rows, FitMode mode,
                          double* margin) {
  *margin = 0;
  const auto groups = group_rows(rows);
  if (groups.empty()) return Verdict::kInconclusive;

  bool any_pass = false, any_fail = false, any_undecided = false;
  double best_bound = kInf;     // big-oh: constant of the best passing A
  double worst_slope = -kInf;   // little-oh: most adverse tail slope
  double flattest = kInf;       // big-oh fail diagnostics

  for (const auto& block : groups) {
    std::size_t zero_tail = 0;
    for (auto it = block.rbegin(); it != block.rend(); ++it) {
      if ((*it)->rhs == -kInf) ++zero_tail;
      else break;
    }
    std::vector<const EvidenceRow*> finite;
    for (const auto* row : block)
      if (std::isfinite(row->rhs) && row->lhs > 0 && row->lhs < 1)
        finite.push_back(row);

    const bool vanished = zero_tail >= kZeroTail;
    if (vanished) {
      any_pass = true;
      double bound = -kInf;
      for (const auto* row : finite) bound = std::max(bound, row->rhs);
      best_bound = std::min(best_bound, bound);
      continue;
    }
    if (finite.size() < kMinFitRows) {
      any_undecided = true;
      continue;
    }

    std::vector<const EvidenceRow*> span = finite;
    if (mode == FitMode::kLittleOh) {
      double h_min = kInf;
      for (const auto* row : finite) h_min = std::min(h_min, row->lhs);
      std::vector<const EvidenceRow*> tail;
      for (const auto* row : finite)
        if (row->lhs <= 10 * h_min) tail.push_back(row);
      if (tail.size() < 3) {
        tail.assign(finite.end() - static_cast<std::ptrdiff_t>(kMinFitRows),
                    finite.end());
      }
      span = std::move(tail);
    }
    std::vector<double> x, y;
    x.reserve(span.size());
    y.reserve(span.size());
    for (const auto* row : span) {
      x.push_back(-std::log(row->lhs));
      y.push_back(row->rhs);
    }
    const double slope = fit_line(x, y).slope;

    if (mode == FitMode::kBigOh) {
      flattest = std::min(flattest, slope);
      if (slope <= kBigOhSlopeSlack) {
        any_pass = true;
        double bound = -kInf;
        for (const auto* row : finite) bound = std::max(bound, row->rhs);
        best_bound = std::min(best_bound, bound);
      } else {
        any_fail = true;
      }
    } else {
      worst_slope = std::max(worst_slope, slope);
      if (slope <= kLittleOhSlope) any_pass = true;
      else any_fail = true;
    }
  }

  if (mode == FitMode::kBigOh) {
    if (any_pass) {
      *margin = best_bound;
      return Verdict::kPass;
    }
    if (any_undecided) return Verdict::kInconclusive;
    *margin = flattest;
    return Verdict::kFail;
  }
  *margin = worst_slope == -kInf ? -kInf : worst_slope;
  if (any_fail) return Verdict::kFail;
  if (any_undecided) return Verdict::kInconclusive;
  return Verdict::kPass;
}

Verdict rule_ratio(const std::vector<EvidenceRow>& rows, double* margin) {
  *margin = 0;
  std::vector<const EvidenceRow*> usable;
  for (const auto& row : rows)
    if (std::isfinite(row.lhs) && row.lhs > 0 && row.parameter > 0 &&
        row.parameter < 1)
      usable.push_back(&row);
  const std::size_t n = usable.size();
  if (n == 0) return Verdict::kInconclusive;

  const std::size_t np = std::min(kPlateauRows, n);
  double plateau = 0;
  for (std::size_t i = n - np; i < n; ++i) plateau += usable[i]->lhs;
  plateau /= static_cast<double>(np);
  *margin = plateau;
  if (n < kMinRatioRows) return Verdict::kInconclusive;

  const double theta = usable.back()->rhs;
  if (usable.back()->lhs < theta) return Verdict::kPass;

  // A ratio with limit zero decays at least like a power of the boundary
  // depth L = ln(1/(1-r)), while a plateau freezes ln R. A clearly negative
  // tail slope of ln R against ln L therefore separates the two long before
  // the values themselves cross the threshold.
  const std::size_t nf = std::min(kRatioFitRows, n);
  std::vector<double> x, y;
  for (std::size_t i = n - nf; i < n; ++i) {
    x.push_back(std::log(std::log(1.0 / (1.0 - usable[i]->parameter))));
    y.push_back(std::log(usable[i]->lhs));
  }
  const bool decreased = usable[n - nf]->lhs > usable.back()->lhs;
  if (decreased && fit_line(x, y).slope <= kRatioDecaySlope)
    return Verdict::kPass;
  if (plateau > theta) return Verdict::kFail;
  return Verdict::kInconclusive;
}

Verdict rule_sup(const std::vector<EvidenceRow>& rows, double* margin) {
  *margin = 0;
  const EvidenceRow* pick = nullptr;
  for (const auto& row : rows)
    if (row.parameter == 0) pick = &row;
  if (!pick)
    for (const auto& row : rows)
      if (row.parameter == 1) pick = &row;
  if (!pick) return Verdict::kInconclusive;
  *margin = pick->rhs - pick->lhs;
  return pick->lhs < pick->rhs ? Verdict::kPass : Verdict::kFail;
}

Verdict rule_lens(const std::vector<EvidenceRow>& rows, double* margin) {
  *margin = 0;
  std::vector<double> x, y;
  double target = 0;
  for (const auto& row : rows) {
    if (!(row.lhs > 0) || !(row.parameter > 0)) continue;
    x.push_back(std::log(row.parameter));
    y.push_back(std::log(row.lhs));
    target = row.rhs;
  }
  if (x.size() < kMinFitRows) return Verdict::kInconclusive;
  const double slope = fit_line(x, y).slope;
  *margin = slope;
  return slope <= target + kLensSlopeSlack ? Verdict::kPass : Verdict::kFail;
}

Verdict rule_sufficiency(const std::vector<EvidenceRow>& rows,
                         double* margin) {
  *margin = 0;
  const auto groups = group_rows(rows);
  if (groups.empty()) return Verdict::kInconclusive;
  double best = -kInf;
  for (const auto& block : groups) {
    double worst = kInf;
    for (const auto* row : block) worst = std::min(worst, row->rhs);
    best = std::max(best, worst);
  }
  *margin = best;
  return best >= -kLogSlack ? Verdict::kPass : Verdict::kFail;
}

Verdict rule_koranyi(const std::vector<EvidenceRow>& rows, double* margin) {
  *margin = 0;
  if (rows.empty()) return Verdict::kInconclusive;
  const EvidenceRow& row = rows.front();
  const int code = static_cast<int>(row.parameter);
  *margin = row.rhs - row.lhs;
  if (code == 1) return Verdict::kFail;
  if (code != 0) return Verdict::kInconclusive;
  if (row.lhs < row.rhs - kApertureTol) return Verdict::kPass;
  return Verdict::kInconclusive;
}

Verdict apply_rule(CriterionId id, const std::vector<EvidenceRow>& rows,
                   double* margin) {
  switch (id) {
    case CriterionId::kPsiCarlesonBigOh:
      return rule_psi_carleson(rows, FitMode::kBigOh, margin);
    case CriterionId::kPsiCarlesonLittleOh:
      return rule_psi_carleson(rows, FitMode::kLittleOh, margin);
    case CriterionId::kBoundaryRatioAlpha:
    case CriterionId::kBoundaryRatioSimplified:
    case CriterionId::kClassicalAngularRatio:
      return rule_ratio(rows, margin);
    case CriterionId::kHInftyCompact:
      return rule_sup(rows, margin);
    case CriterionId::kLensLowerBoundExponent:
      return rule_lens(rows, margin);
    case CriterionId::kDelta2SharpSufficiency:
      return rule_sufficiency(rows, margin);
    case CriterionId::kKoranyiApertureVerdict:
      return rule_koranyi(rows, margin);
  }
  throw std::invalid_argument("unknown criterion id");
}

void seal(CriterionReport& rep) {
  rep.verdict = apply_rule(rep.criterion, rep.evidence, &rep.margin);
}

json num_or_string(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

double num_from(const json& j) {
  if (j.is_string()) return parse_double(j.get<std::string>());
  return j.get<double>();
}

// Max of |phi| over the sphere |z| = r: every coordinate axis plus random
// directions, so diagonal-type maxima are hit exactly.
double max_image_norm(const SymbolMap& phi, double r, std::size_t samples,
                      const CounterRng& rng) {
  const int N = phi.dim();
  double m = 0;
  BallPoint z;
  z.z.assign(static_cast<std::size_t>(N), {0, 0});
  z.norm = r;
  for (int d = 0; d < N; ++d) {
    z.z[static_cast<std::size_t>(d)] = {r, 0};
    m = std::max(m, phi.apply(z).norm);
    z.z[static_cast<std::size_t>(d)] = {0, 0};
  }
  BallPoint dir;
  for (std::size_t s = 0; s < samples; ++s) {
    sphere_point_into(rng, s, N, dir);
    for (int d = 0; d < N; ++d)
      z.z[static_cast<std::size_t>(d)] = r * dir.z[static_cast<std::size_t>(d)];
    z.norm = r;
    m = std::max(m, phi.apply(z).norm);
  }
  return m;
}

void check_ratio_grid(const std::vector<double>& r_grid) {
  require(!r_grid.empty(), "radius grid must not be empty");
  double prev = 0;
  for (double r : r_grid) {
    require(r > prev && r < 1, "radius grid must increase within (0,1)");
    prev = r;
  }
}

// Shared body of the three ratio criteria. psi == nullptr selects the
// classical ratio (1-r)/(1-max|phi|).
void ratio_series(CriterionReport& rep, const SymbolMap& phi,
                  const OrliczFunction* psi, double exponent,
                  const std::vector<double>& r_grid,
                  std::size_t samples_per_r, std::uint64_t seed) {
  std::size_t saturated = 0;
  for (std::size_t ri = 0; ri < r_grid.size(); ++ri) {
    const double r = r_grid[ri];
    const CounterRng rng(seed, substream(kRatioStream, ri));
    const double m = max_image_norm(phi, r, samples_per_r, rng);
    double ratio = 0;
    if (psi == nullptr) {
      ratio = (1 - r) / (1 - m);
    } else {
      const double y_num = std::pow(1 - m, -exponent);
      const double y_den = std::pow(1 - r, -exponent);
      if (!std::isfinite(y_num) || !std::isfinite(y_den)) {
        ++saturated;
        continue;
      }
      double num = 0, den = 0;
      try {
        num = psi->inverse(y_num);
        den = psi->inverse(y_den);
      } catch (const std::domain_error&) {
        ++saturated;
        continue;
      }
      if (!std::isfinite(num) || !(den > 0)) {
        ++saturated;
        continue;
      }
      ratio = num / den;
    }
    rep.evidence.push_back({r, ratio, kRatioTheta});
  }
  if (saturated > 0)
    rep.notes.push_back(std::to_string(saturated) +
                        " radii dropped: inverse saturated or overflowed");
}

json measure_echo(const MeasureSpec& measure) {
  json j;
  j["kind"] = measure.kind == MeasureKind::kSphereSigma ? "hardy" : "bergman";
  j["N"] = measure.N;
  if (measure.kind == MeasureKind::kBallWeighted) j["alpha"] = measure.alpha;
  return j;
}

const CriterionReport* find_report(const std::vector<CriterionReport>& reports,
                                   CriterionId id) {
  for (const auto& rep : reports)
    if (rep.criterion == id) return &rep;
  return nullptr;
}

}  // namespace

const char* to_string(CriterionId id) {
  switch (id) {
    case CriterionId::kPsiCarlesonBigOh: return "psi_carleson_big_oh";
    case CriterionId::kPsiCarlesonLittleOh: return "psi_carleson_little_oh";
    case CriterionId::kBoundaryRatioAlpha: return "boundary_ratio_alpha";
    case CriterionId::kBoundaryRatioSimplified:
      return "boundary_ratio_simplified";
    case CriterionId::kClassicalAngularRatio: return "classical_angular_ratio";
    case CriterionId::kHInftyCompact: return "h_infty_compact";
    case CriterionId::kLensLowerBoundExponent:
      return "lens_lower_bound_exponent";
    case CriterionId::kDelta2SharpSufficiency:
      return "delta2_sharp_sufficiency";
    case CriterionId::kKoranyiApertureVerdict:
      return "koranyi_aperture_verdict";
  }
  return "unknown";
}

CriterionId criterion_from_string(const std::string& s) {
  for (CriterionId id :
       {CriterionId::kPsiCarlesonBigOh, CriterionId::kPsiCarlesonLittleOh,
        CriterionId::kBoundaryRatioAlpha, CriterionId::kBoundaryRatioSimplified,
        CriterionId::kClassicalAngularRatio, CriterionId::kHInftyCompact,
        CriterionId::kLensLowerBoundExponent,
        CriterionId::kDelta2SharpSufficiency,
        CriterionId::kKoranyiApertureVerdict}) {
    if (s == to_string(id)) return id;
  }
  throw std::invalid_argument("unknown criterion: " + s);
}

std::string CriterionReport::to_json() const {
  json j;
  j["criterion"] = olab::to_string(criterion);
  j["verdict"] = olab::to_string(verdict);
  j["margin"] = num_or_string(margin);
  j["inputs"] = inputs.empty() ? json::object() : json::parse(inputs);
  json rows = json::array();
  for (const auto& row : evidence)
    rows.push_back(json::array({num_or_string(row.parameter),
                                num_or_string(row.lhs),
                                num_or_string(row.rhs)}));
  j["evidence"] = std::move(rows);
  json cons = json::array();
  for (const auto& row : consistency)
    cons.push_back(json{{"name", row.name}, {"status", row.status}});
  j["consistency"] = std::move(cons);
  j["notes"] = notes;
  return j.dump(2);
}

CriterionReport CriterionReport::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("criterion report is not valid JSON: ") +
                      e.what());
  }
  CriterionReport rep;
  try {
    rep.criterion = criterion_from_string(j.at("criterion").get<std::string>());
    rep.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    rep.margin = num_from(j.at("margin"));
    rep.inputs = j.value("inputs", json::object()).dump();
    for (const auto& row : j.at("evidence")) {
      if (!row.is_array() || row.size() != 3)
        throw ConfigError("evidence rows must be [parameter, lhs, rhs]");
      rep.evidence.push_back(
          {num_from(row[0]), num_from(row[1]), num_from(row[2])});
    }
    for (const auto& row : j.value("consistency", json::array()))
      rep.consistency.push_back({row.at("name").get<std::string>(),
                                 row.at("status").get<std::string>()});
    for (const auto& note : j.value("notes", json::array()))
      rep.notes.push_back(note.get<std::string>());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("criterion report malformed: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("criterion report invalid: ") + e.what());
  }
  return rep;
}

void CriterionReport::write_csv(std::ostream& os) const {
  os << "parameter,lhs,rhs\n";
  for (const auto& row : evidence)
    os << format_double(row.parameter) << ',' << format_double(row.lhs) << ','
       << format_double(row.rhs) << '\n';
}

Verdict recompute_verdict(const CriterionReport& report) {
  double margin = 0;
  return apply_rule(report.criterion, report.evidence, &margin);
}

std::vector<ConsistencyRow> cross_checks(
    const std::vector<CriterionReport>& reports) {
  std::vector<ConsistencyRow> rows;
  const auto* hinf = find_report(reports, CriterionId::kHInftyCompact);
  const auto* little = find_report(reports, CriterionId::kPsiCarlesonLittleOh);
  const auto* ratio = find_report(reports, CriterionId::kBoundaryRatioAlpha);
  if (ratio == nullptr)
    ratio = find_report(reports, CriterionId::kBoundaryRatioSimplified);
  const auto* koranyi =
      find_report(reports, CriterionId::kKoranyiApertureVerdict);

  {
    ConsistencyRow row{"h_infty_implies_compactness", "not_applicable"};
    if (hinf != nullptr && hinf->verdict == Verdict::kPass) {
      bool seen = false, broken = false;
      for (CriterionId id :
           {CriterionId::kPsiCarlesonLittleOh, CriterionId::kBoundaryRatioAlpha,
            CriterionId::kBoundaryRatioSimplified,
            CriterionId::kClassicalAngularRatio}) {
        const auto* rep = find_report(reports, id);
        if (rep == nullptr) continue;
        seen = true;
        if (rep->verdict == Verdict::kFail) broken = true;
      }
      if (seen) row.status = broken ? "violated" : "holds";
    }
    rows.push_back(std::move(row));
  }
  {
    ConsistencyRow row{"little_oh_implies_boundary_ratio", "not_applicable"};
    if (little != nullptr && little->verdict == Verdict::kPass &&
        ratio != nullptr && ratio->verdict != Verdict::kInconclusive) {
      row.status = ratio->verdict == Verdict::kPass ? "holds" : "violated";
    }
    rows.push_back(std::move(row));
  }
  {
    ConsistencyRow row{"koranyi_matches_boundary_ratio", "not_applicable"};
    if (koranyi != nullptr && koranyi->verdict != Verdict::kInconclusive &&
        ratio != nullptr && ratio->verdict != Verdict::kInconclusive) {
      row.status = koranyi->verdict == ratio->verdict ? "holds" : "violated";
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

CriterionReport psi_carleson_fit(const CarlesonProfile& profile,
                                 const OrliczFunction& psi, double exponent,
                                 FitMode mode, std::vector<double> A_grid) {
  const double derived =
      n_alpha(profile.measure.N,
              profile.measure.kind == MeasureKind::kSphereSigma
                  ? kHardyAlpha
                  : profile.measure.alpha);
  if (exponent <= 0) {
    exponent = derived;
  } else {
    require(std::abs(exponent - derived) <= 1e-9,
            "exponent does not match the profile measure");
  }
  if (A_grid.empty()) A_grid = {1, 2, 4, 8, 16};
  for (double a : A_grid)
    require(std::isfinite(a) && a > 0, "A grid values must be positive");
  require(!profile.cells.empty(), "profile has no cells");

  CriterionReport rep;
  rep.criterion = mode == FitMode::kBigOh ? CriterionId::kPsiCarlesonBigOh
                                          : CriterionId::kPsiCarlesonLittleOh;

  // A zero estimate is exact only when the symbol provably stays sup + h
  // away from the boundary; anywhere else zero hits at finite n prove
  // nothing about the mass.
  bool has_sup = false;
  double sup = 1.0;
  if (!profile.symbol_json.empty()) {
    try {
      const SymbolMap sym = SymbolMap::from_json(profile.symbol_json);
      has_sup = sym.has_closed_form_sup();
      if (has_sup) sup = sym.sup_norm_closed_form();
    } catch (const std::exception&) {
      has_sup = false;
    }
  }

  // Per-cell classification is A-independent, so precompute the inverse and
  // reuse it across the A grid.
  enum class Cell { kZero, kReliable, kDropped };
  std::vector<Cell> cls(profile.cells.size(), Cell::kDropped);
  std::vector<double> inv(profile.cells.size(), 0);
  std::size_t unreliable = 0, saturated = 0, unwitnessed = 0;
  for (std::size_t i = 0; i < profile.cells.size(); ++i) {
    const ProfileCell& cell = profile.cells[i];
    if (cell.estimate == 0) {
      if (has_sup && sup <= 1.0 - cell.h)
        cls[i] = Cell::kZero;
      else
        ++unwitnessed;
      continue;
    }
    if (cell.estimate * static_cast<double>(cell.n) <
        static_cast<double>(kMinHits)) {
      ++unreliable;
      continue;
    }
    const double y = std::pow(cell.h, -exponent);
    if (!std::isfinite(y)) {
      ++saturated;
      continue;
    }
    try {
      inv[i] = psi.inverse(y);
      cls[i] = Cell::kReliable;
    } catch (const std::domain_error&) {
      ++saturated;
    }
  }

  for (double a : A_grid) {
    for (std::size_t i = 0; i < profile.cells.size(); ++i) {
      const ProfileCell& cell = profile.cells[i];
      if (cls[i] == Cell::kZero) {
        rep.evidence.push_back({a, cell.h, -kInf});
      } else if (cls[i] == Cell::kReliable) {
        double growth = 0;
        try {
          growth = psi.log_evaluate(a * inv[i]);
        } catch (const std::domain_error&) {
          continue;
        }
        rep.evidence.push_back({a, cell.h, std::log(cell.estimate) + growth});
      }
    }
  }
  if (unreliable > 0)
    rep.notes.push_back(std::to_string(unreliable) +
                        " cells dropped: fewer than " +
                        std::to_string(kMinHits) + " hits");
  if (saturated > 0)
    rep.notes.push_back(std::to_string(saturated) +
                        " cells dropped: inverse saturated");
  if (unwitnessed > 0)
    rep.notes.push_back(std::to_string(unwitnessed) +
                        " cells dropped: zero hits without a structural "
                        "zero window");

  json in;
  in["psi"] = psi.describe();
  in["symbol"] = profile.symbol_text;
  in["measure"] = measure_echo(profile.measure);
  in["exponent"] = exponent;
  in["mode"] = mode == FitMode::kBigOh ? "big_oh" : "little_oh";
  in["A_grid"] = A_grid;
  in["flat_slope_slack"] = kBigOhSlopeSlack;
  in["decay_slope"] = kLittleOhSlope;
  rep.inputs = in.dump();
  seal(rep);
  return rep;
}

CriterionReport boundary_ratio_alpha(const OrliczFunction& psi,
                                     const SymbolMap& phi, int N, double alpha,
                                     std::vector<double> r_grid,
                                     std::size_t samples_per_r,
                                     std::uint64_t seed) {
  require(N == phi.dim(), "dimension does not match the symbol");
  const double exponent = n_alpha(N, alpha);
  if (r_grid.empty()) r_grid = default_ratio_r_grid();
  check_ratio_grid(r_grid);

  CriterionReport rep;
  rep.criterion = CriterionId::kBoundaryRatioAlpha;
  ratio_series(rep, phi, &psi, exponent, r_grid, samples_per_r, seed);

  json in;
  in["psi"] = psi.describe();
  in["symbol"] = phi.describe();
  in["N"] = N;
  in["alpha"] = num_or_string(alpha);
  in["exponent"] = exponent;
  in["samples_per_r"] = samples_per_r;
  in["seed"] = seed;
  in["theta"] = kRatioTheta;
  rep.inputs = in.dump();
  seal(rep);
  return rep;
}

CriterionReport boundary_ratio_simplified(const OrliczFunction& psi,
                                          const SymbolMap& phi,
                                          std::vector<double> r_grid,
                                          std::size_t samples_per_r,
                                          std::uint64_t seed) {
  if (r_grid.empty()) r_grid = default_ratio_r_grid();
  check_ratio_grid(r_grid);

  CriterionReport rep;
  rep.criterion = CriterionId::kBoundaryRatioSimplified;
  ratio_series(rep, phi, &psi, 1.0, r_grid, samples_per_r, seed);

  const ClassCertificate cert =
      certify(psi, GrowthCondition::kDeltaSharp2);
  json in;
  in["psi"] = psi.describe();
  in["symbol"] = phi.describe();
  in["exponent"] = 1.0;
  in["samples_per_r"] = samples_per_r;
  in["seed"] = seed;
  in["theta"] = kRatioTheta;
  in["square_growth"] = olab::to_string(cert.verdict);
  rep.inputs = in.dump();
  seal(rep);

  // The exponent-1 shortcut is equivalent to the weighted criterion only for
  // square-growth functions; record the comparison per weight instead of
  // folding it into the verdict.
  if (cert.verdict == Verdict::kPass) {
    for (double alpha : {0.0, 1.0, 2.0}) {
      const CriterionReport full = boundary_ratio_alpha(
          psi, phi, phi.dim(), alpha, r_grid, samples_per_r, seed);
      ConsistencyRow row;
      row.name = "alpha_" + format_double(alpha) + "_agreement";
      if (rep.verdict == Verdict::kInconclusive ||
          full.verdict == Verdict::kInconclusive) {
        row.status = "not_applicable";
      } else {
        row.status = rep.verdict == full.verdict ? "holds" : "violated";
      }
      rep.consistency.push_back(std::move(row));
    }
  } else {
    rep.notes.push_back(
        "psi lacks a square-growth certificate; the exponent-1 shortcut is "
        "heuristic and the weighted-agreement checks were skipped");
    for (double alpha : {0.0, 1.0, 2.0})
      rep.consistency.push_back(
          {"alpha_" + format_double(alpha) + "_agreement", "not_applicable"});
  }
  return rep;
}

CriterionReport classical_angular_ratio(const SymbolMap& phi,
                                        std::vector<double> r_grid,
                                        std::size_t samples_per_r,
                                        std::uint64_t seed) {
  if (r_grid.empty()) r_grid = default_ratio_r_grid();
  check_ratio_grid(r_grid);

  CriterionReport rep;
  rep.criterion = CriterionId::kClassicalAngularRatio;
  ratio_series(rep, phi, nullptr, 0.0, r_grid, samples_per_r, seed);

  json in;
  in["symbol"] = phi.describe();
  in["samples_per_r"] = samples_per_r;
  in["seed"] = seed;
  in["theta"] = kRatioTheta;
  rep.inputs = in.dump();
  seal(rep);
  return rep;
}

CriterionReport h_infty_compact(const SymbolMap& phi, std::size_t samples,
                                std::uint64_t seed) {
  const SupNormEstimate est = sup_norm_estimate(phi, samples, seed);

  CriterionReport rep;
  rep.criterion = CriterionId::kHInftyCompact;
  if (est.has_closed_form)
    rep.evidence.push_back({0, est.closed_form, kSupThreshold});
  rep.evidence.push_back({1, est.lower_bound, kSupThreshold});
  if (!est.has_closed_form)
    rep.notes.push_back(
        "no closed-form sup for this symbol; the verdict rests on a sampled "
        "lower bound");

  json in;
  in["symbol"] = phi.describe();
  in["samples"] = samples;
  in["seed"] = seed;
  in["threshold"] = kSupThreshold;
  rep.inputs = in.dump();
  seal(rep);
  return rep;
}

CriterionReport lens_exponent_check(double beta, const MeasureSpec& measure,
                                    const std::vector<double>& h_grid,
                                    std::vector<std::size_t> n_per_cell,
                                    std::uint64_t seed) {
  require(std::isfinite(beta) && beta > 0 && beta <= 1,
          "lens exponent must lie in (0, 1]");
  require(measure.N == 1, "lens exponent check runs in dimension 1");
  require(!h_grid.empty(), "window grid must not be empty");
  double prev = 1;
  for (double h : h_grid) {
    require(h > 0 && h < prev, "window grid must decrease within (0,1)");
    prev = h;
  }
  require(!n_per_cell.empty(), "sample budget must not be empty");
  if (n_per_cell.size() == 1)
    n_per_cell.assign(h_grid.size(), n_per_cell.front());
  require(n_per_cell.size() == h_grid.size(),
          "one sample budget per window size required");

  const bool hardy = measure.kind == MeasureKind::kSphereSigma;
  const SymbolMap sym =
      beta == 1 ? SymbolMap::dilation(1, 1) : SymbolMap::lens_1d(beta);
  const double target =
      n_alpha(1, hardy ? kHardyAlpha : measure.alpha) / beta;
  const std::vector<std::complex<double>> e1 = {{1, 0}};

  CriterionReport rep;
  rep.criterion = CriterionId::kLensLowerBoundExponent;
  json cells = json::array();
  std::size_t dropped = 0;
  for (std::size_t i = 0; i < h_grid.size(); ++i) {
    const double h = h_grid[i];
    const std::size_t n = n_per_cell[i];
    const std::uint64_t cell_seed = substream(seed, i);
    double est = 0;
    if (hardy) {
      est = hardy_window_mass(sym, e1, h, default_r_grid(), n, cell_seed)
                .sup.estimate;
    } else {
      est = bergman_window_mass(sym, measure.alpha, e1, h, n, cell_seed)
                .estimate;
    }
    cells.push_back(json::array({h, est, n}));
    if (est * static_cast<double>(n) >= static_cast<double>(kMinHits)) {
      rep.evidence.push_back({h, est, target});
    } else {
      ++dropped;
    }
  }
  if (dropped > 0)
    rep.notes.push_back(std::to_string(dropped) +
                        " cells dropped: fewer than " +
                        std::to_string(kMinHits) + " hits");

  seal(rep);
  std::vector<double> x, y;
  for (const auto& row : rep.evidence) {
    x.push_back(std::log(row.parameter));
    y.push_back(std::log(row.lhs));
  }
  const LineFit f = fit_line(x, y);
  json in;
  in["beta"] = beta;
  in["measure"] = measure_echo(measure);
  in["symbol"] = sym.describe();
  in["target"] = target;
  in["slope_slack"] = kLensSlopeSlack;
  in["cells"] = std::move(cells);
  in["slope"] = num_or_string(rep.evidence.size() >= 2 ? f.slope : 0);
  in["intercept"] = num_or_string(rep.evidence.size() >= 2 ? f.intercept : 0);
  in["seed"] = seed;
  rep.inputs = in.dump();
  return rep;
}

CriterionReport delta2sharp_sufficiency(const OrliczFunction& psi, double beta,
                                        int N, std::vector<double> C_grid,
                                        std::vector<double> y_grid) {
  require(std::isfinite(beta) && beta > 0, "beta must be positive");
  require(N >= 1, "dimension must be >= 1");
  const double s = 1.0 / (static_cast<double>(N) * beta);
  if (C_grid.empty())
    for (double c = 1; c <= 1048576.0; c *= 2) C_grid.push_back(c);
  if (y_grid.empty())
    for (double y = 1; y <= 2.9e14; y *= 4) y_grid.push_back(y);
  for (double c : C_grid)
    require(std::isfinite(c) && c >= 1, "scale grid values must be >= 1");

  CriterionReport rep;
  rep.criterion = CriterionId::kDelta2SharpSufficiency;

  std::vector<double> usable, logs;
  for (double y : y_grid) {
    if (!(y > 0) || y > psi.domain_max()) continue;
    const double ly = psi.log_evaluate(y);
    if (ly >= 0) {
      usable.push_back(y);
      logs.push_back(ly);
    }
  }
  std::size_t skipped = 0;
  for (double c : C_grid) {
    for (std::size_t i = 0; i < usable.size(); ++i) {
      const double cy = c * usable[i];
      if (cy > psi.domain_max()) {
        ++skipped;
        continue;
      }
      rep.evidence.push_back({c, usable[i], psi.log_evaluate(cy) - s * logs[i]});
    }
  }
  if (usable.empty())
    rep.notes.push_back("no grid points with psi(y) >= 1; nothing to check");
  if (skipped > 0)
    rep.notes.push_back(std::to_string(skipped) +
                        " (C, y) pairs skipped: C y beyond the psi domain");

  json in;
  in["psi"] = psi.describe();
  in["beta"] = beta;
  in["N"] = N;
  in["exponent"] = s;
  in["C_grid"] = C_grid;
  in["y_points"] = usable.size();
  in["log_slack"] = kLogSlack;
  rep.inputs = in.dump();
  seal(rep);

  const ClassCertificate cert = certify(psi, GrowthCondition::kDeltaSharp2);
  ConsistencyRow row{"square_growth_implies_sufficiency", "not_applicable"};
  if (cert.verdict == Verdict::kPass && s > 1) {
    if (rep.verdict == Verdict::kPass) row.status = "holds";
    else if (rep.verdict == Verdict::kFail) row.status = "violated";
  }
  rep.consistency.push_back(std::move(row));
  return rep;
}

CriterionReport koranyi_aperture_verdict(
    const SymbolMap& phi, const std::vector<ClassCertificate>& certs) {
  bool delta2 = false, nabla2 = false, sharp = false;
  for (const auto& cert : certs) {
    if (cert.verdict != Verdict::kPass) continue;
    if (cert.condition == GrowthCondition::kDelta2) delta2 = true;
    if (cert.condition == GrowthCondition::kNabla2) nabla2 = true;
    if (cert.condition == GrowthCondition::kDeltaSharp2) sharp = true;
  }
  const bool regular = delta2 && nabla2;

  CriterionReport rep;
  rep.criterion = CriterionId::kKoranyiApertureVerdict;
  rep.consistency.push_back(
      {"class_certificates_coherent", regular && sharp ? "violated" : "holds"});

  const bool lens = phi.family() == SymbolFamily::kLens1D ||
                    phi.family() == SymbolFamily::kEmbeddedLens;
  double b = 0, b_n = 0;
  if (!lens) {
    rep.notes.push_back("no known approach-region containment for family " +
                        std::string(olab::to_string(phi.family())));
  } else if (phi.pre_dilation() != 1) {
    rep.notes.push_back(
        "radially restricted symbol stays inside the ball; the boundary "
        "aperture prediction does not apply");
  } else {
    b = aperture_from_beta(phi.param_beta());
    b_n = koranyi_aperture_bound(phi.dim());
    int code = 2;
    if (regular && sharp) code = 3;
    else if (regular) code = 0;
    else if (sharp) code = 1;
    if (code == 2)
      rep.notes.push_back(
          "no certified growth class; the aperture threshold is undecided");
    rep.evidence.push_back({static_cast<double>(code), b, b_n});
  }

  json in;
  in["symbol"] = phi.describe();
  in["delta2"] = delta2;
  in["nabla2"] = nabla2;
  in["square_growth"] = sharp;
  if (lens && phi.pre_dilation() == 1) {
    in["aperture"] = num_or_string(b);
    in["aperture_bound"] = num_or_string(b_n);
  }
  rep.inputs = in.dump();
  seal(rep);
  return rep;
}

std::vector<double> default_ratio_r_grid() {
  std::vector<double> grid;
  for (int k = 1; k <= 20; ++k) grid.push_back(1.0 - std::ldexp(1.0, -k));
  return grid;
}

}  // namespace olab
