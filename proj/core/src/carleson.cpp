#include "olab/carleson.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <utility>

#include "json.hpp"
#include "olab/errors.hpp"
#include "olab/numfmt.hpp"
#include "olab/rng.hpp"

namespace olab {

namespace {

constexpr std::uint64_t kBergmanCellStream = 31;
constexpr std::uint64_t kHardyRadiusStream = 41;
constexpr std::uint64_t kHardyBoundaryStream = 42;
constexpr std::uint64_t kCoronaBallStream = 43;
constexpr std::uint64_t kCoronaRadiusStream = 44;
constexpr std::uint64_t kCenterStream = 45;
constexpr std::uint64_t kPilotStream = 46;
constexpr std::uint64_t kConeStream = 47;
constexpr std::uint64_t kCellSeedBase = 100;

constexpr double kPi = 3.141592653589793238462643383279502884;

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

MassEstimate finish(std::size_t hits, std::size_t n) {
  MassEstimate m;
  m.n = n;
  m.estimate = static_cast<double>(hits) / static_cast<double>(n);
  m.std_error = hits == 0
                    ? 3.0 / static_cast<double>(n)
                    : std::sqrt(m.estimate * (1 - m.estimate) /
                                static_cast<double>(n));
  return m;
}

void scale_onto(const BallPoint& xi, double r, BallPoint& out) {
  out.z.resize(xi.z.size());
  for (std::size_t c = 0; c < xi.z.size(); ++c) out.z[c] = r * xi.z[c];
  out.norm = r;
}

void check_radius_grid(const std::vector<double>& r_grid) {
  require(!r_grid.empty(), "radius grid must be nonempty");
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    require(r_grid[i] > 0 && r_grid[i] < 1, "radii must lie in (0, 1)");
    require(i == 0 || r_grid[i] > r_grid[i - 1], "radii must increase");
  }
}

nlohmann::json center_json(const std::vector<std::complex<double>>& zeta) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& c : zeta) j.push_back({c.real(), c.imag()});
  return j;
}

std::vector<std::complex<double>> center_from(const nlohmann::json& j) {
  std::vector<std::complex<double>> v;
  for (const auto& e : j)
    v.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
  return v;
}

}  // namespace

MassEstimate bergman_window_mass(const SymbolMap& phi, double alpha,
                                 const std::vector<std::complex<double>>& zeta,
                                 double h, std::size_t n, std::uint64_t seed) {
  require(alpha > -1, "weight exponent must exceed -1");
  require(n >= 1000, "volume window mass needs at least 1000 samples");
  require(static_cast<int>(zeta.size()) == phi.dim(),
          "window center dimension mismatch");
  const CarlesonWindow window = make_window(zeta, h, WindowClosure::kOpen);
  const RadialLaw& law = radial_law(phi.dim(), alpha);
  const CounterRng rng(seed, kBergmanCellStream);
  BallPoint z;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ball_point_into(rng, i, law, z);
    if (in_window(phi.apply(z), window)) ++hits;
  }
  return finish(hits, n);
}

MassEstimate bergman_window_mass_near_one(const SymbolMap& phi, double alpha,
                                          double h, double rho_cap,
                                          std::size_t n, std::uint64_t seed) {
  require(alpha > -1, "weight exponent must exceed -1");
  require(phi.dim() == 1, "cone sampler is a disk construction");
  require(rho_cap > 0 && rho_cap <= 2, "cone radius must lie in (0, 2]");
  require(n >= 1000, "volume window mass needs at least 1000 samples");
  const CarlesonWindow window =
      make_window({std::complex<double>(1, 0)}, h, WindowClosure::kOpen);
  // Proposal: psi uniform on (-pi/2, pi/2), rho with cdf (rho/cap)^(2+alpha).
  // Against the weighted probability measure the ratio collapses to
  // base * (2 cos psi - rho)^alpha with base below, bounded on the cone.
  const double c_alpha = bergman_normalizer(1, alpha);
  const double base =
      c_alpha * std::pow(rho_cap, 2 + alpha) / (2 + alpha);
  const CounterRng rng(seed, kConeStream);
  BallPoint z;
  z.z.resize(1);
  double sum = 0;
  double sum_sq = 0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double psi =
        kPi * (rng.uniform_open(2 * i) - 0.5);
    const double rho =
        rho_cap * std::pow(rng.uniform_open(2 * i + 1), 1.0 / (2 + alpha));
    const double depth = 2 * std::cos(psi) - rho;
    if (depth <= 0) continue;  // outside the disk, target density zero
    z.z[0] = std::complex<double>(1 - rho * std::cos(psi),
                                  -rho * std::sin(psi));
    z.norm = std::sqrt(1 - rho * depth);
    if (!in_window(phi.apply(z), window)) continue;
    const double w = base * std::pow(depth, alpha);
    sum += w;
    sum_sq += w * w;
    ++hits;
  }
  MassEstimate m;
  m.n = n;
  const double nd = static_cast<double>(n);
  m.estimate = sum / nd;
  m.std_error = hits == 0
                    ? 3.0 * base / nd
                    : std::sqrt(std::max(0.0, sum_sq / nd -
                                                  m.estimate * m.estimate) /
                                nd);
  return m;
}

HardyWindowMass hardy_window_mass(const SymbolMap& phi,
                                  const std::vector<std::complex<double>>& zeta,
                                  double h, const std::vector<double>& r_grid,
                                  std::size_t n, std::uint64_t seed) {
  require(n >= 1, "need at least one sample");
  require(static_cast<int>(zeta.size()) == phi.dim(),
          "window center dimension mismatch");
  check_radius_grid(r_grid);
  const CarlesonWindow window = make_window(zeta, h, WindowClosure::kClosed);
  const int N = phi.dim();

  HardyWindowMass out;
  BallPoint xi;
  BallPoint z;
  for (std::size_t ri = 0; ri < r_grid.size(); ++ri) {
    const CounterRng rng(seed, substream(kHardyRadiusStream, ri));
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n; ++i) {
      sphere_point_into(rng, i, N, xi);
      scale_onto(xi, r_grid[ri], z);
      if (in_window(phi.apply(z), window)) ++hits;
    }
    const MassEstimate m = finish(hits, n);
    if (ri == 0 || m.estimate > out.sup.estimate) {
      out.sup = m;
      out.argmax_r = r_grid[ri];
    }
  }

  const CounterRng rng(seed, kHardyBoundaryStream);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sphere_point_into(rng, i, N, xi);
    const BoundaryLimit lim = boundary_limit(phi, xi.z);
    if (!lim.converged) ++out.unconverged;
    if (in_window(lim.point, window)) ++hits;
  }
  out.boundary = finish(hits, n);
  out.flagged = out.unconverged * 100 > n;
  return out;
}

MassEstimate corona_mass(const SymbolMap& phi, const MeasureSpec& measure,
                         double r0, std::size_t n, std::uint64_t seed) {
  require(r0 > 0 && r0 < 1, "corona threshold must lie in (0, 1)");
  require(measure.N == phi.dim(), "measure dimension mismatch");
  require(n >= 1, "need at least one sample");
  if (measure.kind == MeasureKind::kBallWeighted) {
    const RadialLaw& law = radial_law(measure.N, measure.alpha);
    const CounterRng rng(seed, kCoronaBallStream);
    BallPoint z;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n; ++i) {
      ball_point_into(rng, i, law, z);
      if (phi.apply(z).norm > r0) ++hits;
    }
    return finish(hits, n);
  }
  const std::vector<double> r_grid = default_r_grid();
  MassEstimate best;
  BallPoint xi;
  BallPoint z;
  for (std::size_t ri = 0; ri < r_grid.size(); ++ri) {
    const CounterRng rng(seed, substream(kCoronaRadiusStream, ri));
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n; ++i) {
      sphere_point_into(rng, i, measure.N, xi);
      scale_onto(xi, r_grid[ri], z);
      if (phi.apply(z).norm > r0) ++hits;
    }
    const MassEstimate m = finish(hits, n);
    if (ri == 0 || m.estimate > best.estimate) best = m;
  }
  return best;
}

std::vector<double> default_h_grid() {
  std::vector<double> h;
  for (int k = 1; k <= 14; ++k) h.push_back(std::pow(2.0, -k));
  return h;
}

std::vector<double> default_r_grid() {
  std::vector<double> r;
  for (int k = 2; k <= 12; ++k) r.push_back(1 - std::pow(2.0, -k));
  return r;
}

namespace {

// every candidate the sup over centers will probe, in deterministic order
std::vector<std::vector<std::complex<double>>> candidate_centers(
    const SymbolMap& phi, const MeasureSpec& measure,
    const CenterStrategy& strategy, std::uint64_t seed) {
  const int N = phi.dim();
  std::vector<std::vector<std::complex<double>>> cands;
  auto push_unique = [&](const std::vector<std::complex<double>>& zeta) {
    for (const auto& c : cands) {
      double d2 = 0;
      for (std::size_t i = 0; i < c.size(); ++i) d2 += std::norm(c[i] - zeta[i]);
      if (std::sqrt(d2) < 1e-9) return;
    }
    cands.push_back(zeta);
  };

  std::vector<std::complex<double>> e1(N, 0);
  e1[0] = 1;
  push_unique(e1);

  const CounterRng center_rng(seed, kCenterStream);
  BallPoint xi;
  for (int i = 0; i < strategy.n_random; ++i) {
    sphere_point_into(center_rng, static_cast<std::uint64_t>(i), N, xi);
    push_unique(xi.z);
  }

  if (strategy.n_image > 0 && strategy.pilot_samples > 0) {
    const CounterRng pilot_rng(seed, kPilotStream);
    std::vector<std::pair<double, std::vector<std::complex<double>>>> images;
    images.reserve(strategy.pilot_samples);
    BallPoint z;
    const bool volume = measure.kind == MeasureKind::kBallWeighted;
    const RadialLaw* law =
        volume ? &radial_law(measure.N, measure.alpha) : nullptr;
    const double r_pilot = volume ? 0 : default_r_grid().back();
    for (std::size_t i = 0; i < strategy.pilot_samples; ++i) {
      if (volume) {
        ball_point_into(pilot_rng, i, *law, z);
      } else {
        sphere_point_into(pilot_rng, i, N, xi);
        scale_onto(xi, r_pilot, z);
      }
      BallPoint w = phi.apply(z);
      if (w.norm <= 1e-12) continue;
      for (auto& c : w.z) c /= w.norm;
      images.emplace_back(w.norm, std::move(w.z));
    }
    std::stable_sort(images.begin(), images.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    int taken = 0;
    for (const auto& [norm, zeta] : images) {
      if (taken == strategy.n_image) break;
      const std::size_t before = cands.size();
      push_unique(zeta);
      if (cands.size() > before) ++taken;
    }
  }
  return cands;
}

struct CellResult {
  MassEstimate mass;
  double argmax_r = 0;
  std::size_t unconverged = 0;
  bool flagged = false;
};

}  // namespace

CarlesonProfile build_profile(const SymbolMap& phi, const MeasureSpec& measure,
                              const std::vector<double>& h_grid,
                              const CenterStrategy& centers,
                              std::size_t n_per_cell, std::uint64_t seed,
                              int threads) {
  require(measure.N == phi.dim(), "measure dimension mismatch");
  require(n_per_cell >= 1000, "profiles need at least 1000 samples per cell");
  require(!h_grid.empty(), "window size grid must be nonempty");
  for (std::size_t i = 0; i < h_grid.size(); ++i) {
    require(h_grid[i] > 0 && h_grid[i] < 1, "window sizes must lie in (0, 1)");
    require(i == 0 || h_grid[i] < h_grid[i - 1],
            "window size grid must decrease");
  }

  const bool volume = measure.kind == MeasureKind::kBallWeighted;
  if (volume) radial_law(measure.N, measure.alpha);  // warm the cache

  const auto cands = candidate_centers(phi, measure, centers, seed);
  const std::vector<double> r_grid = volume ? std::vector<double>{}
                                            : default_r_grid();

  const std::size_t n_cells = h_grid.size() * cands.size();
  std::vector<CellResult> results(n_cells);
  auto run_cell = [&](std::size_t task) {
    const std::size_t hi = task / cands.size();
    const std::size_t ci = task % cands.size();
    const std::uint64_t cell_seed =
        substream(substream(seed, kCellSeedBase + hi), ci);
    CellResult& res = results[task];
    if (volume) {
      res.mass = bergman_window_mass(phi, measure.alpha, cands[ci],
                                     h_grid[hi], n_per_cell, cell_seed);
    } else {
      const HardyWindowMass hm = hardy_window_mass(
          phi, cands[ci], h_grid[hi], r_grid, n_per_cell, cell_seed);
      res.mass = hm.sup;
      res.argmax_r = hm.argmax_r;
      res.unconverged = hm.unconverged;
      res.flagged = hm.flagged;
    }
  };

  const int workers = std::max(
      1, std::min<int>(threads, static_cast<int>(n_cells)));
  if (workers == 1) {
    for (std::size_t t = 0; t < n_cells; ++t) run_cell(t);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t t = static_cast<std::size_t>(w); t < n_cells;
             t += static_cast<std::size_t>(workers))
          run_cell(t);
      });
    for (auto& th : pool) th.join();
  }

  CarlesonProfile profile;
  profile.measure = measure;
  profile.h_grid = h_grid;
  profile.r_grid = r_grid;
  profile.seed = seed;
  profile.symbol_json = phi.to_json();
  profile.symbol_text = phi.describe();
  profile.cells.resize(h_grid.size());
  for (std::size_t hi = 0; hi < h_grid.size(); ++hi) {
    std::size_t best = hi * cands.size();
    for (std::size_t ci = 1; ci < cands.size(); ++ci) {
      const std::size_t t = hi * cands.size() + ci;
      if (results[t].mass.estimate > results[best].mass.estimate) best = t;
    }
    ProfileCell& cell = profile.cells[hi];
    cell.h = h_grid[hi];
    cell.estimate = results[best].mass.estimate;
    cell.std_error = results[best].mass.std_error;
    cell.n = results[best].mass.n;
    cell.argmax_center = cands[best % cands.size()];
    cell.argmax_r = results[best].argmax_r;
    cell.unconverged = results[best].unconverged;
    cell.flagged = results[best].flagged;
  }
  return profile;
}

std::string CarlesonProfile::to_json() const {
  nlohmann::json j;
  j["measure"]["kind"] =
      measure.kind == MeasureKind::kBallWeighted ? "bergman" : "hardy";
  j["measure"]["N"] = measure.N;
  if (measure.kind == MeasureKind::kBallWeighted)
    j["measure"]["alpha"] = measure.alpha;
  j["h_grid"] = h_grid;
  j["r_grid"] = r_grid;
  j["seed"] = seed;
  if (!symbol_json.empty()) j["symbol"] = nlohmann::json::parse(symbol_json);
  j["symbol_text"] = symbol_text;
  nlohmann::json cell_list = nlohmann::json::array();
  for (const ProfileCell& c : cells) {
    nlohmann::json jc;
    jc["h"] = c.h;
    jc["estimate"] = c.estimate;
    jc["std_error"] = c.std_error;
    jc["n"] = c.n;
    jc["argmax_center"] = center_json(c.argmax_center);
    jc["argmax_r"] = c.argmax_r;
    jc["unconverged"] = c.unconverged;
    jc["flagged"] = c.flagged;
    cell_list.push_back(std::move(jc));
  }
  j["cells"] = std::move(cell_list);
  return j.dump(2);
}

CarlesonProfile CarlesonProfile::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("profile is not valid JSON: ") + e.what());
  }
  try {
    CarlesonProfile p;
    const std::string kind = j.at("measure").at("kind").get<std::string>();
    const int N = j.at("measure").at("N").get<int>();
    if (kind == "hardy") {
      p.measure = MeasureSpec::sphere(N);
    } else if (kind == "bergman") {
      p.measure =
          MeasureSpec::ball_weighted(N, j.at("measure").at("alpha").get<double>());
    } else {
      throw ConfigError("unknown measure kind: " + kind);
    }
    p.h_grid = j.at("h_grid").get<std::vector<double>>();
    p.r_grid = j.value("r_grid", std::vector<double>{});
    p.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("symbol")) p.symbol_json = j["symbol"].dump();
    p.symbol_text = j.value("symbol_text", "");
    for (const auto& jc : j.at("cells")) {
      ProfileCell c;
      c.h = jc.at("h").get<double>();
      c.estimate = jc.at("estimate").get<double>();
      c.std_error = jc.at("std_error").get<double>();
      c.n = jc.at("n").get<std::size_t>();
      c.argmax_center = center_from(jc.at("argmax_center"));
      c.argmax_r = jc.value("argmax_r", 0.0);
      c.unconverged = jc.value("unconverged", std::size_t{0});
      c.flagged = jc.value("flagged", false);
      p.cells.push_back(std::move(c));
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("profile JSON malformed: ") + e.what());
  }
}

void CarlesonProfile::write_csv(std::ostream& os) const {
  os << "h,estimate,std_error,n";
  for (int c = 0; c < measure.N; ++c)
    os << ",argmax_re" << c << ",argmax_im" << c;
  os << "\n";
  for (const ProfileCell& cell : cells) {
    os << format_double(cell.h) << "," << format_double(cell.estimate) << ","
       << format_double(cell.std_error) << "," << cell.n;
    for (const auto& z : cell.argmax_center)
      os << "," << format_double(z.real()) << "," << format_double(z.imag());
    os << "\n";
  }
}

}  // namespace olab
