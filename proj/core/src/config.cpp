#include "olab/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "olab/errors.hpp"

namespace olab {

namespace {

using nlohmann::json;

void check_keys(const json& j, const char* where,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known)
      throw ConfigError(std::string("unknown key \"") + item.key() + "\" in " +
                        where);
  }
}

std::vector<double> grid_field(const json& grids, const char* name,
                               bool decreasing, double lo, double hi) {
  if (!grids.contains(name)) return {};
  const auto g = grids.at(name).get<std::vector<double>>();
  if (g.empty()) throw ConfigError(std::string("grid ") + name + " is empty");
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(std::isfinite(g[i]) && g[i] > lo && g[i] < hi))
      throw ConfigError(std::string("grid ") + name + " entry out of range");
    if (i == 0) continue;
    if (decreasing ? !(g[i] < g[i - 1]) : !(g[i] > g[i - 1]))
      throw ConfigError(std::string("grid ") + name +
                        (decreasing ? " must be strictly decreasing"
                                    : " must be strictly increasing"));
  }
  return g;
}

std::size_t size_field(const json& j, const char* name, std::size_t fallback) {
  if (!j.contains(name)) return fallback;
  const auto v = j.at(name).get<std::int64_t>();
  if (v < 1) throw ConfigError(std::string(name) + " must be >= 1");
  return static_cast<std::size_t>(v);
}

}  // namespace

MeasureSpec AnalysisConfig::measure() const {
  if (!symbol || !space_set)
    throw ConfigError("measure() needs both a symbol and a space");
  return hardy ? MeasureSpec::sphere(symbol->dim())
               : MeasureSpec::ball_weighted(symbol->dim(), alpha);
}

AnalysisConfig AnalysisConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    check_keys(j, "config",
               {"seed", "out", "N", "symbol", "orlicz", "space", "grids",
                "samples", "majorant"});

    AnalysisConfig cfg;
    if (!j.contains("seed")) throw ConfigError("seed is mandatory");
    cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
    if (cfg.out_dir.empty()) throw ConfigError("out must not be empty");

    if (j.contains("symbol"))
      cfg.symbol = SymbolMap::from_json(j.at("symbol").dump());
    if (j.contains("orlicz"))
      cfg.orlicz = OrliczFunction::from_json(j.at("orlicz").dump());

    if (j.contains("space")) {
      const json& sp = j.at("space");
      check_keys(sp, "space", {"kind", "alpha"});
      const std::string kind = sp.at("kind").get<std::string>();
      if (kind == "hardy") {
        cfg.hardy = true;
        if (sp.contains("alpha"))
          throw ConfigError("the boundary space takes no alpha");
      } else if (kind == "bergman") {
        cfg.hardy = false;
        cfg.alpha = sp.contains("alpha") ? sp.at("alpha").get<double>() : 0.0;
        if (!(std::isfinite(cfg.alpha) && cfg.alpha > -1))
          throw ConfigError("bergman alpha must be finite and > -1");
      } else {
        throw ConfigError("space kind must be hardy or bergman");
      }
      cfg.space_set = true;
    }

    if (j.contains("N")) {
      const int n = j.at("N").get<int>();
      if (!cfg.symbol) throw ConfigError("N given without a symbol");
      if (n != cfg.symbol->dim())
        throw ConfigError("N does not match the symbol dimension");
    }

    if (j.contains("grids")) {
      const json& g = j.at("grids");
      check_keys(g, "grids", {"h", "r", "A", "C"});
      cfg.h_grid = grid_field(g, "h", true, 0.0, 1.0);
      cfg.r_grid = grid_field(g, "r", false, 0.0, 1.0);
      if (g.contains("A")) {
        cfg.A_grid = g.at("A").get<std::vector<double>>();
        for (double a : cfg.A_grid)
          if (!(std::isfinite(a) && a > 0))
            throw ConfigError("grid A entries must be positive");
      }
      if (g.contains("C")) {
        cfg.C_grid = g.at("C").get<std::vector<double>>();
        for (double c : cfg.C_grid)
          if (!(std::isfinite(c) && c >= 1))
            throw ConfigError("grid C entries must be >= 1");
      }
    }

    if (j.contains("samples")) {
      const json& s = j.at("samples");
      check_keys(s, "samples", {"per_cell", "ratio_per_r", "sup", "centers"});
      cfg.n_per_cell = size_field(s, "per_cell", cfg.n_per_cell);
      cfg.ratio_samples = size_field(s, "ratio_per_r", cfg.ratio_samples);
      cfg.sup_samples = size_field(s, "sup", cfg.sup_samples);
      if (s.contains("centers")) {
        const json& c = s.at("centers");
        check_keys(c, "samples.centers", {"random", "image", "pilot"});
        if (c.contains("random")) cfg.centers.n_random = c.at("random").get<int>();
        if (c.contains("image")) cfg.centers.n_image = c.at("image").get<int>();
        if (c.contains("pilot"))
          cfg.centers.pilot_samples = size_field(c, "pilot", 0);
        if (cfg.centers.n_random < 0 || cfg.centers.n_image < 0)
          throw ConfigError("center counts must be >= 0");
      }
    }

    if (j.contains("majorant")) {
      const json& l = j.at("majorant");
      check_keys(l, "majorant", {"f", "g", "n_max", "x_grid", "strictify"});
      if (!l.contains("f") || !l.contains("g"))
        throw ConfigError("majorant needs both f and g");
      MajorantPlan lm{MonotoneFunction::from_json(l.at("f").dump()),
                 MonotoneFunction::from_json(l.at("g").dump()),
                 8,
                 {},
                 false};
      if (l.contains("n_max")) lm.n_max = l.at("n_max").get<int>();
      if (lm.n_max < 3) throw ConfigError("majorant n_max below minimum (3)");
      if (l.contains("x_grid")) {
        lm.x_grid = l.at("x_grid").get<std::vector<double>>();
        for (double x : lm.x_grid)
          if (!(std::isfinite(x) && x >= 0))
            throw ConfigError("majorant x_grid entries must be finite and >= 0");
      }
      if (l.contains("strictify")) lm.strictify = l.at("strictify").get<bool>();
      cfg.majorant = std::move(lm);
    }
    return cfg;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config malformed: ") + e.what());
  }
}

AnalysisConfig AnalysisConfig::load_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  return from_json_text(buf.str());
}

std::string AnalysisConfig::to_json() const {
  json j;
  j["seed"] = seed;
  j["out"] = out_dir;
  if (symbol) j["symbol"] = json::parse(symbol->to_json());
  if (orlicz) j["orlicz"] = json::parse(orlicz->to_json());
  if (space_set) {
    json sp;
    sp["kind"] = hardy ? "hardy" : "bergman";
    if (!hardy) sp["alpha"] = alpha;
    j["space"] = sp;
  }
  json grids = json::object();
  if (!h_grid.empty()) grids["h"] = h_grid;
  if (!r_grid.empty()) grids["r"] = r_grid;
  if (!A_grid.empty()) grids["A"] = A_grid;
  if (!C_grid.empty()) grids["C"] = C_grid;
  if (!grids.empty()) j["grids"] = grids;
  json samples;
  samples["per_cell"] = n_per_cell;
  samples["ratio_per_r"] = ratio_samples;
  samples["sup"] = sup_samples;
  samples["centers"] = {{"random", centers.n_random},
                        {"image", centers.n_image},
                        {"pilot", centers.pilot_samples}};
  j["samples"] = samples;
  if (majorant) {
    json l;
    l["f"] = json::parse(majorant->f.to_json());
    l["g"] = json::parse(majorant->g.to_json());
    l["n_max"] = majorant->n_max;
    if (!majorant->x_grid.empty()) l["x_grid"] = majorant->x_grid;
    l["strictify"] = majorant->strictify;
    j["majorant"] = l;
  }
  return j.dump(2);
}

}  // namespace olab
