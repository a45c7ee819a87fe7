#include "olab/symbols.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "olab/errors.hpp"
#include "olab/numfmt.hpp"
#include "olab/rng.hpp"

namespace olab {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

double norm2_of(const std::vector<std::complex<double>>& v) {
  double s = 0;
  for (const auto& c : v) s += std::norm(c);
  return s;
}

std::string point_text(const BallPoint& z) {
  std::ostringstream os;
  os << "(";
  for (std::size_t c = 0; c < z.z.size(); ++c) {
    if (c) os << ", ";
    os << format_double(z.z[c].real()) << "+" << format_double(z.z[c].imag())
       << "i";
  }
  os << ")";
  return os.str();
}

std::complex<double> lens_value(double beta, std::complex<double> z) {
  // principal branch; 1 - z has positive real part on the disk
  return 1.0 - std::exp(beta * std::log(1.0 - z));
}

nlohmann::json complex_list(const std::vector<std::complex<double>>& v) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& c : v) j.push_back({c.real(), c.imag()});
  return j;
}

std::vector<std::complex<double>> complex_list_from(const nlohmann::json& j) {
  std::vector<std::complex<double>> v;
  for (const auto& e : j) v.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
  return v;
}

}  // namespace

const char* to_string(SymbolFamily f) {
  switch (f) {
    case SymbolFamily::kConstant: return "constant";
    case SymbolFamily::kDilation: return "dilation";
    case SymbolFamily::kDiagonalLinear: return "diagonal";
    case SymbolFamily::kLens1D: return "lens";
    case SymbolFamily::kEmbeddedLens: return "embedded_lens";
  }
  return "?";
}

SymbolMap SymbolMap::constant(std::vector<std::complex<double>> w0) {
  require(!w0.empty(), "constant symbol needs a target point");
  for (const auto& c : w0)
    require(std::isfinite(c.real()) && std::isfinite(c.imag()),
            "constant symbol target must be finite");
  if (norm2_of(w0) >= 1)
    throw SelfMapViolation("constant symbol target lies outside the open ball");
  SymbolMap s;
  s.family_ = SymbolFamily::kConstant;
  s.dim_ = static_cast<int>(w0.size());
  s.vec_ = std::move(w0);
  return s;
}

SymbolMap SymbolMap::dilation(double r, int dim) {
  require(dim >= 1, "dimension must be >= 1");
  require(std::isfinite(r) && r > 0, "dilation factor must be positive");
  if (r > 1) throw SelfMapViolation("dilation factor above 1 leaves the ball");
  SymbolMap s;
  s.family_ = SymbolFamily::kDilation;
  s.dim_ = dim;
  s.r_ = r;
  return s;
}

SymbolMap SymbolMap::diagonal_linear(std::vector<std::complex<double>> lambda) {
  require(!lambda.empty(), "diagonal symbol needs coefficients");
  for (const auto& c : lambda)
    require(std::isfinite(c.real()) && std::isfinite(c.imag()),
            "diagonal coefficients must be finite");
  if (norm2_of(lambda) > 1)
    throw SelfMapViolation(
        "diagonal coefficients with sum |lambda|^2 > 1 leave the ball");
  SymbolMap s;
  s.family_ = SymbolFamily::kDiagonalLinear;
  s.dim_ = static_cast<int>(lambda.size());
  s.vec_ = std::move(lambda);
  return s;
}

SymbolMap SymbolMap::lens_1d(double beta) {
  require(std::isfinite(beta) && beta > 0 && beta < 1,
          "lens exponent must be in (0, 1)");
  SymbolMap s;
  s.family_ = SymbolFamily::kLens1D;
  s.dim_ = 1;
  s.beta_ = beta;
  return s;
}

SymbolMap SymbolMap::embedded_lens(double beta, int dim) {
  require(dim >= 1, "dimension must be >= 1");
  SymbolMap s = lens_1d(beta);
  s.family_ = dim == 1 ? SymbolFamily::kLens1D : SymbolFamily::kEmbeddedLens;
  s.dim_ = dim;
  return s;
}

BallPoint SymbolMap::apply(const BallPoint& z) const {
  require(static_cast<int>(z.z.size()) == dim_, "symbol dimension mismatch");
  require(z.norm < 1, "symbol applied outside the open ball");
  BallPoint out;
  out.z.assign(dim_, 0);
  switch (family_) {
    case SymbolFamily::kConstant:
      out.z = vec_;
      break;
    case SymbolFamily::kDilation:
      for (int c = 0; c < dim_; ++c) out.z[c] = r_ * rho_ * z.z[c];
      break;
    case SymbolFamily::kDiagonalLinear:
      for (int c = 0; c < dim_; ++c) out.z[c] = vec_[c] * rho_ * z.z[c];
      break;
    case SymbolFamily::kLens1D:
    case SymbolFamily::kEmbeddedLens:
      out.z[0] = lens_value(beta_, rho_ * z.z[0]);
      break;
  }
  double n2 = 0;
  for (const auto& c : out.z) n2 += std::norm(c);
  out.norm = std::sqrt(n2);
  if (!(out.norm < 1))
    throw SelfMapViolation(std::string("self-map violation: ") +
                           olab::to_string(family_) + " at z = " +
                           point_text(z));
  return out;
}

SymbolMap SymbolMap::radial_restriction(double r) const {
  require(std::isfinite(r) && r > 0 && r < 1,
          "radial restriction needs r in (0, 1)");
  SymbolMap s = *this;
  s.rho_ *= r;
  return s;
}

bool SymbolMap::has_closed_form_sup() const {
  switch (family_) {
    case SymbolFamily::kConstant:
    case SymbolFamily::kDilation:
    case SymbolFamily::kDiagonalLinear:
      return true;
    case SymbolFamily::kLens1D:
    case SymbolFamily::kEmbeddedLens:
      return rho_ == 1;
  }
  return false;
}

double SymbolMap::sup_norm_closed_form() const {
  require(has_closed_form_sup(), "family has no closed-form sup norm");
  switch (family_) {
    case SymbolFamily::kConstant:
      return std::sqrt(norm2_of(vec_));
    case SymbolFamily::kDilation:
      return r_ * rho_;
    case SymbolFamily::kDiagonalLinear: {
      double m = 0;
      for (const auto& c : vec_) m = std::max(m, std::abs(c));
      return m * rho_;
    }
    case SymbolFamily::kLens1D:
    case SymbolFamily::kEmbeddedLens:
      return 1.0;  // approached along the real axis
  }
  return 0;
}

std::string SymbolMap::describe() const {
  std::ostringstream os;
  os << olab::to_string(family_) << "(";
  switch (family_) {
    case SymbolFamily::kConstant:
      os << "w0=" << point_text(BallPoint{vec_, 0});
      break;
    case SymbolFamily::kDilation:
      os << "r=" << format_double(r_) << ",dim=" << dim_;
      break;
    case SymbolFamily::kDiagonalLinear:
      os << "lambda=" << point_text(BallPoint{vec_, 0});
      break;
    case SymbolFamily::kLens1D:
      os << "beta=" << format_double(beta_);
      break;
    case SymbolFamily::kEmbeddedLens:
      os << "beta=" << format_double(beta_) << ",dim=" << dim_;
      break;
  }
  os << ")";
  if (rho_ != 1) os << " restricted r=" << format_double(rho_);
  return os.str();
}

std::string SymbolMap::to_json() const {
  nlohmann::json j;
  j["family"] = olab::to_string(family_);
  nlohmann::json p;
  switch (family_) {
    case SymbolFamily::kConstant: p["w0"] = complex_list(vec_); break;
    case SymbolFamily::kDilation:
      p["r"] = r_;
      p["dim"] = dim_;
      break;
    case SymbolFamily::kDiagonalLinear: p["lambda"] = complex_list(vec_); break;
    case SymbolFamily::kLens1D: p["beta"] = beta_; break;
    case SymbolFamily::kEmbeddedLens:
      p["beta"] = beta_;
      p["dim"] = dim_;
      break;
  }
  j["params"] = p;
  if (rho_ != 1) j["pre_dilation"] = rho_;
  if (!metadata.empty()) j["metadata"] = metadata;
  return j.dump();
}

SymbolMap SymbolMap::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("symbol spec is not valid JSON: ") + e.what());
  }
  try {
    const std::string family = j.at("family").get<std::string>();
    const nlohmann::json p = j.value("params", nlohmann::json::object());
    SymbolMap s;
    if (family == "constant")
      s = constant(complex_list_from(p.at("w0")));
    else if (family == "dilation")
      s = dilation(p.at("r").get<double>(), p.at("dim").get<int>());
    else if (family == "diagonal")
      s = diagonal_linear(complex_list_from(p.at("lambda")));
    else if (family == "lens")
      s = lens_1d(p.at("beta").get<double>());
    else if (family == "embedded_lens")
      s = embedded_lens(p.at("beta").get<double>(), p.at("dim").get<int>());
    else
      throw ConfigError("unknown symbol family: " + family);
    if (j.contains("pre_dilation")) {
      const double rho = j["pre_dilation"].get<double>();
      require(rho > 0 && rho <= 1, "pre_dilation must be in (0, 1]");
      if (rho < 1) s = s.radial_restriction(rho);
    }
    s.metadata = j.value("metadata", "");
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("symbol spec malformed: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("symbol spec invalid: ") + e.what());
  }
}

BoundaryLimit boundary_limit(const SymbolMap& phi,
                             const std::vector<std::complex<double>>& zeta,
                             std::vector<double> r_seq) {
  if (r_seq.empty())
    for (int k = 4; k <= 24; ++k) r_seq.push_back(1 - std::pow(2.0, -k));
  for (std::size_t i = 0; i < r_seq.size(); ++i) {
    require(r_seq[i] > 0 && r_seq[i] < 1, "radii must lie in (0, 1)");
    require(i == 0 || r_seq[i] > r_seq[i - 1], "radii must increase");
  }
  BallPoint scaled;
  scaled.z.resize(zeta.size());
  BoundaryLimit result;
  BallPoint prev;
  for (std::size_t k = 0; k < r_seq.size(); ++k) {
    for (std::size_t c = 0; c < zeta.size(); ++c)
      scaled.z[c] = r_seq[k] * zeta[c];
    scaled.norm = r_seq[k];
    BallPoint img = phi.apply(scaled);
    result.steps = static_cast<int>(k) + 1;
    if (k > 0) {
      double d2 = 0;
      for (std::size_t c = 0; c < img.z.size(); ++c)
        d2 += std::norm(img.z[c] - prev.z[c]);
      if (std::sqrt(d2) < 1e-9) {
        result.point = std::move(img);
        result.converged = true;
        return result;
      }
    }
    prev = std::move(img);
  }
  result.point = std::move(prev);
  result.converged = false;
  return result;
}

SupNormEstimate sup_norm_estimate(const SymbolMap& phi, std::size_t samples,
                                  std::uint64_t seed) {
  require(samples >= 1, "need at least one sample");
  const int N = phi.dim();
  SupNormEstimate est;
  const RadialLaw& law = radial_law(N, 0);
  const CounterRng rng(seed, 21);
  BallPoint z;
  for (std::size_t i = 0; i < samples; ++i) {
    ball_point_into(rng, i, law, z);
    est.lower_bound = std::max(est.lower_bound, phi.apply(z).norm);
  }
  // near-boundary radial sweep along the coordinate axes and sampled
  // directions
  const CounterRng dir_rng(seed, 22);
  BallPoint dir;
  BallPoint probe;
  probe.z.resize(N);
  const std::size_t sweeps = 64 + static_cast<std::size_t>(N);
  for (std::size_t d = 0; d < sweeps; ++d) {
    if (d < static_cast<std::size_t>(N)) {
      dir.z.assign(N, 0);
      dir.z[d] = 1;
    } else {
      sphere_point_into(dir_rng, d, N, dir);
    }
    for (int k = 1; k <= 44; ++k) {
      const double r = 1 - std::pow(2.0, -k);
      for (int c = 0; c < N; ++c) probe.z[c] = r * dir.z[c];
      probe.norm = r;
      est.lower_bound = std::max(est.lower_bound, phi.apply(probe).norm);
    }
  }
  est.has_closed_form = phi.has_closed_form_sup();
  if (est.has_closed_form) est.closed_form = phi.sup_norm_closed_form();
  return est;
}

double beta_from_aperture(double b) {
  require(b > 1, "aperture must exceed 1");
  if (b == std::numeric_limits<double>::infinity()) return 1;
  return (2 / kPi) * std::acos(1 / b);
}

double aperture_from_beta(double beta) {
  require(std::isfinite(beta) && beta > 0 && beta < 1,
          "lens exponent must be in (0, 1)");
  return 1 / std::cos(beta * kPi / 2);
}

}  // namespace olab
