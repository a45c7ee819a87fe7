#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "olab/verdict.hpp"

// Orlicz functions psi: [0, inf) -> [0, inf): convex, increasing, psi(0) = 0,
// psi(x)/x -> inf. The growth classes certified here separate power-like
// growth (doubling) from exponential growth (squaring), and that separation
// is what the composition-operator criteria in the rest of the library key on.

namespace olab {

enum class OrliczFamily {
  kPower,                   // x^p, p >= 1
  kExpPower,                // exp(a x^b) - 1, a > 0, b >= 1
  kLogExp,                  // exp(a ln(x+1)^b) - 1, a > 0, b >= 1
  kPiecewiseAffineInverse,  // inverse of a piecewise-affine concave v
  kTabulated,               // monotone interpolation of (x, psi(x)) pairs
};

class OrliczFunction {
 public:
  static OrliczFunction power(double p);
  static OrliczFunction exp_power(double a, double b);
  static OrliczFunction log_exp(double a, double b);

  // Table must start at (0, 0) and be strictly increasing in x,
  // nondecreasing in y. Evaluation refuses to extrapolate.
  static OrliczFunction tabulated(std::vector<double> x, std::vector<double> y);

  // psi = v^{-1} for a piecewise-affine concave increasing v given by its
  // breakpoints a_i and values v_i = v(a_i) (a_0 = v_0 = 0). Beyond the last
  // breakpoint both v and psi extend with their final slope.
  static OrliczFunction piecewise_affine_inverse(std::vector<double> a,
                                                 std::vector<double> v);

  OrliczFamily family() const { return family_; }

  // Exact closed form where the family has one. Overflow saturates to
  // +infinity; callers must not order two saturated values against each
  // other (use log_evaluate for comparisons at large x).
  double evaluate(double x) const;

  // ln psi(x). Stable where evaluate() saturates.
  double log_evaluate(double x) const;

  // Largest admissible argument (finite only for kTabulated).
  double domain_max() const;

  // Inverse with |psi(x) - y| <= rel_tol * max(y, 1). Closed form for
  // kPower / kExpPower, table inversion for kPiecewiseAffineInverse,
  // bracketing bisection otherwise.
  double inverse(double y, double rel_tol = 1e-12) const;

  double param_p() const { return p_; }
  double param_a() const { return a_; }
  double param_b() const { return b_; }
  const std::vector<double>& table_x() const { return xs_; }
  const std::vector<double>& table_y() const { return ys_; }

  std::string describe() const;
  std::string to_json() const;
  static OrliczFunction from_json(const std::string& text);

 private:
  OrliczFunction() = default;

  OrliczFamily family_ = OrliczFamily::kPower;
  double p_ = 0, a_ = 0, b_ = 0;
  // kTabulated: (x, psi(x)) nodes. kPiecewiseAffineInverse: breakpoints of v
  // in xs_ and v-values in ys_, i.e. psi maps ys_ -> xs_.
  std::vector<double> xs_, ys_;
};

// The battery every cross-check and report runs against.
std::vector<OrliczFunction> builtin_battery();

// ---------------------------------------------------------------------------
// Growth-class certification.

enum class GrowthCondition {
  kNabla2,         // exists beta > 1: psi(beta x) >= 2 beta psi(x) for large x
  kNabla0,         // for each B > 1 some C_B >= 1: psi(Bx)/psi(x) <= psi(C_B B y)/psi(y), x <= y large
  kUniformNabla0,  // one C works for every tested B
  kDelta2,         // psi(2x) <= K psi(x) for large x
  kDeltaSharp2,    // psi(x)^2 <= psi(Cx) for large x
};

const char* to_string(GrowthCondition c);
GrowthCondition growth_condition_from_string(const std::string& s);

// Geometric evaluation grid. Witness inequalities are tested on every grid
// point; a Pass must hold from some grid point x0 onward, covering at least
// the top decade of the usable grid. The default upper end must stay above
// C^(1+sqrt(2)) for the largest squaring-condition candidate C = 2^20, or
// a function that eventually breaks psi(x)^2 <= psi(Cx) would still pass on
// the visible grid; 2^52 clears that onset (~2^48.3) by a full decade.
struct GridSpec {
  double x_min = 16.0;              // 2^4
  double x_max = 4503599627370496;  // 2^52
  double ratio = 2.0;

  std::vector<double> points() const;
};

struct ClassCertificate {
  GrowthCondition condition = GrowthCondition::kDelta2;
  Verdict verdict = Verdict::kInconclusive;

  // Witness constants; which fields are meaningful depends on the condition.
  double beta = 0;              // kNabla2
  double K = 0;                 // kDelta2
  double C = 0;                 // kDeltaSharp2, kUniformNabla0
  std::vector<double> B_grid;   // kNabla0 / kUniformNabla0: tested B values
  std::vector<double> C_B;      // kNabla0: chosen C per B

  double x0 = 0;                // inequality certified for grid x >= x0
  std::vector<double> grid;     // evaluation grid actually used
  std::string psi;              // description of the certified function

  std::string to_json() const;
  static ClassCertificate from_json(const std::string& text);
};

ClassCertificate certify(const OrliczFunction& psi, GrowthCondition condition,
                         const GridSpec& grid = {});
std::vector<ClassCertificate> certify_all(const OrliczFunction& psi,
                                          const GridSpec& grid = {});

// Re-evaluates the stored witness on the stored grid. True iff the
// certificate still justifies its Pass verdict.
bool revalidate(const ClassCertificate& cert, const OrliczFunction& psi);

// Consistency of a verdict set with the two implications that hold between
// the classes: uniform Nabla0 => Nabla2, and DeltaSharp2 => uniform Nabla0.
struct ImplicationCheck {
  std::string implication;
  std::string status;  // "consistent" | "violated" | "not_applicable"
};
std::vector<ImplicationCheck> check_implications(
    const std::vector<ClassCertificate>& certs);

}  // namespace olab
