#ifndef DINT_ASYMPTOTICS_HPP
#define DINT_ASYMPTOTICS_HPP

#include <span>
#include <string>

#include "dint/semigroup.hpp"

namespace dint {

/// Signed default axis grid: +-41 log-spaced magnitudes in [1, r_max].
std::vector<double> default_signed_r_grid(double r_max = 1e4, std::size_t n_per_sign = 41);
/// Default decay grid: 101 log-spaced times in [1e-2, t_max].
std::vector<double> default_decay_grid(double t_max = 1e3, std::size_t n = 101);

struct GrowthTable {
  double alpha = 0.0;
  std::vector<double> r;
  std::vector<double> axis_value;      // max_k ||R(ir, A_k)||
  std::vector<double> weighted_value;  // |r|^-alpha * axis_value
  double sup = 0.0;                    // over the grid
};

/// Thm-style resolvent growth functional sup |r|^-alpha ||R(ir, A(s))||,
/// evaluated over the given signed grid. InSpectrum when some ir touches a
/// block's spectrum.
GrowthTable resolvent_growth(const OperatorField& a, double alpha,
                             std::span<const double> r_grid);

struct DecayTable {
  double alpha = 0.0;
  std::vector<double> t;
  std::vector<std::vector<double>> per_atom;  // [t index][atom index], t^{1/alpha}||e^{tA}A^-1||
  std::vector<double> value;                  // per-t sup over atoms
  std::vector<std::size_t> argmax_atom;       // per-t index of the sup
  double sup = 0.0;
  double inverse_sup = 0.0;  // max_k ||A_k^-1||
};

DecayTable decay_sup(const OperatorField& a, double alpha, std::span<const double> t_grid,
                     double inverse_cap = kDefaultCap);

enum class DecayVerdict { BothFiniteStable, IOnly, IIOnly, Neither };
const char* decay_verdict_name(DecayVerdict v);

struct DecayReport {
  double alpha;
  std::vector<int> schedule;
  std::vector<double> resolvent_sup_by_n;  // condition (i) per truncation
  std::vector<double> decay_sup_by_n;      // condition (ii) per truncation
  std::vector<double> inverse_sup_by_n;
  std::vector<double> uniform_bound_by_n;  // sup_t ||T(t)|| measured per truncation
  GrowthTable growth;                      // at the largest truncation
  DecayTable decay;                        // at the largest truncation
  bool stable_i = false;
  bool stable_ii = false;
  bool hyp_uniform_bound_ok = false;
  bool hyp_axis_ok = false;
  bool hyp_inverse_ok = false;
  std::vector<std::string> warnings;  // hypothesis violations, by name
  DecayVerdict verdict = DecayVerdict::Neither;
};

/// Evaluates both Thm-functionals along a doubling schedule, together with
/// the theorem's hypotheses (uniform semigroup bound, resolvents on the
/// axis grid, bounded axis sup per fixed r, bounded inverses). Hypothesis
/// failures are reported in `warnings`, never thrown.
DecayReport equivalence_report(const GeneratorFamily& family, double alpha,
                               std::span<const double> r_grid, std::span<const double> t_grid,
                               std::span<const int> n_schedule);

struct DecayFit {
  double beta;          // fitted log-log slope
  double residual_rms;  // in log space over the fit window
  bool no_decay;        // table was non-decreasing; beta fitted anyway
  double window_lo;
  double window_hi;
  std::size_t n_points;
};

/// Least-squares slope of log sup_k ||e^{tA_k} A_k^-1|| against log t over
/// the last decade of the scaling regime (the largest window end whose sup
/// is attained away from the terminal atom, i.e. untouched by truncation).
DecayFit fit_decay_exponent(const GeneratorFamily& family, std::span<const double> t_grid,
                            double inverse_cap = kDefaultCap);

}  // namespace dint

#endif
