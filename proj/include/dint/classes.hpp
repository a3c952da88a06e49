#ifndef DINT_CLASSES_HPP
#define DINT_CLASSES_HPP

#include <optional>
#include <span>

#include "dint/semigroup.hpp"

namespace dint {

struct SectorViolation {
  Complex lambda;
  int atom_id;
  double value;  // |lambda| * resolvent norm, or 0 for a spectral hit
  bool spectral_hit;
};

struct SectorProbe {
  double delta;
  std::vector<double> eps_list;
  std::vector<double> m_eps;  // measured per eps
  std::vector<std::vector<double>> ray_angles;  // per eps
  std::vector<double> radii;
  bool pass;
  std::optional<SectorViolation> violation;
};

/// Sectoriality certificate: the per-block spectra must avoid the open
/// sector of half-angle pi/2 + delta, and |lambda| ||R(lambda,A(s))|| is
/// measured over probe rays for each eps.
SectorProbe sectorial_check(const OperatorField& a, double delta,
                            std::span<const double> eps_list, std::span<const double> radii,
                            int rays_per_eps, double cap = kDefaultCap);
std::vector<double> default_sector_radii();

/// Probe grid for a sector of half-angle delta_prime.
std::vector<Complex> sector_grid(double delta_prime, std::span<const double> radii,
                                 int n_angles);

/// max over the grid and atoms of ||e^{z A_k}||.
double analytic_check(const OperatorField& a, double delta_prime,
                      std::span<const Complex> z_grid);

struct EdViolation {
  Complex lambda;
  int atom_id;
  double value;
  bool spectral_hit;
};

struct EdReport {
  bool pass;
  std::optional<EdViolation> violation;
  std::vector<Complex> grid;
};

/// Grid certificate for the resolvent condition ||R(lambda,A(s))|| <=
/// C |Im lambda| on the exponential region. Grid points must satisfy
/// a e^{-b Re lambda} <= |Im lambda| and Re lambda <= omega.
EdReport eventually_differentiable_check(const OperatorField& a, double region_a,
                                         double region_b, double c_bound, double omega,
                                         std::span<const Complex> lambda_grid);

/// Boundary sample of the region a e^{-b x} <= |y|, x in [x_lo, omega].
std::vector<Complex> theta_grid(double region_a, double region_b, double omega, double x_lo,
                                std::size_t n_points, double margin = 1.25);

struct ModulusTable {
  std::vector<double> probes;
  std::vector<double> modulus;  // max over t_grid and atoms of ||T(t+d) - T(t)||
  bool pass;
};

ModulusTable uniform_norm_continuity_check(const DirectSemigroup& s, double t0,
                                           std::span<const double> t_grid,
                                           std::span<const double> delta_probes);

struct AxisDecayTable {
  std::vector<double> r;
  std::vector<double> value;  // max over +-ir and atoms of ||R(ir, A_k)||
  bool pass;
};

/// Thm-style axis decay test for immediate norm continuity. Requires the
/// exponential bound ||e^{tA_k}|| <= M e^{-eps t} on the measurement grid
/// (BoundViolation otherwise); passes when the axis table decays by >= 10x
/// over the last two decades and ends below 1e-2 of its initial value.
AxisDecayTable imm_norm_continuous_check(const OperatorField& a, double eps, double m_bound,
                                         std::span<const double> r_grid);
AxisDecayTable imm_norm_continuous_check(const OperatorField& a, double eps, double m_bound,
                                         std::span<const double> r_grid,
                                         std::span<const double> bound_grid);
std::vector<double> default_axis_grid(double r_max = 1e4, std::size_t n = 41);

struct CompactCheck {
  bool pass;
  bool norm_continuity_pass;
  bool resolvent_tail_pass;
  AxisDecayTable axis;
  std::vector<double> resolvent_norms;  // per atom at the largest truncation
  double tail_max;
  double previous_max;
};

/// Immediate-compactness test for a counting-measure family: immediate norm
/// continuity at the largest truncation plus ||R(lambda, A_n)|| tailing to
/// zero in the doubling-window sense.
CompactCheck imm_compact_check(const GeneratorFamily& family, Complex lambda,
                               std::span<const int> n_schedule, double tau);

}  // namespace dint

#endif
