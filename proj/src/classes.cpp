#include "dint/classes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/SVD>

#include "dint/expm.hpp"

namespace dint {

namespace {

double sigma_max(const Matrix& m) { return m.jacobiSvd().singularValues()(0); }

double sigma_min(const Matrix& m) {
  const auto sv = m.jacobiSvd().singularValues();
  return sv(sv.size() - 1);
}

// Per-atom resolvent norm with the argmax atom; +inf on exact spectral hits.
std::pair<double, std::size_t> resolvent_norm_argmax(const OperatorField& a, Complex lambda) {
  std::vector<double> vals(a.size());
  parallel_for(a.size(), [&](std::size_t k) {
    const Matrix m =
        lambda * Matrix::Identity(a.block(k).rows(), a.block(k).cols()) - a.block(k);
    const double smin = sigma_min(m);
    vals[k] = smin == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / smin;
  });
  std::size_t arg = 0;
  for (std::size_t k = 1; k < vals.size(); ++k)
    if (vals[k] > vals[arg]) arg = k;
  return {vals[arg], arg};
}

}  // namespace

std::vector<double> default_sector_radii() { return logspace(-2.0, 2.0, 25); }

SectorProbe sectorial_check(const OperatorField& a, double delta,
                            std::span<const double> eps_list, std::span<const double> radii,
                            int rays_per_eps, double cap) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  if (!(delta >= 0.0) || !(delta < half_pi))
    throw Error(Errc::BadGrid, "sector angle must lie in [0, pi/2)");
  if (eps_list.empty() || radii.empty() || rays_per_eps < 1)
    throw Error(Errc::BadGrid, "sector probe needs eps values, radii and rays");
  for (double eps : eps_list)
    if (!(eps > 0.0) || !(eps < delta))
      throw Error(Errc::BadGrid, "eps values must lie in (0, delta)");

  SectorProbe probe;
  probe.delta = delta;
  probe.eps_list.assign(eps_list.begin(), eps_list.end());
  probe.radii.assign(radii.begin(), radii.end());
  probe.pass = true;

  // Spectral inclusion first: no eigenvalue may sit inside the open sector
  // of half-angle pi/2 + delta (the origin is excluded from the sector).
  const SpectrumReport spec = spectrum(a);
  const double zero_tol = 1e-14 * (1.0 + op_norm(a));
  for (const SpectrumPoint& p : spec.points) {
    if (std::abs(p.value) <= zero_tol) continue;
    if (std::abs(std::arg(p.value)) < half_pi + delta) {
      probe.pass = false;
      probe.violation = SectorViolation{p.value, p.atom_id, 0.0, true};
      break;
    }
  }

  const auto& atoms = a.space().atoms();
  for (double eps : eps_list) {
    const double theta_max = half_pi + delta - eps;
    const std::vector<double> angles = linspace(-theta_max, theta_max, rays_per_eps);
    probe.ray_angles.push_back(angles);
    double m_eps = 0.0;
    for (double theta : angles) {
      for (double r : radii) {
        const Complex lambda = std::polar(r, theta);
        const auto [rn, arg] = resolvent_norm_argmax(a, lambda);
        const double value = std::abs(lambda) * rn;
        if (!std::isfinite(value) || value > cap) {
          if (probe.pass) {
            probe.pass = false;
            probe.violation =
                SectorViolation{lambda, atoms[arg].id, value, !std::isfinite(value)};
          }
        }
        m_eps = std::max(m_eps, value);
      }
    }
    probe.m_eps.push_back(m_eps);
  }
  return probe;
}

std::vector<Complex> sector_grid(double delta_prime, std::span<const double> radii,
                                 int n_angles) {
  if (delta_prime < 0.0 || n_angles < 1 || radii.empty())
    throw Error(Errc::BadGrid, "bad sector grid parameters");
  std::vector<Complex> grid;
  const std::vector<double> angles =
      n_angles == 1 ? std::vector<double>{0.0} : linspace(-delta_prime, delta_prime, n_angles);
  for (double theta : angles)
    for (double r : radii) grid.push_back(std::polar(r, theta));
  return grid;
}

double analytic_check(const OperatorField& a, double delta_prime,
                      std::span<const Complex> z_grid) {
  if (delta_prime < 0.0) throw Error(Errc::BadGrid, "sector angle must be nonnegative");
  if (z_grid.empty()) throw Error(Errc::BadGrid, "empty sector grid");
  std::vector<double> per_z(z_grid.size());
  std::vector<std::string> failures(z_grid.size());
  parallel_for(z_grid.size(), [&](std::size_t i) {
    try {
      double m = 0.0;
      for (std::size_t k = 0; k < a.size(); ++k)
        m = std::max(m, sigma_max(expm(z_grid[i] * a.block(k))));
      per_z[i] = m;
    } catch (const Error& e) {
      failures[i] = e.what();
    }
  });
  for (const auto& f : failures)
    if (!f.empty()) throw Error(Errc::ExpFailure, f);
  double m = 0.0;
  for (double v : per_z) m = std::max(m, v);
  return m;
}

std::vector<Complex> theta_grid(double region_a, double region_b, double omega, double x_lo,
                                std::size_t n_points, double margin) {
  if (!(region_a > 0.0) || !(region_b > 0.0) || !(x_lo < omega) || n_points < 2)
    throw Error(Errc::BadGrid, "bad theta-region parameters");
  std::vector<Complex> grid;
  for (double x : linspace(x_lo, omega, n_points)) {
    const double y = margin * region_a * std::exp(-region_b * x);
    grid.emplace_back(x, y);
    grid.emplace_back(x, -y);
  }
  return grid;
}

EdReport eventually_differentiable_check(const OperatorField& a, double region_a,
                                         double region_b, double c_bound, double omega,
                                         std::span<const Complex> lambda_grid) {
  if (!(region_a > 0.0) || !(region_b > 0.0) || !(c_bound > 0.0))
    throw Error(Errc::BadGrid, "region constants must be positive");
  if (lambda_grid.empty()) throw Error(Errc::BadGrid, "empty lambda grid");
  EdReport rep;
  rep.grid.assign(lambda_grid.begin(), lambda_grid.end());
  rep.pass = true;

  const auto& atoms = a.space().atoms();
  const double anorm = op_norm(a);
  for (Complex lambda : lambda_grid) {
    if (region_a * std::exp(-region_b * lambda.real()) > std::abs(lambda.imag()) ||
        lambda.real() > omega)
      throw Error(Errc::BadGrid, "grid point outside the theta region");
    const auto [rn, arg] = resolvent_norm_argmax(a, lambda);
    const double spectral_tol = 1e-12 * (1.0 + std::abs(lambda) + anorm);
    if (!std::isfinite(rn) || 1.0 / rn < spectral_tol) {
      rep.pass = false;
      rep.violation = EdViolation{lambda, atoms[arg].id, rn, true};
      return rep;
    }
    if (rn > c_bound * std::abs(lambda.imag())) {
      rep.pass = false;
      rep.violation = EdViolation{lambda, atoms[arg].id, rn, false};
      return rep;
    }
  }
  return rep;
}

ModulusTable uniform_norm_continuity_check(const DirectSemigroup& s, double t0,
                                           std::span<const double> t_grid,
                                           std::span<const double> delta_probes) {
  if (t_grid.empty() || delta_probes.empty())
    throw Error(Errc::BadGrid, "empty grid for norm-continuity check");
  for (double t : t_grid)
    if (!(t > t0)) throw Error(Errc::BadGrid, "t grid must lie strictly above t0");
  for (double d : delta_probes)
    if (d < 0.0) throw Error(Errc::BadGrid, "probes must be nonnegative");

  ModulusTable table;
  table.probes.assign(delta_probes.begin(), delta_probes.end());
  table.modulus.resize(delta_probes.size());

  const OperatorField& gen = s.generator();
  for (std::size_t p = 0; p < delta_probes.size(); ++p) {
    const double d = delta_probes[p];
    double m = 0.0;
    for (double t : t_grid) {
      if (d == 0.0) continue;
      std::vector<double> per_atom(gen.size());
      parallel_for(gen.size(), [&](std::size_t k) {
        per_atom[k] =
            sigma_max(expm((t + d) * gen.block(k)) - expm(t * gen.block(k)));
      });
      for (double v : per_atom) m = std::max(m, v);
    }
    table.modulus[p] = m;
  }

  bool pass = true;
  for (std::size_t p = 1; p < table.modulus.size(); ++p)
    if (table.modulus[p] > table.modulus[p - 1] * (1.0 + 1e-9) + 1e-12) pass = false;
  if (!table.modulus.empty() &&
      table.modulus.back() > 0.75 * table.modulus.front() + 1e-12)
    pass = false;
  table.pass = pass;
  return table;
}

std::vector<double> default_axis_grid(double r_max, std::size_t n) {
  return logspace(0.0, std::log10(r_max), n);
}

AxisDecayTable imm_norm_continuous_check(const OperatorField& a, double eps, double m_bound,
                                         std::span<const double> r_grid) {
  const std::vector<double> grid = default_bound_grid();
  return imm_norm_continuous_check(a, eps, m_bound, r_grid, grid);
}

AxisDecayTable imm_norm_continuous_check(const OperatorField& a, double eps, double m_bound,
                                         std::span<const double> r_grid,
                                         std::span<const double> bound_grid) {
  if (!(eps > 0.0) || !(m_bound >= 1.0))
    throw Error(Errc::BadGrid, "need eps > 0 and M >= 1");
  if (r_grid.empty()) throw Error(Errc::BadGrid, "empty axis grid");

  const ExpBound measured = estimate_bound(a, bound_grid);
  for (std::size_t i = 0; i < measured.t_grid.size(); ++i) {
    const double allowed = std::log(m_bound) - eps * measured.t_grid[i] + 1e-9;
    if (measured.log_sup_curve[i] > allowed)
      throw Error(Errc::BoundViolation,
                  "||e^{tA}|| exceeds M e^{-eps t} at t = " +
                      std::to_string(measured.t_grid[i]));
  }

  AxisDecayTable table;
  table.r.assign(r_grid.begin(), r_grid.end());
  table.value.resize(r_grid.size());
  parallel_for(r_grid.size(), [&](std::size_t i) {
    const double up = resolvent_norm(a, Complex(0.0, r_grid[i]));
    const double down = resolvent_norm(a, Complex(0.0, -r_grid[i]));
    table.value[i] = std::max(up, down);
  });

  // Decay verdict: >= 10x drop over the last two decades and a final value
  // below 1e-2 of the initial one.
  const double r_last = table.r.back();
  std::size_t i2 = 0;
  for (std::size_t i = 0; i < table.r.size(); ++i)
    if (table.r[i] <= r_last / 100.0) i2 = i;
  table.pass = table.value[i2] >= 10.0 * table.value.back() &&
               table.value.back() < 1e-2 * table.value.front();
  return table;
}

CompactCheck imm_compact_check(const GeneratorFamily& family, Complex lambda,
                               std::span<const int> n_schedule, double tau) {
  if (n_schedule.empty()) throw Error(Errc::BadGrid, "empty truncation schedule");
  if (!(tau > 0.0)) throw Error(Errc::BadGrid, "tail tolerance must be positive");
  for (std::size_t i = 1; i < n_schedule.size(); ++i)
    if (n_schedule[i] <= n_schedule[i - 1])
      throw Error(Errc::BadGrid, "truncation schedule must be increasing");

  // lambda must stay in every block's resolvent set along the schedule.
  for (int n : n_schedule) {
    const OperatorField field = family.instantiate(n);
    const auto& atoms = field.space().atoms();
    for (std::size_t k = 0; k < field.size(); ++k) {
      const Matrix m =
          lambda * Matrix::Identity(field.block(k).rows(), field.block(k).cols()) -
          field.block(k);
      const double tol = 1e-12 * (1.0 + std::abs(lambda) + sigma_max(field.block(k)));
      if (sigma_min(m) < tol)
        throw Error(Errc::InSpectrum,
                    "lambda is in the spectrum at atom id " + std::to_string(atoms[k].id) +
                        " (truncation " + std::to_string(n) + ")",
                    atoms[k].id);
    }
  }

  const int n_max = n_schedule.back();
  const OperatorField field = family.instantiate(n_max);

  const ExpBound bound = estimate_bound(field, default_bound_grid());
  if (!(bound.omega < 0.0))
    throw Error(Errc::BoundViolation,
                "family has no negative uniform exponential bound (omega = " +
                    std::to_string(bound.omega) + ")");

  CompactCheck check;
  // Probes capped at the truncation scale so they cannot outrun the family.
  const std::vector<double> r_grid = default_axis_grid(static_cast<double>(n_max));
  try {
    check.axis = imm_norm_continuous_check(field, -bound.omega, bound.M, r_grid);
    check.norm_continuity_pass = check.axis.pass;
  } catch (const Error& e) {
    if (e.code() != Errc::BoundViolation) throw;
    check.norm_continuity_pass = false;
  }

  check.resolvent_norms.resize(field.size());
  parallel_for(field.size(), [&](std::size_t k) {
    const Matrix m =
        lambda * Matrix::Identity(field.block(k).rows(), field.block(k).cols()) -
        field.block(k);
    check.resolvent_norms[k] = 1.0 / sigma_min(m);
  });
  const auto window_max = [&](int lo, int hi) {
    double m = 0.0;
    for (int i = std::max(lo, 1); i <= hi; ++i)
      m = std::max(m, check.resolvent_norms[static_cast<std::size_t>(i - 1)]);
    return m;
  };
  check.tail_max = window_max(n_max / 2, n_max);
  check.previous_max = window_max(n_max / 4, n_max / 2);
  check.resolvent_tail_pass = check.tail_max <= tau && check.tail_max <= check.previous_max;
  check.pass = check.norm_continuity_pass && check.resolvent_tail_pass;
  return check;
}

}  // namespace dint
