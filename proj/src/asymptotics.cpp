#include "dint/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

#include "dint/expm.hpp"

namespace dint {

namespace {

double sigma_max(const Matrix& m) { return m.jacobiSvd().singularValues()(0); }

double sigma_min(const Matrix& m) {
  const auto sv = m.jacobiSvd().singularValues();
  return sv(sv.size() - 1);
}

bool pair_stable(double a, double b, double rel = 0.25) {
  if (!std::isfinite(a) || !std::isfinite(b)) return false;
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 || std::abs(a - b) <= rel * scale;
}

bool sequence_stable(std::span<const double> v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!pair_stable(v[i - 1], v[i])) return false;
  return !v.empty() && std::isfinite(v.back());
}

}  // namespace

std::vector<double> default_signed_r_grid(double r_max, std::size_t n_per_sign) {
  const std::vector<double> mags = logspace(0.0, std::log10(r_max), n_per_sign);
  std::vector<double> grid;
  grid.reserve(2 * mags.size());
  for (auto it = mags.rbegin(); it != mags.rend(); ++it) grid.push_back(-*it);
  for (double m : mags) grid.push_back(m);
  return grid;
}

std::vector<double> default_decay_grid(double t_max, std::size_t n) {
  return logspace(-2.0, std::log10(t_max), n);
}

GrowthTable resolvent_growth(const OperatorField& a, double alpha,
                             std::span<const double> r_grid) {
  if (!(alpha > 0.0)) throw Error(Errc::BadGrid, "alpha must be positive");
  if (r_grid.empty()) throw Error(Errc::BadGrid, "empty axis grid");
  for (double r : r_grid)
    if (std::abs(r) < 1.0) throw Error(Errc::BadGrid, "axis grid needs |r| >= 1");

  GrowthTable table;
  table.alpha = alpha;
  table.r.assign(r_grid.begin(), r_grid.end());
  table.axis_value.resize(r_grid.size());
  table.weighted_value.resize(r_grid.size());

  const auto& atoms = a.space().atoms();
  const double anorm = op_norm(a);
  std::vector<int> hit(r_grid.size(), -1);
  parallel_for(r_grid.size(), [&](std::size_t i) {
    const Complex lambda(0.0, table.r[i]);
    double sup = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      const Matrix m =
          lambda * Matrix::Identity(a.block(k).rows(), a.block(k).cols()) - a.block(k);
      const double smin = sigma_min(m);
      const double tol = 1e-12 * (1.0 + std::abs(lambda) + anorm);
      if (smin < tol) {
        hit[i] = static_cast<int>(k);
        return;
      }
      sup = std::max(sup, 1.0 / smin);
    }
    table.axis_value[i] = sup;
    table.weighted_value[i] = std::pow(std::abs(table.r[i]), -alpha) * sup;
  });
  for (std::size_t i = 0; i < r_grid.size(); ++i)
    if (hit[i] >= 0)
      throw Error(Errc::InSpectrum,
                  "ir touches the spectrum at r = " + std::to_string(table.r[i]) +
                      ", atom id " + std::to_string(atoms[static_cast<std::size_t>(hit[i])].id),
                  atoms[static_cast<std::size_t>(hit[i])].id);

  table.sup = *std::max_element(table.weighted_value.begin(), table.weighted_value.end());
  return table;
}

DecayTable decay_sup(const OperatorField& a, double alpha, std::span<const double> t_grid,
                     double inverse_cap) {
  if (!(alpha > 0.0)) throw Error(Errc::BadGrid, "alpha must be positive");
  if (t_grid.empty()) throw Error(Errc::BadGrid, "empty decay grid");

  const OperatorField inv = inverse(a, inverse_cap);

  DecayTable table;
  table.alpha = alpha;
  table.t.assign(t_grid.begin(), t_grid.end());
  table.per_atom.assign(t_grid.size(), std::vector<double>(a.size()));
  table.value.resize(t_grid.size());
  table.argmax_atom.resize(t_grid.size());
  table.inverse_sup = op_norm(inv);

  parallel_for(t_grid.size(), [&](std::size_t i) {
    const double t = table.t[i];
    const double weight = std::pow(t, 1.0 / alpha);
    for (std::size_t k = 0; k < a.size(); ++k) {
      const Matrix& blk = a.block(k);
      double nrm;
      if (blk.rows() == 1)
        nrm = std::exp(t * blk(0, 0).real()) * std::abs(inv.block(k)(0, 0));
      else
        nrm = sigma_max(expm(t * blk) * inv.block(k));
      table.per_atom[i][k] = weight * nrm;
    }
    std::size_t arg = 0;
    for (std::size_t k = 1; k < a.size(); ++k)
      if (table.per_atom[i][k] > table.per_atom[i][arg]) arg = k;
    table.argmax_atom[i] = arg;
    table.value[i] = table.per_atom[i][arg];
  });

  table.sup = *std::max_element(table.value.begin(), table.value.end());
  return table;
}

const char* decay_verdict_name(DecayVerdict v) {
  switch (v) {
    case DecayVerdict::BothFiniteStable: return "both-finite-stable";
    case DecayVerdict::IOnly: return "(i)-only";
    case DecayVerdict::IIOnly: return "(ii)-only";
    case DecayVerdict::Neither: return "neither";
  }
  return "unknown";
}

DecayReport equivalence_report(const GeneratorFamily& family, double alpha,
                               std::span<const double> r_grid, std::span<const double> t_grid,
                               std::span<const int> n_schedule) {
  if (n_schedule.empty()) throw Error(Errc::BadGrid, "empty truncation schedule");
  for (std::size_t i = 1; i < n_schedule.size(); ++i)
    if (n_schedule[i] <= n_schedule[i - 1])
      throw Error(Errc::BadGrid, "truncation schedule must be increasing");

  DecayReport rep;
  rep.alpha = alpha;
  rep.schedule.assign(n_schedule.begin(), n_schedule.end());

  // Axis values per fixed r, per truncation, for the fixed-r hypothesis.
  std::vector<std::vector<double>> axis_by_n;

  for (int n : n_schedule) {
    const OperatorField field = family.instantiate(n);
    const GrowthTable growth = resolvent_growth(field, alpha, r_grid);
    const DecayTable decay = decay_sup(field, alpha, t_grid);
    const ExpBound bound = estimate_bound(field, default_bound_grid());
    double sup_norm = 0.0;
    for (double lv : bound.log_sup_curve) sup_norm = std::max(sup_norm, std::exp(lv));
    rep.resolvent_sup_by_n.push_back(growth.sup);
    rep.decay_sup_by_n.push_back(decay.sup);
    rep.inverse_sup_by_n.push_back(decay.inverse_sup);
    rep.uniform_bound_by_n.push_back(sup_norm);
    axis_by_n.push_back(growth.axis_value);
    if (n == n_schedule.back()) {
      rep.growth = growth;
      rep.decay = decay;
    }
  }

  rep.hyp_uniform_bound_ok = sequence_stable(rep.uniform_bound_by_n) &&
                             rep.uniform_bound_by_n.back() < 1e6;
  rep.hyp_inverse_ok = sequence_stable(rep.inverse_sup_by_n);
  rep.hyp_axis_ok = true;
  for (std::size_t i = 0; i < r_grid.size() && rep.hyp_axis_ok; ++i) {
    std::vector<double> at_r;
    for (const auto& row : axis_by_n) at_r.push_back(row[i]);
    if (!sequence_stable(at_r)) rep.hyp_axis_ok = false;
  }

  if (!rep.hyp_uniform_bound_ok)
    rep.warnings.push_back("HypothesisViolated: uniform semigroup bound not stable");
  if (!rep.hyp_axis_ok)
    rep.warnings.push_back("HypothesisViolated: axis resolvent sup diverges at a fixed r");
  if (!rep.hyp_inverse_ok)
    rep.warnings.push_back(
        "HypothesisViolated: sup ||A(s)^-1|| diverges along the schedule");

  rep.stable_i = sequence_stable(rep.resolvent_sup_by_n);
  rep.stable_ii = sequence_stable(rep.decay_sup_by_n);
  if (rep.stable_i && rep.stable_ii)
    rep.verdict = DecayVerdict::BothFiniteStable;
  else if (rep.stable_i)
    rep.verdict = DecayVerdict::IOnly;
  else if (rep.stable_ii)
    rep.verdict = DecayVerdict::IIOnly;
  else
    rep.verdict = DecayVerdict::Neither;
  return rep;
}

DecayFit fit_decay_exponent(const GeneratorFamily& family, std::span<const double> t_grid,
                            double inverse_cap) {
  const OperatorField field = family.instantiate();
  // The raw table sup_k ||e^{tA_k} A_k^-1|| (no t weight): alpha = 1 makes
  // decay_sup's weight t^{1/alpha} = t, divided back out below.
  const DecayTable weighted = decay_sup(field, 1.0, t_grid, inverse_cap);
  std::vector<double> table(weighted.value.size());
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = weighted.value[i] / weighted.t[i];

  bool non_decreasing = true;
  for (std::size_t i = 1; i < table.size(); ++i)
    if (table[i] < table[i - 1] * (1.0 - 1e-12)) non_decreasing = false;

  const auto fit_window = [&](std::size_t lo, std::size_t hi) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(hi - lo + 1);
    for (std::size_t i = lo; i <= hi; ++i) {
      const double x = std::log(weighted.t[i]);
      const double y = std::log(table[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double beta = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double icept = (sy - beta * sx) / n;
    double rss = 0;
    for (std::size_t i = lo; i <= hi; ++i) {
      const double e = std::log(table[i]) - (icept + beta * std::log(weighted.t[i]));
      rss += e * e;
    }
    return std::pair<double, double>(beta, std::sqrt(rss / n));
  };

  const auto window_of = [&](std::size_t hi_idx) -> std::pair<std::size_t, std::size_t> {
    const double t_hi = weighted.t[hi_idx];
    std::size_t lo = hi_idx;
    while (lo > 0 && weighted.t[lo - 1] >= t_hi / 10.0) --lo;
    return {lo, hi_idx};
  };

  DecayFit out{};
  if (non_decreasing) {
    const auto [lo, hi] = window_of(table.size() - 1);
    const auto [beta, rms] = fit_window(lo, hi);
    out.beta = beta;
    out.residual_rms = rms;
    out.no_decay = true;
    out.window_lo = weighted.t[lo];
    out.window_hi = weighted.t[hi];
    out.n_points = hi - lo + 1;
    return out;
  }

  // End the window at the last time whose sup is still attained away from
  // the terminal atom; beyond it the table only reflects the truncation.
  std::size_t hi_idx = table.size();
  const std::size_t last_atom = field.size() - 1;
  for (std::size_t i = table.size(); i-- > 0;) {
    if (table[i] > 0.0 && weighted.argmax_atom[i] != last_atom) {
      hi_idx = i;
      break;
    }
  }
  if (hi_idx == table.size())
    throw Error(Errc::DegenerateFit, "no scaling regime before truncation effects");
  const auto [lo, hi] = window_of(hi_idx);
  if (hi - lo + 1 < 5)
    throw Error(Errc::DegenerateFit, "fewer than 5 points in the fit window");
  if (weighted.t[hi] < 9.9 * weighted.t[lo])
    throw Error(Errc::DegenerateFit, "fit window spans less than a decade");
  for (std::size_t i = lo; i <= hi; ++i)
    if (!(table[i] > 0.0))
      throw Error(Errc::DegenerateFit, "decay table is not strictly positive on the window");

  const auto [beta, rms] = fit_window(lo, hi);
  out.beta = beta;
  out.residual_rms = rms;
  out.no_decay = false;
  out.window_lo = weighted.t[lo];
  out.window_hi = weighted.t[hi];
  out.n_points = hi - lo + 1;
  return out;
}

}  // namespace dint
