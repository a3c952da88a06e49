#include "dint/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "dint/expm.hpp"

namespace dint {

namespace {

double spectral_abscissa(const Matrix& blk) {
  if (blk.rows() == 1) return blk(0, 0).real();
  Eigen::ComplexEigenSolver<Matrix> es(blk, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw Error(Errc::EigFailure, "eigenvalue solve failed while measuring the abscissa");
  double a = -std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j)
    a = std::max(a, es.eigenvalues()(j).real());
  return a;
}

// log ||e^{t blk}||_2; exact for one-dimensional blocks.
double log_evolution_norm(const Matrix& blk, double t) {
  if (t == 0.0) return 0.0;
  if (blk.rows() == 1) return t * blk(0, 0).real();
  return log_norm_expm(t * blk);
}

void validate_bound_grid(std::span<const double> t_grid) {
  if (t_grid.empty()) throw Error(Errc::BadGrid, "bound grid is empty");
  if (t_grid.front() != 0.0) throw Error(Errc::BadGrid, "bound grid must start at 0");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1])) throw Error(Errc::BadGrid, "bound grid must be sorted");
}

}  // namespace

double ExpBound::sup_norm(std::size_t i) const { return std::exp(log_sup_curve[i]); }

std::vector<double> default_bound_grid() {
  std::vector<double> g;
  g.reserve(401);
  for (int i = 0; i <= 400; ++i) g.push_back(0.05 * i);
  return g;
}

ExpBound estimate_bound(const OperatorField& a, std::span<const double> t_grid) {
  validate_bound_grid(t_grid);
  const auto& atoms = a.space().atoms();
  const std::size_t n = a.size();
  const std::size_t nt = t_grid.size();

  std::vector<double> omegas(n);
  // log ||e^{t A_k}|| for every (atom, t), row-major by atom.
  std::vector<double> lognorm(n * nt);
  std::vector<std::string> failures(n);
  parallel_for(n, [&](std::size_t k) {
    try {
      omegas[k] = spectral_abscissa(a.block(k));
      for (std::size_t i = 0; i < nt; ++i)
        lognorm[k * nt + i] = log_evolution_norm(a.block(k), t_grid[i]);
    } catch (const Error& e) {
      failures[k] = e.what();
    }
  });
  for (std::size_t k = 0; k < n; ++k)
    if (!failures[k].empty())
      throw Error(Errc::ExpFailure,
                  "atom id " + std::to_string(atoms[k].id) + ": " + failures[k], atoms[k].id);

  ExpBound bound;
  bound.t_grid.assign(t_grid.begin(), t_grid.end());
  bound.omega = *std::max_element(omegas.begin(), omegas.end());
  bound.per_fiber.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    double log_mk = 0.0;  // M_k >= 1
    for (std::size_t i = 0; i < nt; ++i)
      log_mk = std::max(log_mk, lognorm[k * nt + i] - bound.omega * t_grid[i]);
    bound.per_fiber.push_back(ExpBound::Fiber{atoms[k].id, std::exp(log_mk), omegas[k]});
  }
  bound.M = 1.0;
  for (const auto& f : bound.per_fiber) bound.M = std::max(bound.M, f.M_k);
  bound.log_sup_curve.assign(nt, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < nt; ++i)
    for (std::size_t k = 0; k < n; ++k)
      bound.log_sup_curve[i] = std::max(bound.log_sup_curve[i], lognorm[k * nt + i]);
  return bound;
}

GenerationReport check_generation(const GeneratorFamily& family, std::span<const int> schedule,
                                  double cap) {
  const std::vector<double> grid = default_bound_grid();
  return check_generation(family, schedule, cap, grid);
}

GenerationReport check_generation(const GeneratorFamily& family, std::span<const int> schedule,
                                  double cap, std::span<const double> t_grid) {
  if (schedule.empty()) throw Error(Errc::BadGrid, "empty truncation schedule");
  for (std::size_t i = 1; i < schedule.size(); ++i)
    if (schedule[i] <= schedule[i - 1])
      throw Error(Errc::BadGrid, "truncation schedule must be increasing");

  GenerationReport rep;
  rep.schedule.assign(schedule.begin(), schedule.end());
  for (int n : schedule) {
    const ExpBound b = estimate_bound(family.instantiate(n), t_grid);
    rep.m_values.push_back(b.M);
    rep.omega_values.push_back(b.omega);
  }

  bool uniform = true;
  for (double m : rep.m_values)
    if (!(m <= cap)) uniform = false;

  // omega must stabilize: increments across the schedule shrink geometrically.
  const std::size_t n = rep.omega_values.size();
  if (uniform && n >= 2) {
    std::vector<double> d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) d[i] = rep.omega_values[i + 1] - rep.omega_values[i];
    if (d.size() == 1) {
      if (d[0] > 1e-6) uniform = false;
    } else {
      for (std::size_t i = 1; i < d.size(); ++i)
        if (d[i] > std::max(1e-6, 0.75 * std::abs(d[i - 1]))) uniform = false;
    }
  }
  rep.verdict = uniform ? Generation::Uniform : Generation::NonUniform;
  return rep;
}

Vector FiberSemigroup::evolve(double t, const Vector& v) const {
  if (t < 0.0) throw Error(Errc::BadGrid, "evolution time must be nonnegative");
  return expm(t * generator) * v;
}

DirectSemigroup::DirectSemigroup(OperatorField generator)
    : DirectSemigroup(std::move(generator), default_bound_grid()) {}

DirectSemigroup::DirectSemigroup(OperatorField generator, std::span<const double> t_grid)
    : gen_(std::move(generator)), bound_(estimate_bound(gen_, t_grid)) {}

DirectSemigroup::DirectSemigroup(const DirectSemigroup& other)
    : gen_(other.gen_), bound_(other.bound_) {}

DirectSemigroup& DirectSemigroup::operator=(const DirectSemigroup& other) {
  if (this != &other) {
    gen_ = other.gen_;
    bound_ = other.bound_;
    std::lock_guard<std::mutex> lock(cache_mutex_);
    exp_cache_.clear();
  }
  return *this;
}

OperatorField DirectSemigroup::evolution(double t) const {
  if (t < 0.0) throw Error(Errc::BadGrid, "evolution time must be nonnegative");
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    const auto it = exp_cache_.find(t);
    if (it != exp_cache_.end()) return OperatorField(gen_.space(), gen_.fibers(), it->second);
  }
  const auto& atoms = gen_.space().atoms();
  std::vector<Matrix> blocks(gen_.size());
  std::vector<std::string> failures(gen_.size());
  parallel_for(gen_.size(), [&](std::size_t k) {
    try {
      blocks[k] = expm(t * gen_.block(k));
    } catch (const Error& e) {
      failures[k] = e.what();
    }
  });
  for (std::size_t k = 0; k < gen_.size(); ++k)
    if (!failures[k].empty())
      throw Error(Errc::ExpFailure,
                  "atom id " + std::to_string(atoms[k].id) + ": " + failures[k], atoms[k].id);
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    exp_cache_.emplace(t, blocks);
  }
  return OperatorField(gen_.space(), gen_.fibers(), std::move(blocks));
}

Section DirectSemigroup::evolve(double t, const Section& x) const {
  return apply(evolution(t), x);
}

std::vector<FiberSemigroup> DirectSemigroup::decompose() const {
  std::vector<FiberSemigroup> out;
  out.reserve(gen_.size());
  for (std::size_t k = 0; k < gen_.size(); ++k) {
    const auto& f = bound_.per_fiber[k];
    out.push_back(FiberSemigroup{f.atom_id, gen_.block(k), f.M_k, f.omega_k});
  }
  return out;
}

DirectSemigroup DirectSemigroup::restrict_to(std::span<const int> ids) const {
  return DirectSemigroup(restrict_field(gen_, ids), bound_.t_grid);
}

double DirectSemigroup::laplace_residual(Complex lambda, const Section& x, double t_max,
                                         double h) const {
  if (lambda.real() < bound_.omega + 0.1)
    throw Error(Errc::BadLambda, "Re lambda must exceed omega + 0.1");
  if (!(h > 0.0) || !(t_max > h)) throw Error(Errc::BadGrid, "need 0 < h < t_max");
  check_shape(x, gen_.space(), gen_.fibers());

  const auto steps = static_cast<std::size_t>(std::llround(t_max / h));
  Section quad = zero_section(gen_.fibers());
  const std::size_t n = gen_.size();
  parallel_for(n, [&](std::size_t k) {
    const Matrix step = expm(h * gen_.block(k));
    Vector v = x.blocks[k];
    const Eigen::Index d = v.size();
    std::vector<CompensatedSum> re(d), im(d);
    for (std::size_t j = 0; j <= steps; ++j) {
      const double t = h * static_cast<double>(j);
      const Complex factor = std::exp(-lambda * t) * ((j == 0 || j == steps) ? 0.5 * h : h);
      for (Eigen::Index c = 0; c < d; ++c) {
        const Complex term = factor * v(c);
        re[c].add(term.real());
        im[c].add(term.imag());
      }
      if (j < steps) v = step * v;
    }
    Vector acc(d);
    for (Eigen::Index c = 0; c < d; ++c) acc(c) = Complex(re[c].value(), im[c].value());
    quad.blocks[k] = std::move(acc);
  });

  const Section rx = apply(resolvent(gen_, lambda), x);
  Section diff = quad;
  for (std::size_t k = 0; k < n; ++k) diff.blocks[k] -= rx.blocks[k];
  const double denom = norm(rx, gen_.space(), gen_.fibers());
  const double num = norm(diff, gen_.space(), gen_.fibers());
  return denom == 0.0 ? num : num / denom;
}

OperatorField restrict_field(const OperatorField& a, std::span<const int> ids) {
  const MeasureSpace sub = a.space().restrict_to(ids);
  const FiberSpec sub_fibers = restrict_fibers(a.fibers(), a.space(), ids);
  std::vector<Matrix> blocks;
  blocks.reserve(sub.size());
  for (const Atom& atom : sub.atoms()) blocks.push_back(a.block(a.space().index_of(atom.id)));
  return OperatorField(sub, sub_fibers, std::move(blocks));
}

}  // namespace dint
