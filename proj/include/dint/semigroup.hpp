#ifndef DINT_SEMIGROUP_HPP
#define DINT_SEMIGROUP_HPP

#include <map>
#include <memory>
#include <mutex>
#include <span>

#include "dint/gallery.hpp"
#include "dint/operator_field.hpp"

namespace dint {

/// Measured exponential bound ||e^{tA_k}|| <= M e^{omega t}. omega is the
/// exact spectral abscissa over all blocks; M is measured on t_grid. The
/// per-fiber constants M_k are measured against the shared omega, so
/// M = max_k M_k and every fiber obeys the same bound.
struct ExpBound {
  double M = 1.0;
  double omega = 0.0;
  struct Fiber {
    int atom_id;
    double M_k;
    double omega_k;  // the fiber's own spectral abscissa
  };
  std::vector<Fiber> per_fiber;
  std::vector<double> t_grid;
  std::vector<double> log_sup_curve;  // log max_k ||e^{t A_k}|| per grid t

  /// max_k ||e^{t A_k}|| at grid index i (+inf when it overflows a double).
  double sup_norm(std::size_t i) const;
};

/// Default measurement grid t in [0, 20], step 0.05.
std::vector<double> default_bound_grid();

ExpBound estimate_bound(const OperatorField& a, std::span<const double> t_grid);

enum class Generation { Uniform, NonUniform };

struct GenerationReport {
  Generation verdict;
  std::vector<int> schedule;
  std::vector<double> m_values;
  std::vector<double> omega_values;
};

/// Uniform iff M stays under the cap and the omega increments shrink
/// geometrically along the doubling schedule.
GenerationReport check_generation(const GeneratorFamily& family, std::span<const int> schedule,
                                  double cap);
GenerationReport check_generation(const GeneratorFamily& family, std::span<const int> schedule,
                                  double cap, std::span<const double> t_grid);

/// One fiber of a decomposed semigroup.
struct FiberSemigroup {
  int atom_id;
  Matrix generator;
  double m_k;
  double omega_k;

  Vector evolve(double t, const Vector& v) const;
};

/// T(t) = blockwise e^{t A_k} with its measured bound and a per-t block
/// cache (guarded; evolution itself is pure).
class DirectSemigroup {
 public:
  explicit DirectSemigroup(OperatorField generator);
  DirectSemigroup(OperatorField generator, std::span<const double> t_grid);
  DirectSemigroup(const DirectSemigroup& other);
  DirectSemigroup& operator=(const DirectSemigroup& other);

  const OperatorField& generator() const { return gen_; }
  const ExpBound& bound() const { return bound_; }

  /// e^{tA} as an operator field (cached per t).
  OperatorField evolution(double t) const;
  Section evolve(double t, const Section& x) const;

  std::vector<FiberSemigroup> decompose() const;

  DirectSemigroup restrict_to(std::span<const int> ids) const;

  /// || trapezoid(int_0^Tmax e^{-lambda t} T(t) x dt) - R(lambda,A) x || /
  /// || R(lambda,A) x ||. BadLambda unless Re lambda >= omega + 0.1.
  double laplace_residual(Complex lambda, const Section& x, double t_max, double h) const;

 private:
  OperatorField gen_;
  ExpBound bound_;
  mutable std::mutex cache_mutex_;
  mutable std::map<double, std::vector<Matrix>> exp_cache_;
};

/// Restriction of a decomposable operator to a measurable subset.
OperatorField restrict_field(const OperatorField& a, std::span<const int> ids);

}  // namespace dint

#endif
