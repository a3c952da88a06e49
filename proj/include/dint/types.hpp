#ifndef DINT_TYPES_HPP
#define DINT_TYPES_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dint {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kDefaultCap = 1e12;

enum class Errc {
  EmptySpace,
  NonpositiveWeight,
  EmptySubset,
  UnknownId,
  ShapeMismatch,
  SingularFiber,
  EssentiallyUnbounded,
  InSpectrum,
  EigFailure,
  ExpFailure,
  BadLambda,
  BadGrid,
  BoundViolation,
  DegenerateFit,
  ParseError,
  SchemaError,
  InconsistentDims,
  HypothesisViolated,
  Usage,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string what, std::optional<int> atom_id = std::nullopt)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code),
        atom_id_(atom_id) {}

  Errc code() const { return code_; }
  std::optional<int> atom_id() const { return atom_id_; }

 private:
  Errc code_;
  std::optional<int> atom_id_;
};

// Neumaier-compensated accumulator. Sums must run in a fixed order so that
// reports are identical run to run.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Splits [0, n) across worker threads (count from DINT_THREADS, default
// machine parallelism). fn(i) must only touch slot i of its output; callers
// do any reductions afterwards in index order, keeping results
// scheduling-independent.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

std::vector<double> linspace(double a, double b, std::size_t n);
std::vector<double> logspace(double a, double b, std::size_t n);  // decades [10^a, 10^b]

std::uint64_t fnv1a64(const void* data, std::size_t len);
std::string fnv1a64_hex(const std::string& bytes);

}  // namespace dint

#endif
