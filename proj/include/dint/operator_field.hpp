#ifndef DINT_OPERATOR_FIELD_HPP
#define DINT_OPERATOR_FIELD_HPP

#include <span>
#include <vector>

#include "dint/bundle.hpp"
#include "dint/measure_space.hpp"
#include "dint/types.hpp"

namespace dint {

struct GeneratorFamily;

/// A decomposable operator: one square matrix per atom, acting blockwise on
/// sections. Immutable value type.
class OperatorField {
 public:
  OperatorField(MeasureSpace space, FiberSpec fibers, std::vector<Matrix> blocks);

  static OperatorField identity(const MeasureSpace& space, const FiberSpec& fibers);
  static OperatorField zero(const MeasureSpace& space, const FiberSpec& fibers);

  const MeasureSpace& space() const { return space_; }
  const FiberSpec& fibers() const { return fibers_; }
  const std::vector<Matrix>& blocks() const { return blocks_; }
  const Matrix& block(std::size_t k) const { return blocks_[k]; }
  std::size_t size() const { return blocks_.size(); }

  friend bool operator==(const OperatorField&, const OperatorField&) = default;

 private:
  MeasureSpace space_;
  FiberSpec fibers_;
  std::vector<Matrix> blocks_;
};

// Blockwise algebra. Operands must share space and fibers.
OperatorField operator+(const OperatorField& a, const OperatorField& b);
OperatorField operator-(const OperatorField& a, const OperatorField& b);
OperatorField operator*(Complex c, const OperatorField& a);
OperatorField operator*(const OperatorField& a, const OperatorField& b);

Section apply(const OperatorField& a, const Section& x);

/// sup over atoms of the largest singular value of the block.
double op_norm(const OperatorField& a);

OperatorField adjoint(const OperatorField& a);

/// Blockwise inverse. SingularFiber when a block is singular to machine
/// precision, EssentiallyUnbounded when sup_k ||A_k^-1|| exceeds the cap.
OperatorField inverse(const OperatorField& a, double cap = kDefaultCap);

/// Blockwise (lambda - A_k)^-1 with the same cap discipline; InSpectrum when
/// lambda sits within 1e-12*(1+|lambda|+||A_k||) of a block's spectrum.
OperatorField resolvent(const OperatorField& a, Complex lambda, double cap = kDefaultCap);

/// sup over atoms of 1/sigma_min(lambda - A_k); +infinity on exact hits.
double resolvent_norm(const OperatorField& a, Complex lambda);

struct SpectrumPoint {
  int atom_id;
  Complex value;
};

struct SpectrumReport {
  std::vector<SpectrumPoint> points;  // per-block eigenvalues, tagged
  std::vector<Complex> union_set;     // deduplicated at 1e-8*(1+||A||)
};

SpectrumReport spectrum(const OperatorField& a);

/// Distance from lambda to the deduplicated spectrum.
double spectral_distance(const SpectrumReport& rep, Complex lambda);

struct PseudospectrumGrid {
  std::vector<double> re;  // row-major over (im, re)
  std::vector<double> im;
  std::vector<double> inv_sigma_min;  // resolvent norm at each grid node
};

PseudospectrumGrid pseudospectrum_grid(const OperatorField& a, double re_lo, double re_hi,
                                       double im_lo, double im_hi, std::size_t n_re,
                                       std::size_t n_im);

enum class Compactness { CompactLike, NotCompactLike };

struct CompactnessReport {
  Compactness verdict;
  double tail_max;        // max block norm over [N/2, N]
  double previous_max;    // max block norm over [N/4, N/2]
  double tau;
};

/// Desk-scale compactness test for a family over counting measure: block
/// norms must tail below tau on [N/2, N] with non-increasing windowed maxima
/// across doublings.
CompactnessReport compactness_classify(const GeneratorFamily& family, int n_atoms, double tau);

}  // namespace dint

#endif
