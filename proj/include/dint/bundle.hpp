#ifndef DINT_BUNDLE_HPP
#define DINT_BUNDLE_HPP

#include <span>
#include <vector>

#include "dint/measure_space.hpp"
#include "dint/types.hpp"

namespace dint {

/// Fiber dimensions, one per atom.
struct FiberSpec {
  std::vector<Eigen::Index> dims;

  static FiberSpec uniform(std::size_t atom_count, Eigen::Index dim);

  Eigen::Index total_dim() const;
  /// Throws ShapeMismatch unless dims are all >= 1 and match the atom count.
  void validate(const MeasureSpace& space) const;

  friend bool operator==(const FiberSpec&, const FiberSpec&) = default;
};

/// An element of the direct-integral space: one fiber vector per atom.
struct Section {
  std::vector<Vector> blocks;

  friend bool operator==(const Section&, const Section&) = default;
};

Section zero_section(const FiberSpec& fibers);
Section ones_section(const FiberSpec& fibers);
/// Section that is the canonical basis vector `coord` on atom index `k`
/// and zero elsewhere.
Section basis_section(const FiberSpec& fibers, std::size_t k, Eigen::Index coord = 0);

void check_shape(const Section& x, const MeasureSpace& space, const FiberSpec& fibers);

/// Weighted inner product sum_k w_k <x_k, y_k>, conjugate-linear in the
/// second argument. Accumulated atom-by-atom with compensated summation.
Complex inner(const Section& x, const Section& y, const MeasureSpace& space,
              const FiberSpec& fibers);

/// sqrt(inner(x,x)); always real and nonnegative.
double norm(const Section& x, const MeasureSpace& space, const FiberSpec& fibers);

/// Copies the blocks of a section living on a sub-space into the matching
/// atoms of the parent space, zero elsewhere. Atoms are matched by id.
Section embed_section(const Section& x, const MeasureSpace& sub, const FiberSpec& sub_fibers,
                      const MeasureSpace& parent, const FiberSpec& parent_fibers);

/// Keeps exactly the blocks over `ids` (parent order), dropping the rest.
Section restrict_section(const Section& x, const MeasureSpace& parent,
                         const FiberSpec& parent_fibers, std::span<const int> ids);

FiberSpec restrict_fibers(const FiberSpec& fibers, const MeasureSpace& parent,
                          std::span<const int> ids);

}  // namespace dint

#endif
