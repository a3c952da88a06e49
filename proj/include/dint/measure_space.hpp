#ifndef DINT_MEASURE_SPACE_HPP
#define DINT_MEASURE_SPACE_HPP

#include <span>
#include <utility>
#include <vector>

#include "dint/types.hpp"

namespace dint {

/// One mass-carrying point of the base space. `label` is the sample point s
/// used by parameterized generator families; `weight` is its measure.
struct Atom {
  int id = 0;
  double weight = 0.0;
  double label = 0.0;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// A finite positive measure space: an ordered list of weighted atoms.
/// Immutable after construction and safe to share across threads.
class MeasureSpace {
 public:
  /// Builds a space from (label, weight) pairs; ids are assigned 1,2,...
  /// in list order.
  static MeasureSpace make(std::span<const std::pair<double, double>> label_weight);

  /// Counting measure on {1,...,n}: labels 1..n, unit weights.
  static MeasureSpace counting(int n);

  /// Uniform partition of (0,1) into k cells: midpoint labels, weights 1/k.
  static MeasureSpace uniform_partition(int k);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  double total_mass() const;

  bool has_id(int id) const;
  /// Position of the atom with the given id; throws UnknownId otherwise.
  std::size_t index_of(int id) const;

  /// Sub-space containing exactly the selected atoms, parent order kept.
  MeasureSpace restrict_to(std::span<const int> ids) const;

  friend bool operator==(const MeasureSpace&, const MeasureSpace&) = default;

 private:
  explicit MeasureSpace(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {}
  std::vector<Atom> atoms_;
};

MeasureSpace make_space(std::span<const std::pair<double, double>> label_weight);
MeasureSpace restrict_space(const MeasureSpace& space, std::span<const int> ids);

}  // namespace dint

#endif
