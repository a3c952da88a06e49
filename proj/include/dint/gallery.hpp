#ifndef DINT_GALLERY_HPP
#define DINT_GALLERY_HPP

#include <functional>
#include <map>
#include <string>

#include "dint/operator_field.hpp"

namespace dint {

/// A parameterized family of generator blocks, rebuildable at any
/// truncation. Builders are deterministic: equal inputs give bit-identical
/// blocks.
struct GeneratorFamily {
  enum class SpaceKind { Counting, UniformUnitInterval };

  std::string name;
  std::map<std::string, double> params;
  SpaceKind space_kind = SpaceKind::Counting;
  int default_truncation = 1;
  /// index is the 1-based atom position, label the atom's sample point.
  std::function<Matrix(int index, double label)> builder;

  OperatorField instantiate() const { return instantiate(default_truncation); }
  OperatorField instantiate(int truncation) const;
};

// Named families. Counting-measure families index atoms n = 1..N.
GeneratorFamily example_7_2_family(int n);                    // A_n = -1/n on C
GeneratorFamily polynomial_decay_family(double alpha, int n); // A_n = -n^-alpha + i n
GeneratorFamily linear_growth_family(int n);                  // A_n = n
GeneratorFamily negative_linear_family(int n);                // A_n = -n
GeneratorFamily damped_rotation_family(double damping, double rate, int n);  // -damping + i rate n
GeneratorFamily jordan_family(Complex lambda0, int d, int n); // identical d x d Jordan blocks
GeneratorFamily multiplication_interval_family(int k);        // f(s) = s on uniform (0,1) cells
GeneratorFamily shifted_shift_family(int k, int m);           // circulant d/dr - s I, m-point grid

/// Registry lookup used by the field-spec format and the CLI.
GeneratorFamily make_family(const std::string& name, const std::map<std::string, double>& params);
std::vector<std::string> family_names();

/// Scalar multiplication operator s |-> f(s) on 1-dim fibers.
OperatorField multiplication_field(const std::function<Complex(double)>& f,
                                   const MeasureSpace& space);

/// m x m circulant forward-difference derivative (period 1, spacing 1/m).
Matrix circulant_derivative(int m);

/// Per-atom blocks C - s_k I over a space with labels in (0,1).
OperatorField shifted_shift_field(const MeasureSpace& space, int m);

/// Relative gap between the dense exponential of the assembled
/// block-diagonal matrix and the assembled blockwise exponentials.
double bounded_field_expm_check(const OperatorField& a, double t);

/// Stacks the blocks of a field into one dense block-diagonal matrix.
Matrix assemble_block_diagonal(const OperatorField& a);

}  // namespace dint

#endif
