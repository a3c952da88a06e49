#include "dint/bundle.hpp"

#include <string>

namespace dint {

FiberSpec FiberSpec::uniform(std::size_t atom_count, Eigen::Index dim) {
  return FiberSpec{std::vector<Eigen::Index>(atom_count, dim)};
}

Eigen::Index FiberSpec::total_dim() const {
  Eigen::Index t = 0;
  for (Eigen::Index d : dims) t += d;
  return t;
}

void FiberSpec::validate(const MeasureSpace& space) const {
  if (dims.size() != space.size())
    throw Error(Errc::ShapeMismatch, "fiber count " + std::to_string(dims.size()) +
                                         " does not match atom count " +
                                         std::to_string(space.size()));
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (dims[k] < 1)
      throw Error(Errc::ShapeMismatch,
                  "fiber dimension at atom index " + std::to_string(k) + " must be >= 1");
}

Section zero_section(const FiberSpec& fibers) {
  Section x;
  x.blocks.reserve(fibers.dims.size());
  for (Eigen::Index d : fibers.dims) x.blocks.push_back(Vector::Zero(d));
  return x;
}

Section ones_section(const FiberSpec& fibers) {
  Section x;
  x.blocks.reserve(fibers.dims.size());
  for (Eigen::Index d : fibers.dims) x.blocks.push_back(Vector::Ones(d));
  return x;
}

Section basis_section(const FiberSpec& fibers, std::size_t k, Eigen::Index coord) {
  Section x = zero_section(fibers);
  if (k >= x.blocks.size() || coord >= fibers.dims[k])
    throw Error(Errc::ShapeMismatch, "basis coordinate out of range");
  x.blocks[k](coord) = 1.0;
  return x;
}

void check_shape(const Section& x, const MeasureSpace& space, const FiberSpec& fibers) {
  fibers.validate(space);
  if (x.blocks.size() != fibers.dims.size())
    throw Error(Errc::ShapeMismatch, "section has " + std::to_string(x.blocks.size()) +
                                         " blocks, expected " +
                                         std::to_string(fibers.dims.size()));
  for (std::size_t k = 0; k < x.blocks.size(); ++k)
    if (x.blocks[k].size() != fibers.dims[k])
      throw Error(Errc::ShapeMismatch,
                  "block at atom index " + std::to_string(k) + " has length " +
                      std::to_string(x.blocks[k].size()) + ", expected " +
                      std::to_string(fibers.dims[k]));
}

Complex inner(const Section& x, const Section& y, const MeasureSpace& space,
              const FiberSpec& fibers) {
  check_shape(x, space, fibers);
  check_shape(y, space, fibers);
  CompensatedSum re, im;
  const auto& atoms = space.atoms();
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    // <x_k, y_k> conjugate-linear in the second slot.
    const Complex v = y.blocks[k].dot(x.blocks[k]);
    re.add(atoms[k].weight * v.real());
    im.add(atoms[k].weight * v.imag());
  }
  return Complex(re.value(), im.value());
}

double norm(const Section& x, const MeasureSpace& space, const FiberSpec& fibers) {
  check_shape(x, space, fibers);
  CompensatedSum s;
  const auto& atoms = space.atoms();
  for (std::size_t k = 0; k < atoms.size(); ++k)
    s.add(atoms[k].weight * x.blocks[k].squaredNorm());
  const double v = s.value();
  return v > 0.0 ? std::sqrt(v) : 0.0;
}

Section embed_section(const Section& x, const MeasureSpace& sub, const FiberSpec& sub_fibers,
                      const MeasureSpace& parent, const FiberSpec& parent_fibers) {
  check_shape(x, sub, sub_fibers);
  parent_fibers.validate(parent);
  Section out = zero_section(parent_fibers);
  const auto& sub_atoms = sub.atoms();
  for (std::size_t k = 0; k < sub_atoms.size(); ++k) {
    const std::size_t j = parent.index_of(sub_atoms[k].id);
    if (parent_fibers.dims[j] != sub_fibers.dims[k])
      throw Error(Errc::ShapeMismatch,
                  "fiber dimension differs between sub-space and parent at atom id " +
                      std::to_string(sub_atoms[k].id));
    out.blocks[j] = x.blocks[k];
  }
  return out;
}

FiberSpec restrict_fibers(const FiberSpec& fibers, const MeasureSpace& parent,
                          std::span<const int> ids) {
  fibers.validate(parent);
  const MeasureSpace sub = parent.restrict_to(ids);
  FiberSpec out;
  out.dims.reserve(sub.size());
  for (const Atom& a : sub.atoms()) out.dims.push_back(fibers.dims[parent.index_of(a.id)]);
  return out;
}

Section restrict_section(const Section& x, const MeasureSpace& parent,
                         const FiberSpec& parent_fibers, std::span<const int> ids) {
  check_shape(x, parent, parent_fibers);
  const MeasureSpace sub = parent.restrict_to(ids);
  Section out;
  out.blocks.reserve(sub.size());
  for (const Atom& a : sub.atoms()) out.blocks.push_back(x.blocks[parent.index_of(a.id)]);
  return out;
}

}  // namespace dint
