#include "dint/measure_space.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

namespace dint {

MeasureSpace MeasureSpace::make(std::span<const std::pair<double, double>> label_weight) {
  if (label_weight.empty()) throw Error(Errc::EmptySpace, "a measure space needs at least one atom");
  std::vector<Atom> atoms;
  atoms.reserve(label_weight.size());
  int id = 1;
  for (const auto& [label, weight] : label_weight) {
    if (!(weight > 0.0))
      throw Error(Errc::NonpositiveWeight,
                  "atom " + std::to_string(id) + " has weight " + std::to_string(weight), id);
    atoms.push_back(Atom{id, weight, label});
    ++id;
  }
  return MeasureSpace(std::move(atoms));
}

MeasureSpace MeasureSpace::counting(int n) {
  std::vector<std::pair<double, double>> lw;
  lw.reserve(static_cast<std::size_t>(std::max(n, 0)));
  for (int i = 1; i <= n; ++i) lw.emplace_back(static_cast<double>(i), 1.0);
  return make(lw);
}

MeasureSpace MeasureSpace::uniform_partition(int k) {
  std::vector<std::pair<double, double>> lw;
  lw.reserve(static_cast<std::size_t>(std::max(k, 0)));
  for (int i = 0; i < k; ++i)
    lw.emplace_back((static_cast<double>(i) + 0.5) / static_cast<double>(k),
                    1.0 / static_cast<double>(k));
  return make(lw);
}

double MeasureSpace::total_mass() const {
  CompensatedSum s;
  for (const Atom& a : atoms_) s.add(a.weight);
  return s.value();
}

bool MeasureSpace::has_id(int id) const {
  return std::any_of(atoms_.begin(), atoms_.end(), [&](const Atom& a) { return a.id == id; });
}

std::size_t MeasureSpace::index_of(int id) const {
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    if (atoms_[i].id == id) return i;
  throw Error(Errc::UnknownId, "no atom with id " + std::to_string(id), id);
}

MeasureSpace MeasureSpace::restrict_to(std::span<const int> ids) const {
  if (ids.empty()) throw Error(Errc::EmptySubset, "restriction to the empty set");
  std::unordered_set<int> wanted(ids.begin(), ids.end());
  for (int id : wanted)
    if (!has_id(id)) throw Error(Errc::UnknownId, "no atom with id " + std::to_string(id), id);
  std::vector<Atom> kept;
  kept.reserve(wanted.size());
  for (const Atom& a : atoms_)
    if (wanted.count(a.id)) kept.push_back(a);
  return MeasureSpace(std::move(kept));
}

MeasureSpace make_space(std::span<const std::pair<double, double>> label_weight) {
  return MeasureSpace::make(label_weight);
}

MeasureSpace restrict_space(const MeasureSpace& space, std::span<const int> ids) {
  return space.restrict_to(ids);
}

}  // namespace dint
