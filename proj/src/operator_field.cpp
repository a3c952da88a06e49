#include "dint/operator_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "dint/gallery.hpp"

namespace dint {

namespace {

void check_compatible(const OperatorField& a, const OperatorField& b) {
  if (!(a.space() == b.space()) || !(a.fibers() == b.fibers()))
    throw Error(Errc::ShapeMismatch, "operator fields live on different spaces");
}

double sigma_max(const Matrix& m) { return m.jacobiSvd().singularValues()(0); }

double sigma_min(const Matrix& m) {
  const auto sv = m.jacobiSvd().singularValues();
  return sv(sv.size() - 1);
}

Matrix shifted(const Matrix& block, Complex lambda) {
  return lambda * Matrix::Identity(block.rows(), block.cols()) - block;
}

}  // namespace

OperatorField::OperatorField(MeasureSpace space, FiberSpec fibers, std::vector<Matrix> blocks)
    : space_(std::move(space)), fibers_(std::move(fibers)), blocks_(std::move(blocks)) {
  fibers_.validate(space_);
  if (blocks_.size() != space_.size())
    throw Error(Errc::ShapeMismatch, "block count " + std::to_string(blocks_.size()) +
                                         " does not match atom count " +
                                         std::to_string(space_.size()));
  for (std::size_t k = 0; k < blocks_.size(); ++k)
    if (blocks_[k].rows() != fibers_.dims[k] || blocks_[k].cols() != fibers_.dims[k])
      throw Error(Errc::ShapeMismatch,
                  "block at atom index " + std::to_string(k) + " is not square of size " +
                      std::to_string(fibers_.dims[k]));
}

OperatorField OperatorField::identity(const MeasureSpace& space, const FiberSpec& fibers) {
  std::vector<Matrix> blocks;
  blocks.reserve(fibers.dims.size());
  for (Eigen::Index d : fibers.dims) blocks.push_back(Matrix::Identity(d, d));
  return OperatorField(space, fibers, std::move(blocks));
}

OperatorField OperatorField::zero(const MeasureSpace& space, const FiberSpec& fibers) {
  std::vector<Matrix> blocks;
  blocks.reserve(fibers.dims.size());
  for (Eigen::Index d : fibers.dims) blocks.push_back(Matrix::Zero(d, d));
  return OperatorField(space, fibers, std::move(blocks));
}

OperatorField operator+(const OperatorField& a, const OperatorField& b) {
  check_compatible(a, b);
  std::vector<Matrix> blocks;
  blocks.reserve(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) blocks.push_back(a.block(k) + b.block(k));
  return OperatorField(a.space(), a.fibers(), std::move(blocks));
}

OperatorField operator-(const OperatorField& a, const OperatorField& b) {
  check_compatible(a, b);
  std::vector<Matrix> blocks;
  blocks.reserve(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) blocks.push_back(a.block(k) - b.block(k));
  return OperatorField(a.space(), a.fibers(), std::move(blocks));
}

OperatorField operator*(Complex c, const OperatorField& a) {
  std::vector<Matrix> blocks;
  blocks.reserve(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) blocks.push_back(c * a.block(k));
  return OperatorField(a.space(), a.fibers(), std::move(blocks));
}

OperatorField operator*(const OperatorField& a, const OperatorField& b) {
  check_compatible(a, b);
  std::vector<Matrix> blocks;
  blocks.reserve(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) blocks.push_back(a.block(k) * b.block(k));
  return OperatorField(a.space(), a.fibers(), std::move(blocks));
}

Section apply(const OperatorField& a, const Section& x) {
  check_shape(x, a.space(), a.fibers());
  Section out;
  out.blocks.reserve(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out.blocks.push_back(a.block(k) * x.blocks[k]);
  return out;
}

double op_norm(const OperatorField& a) {
  std::vector<double> norms(a.size());
  parallel_for(a.size(), [&](std::size_t k) { norms[k] = sigma_max(a.block(k)); });
  double m = 0.0;
  for (double v : norms) m = std::max(m, v);
  return m;
}

OperatorField adjoint(const OperatorField& a) {
  std::vector<Matrix> blocks;
  blocks.reserve(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) blocks.push_back(a.block(k).adjoint());
  return OperatorField(a.space(), a.fibers(), std::move(blocks));
}

OperatorField inverse(const OperatorField& a, double cap) {
  if (!(cap > 0.0)) throw Error(Errc::BadGrid, "inverse cap must be positive");
  const auto& atoms = a.space().atoms();
  std::vector<Matrix> blocks(a.size());
  std::vector<double> inv_norms(a.size());
  std::vector<int> singular(a.size(), 0);
  parallel_for(a.size(), [&](std::size_t k) {
    const Matrix& blk = a.block(k);
    const double smin = sigma_min(blk);
    const double smax = sigma_max(blk);
    if (smin <= 1e-14 * smax || smin == 0.0) {
      singular[k] = 1;
      return;
    }
    inv_norms[k] = 1.0 / smin;
    blocks[k] = blk.partialPivLu().solve(Matrix::Identity(blk.rows(), blk.cols()));
  });
  for (std::size_t k = 0; k < a.size(); ++k)
    if (singular[k])
      throw Error(Errc::SingularFiber, "block at atom id " + std::to_string(atoms[k].id) +
                                           " is singular to machine precision",
                  atoms[k].id);
  double sup = 0.0;
  for (double v : inv_norms) sup = std::max(sup, v);
  if (sup > cap)
    throw Error(Errc::EssentiallyUnbounded,
                "sup of inverse norms " + std::to_string(sup) + " exceeds cap");
  return OperatorField(a.space(), a.fibers(), std::move(blocks));
}

OperatorField resolvent(const OperatorField& a, Complex lambda, double cap) {
  if (!(cap > 0.0)) throw Error(Errc::BadGrid, "resolvent cap must be positive");
  const auto& atoms = a.space().atoms();
  std::vector<Matrix> blocks(a.size());
  std::vector<double> inv_norms(a.size());
  std::vector<int> hit(a.size(), 0);
  parallel_for(a.size(), [&](std::size_t k) {
    const Matrix m = shifted(a.block(k), lambda);
    const double smin = sigma_min(m);
    const double tol = 1e-12 * (1.0 + std::abs(lambda) + sigma_max(a.block(k)));
    if (smin < tol) {
      hit[k] = 1;
      return;
    }
    inv_norms[k] = 1.0 / smin;
    blocks[k] = m.partialPivLu().solve(Matrix::Identity(m.rows(), m.cols()));
  });
  for (std::size_t k = 0; k < a.size(); ++k)
    if (hit[k])
      throw Error(Errc::InSpectrum, "lambda is in (or too close to) the spectrum of atom id " +
                                        std::to_string(atoms[k].id),
                  atoms[k].id);
  double sup = 0.0;
  for (double v : inv_norms) sup = std::max(sup, v);
  if (sup > cap)
    throw Error(Errc::EssentiallyUnbounded,
                "sup of resolvent norms " + std::to_string(sup) + " exceeds cap");
  return OperatorField(a.space(), a.fibers(), std::move(blocks));
}

double resolvent_norm(const OperatorField& a, Complex lambda) {
  std::vector<double> vals(a.size());
  parallel_for(a.size(), [&](std::size_t k) {
    const double smin = sigma_min(shifted(a.block(k), lambda));
    vals[k] = smin == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / smin;
  });
  double sup = 0.0;
  for (double v : vals) sup = std::max(sup, v);
  return sup;
}

SpectrumReport spectrum(const OperatorField& a) {
  const auto& atoms = a.space().atoms();
  std::vector<std::vector<Complex>> per_atom(a.size());
  std::vector<int> failed(a.size(), 0);
  parallel_for(a.size(), [&](std::size_t k) {
    const Matrix& blk = a.block(k);
    if (blk.rows() == 1) {
      per_atom[k].push_back(blk(0, 0));
      return;
    }
    Eigen::ComplexEigenSolver<Matrix> es(blk, /*computeEigenvectors=*/true);
    if (es.info() != Eigen::Success) {
      failed[k] = 1;
      return;
    }
    // Residual guard on each eigenpair.
    const double scale = sigma_max(blk);
    for (Eigen::Index j = 0; j < blk.rows(); ++j) {
      const Vector v = es.eigenvectors().col(j);
      const double resid = ((blk * v) - es.eigenvalues()(j) * v).norm();
      if (resid > 1e-8 * std::max(scale, 1.0)) {
        failed[k] = 1;
        return;
      }
      per_atom[k].push_back(es.eigenvalues()(j));
    }
  });
  for (std::size_t k = 0; k < a.size(); ++k)
    if (failed[k])
      throw Error(Errc::EigFailure,
                  "eigenvalue solve failed at atom id " + std::to_string(atoms[k].id),
                  atoms[k].id);

  SpectrumReport rep;
  for (std::size_t k = 0; k < a.size(); ++k)
    for (Complex ev : per_atom[k]) rep.points.push_back(SpectrumPoint{atoms[k].id, ev});

  const double tol = 1e-8 * (1.0 + op_norm(a));
  for (const SpectrumPoint& p : rep.points) {
    bool fresh = true;
    for (Complex u : rep.union_set)
      if (std::abs(u - p.value) <= tol) {
        fresh = false;
        break;
      }
    if (fresh) rep.union_set.push_back(p.value);
  }
  return rep;
}

double spectral_distance(const SpectrumReport& rep, Complex lambda) {
  double d = std::numeric_limits<double>::infinity();
  for (Complex u : rep.union_set) d = std::min(d, std::abs(lambda - u));
  return d;
}

PseudospectrumGrid pseudospectrum_grid(const OperatorField& a, double re_lo, double re_hi,
                                       double im_lo, double im_hi, std::size_t n_re,
                                       std::size_t n_im) {
  if (n_re < 2 || n_im < 2) throw Error(Errc::BadGrid, "pseudospectrum grid needs >= 2x2 nodes");
  const std::vector<double> res = linspace(re_lo, re_hi, n_re);
  const std::vector<double> ims = linspace(im_lo, im_hi, n_im);
  PseudospectrumGrid grid;
  grid.re.resize(n_re * n_im);
  grid.im.resize(n_re * n_im);
  grid.inv_sigma_min.resize(n_re * n_im);
  parallel_for(n_re * n_im, [&](std::size_t idx) {
    const double re = res[idx % n_re];
    const double im = ims[idx / n_re];
    grid.re[idx] = re;
    grid.im[idx] = im;
    grid.inv_sigma_min[idx] = resolvent_norm(a, Complex(re, im));
  });
  return grid;
}

CompactnessReport compactness_classify(const GeneratorFamily& family, int n_atoms, double tau) {
  if (!(tau > 0.0)) throw Error(Errc::BadGrid, "tail tolerance must be positive");
  if (n_atoms < 4) throw Error(Errc::BadGrid, "need at least 4 atoms to form tail windows");
  const OperatorField field = family.instantiate(n_atoms);
  std::vector<double> norms(field.size());
  parallel_for(field.size(), [&](std::size_t k) { norms[k] = sigma_max(field.block(k)); });

  const auto window_max = [&](int lo, int hi) {  // 1-based inclusive
    double m = 0.0;
    for (int i = lo; i <= hi; ++i) m = std::max(m, norms[static_cast<std::size_t>(i - 1)]);
    return m;
  };
  const double tail = window_max(n_atoms / 2, n_atoms);
  const double prev = window_max(n_atoms / 4, n_atoms / 2);
  const bool ok = tail <= tau && tail <= prev;
  return CompactnessReport{ok ? Compactness::CompactLike : Compactness::NotCompactLike, tail,
                           prev, tau};
}

}  // namespace dint
