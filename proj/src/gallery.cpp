#include "dint/gallery.hpp"

#include <cmath>

#include <Eigen/SVD>

#include "dint/expm.hpp"

namespace dint {

namespace {

GeneratorFamily scalar_counting_family(std::string name, std::map<std::string, double> params,
                                       int n, std::function<Complex(int)> value) {
  GeneratorFamily fam;
  fam.name = std::move(name);
  fam.params = std::move(params);
  fam.space_kind = GeneratorFamily::SpaceKind::Counting;
  fam.default_truncation = n;
  fam.builder = [value = std::move(value)](int index, double) {
    Matrix m(1, 1);
    m(0, 0) = value(index);
    return m;
  };
  return fam;
}

double param_or(const std::map<std::string, double>& params, const std::string& key,
                double fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

int int_param(const std::map<std::string, double>& params, const std::string& key,
              double fallback) {
  const double v = param_or(params, key, fallback);
  return static_cast<int>(std::llround(v));
}

}  // namespace

OperatorField GeneratorFamily::instantiate(int truncation) const {
  if (truncation < 1) throw Error(Errc::BadGrid, "family truncation must be >= 1");
  const MeasureSpace space = space_kind == SpaceKind::Counting
                                 ? MeasureSpace::counting(truncation)
                                 : MeasureSpace::uniform_partition(truncation);
  std::vector<Matrix> blocks;
  FiberSpec fibers;
  blocks.reserve(space.size());
  fibers.dims.reserve(space.size());
  int index = 1;
  for (const Atom& a : space.atoms()) {
    blocks.push_back(builder(index, a.label));
    fibers.dims.push_back(blocks.back().rows());
    ++index;
  }
  return OperatorField(space, std::move(fibers), std::move(blocks));
}

GeneratorFamily example_7_2_family(int n) {
  return scalar_counting_family("example_7_2", {{"N", static_cast<double>(n)}}, n,
                                [](int i) { return Complex(-1.0 / i, 0.0); });
}

GeneratorFamily polynomial_decay_family(double alpha, int n) {
  if (!(alpha > 0.0)) throw Error(Errc::BadGrid, "alpha must be positive");
  return scalar_counting_family(
      "polynomial_decay", {{"alpha", alpha}, {"N", static_cast<double>(n)}}, n,
      [alpha](int i) { return Complex(-std::pow(i, -alpha), static_cast<double>(i)); });
}

GeneratorFamily linear_growth_family(int n) {
  return scalar_counting_family("linear_growth", {{"N", static_cast<double>(n)}}, n,
                                [](int i) { return Complex(i, 0.0); });
}

GeneratorFamily negative_linear_family(int n) {
  return scalar_counting_family("negative_linear", {{"N", static_cast<double>(n)}}, n,
                                [](int i) { return Complex(-i, 0.0); });
}

GeneratorFamily damped_rotation_family(double damping, double rate, int n) {
  return scalar_counting_family(
      "damped_rotation",
      {{"damping", damping}, {"rate", rate}, {"N", static_cast<double>(n)}}, n,
      [damping, rate](int i) { return Complex(-damping, rate * i); });
}

GeneratorFamily jordan_family(Complex lambda0, int d, int n) {
  if (d < 2) throw Error(Errc::BadGrid, "jordan blocks need dimension >= 2");
  GeneratorFamily fam;
  fam.name = "jordan";
  fam.params = {{"re", lambda0.real()},
                {"im", lambda0.imag()},
                {"d", static_cast<double>(d)},
                {"N", static_cast<double>(n)}};
  fam.space_kind = GeneratorFamily::SpaceKind::Counting;
  fam.default_truncation = n;
  fam.builder = [lambda0, d](int, double) {
    Matrix m = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
      m(i, i) = lambda0;
      if (i + 1 < d) m(i, i + 1) = 1.0;
    }
    return m;
  };
  return fam;
}

GeneratorFamily multiplication_interval_family(int k) {
  GeneratorFamily fam;
  fam.name = "multiplication_interval";
  fam.params = {{"K", static_cast<double>(k)}};
  fam.space_kind = GeneratorFamily::SpaceKind::UniformUnitInterval;
  fam.default_truncation = k;
  fam.builder = [](int, double label) {
    Matrix m(1, 1);
    m(0, 0) = label;
    return m;
  };
  return fam;
}

GeneratorFamily shifted_shift_family(int k, int m) {
  if (m < 4) throw Error(Errc::BadGrid, "shift grid needs m >= 4");
  GeneratorFamily fam;
  fam.name = "shifted_shift";
  fam.params = {{"K", static_cast<double>(k)}, {"m", static_cast<double>(m)}};
  fam.space_kind = GeneratorFamily::SpaceKind::UniformUnitInterval;
  fam.default_truncation = k;
  fam.builder = [m](int, double label) {
    Matrix blk = circulant_derivative(m);
    blk.diagonal().array() -= Complex(label, 0.0);
    return blk;
  };
  return fam;
}

GeneratorFamily make_family(const std::string& name,
                            const std::map<std::string, double>& params) {
  if (name == "example_7_2") return example_7_2_family(int_param(params, "N", 10));
  if (name == "polynomial_decay")
    return polynomial_decay_family(param_or(params, "alpha", 1.0), int_param(params, "N", 32));
  if (name == "linear_growth") return linear_growth_family(int_param(params, "N", 8));
  if (name == "negative_linear") return negative_linear_family(int_param(params, "N", 8));
  if (name == "damped_rotation")
    return damped_rotation_family(param_or(params, "damping", 1.0),
                                  param_or(params, "rate", 1.0), int_param(params, "N", 16));
  if (name == "jordan")
    return jordan_family(Complex(param_or(params, "re", -1.0), param_or(params, "im", 0.0)),
                         int_param(params, "d", 2), int_param(params, "N", 4));
  if (name == "multiplication_interval")
    return multiplication_interval_family(int_param(params, "K", 16));
  if (name == "shifted_shift")
    return shifted_shift_family(int_param(params, "K", 8), int_param(params, "m", 16));
  throw Error(Errc::SchemaError, "unknown family '" + name + "'");
}

std::vector<std::string> family_names() {
  return {"example_7_2",     "polynomial_decay", "linear_growth",
          "negative_linear", "damped_rotation",  "jordan",
          "multiplication_interval", "shifted_shift"};
}

OperatorField multiplication_field(const std::function<Complex(double)>& f,
                                   const MeasureSpace& space) {
  std::vector<Matrix> blocks;
  blocks.reserve(space.size());
  for (const Atom& a : space.atoms()) {
    Matrix m(1, 1);
    m(0, 0) = f(a.label);
    blocks.push_back(std::move(m));
  }
  return OperatorField(space, FiberSpec::uniform(space.size(), 1), std::move(blocks));
}

Matrix circulant_derivative(int m) {
  if (m < 4) throw Error(Errc::BadGrid, "shift grid needs m >= 4");
  const double h = 1.0 / m;
  Matrix c = Matrix::Zero(m, m);
  for (int j = 0; j < m; ++j) {
    c(j, j) = -1.0 / h;
    c(j, (j + 1) % m) = 1.0 / h;
  }
  return c;
}

OperatorField shifted_shift_field(const MeasureSpace& space, int m) {
  const Matrix c = circulant_derivative(m);
  std::vector<Matrix> blocks;
  blocks.reserve(space.size());
  for (const Atom& a : space.atoms()) {
    Matrix blk = c;
    blk.diagonal().array() -= Complex(a.label, 0.0);
    blocks.push_back(std::move(blk));
  }
  return OperatorField(space, FiberSpec::uniform(space.size(), m), std::move(blocks));
}

Matrix assemble_block_diagonal(const OperatorField& a) {
  const Eigen::Index total = a.fibers().total_dim();
  Matrix dense = Matrix::Zero(total, total);
  Eigen::Index off = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const Eigen::Index d = a.fibers().dims[k];
    dense.block(off, off, d, d) = a.block(k);
    off += d;
  }
  return dense;
}

double bounded_field_expm_check(const OperatorField& a, double t) {
  const Matrix dense = expm(t * assemble_block_diagonal(a));
  Matrix assembled = Matrix::Zero(dense.rows(), dense.cols());
  Eigen::Index off = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const Eigen::Index d = a.fibers().dims[k];
    assembled.block(off, off, d, d) = expm(t * a.block(k));
    off += d;
  }
  const double denom = dense.jacobiSvd().singularValues()(0);
  const double diff = (dense - assembled).jacobiSvd().singularValues()(0);
  return denom == 0.0 ? diff : diff / denom;
}

}  // namespace dint
