#include "dint/expm.hpp"

#include <algorithm>
#include <cmath>

namespace dint {

namespace {

double one_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().colwise().sum().maxCoeff();
}

void pade_uv(const Matrix& a, std::span<const double> b, Matrix& u, Matrix& v) {
  const Eigen::Index n = a.rows();
  const Matrix a2 = a * a;
  Matrix even = b[0] * Matrix::Identity(n, n);
  Matrix odd = b[1] * Matrix::Identity(n, n);
  Matrix pow = Matrix::Identity(n, n);
  for (std::size_t k = 2; k < b.size(); k += 2) {
    pow = pow * a2;
    even += b[k] * pow;
    if (k + 1 < b.size()) odd += b[k + 1] * pow;
  }
  u = a * odd;
  v = std::move(even);
}

Matrix pade13(const Matrix& a) {
  static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                             1187353796428800.0,  129060195264000.0,   10559470521600.0,
                             670442572800.0,      33522128640.0,       1323241920.0,
                             40840800.0,          960960.0,            16380.0,
                             182.0,               1.0};
  const Eigen::Index n = a.rows();
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const Matrix id = Matrix::Identity(n, n);
  const Matrix u =
      a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 +
           b[1] * id);
  const Matrix v =
      a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
  return (v - u).partialPivLu().solve(v + u);
}

// Pade approximant with the usual 2^-s pre-scaling (Higham's degree/theta
// selection). Callers keep ||a||_1 <= 100 so squaring cannot overflow.
Matrix pade_expm(const Matrix& a) {
  static const double theta3 = 1.495585217958292e-2;
  static const double theta5 = 2.539398330063230e-1;
  static const double theta7 = 9.504178996162932e-1;
  static const double theta9 = 2.097847961257068;
  static const double theta13 = 5.371920351148152;
  static const double b3[] = {120.0, 60.0, 12.0, 1.0};
  static const double b5[] = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
  static const double b7[] = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                              25200.0,    1512.0,    56.0,      1.0};
  static const double b9[] = {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0,
                              30270240.0,    2162160.0,    110880.0,     3960.0,
                              90.0,          1.0};

  const double nrm = one_norm(a);
  Matrix u, v;
  if (nrm <= theta3) {
    pade_uv(a, b3, u, v);
  } else if (nrm <= theta5) {
    pade_uv(a, b5, u, v);
  } else if (nrm <= theta7) {
    pade_uv(a, b7, u, v);
  } else if (nrm <= theta9) {
    pade_uv(a, b9, u, v);
  } else {
    int s = 0;
    if (nrm > theta13) s = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
    Matrix f = pade13(a / std::pow(2.0, s));
    for (int i = 0; i < s; ++i) f = f * f;
    return f;
  }
  return (v - u).partialPivLu().solve(v + u);
}

double matrix_scale(const Matrix& a) { return a.cwiseAbs().maxCoeff(); }

void renormalize(Matrix& a, double& log_scale) {
  const double s = matrix_scale(a);
  if (s > 0.0 && std::isfinite(s)) {
    a /= s;
    log_scale += std::log(s);
  }
}

ScaledExp power_scaled(Matrix base, double log_base, std::uint64_t k) {
  Matrix acc = Matrix::Identity(base.rows(), base.cols());
  double log_acc = 0.0;
  while (k > 0) {
    if (k & 1) {
      acc = acc * base;
      log_acc += log_base;
      renormalize(acc, log_acc);
    }
    k >>= 1;
    if (k == 0) break;
    base = base * base;
    log_base *= 2.0;
    renormalize(base, log_base);
  }
  return ScaledExp{std::move(acc), log_acc};
}

}  // namespace

Matrix expm(const Matrix& a) {
  if (a.rows() != a.cols()) throw Error(Errc::ExpFailure, "exponential of a non-square matrix");
  const Eigen::Index n = a.rows();
  const double nrm = one_norm(a);
  if (nrm == 0.0) return Matrix::Identity(n, n);
  if (n == 1) {
    Matrix r(1, 1);
    r(0, 0) = std::exp(a(0, 0));
    if (!r.allFinite()) throw Error(Errc::ExpFailure, "scalar exponential overflowed");
    return r;
  }
  Matrix f;
  if (nrm > 100.0) {
    const auto steps = static_cast<std::uint64_t>(std::ceil(nrm));
    const Matrix e = pade_expm(a / static_cast<double>(steps));
    const ScaledExp se = power_scaled(e, 0.0, steps);
    f = std::exp(se.log_scale) * se.b;
  } else {
    f = pade_expm(a);
  }
  if (!f.allFinite()) throw Error(Errc::ExpFailure, "matrix exponential is not finite");
  return f;
}

ScaledExp expm_scaled(const Matrix& a) {
  if (a.rows() != a.cols()) throw Error(Errc::ExpFailure, "exponential of a non-square matrix");
  const Eigen::Index n = a.rows();
  const double nrm = one_norm(a);
  if (nrm == 0.0) return ScaledExp{Matrix::Identity(n, n), 0.0};
  if (n == 1) {
    Matrix b(1, 1);
    b(0, 0) = std::exp(Complex(0.0, a(0, 0).imag()));
    return ScaledExp{std::move(b), a(0, 0).real()};
  }
  if (nrm > 1.0) {
    const auto steps = static_cast<std::uint64_t>(std::ceil(nrm));
    const Matrix e = pade_expm(a / static_cast<double>(steps));
    ScaledExp se = power_scaled(e, 0.0, steps);
    if (!se.b.allFinite()) throw Error(Errc::ExpFailure, "matrix exponential is not finite");
    return se;
  }
  Matrix b = pade_expm(a);
  if (!b.allFinite()) throw Error(Errc::ExpFailure, "matrix exponential is not finite");
  double log_scale = 0.0;
  renormalize(b, log_scale);
  return ScaledExp{std::move(b), log_scale};
}

double log_norm_expm(const Matrix& a) {
  const ScaledExp se = expm_scaled(a);
  const double nb = se.b.jacobiSvd().singularValues()(0);
  return se.log_scale + std::log(nb);
}

}  // namespace dint
