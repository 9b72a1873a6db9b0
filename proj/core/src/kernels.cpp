// Copyright 2026 The Surro Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "surro/kernels.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "surro/error.hpp"

namespace surro {
namespace {

constexpr double kSqrt3 = 1.7320508075688772;
constexpr double kSqrt5 = 2.23606797749979;

// Correlation as a function of the scaled distance r (sigma_f = 1).
double correlation(KernelFamily family, double r2) {
  switch (family) {
    case KernelFamily::kRbf:
      return std::exp(-0.5 * r2);
    case KernelFamily::kExp:
      return std::exp(-std::sqrt(r2));
    case KernelFamily::kMatern32: {
      const double a = kSqrt3 * std::sqrt(r2);
      return (1.0 + a) * std::exp(-a);
    }
    case KernelFamily::kMatern52: {
      const double a = kSqrt5 * std::sqrt(r2);
      return (1.0 + a + a * a / 3.0) * std::exp(-a);
    }
  }
  return 0.0;
}

// -g'(r) / r, so that dk/dlog(l_k) = sigma_f^2 * slope * s_k^2 where s_k is
// the scaled coordinate difference.
double radial_slope(KernelFamily family, double r2) {
  switch (family) {
    case KernelFamily::kRbf:
      return std::exp(-0.5 * r2);
    case KernelFamily::kExp: {
      if (r2 <= 0) return 0.0;
      const double r = std::sqrt(r2);
      return std::exp(-r) / r;
    }
    case KernelFamily::kMatern32:
      return 3.0 * std::exp(-kSqrt3 * std::sqrt(r2));
    case KernelFamily::kMatern52: {
      const double a = kSqrt5 * std::sqrt(r2);
      return (5.0 / 3.0) * (1.0 + a) * std::exp(-a);
    }
  }
  return 0.0;
}

struct Radial {
  double value;
  double slope;
};

// correlation and radial_slope together, sharing one exponential.
Radial radial_terms(KernelFamily family, double r2) {
  switch (family) {
    case KernelFamily::kRbf: {
      const double e = std::exp(-0.5 * r2);
      return {e, e};
    }
    case KernelFamily::kExp: {
      const double r = std::sqrt(r2);
      const double e = std::exp(-r);
      return {e, r2 > 0 ? e / r : 0.0};
    }
    case KernelFamily::kMatern32: {
      const double a = kSqrt3 * std::sqrt(r2);
      const double e = std::exp(-a);
      return {(1.0 + a) * e, 3.0 * e};
    }
    case KernelFamily::kMatern52: {
      const double a = kSqrt5 * std::sqrt(r2);
      const double e = std::exp(-a);
      return {(1.0 + a + a * a / 3.0) * e, (5.0 / 3.0) * (1.0 + a) * e};
    }
  }
  return {0.0, 0.0};
}

void check_dims(const KernelSpec& spec, const Hyperparameters& hp, Eigen::Index cols) {
  hp.check(spec);
  if (cols != spec.dim) {
    throw InvalidArgument("kernel dimension mismatch: expected " + std::to_string(spec.dim) + " columns, got " +
                          std::to_string(cols));
  }
}

// Inverse length-scale per input dimension.
Eigen::VectorXd inverse_lengthscales(const KernelSpec& spec, const Hyperparameters& hp) {
  Eigen::VectorXd inv(spec.dim);
  for (int i = 0; i < spec.dim; ++i) inv[i] = std::exp(-hp.log_lengthscales[spec.ard ? i : 0]);
  return inv;
}

// Squared distance in length-scale units. Each coordinate difference is
// scaled before squaring; isotropic and equal-scale ARD kernels therefore
// execute the same operations.
template <typename A, typename B>
double scaled_distance2(const A& x, const B& y, const Eigen::VectorXd& inv) {
  double r2 = 0.0;
  for (Eigen::Index i = 0; i < inv.size(); ++i) {
    const double s = (x[i] - y[i]) * inv[i];
    r2 += s * s;
  }
  return r2;
}

}  // namespace

std::string_view to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::kRbf:
      return "RBF";
    case KernelFamily::kExp:
      return "EXP";
    case KernelFamily::kMatern32:
      return "MATERN32";
    case KernelFamily::kMatern52:
      return "MATERN52";
  }
  return "?";
}

KernelFamily parse_kernel_family(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
  for (auto f : {KernelFamily::kRbf, KernelFamily::kExp, KernelFamily::kMatern32, KernelFamily::kMatern52}) {
    if (upper == to_string(f)) return f;
  }
  throw InvalidArgument("unknown kernel family: " + std::string(name));
}

nlohmann::json KernelSpec::to_json() const {
  return {{"family", std::string(to_string(family))}, {"ard", ard}, {"d", dim}};
}

KernelSpec KernelSpec::from_json(const nlohmann::json& j) {
  KernelSpec spec;
  spec.family = parse_kernel_family(j.at("family").get<std::string>());
  spec.ard = j.at("ard").get<bool>();
  spec.dim = j.at("d").get<int>();
  if (spec.dim < 1) throw InvalidArgument("kernel dimension must be positive");
  return spec;
}

double Hyperparameters::sigma_f() const { return std::exp(log_sigma_f); }
double Hyperparameters::sigma_n() const { return std::exp(log_sigma_n); }

Eigen::VectorXd Hyperparameters::pack() const {
  Eigen::VectorXd theta(log_lengthscales.size() + 2);
  theta << log_lengthscales, log_sigma_f, log_sigma_n;
  return theta;
}

Hyperparameters Hyperparameters::unpack(const KernelSpec& spec, const Eigen::VectorXd& theta) {
  if (theta.size() != spec.num_hyperparameters()) throw InvalidArgument("hyperparameter vector has wrong length");
  Hyperparameters hp;
  hp.log_lengthscales = theta.head(spec.num_lengthscales());
  hp.log_sigma_f = theta[spec.num_lengthscales()];
  hp.log_sigma_n = theta[spec.num_lengthscales() + 1];
  return hp;
}

Hyperparameters Hyperparameters::unit(const KernelSpec& spec, double noise) {
  Hyperparameters hp;
  hp.log_lengthscales = Eigen::VectorXd::Zero(spec.num_lengthscales());
  hp.log_sigma_n = std::log(noise);
  return hp;
}

void Hyperparameters::check(const KernelSpec& spec) const {
  if (log_lengthscales.size() != spec.num_lengthscales()) {
    throw InvalidArgument(spec.ard ? "ARD kernel needs one length-scale per input dimension"
                                   : "isotropic kernel needs exactly one length-scale");
  }
  if (!log_lengthscales.allFinite() || !std::isfinite(log_sigma_f) || !std::isfinite(log_sigma_n)) {
    throw InvalidArgument("hyperparameters must be finite");
  }
}

double kernel_eval(const KernelSpec& spec, const Hyperparameters& hp, ConstRowRef x, ConstRowRef x2) {
  check_dims(spec, hp, x.size());
  if (x2.size() != spec.dim) throw InvalidArgument("kernel dimension mismatch");
  const double sf2 = std::exp(2.0 * hp.log_sigma_f);
  return sf2 * correlation(spec.family, scaled_distance2(x, x2, inverse_lengthscales(spec, hp)));
}

Eigen::MatrixXd kernel_matrix(const KernelSpec& spec, const Hyperparameters& hp, const Eigen::MatrixXd& X,
                              const Eigen::MatrixXd& X2) {
  check_dims(spec, hp, X.cols());
  check_dims(spec, hp, X2.cols());
  const Eigen::VectorXd inv = inverse_lengthscales(spec, hp);
  const double sf2 = std::exp(2.0 * hp.log_sigma_f);
  // Row-major copies keep the inner distance loop contiguous.
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> A = X, B = X2;
  Eigen::MatrixXd K(X.rows(), X2.rows());
  for (Eigen::Index j = 0; j < B.rows(); ++j) {
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      K(i, j) = sf2 * correlation(spec.family, scaled_distance2(A.row(i), B.row(j), inv));
    }
  }
  return K;
}

Eigen::MatrixXd kernel_matrix(const KernelSpec& spec, const Hyperparameters& hp, const Eigen::MatrixXd& X) {
  check_dims(spec, hp, X.cols());
  const Eigen::VectorXd inv = inverse_lengthscales(spec, hp);
  const double sf2 = std::exp(2.0 * hp.log_sigma_f);
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> A = X;
  const Eigen::Index n = X.rows();
  Eigen::MatrixXd K(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    K(j, j) = sf2;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double v = sf2 * correlation(spec.family, scaled_distance2(A.row(i), A.row(j), inv));
      K(i, j) = v;
      K(j, i) = v;
    }
  }
  return K;
}

std::vector<Eigen::MatrixXd> kernel_gradients(const KernelSpec& spec, const Hyperparameters& hp,
                                              const Eigen::MatrixXd& X) {
  check_dims(spec, hp, X.cols());
  const Eigen::VectorXd inv = inverse_lengthscales(spec, hp);
  const double sf2 = std::exp(2.0 * hp.log_sigma_f);
  const Eigen::Index n = X.rows();
  const int m = spec.num_lengthscales();
  std::vector<Eigen::MatrixXd> grads(static_cast<std::size_t>(m + 1), Eigen::MatrixXd::Zero(n, n));
  for (Eigen::Index j = 0; j < n; ++j) {
    grads[m](j, j) = 2.0 * sf2;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double r2 = scaled_distance2(X.row(i), X.row(j), inv);
      const double slope = sf2 * radial_slope(spec.family, r2);
      for (int d = 0; d < spec.dim; ++d) {
        const double s = (X(i, d) - X(j, d)) * inv[d];
        const double g = slope * s * s;
        grads[spec.ard ? d : 0](i, j) += g;
      }
      for (int k = 0; k < m; ++k) grads[k](j, i) = grads[k](i, j);
      grads[m](i, j) = grads[m](j, i) = 2.0 * sf2 * correlation(spec.family, r2);
    }
  }
  return grads;
}

Eigen::VectorXd kernel_gradient_traces(const KernelSpec& spec, const Hyperparameters& hp, const Eigen::MatrixXd& X,
                                       const Eigen::MatrixXd& W) {
  check_dims(spec, hp, X.cols());
  const Eigen::VectorXd inv = inverse_lengthscales(spec, hp);
  const double sf2 = std::exp(2.0 * hp.log_sigma_f);
  const Eigen::Index n = X.rows();
  const int m = spec.num_lengthscales();
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> A = X;
  Eigen::VectorXd traces = Eigen::VectorXd::Zero(m + 1);
  Eigen::VectorXd s2(spec.dim);
  double amplitude = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    amplitude += W(j, j) * sf2;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      double r2 = 0.0;
      for (int d = 0; d < spec.dim; ++d) {
        const double s = (A(i, d) - A(j, d)) * inv[d];
        s2[d] = s * s;
        r2 += s2[d];
      }
      // Off-diagonal pairs appear twice in the symmetric sum.
      const double w = 2.0 * W(i, j);
      const Radial terms = radial_terms(spec.family, r2);
      amplitude += w * sf2 * terms.value;
      const double slope = w * sf2 * terms.slope;
      if (spec.ard) {
        for (int d = 0; d < spec.dim; ++d) traces[d] += slope * s2[d];
      } else {
        traces[0] += slope * r2;
      }
    }
  }
  traces[m] = 2.0 * amplitude;
  return traces;
}

}  // namespace surro
