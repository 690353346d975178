#include "core/markov.hpp"

#include <cmath>
#include <stdexcept>

namespace rsim {

Eigen::MatrixXd birth_death_generator(int n_max, double kappa_down,
                                      double kappa_up) {
  if (n_max < 1) throw std::invalid_argument("birth_death_generator: n_max must be >= 1");
  if (kappa_down < 0.0 || kappa_up < 0.0)
    throw std::invalid_argument("birth_death_generator: rates must be >= 0");
  const int d = n_max + 1;
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(d, d);
  for (int n = 0; n < d; ++n) {
    double out = 0.0;
    if (n >= 1) {
      g(n - 1, n) = n * kappa_down;
      out += n * kappa_down;
    }
    if (n < n_max) {
      g(n + 1, n) = (n + 1) * kappa_up;
      out += (n + 1) * kappa_up;
    }
    g(n, n) = -out;
  }
  return g;
}

Eigen::MatrixXd expm(const Eigen::MatrixXd& a) {
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();  // 1-norm
  int squarings = 0;
  double scale = 1.0;
  while (norm * scale > 0.5) {
    scale *= 0.5;
    ++squarings;
  }
  const Eigen::MatrixXd b = a * scale;
  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(a.rows(), a.cols());
  Eigen::MatrixXd term = result;
  for (int k = 1; k <= 20; ++k) {
    term = (term * b) / static_cast<double>(k);
    result += term;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

TransitionMatrix TransitionMatrix::build(int n_max, double kappa_down,
                                         double kappa_up, double duration) {
  if (duration < 0.0)
    throw std::invalid_argument("TransitionMatrix: duration must be >= 0");
  Eigen::MatrixXd g = birth_death_generator(n_max, kappa_down, kappa_up);
  Eigen::MatrixXd m = expm(g * duration);
  // rounding can leave entries at -1e-20 where the exact value is 0
  m = m.cwiseMax(0.0);
  TransitionMatrix t(std::move(m), duration);
  t.validate();
  return t;
}

void TransitionMatrix::validate() const {
  const int d = dim();
  for (int from = 0; from < d; ++from) {
    double sum = 0.0;
    for (int to = 0; to < d; ++to) {
      const double v = m_(to, from);
      if (!(v >= -1e-15 && v <= 1.0 + 1e-12))
        throw std::runtime_error("TransitionMatrix: entry outside [0,1]");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::runtime_error("TransitionMatrix: column not stochastic");
  }
}

}  // namespace rsim
