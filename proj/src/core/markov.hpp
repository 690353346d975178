#pragma once

#include <Eigen/Dense>

namespace rsim {

// Birth-death generator on photon numbers 0..n_max, column convention:
// G(to, from). Loss n -> n-1 at rate n*kappa_down, gain n -> n+1 at rate
// (n+1)*kappa_up; gain out of n_max is suppressed so every column sums to 0.
Eigen::MatrixXd birth_death_generator(int n_max, double kappa_down,
                                      double kappa_up);

// Matrix exponential by scaling-and-squaring of a truncated Taylor series.
// Intended for the small generator matrices used here.
Eigen::MatrixXd expm(const Eigen::MatrixXd& a);

// Column-stochastic transition matrix exp(G * duration) for one protocol
// cycle of the stated duration.
class TransitionMatrix {
 public:
  static TransitionMatrix build(int n_max, double kappa_down, double kappa_up,
                                double duration);

  int dim() const { return static_cast<int>(m_.rows()); }
  int n_max() const { return dim() - 1; }
  double duration() const { return duration_; }

  // probability of hidden state `from` -> `to` over one cycle
  double operator()(int to, int from) const { return m_(to, from); }
  const Eigen::MatrixXd& matrix() const { return m_; }

  // Throws std::runtime_error unless entries lie in [0,1] and every column
  // sums to 1 within 1e-12.
  void validate() const;

 private:
  TransitionMatrix(Eigen::MatrixXd m, double duration)
      : m_(std::move(m)), duration_(duration) {}
  Eigen::MatrixXd m_;
  double duration_;
};

}  // namespace rsim
