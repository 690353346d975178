#include "core/theory.hpp"

#include <cmath>
#include <stdexcept>

namespace rsim {

namespace {

// log C(n, k); exact to double rounding for the n used here
double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// C(n,k) * p^k in log space; p = 0 handled exactly
double vote_term(int n, int k, double p) {
  if (p == 0.0) return 0.0;
  return std::exp(log_binomial(n, k) + k * std::log(p));
}

double power_term(double base, int e) {
  if (e == 0) return 1.0;
  if (base == 0.0) return 0.0;
  return std::exp(e * std::log(base));
}

}  // namespace

InfidelityBreakdown fock_infidelity(int distance, int votes,
                                    double kappa_down_tau,
                                    double kappa_up_tau, double delta0,
                                    double delta1, bool allow_even) {
  if (distance < 2)
    throw std::invalid_argument("fock_infidelity: distance must be >= 2");
  if (votes < 1)
    throw std::invalid_argument("fock_infidelity: votes must be >= 1");
  if (votes % 2 == 0 && !allow_even)
    throw std::invalid_argument(
        "fock_infidelity: formula is derived for odd vote counts; pass "
        "allow_even to evaluate it anyway");
  if (!(kappa_down_tau >= 0.0 && kappa_down_tau < 1.0) ||
      !(kappa_up_tau >= 0.0 && kappa_up_tau < 1.0))
    throw std::invalid_argument("fock_infidelity: rate*tau must lie in [0,1)");
  if (!(delta0 >= 0.0 && delta0 < 0.5) || !(delta1 >= 0.0 && delta1 < 0.5))
    throw std::invalid_argument("fock_infidelity: deltas must lie in [0,0.5)");

  const int half = (votes + 1) / 2;  // ceil(N/2)
  InfidelityBreakdown b;
  b.relaxation_term = distance * power_term(half * kappa_down_tau, distance - 1);
  b.excitation_term = power_term(half * kappa_up_tau, 2);
  b.vote_error_0 = vote_term(votes, half, delta0);
  b.vote_error_1 = vote_term(votes, half, delta1);
  b.total = b.relaxation_term + b.excitation_term + b.vote_error_0 +
            b.vote_error_1;
  return b;
}

std::vector<TheoryPoint> theory_curves(int distance, int votes_max,
                                       double kappa_down_tau,
                                       double kappa_up_tau, double delta0,
                                       double delta1, bool include_even) {
  if (votes_max < 1)
    throw std::invalid_argument("theory_curves: votes_max must be >= 1");
  std::vector<TheoryPoint> out;
  for (int n = 1; n <= votes_max; ++n) {
    if (n % 2 == 0 && !include_even) continue;
    out.push_back({n, fock_infidelity(distance, n, kappa_down_tau,
                                      kappa_up_tau, delta0, delta1,
                                      /*allow_even=*/true)});
  }
  return out;
}

}  // namespace rsim
