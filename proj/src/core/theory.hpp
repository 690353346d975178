#pragma once

#include <vector>

namespace rsim {

// Closed-form majority-vote infidelity terms for the Fock code of distance L
// read out N times: state relaxation across the code distance, double
// excitation out of S, and the two majority-vote error terms.
struct InfidelityBreakdown {
  double relaxation_term = 0.0;  // L * (ceil(N/2) * kdt)^(L-1)
  double excitation_term = 0.0;  // (ceil(N/2) * kut)^2
  double vote_error_0 = 0.0;     // C(N, ceil(N/2)) * delta0^ceil(N/2)
  double vote_error_1 = 0.0;     // C(N, ceil(N/2)) * delta1^ceil(N/2)
  double total = 0.0;            // sum of the four terms
};

// Evaluate the prediction at one vote count. The derivation assumes odd N;
// even N is computed (the ceiling is well defined) but only when the caller
// opts in, otherwise it is rejected.
InfidelityBreakdown fock_infidelity(int distance, int votes,
                                    double kappa_down_tau,
                                    double kappa_up_tau, double delta0,
                                    double delta1, bool allow_even = false);

struct TheoryPoint {
  int votes;
  InfidelityBreakdown breakdown;
};

// Breakdown per vote count up to votes_max: odd N only by default, every N
// when include_even is set.
std::vector<TheoryPoint> theory_curves(int distance, int votes_max,
                                       double kappa_down_tau,
                                       double kappa_up_tau, double delta0,
                                       double delta1,
                                       bool include_even = false);

}  // namespace rsim
