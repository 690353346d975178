#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace rsim {

struct FockComponent {
  int n;             // photon number
  double amplitude;  // real amplitude; squared magnitudes sum to 1
};

// A bosonic code measured through the ancilla-flip observable: the ancilla is
// flipped iff the storage photon number lies in flip_set.
struct CodeSpec {
  std::string name;
  std::vector<FockComponent> zero_codeword;
  std::vector<FockComponent> one_codeword;
  std::set<int> flip_set;           // S
  int distance = 0;                 // L
  std::map<int, double> prior;      // photon number -> prior probability

  bool in_flip_set(int n) const { return flip_set.count(n) != 0; }
  bool zero_supports(int n) const;
  bool one_supports(int n) const;
  int max_photon() const;

  // Throws std::invalid_argument unless: both codewords normalized to 1e-12,
  // supports disjoint, prior sums to 1 with mass 0.5 per logical state
  // (amplitude^2-weighted within each codeword), distance equals the minimum
  // photon-number gap between the supports, and the zero codeword support
  // lies inside S while the one codeword support is disjoint from S.
  void validate() const;
};

// The six supported codes: fock-0-2, fock-0-3, fock-0-4, fock-0-5 (S={0,1}),
// binomial-1 (S={1,2}) and binomial-2 (S={1,2,3}).
const std::vector<CodeSpec>& builtin_codes();
const CodeSpec& find_code(const std::string& name);

}  // namespace rsim
