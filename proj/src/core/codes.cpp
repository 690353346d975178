#include "core/codes.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace rsim {

namespace {

void require(bool ok, const std::string& name, const std::string& what) {
  if (!ok) throw std::invalid_argument("CodeSpec '" + name + "': " + what);
}

double norm2(const std::vector<FockComponent>& word) {
  double s = 0.0;
  for (const auto& c : word) s += c.amplitude * c.amplitude;
  return s;
}

CodeSpec make_fock(int L) {
  CodeSpec c;
  c.name = "fock-0-" + std::to_string(L);
  c.zero_codeword = {{0, 1.0}};
  c.one_codeword = {{L, 1.0}};
  c.flip_set = {0, 1};
  c.distance = L;
  c.prior = {{0, 0.5}, {L, 0.5}};
  return c;
}

std::vector<CodeSpec> make_builtins() {
  std::vector<CodeSpec> all;
  for (int L = 2; L <= 5; ++L) all.push_back(make_fock(L));

  const double r = 1.0 / std::sqrt(2.0);

  CodeSpec b1;
  b1.name = "binomial-1";
  b1.zero_codeword = {{2, 1.0}};
  b1.one_codeword = {{0, r}, {4, r}};
  b1.flip_set = {1, 2};
  b1.distance = 2;
  b1.prior = {{2, 0.5}, {0, 0.25}, {4, 0.25}};
  all.push_back(b1);

  CodeSpec b2;
  b2.name = "binomial-2";
  b2.zero_codeword = {{3, 1.0}};
  b2.one_codeword = {{0, r}, {6, r}};
  b2.flip_set = {1, 2, 3};
  b2.distance = 3;
  b2.prior = {{3, 0.5}, {0, 0.25}, {6, 0.25}};
  all.push_back(b2);

  for (auto& c : all) c.validate();
  return all;
}

}  // namespace

bool CodeSpec::zero_supports(int n) const {
  for (const auto& c : zero_codeword)
    if (c.n == n) return true;
  return false;
}

bool CodeSpec::one_supports(int n) const {
  for (const auto& c : one_codeword)
    if (c.n == n) return true;
  return false;
}

int CodeSpec::max_photon() const {
  int m = 0;
  for (const auto& c : zero_codeword) m = std::max(m, c.n);
  for (const auto& c : one_codeword) m = std::max(m, c.n);
  return m;
}

void CodeSpec::validate() const {
  require(!zero_codeword.empty() && !one_codeword.empty(), name,
          "both codewords must be non-empty");
  require(std::abs(norm2(zero_codeword) - 1.0) <= 1e-12, name,
          "zero codeword not normalized");
  require(std::abs(norm2(one_codeword) - 1.0) <= 1e-12, name,
          "one codeword not normalized");
  for (const auto& c : zero_codeword)
    require(c.n >= 0, name, "negative photon number");
  for (const auto& c : one_codeword) {
    require(c.n >= 0, name, "negative photon number");
    require(!zero_supports(c.n), name,
            "photon number appears in both codewords");
  }

  // distance = minimum gap between the supports
  int gap = std::numeric_limits<int>::max();
  for (const auto& a : zero_codeword)
    for (const auto& b : one_codeword)
      gap = std::min(gap, std::abs(a.n - b.n));
  require(distance == gap, name, "distance does not match codeword supports");
  require(distance >= 1, name, "distance must be >= 1");

  // the flip observable must separate the codewords: zero support inside S,
  // one support outside
  for (const auto& c : zero_codeword)
    require(in_flip_set(c.n), name, "zero codeword support must lie in S");
  for (const auto& c : one_codeword)
    require(!in_flip_set(c.n), name, "one codeword support must avoid S");

  // prior: 0.5 per logical state, amplitude^2-weighted within each codeword
  double total = 0.0;
  for (const auto& [n, p] : prior) {
    require(p >= 0.0, name, "negative prior");
    total += p;
  }
  require(std::abs(total - 1.0) <= 1e-12, name, "prior must sum to 1");
  auto check_word = [&](const std::vector<FockComponent>& word) {
    for (const auto& c : word) {
      auto it = prior.find(c.n);
      require(it != prior.end(), name, "prior missing codeword component");
      require(std::abs(it->second - 0.5 * c.amplitude * c.amplitude) <= 1e-12,
              name, "prior weight does not match codeword amplitude");
    }
  };
  check_word(zero_codeword);
  check_word(one_codeword);
  require(prior.size() == zero_codeword.size() + one_codeword.size(), name,
          "prior has mass outside the codewords");
}

const std::vector<CodeSpec>& builtin_codes() {
  static const std::vector<CodeSpec> codes = make_builtins();
  return codes;
}

const CodeSpec& find_code(const std::string& name) {
  for (const auto& c : builtin_codes())
    if (c.name == name) return c;
  throw std::invalid_argument("unknown code '" + name +
                              "' (expected fock-0-2..fock-0-5, binomial-1, "
                              "binomial-2)");
}

}  // namespace rsim
