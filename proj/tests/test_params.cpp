#include "core/params.hpp"

#include <cmath>
#include <stdexcept>

#include "core/rng.hpp"
#include "doctest.h"

using namespace rsim;

TEST_CASE("defaults carry the measured device values") {
  SystemParams p;
  p.validate();
  CHECK(p.storage_t1 == doctest::Approx(0.99e-3));
  CHECK(p.ancilla_t1_ge == doctest::Approx(51e-6));
  CHECK(p.ancilla_t2_gf == doctest::Approx(57e-6));
  CHECK(p.ancilla_thermal_pop == doctest::Approx(0.004));
  CHECK(p.anharmonicity == doctest::Approx(-2 * M_PI * 137e6));
  CHECK(p.demolition_prob == doctest::Approx(2e-4));
  // fitted effective gain: kappa_up * (t_map + t_readout_reset) = 2.7e-4
  CHECK(p.storage_kappa_up * (p.t_map + p.t_readout_reset) ==
        doctest::Approx(2.7e-4).epsilon(1e-12));
}

TEST_CASE("empty config returns defaults") {
  SystemParams p = params_from_string("");
  CHECK(p.storage_t1 == doctest::Approx(0.99e-3));
}

TEST_CASE("partial override keeps other fields") {
  SystemParams p = params_from_string("ancilla_thermal_pop = 0\n");
  CHECK(p.ancilla_thermal_pop == 0.0);
  CHECK(p.storage_t1 == doctest::Approx(0.99e-3));
  CHECK(p.t_map == doctest::Approx(2.4e-6));
}

TEST_CASE("invalid values are rejected") {
  CHECK_THROWS_AS(params_from_string("storage_t1 = -1\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(params_from_string("storage_thermal_pop = 1.5\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(params_from_string("no_such_key = 1\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(params_from_string("storage_t1 = banana\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(params_from_string("storage_t1\n"), std::invalid_argument);
  // T2 > 2*T1
  CHECK_THROWS_AS(params_from_string("ancilla_t2_ge = 150e-6\n"),
                  std::invalid_argument);
}

TEST_CASE("comments and blank lines are accepted") {
  SystemParams p = params_from_string(
      "# device config\n\nstorage_t1 = 1.2e-3  # tweaked\n");
  CHECK(p.storage_t1 == doctest::Approx(1.2e-3));
}

TEST_CASE("serialization round-trips bit-exactly") {
  SystemParams p;
  p.storage_t1 = 1.0123456789012345e-3;
  p.anharmonicity = -8.6080529520649e8;
  std::string text = params_to_string(p);
  SystemParams q = params_from_string(text);
  for (const auto& [key, value] : params_as_map(p)) {
    CHECK(params_get_key(q, key) == value);
  }
  // idempotence: serialize(load(serialize)) == serialize
  CHECK(params_to_string(q) == text);
}

TEST_CASE("random streams are reproducible and distinct") {
  RandomStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  bool all_equal_c = true, all_equal_d = true;
  for (int i = 0; i < 1000; ++i) {
    uint64_t x = a.next_u64();
    CHECK(x == b.next_u64());
    if (x != c.next_u64()) all_equal_c = false;
    if (x != d.next_u64()) all_equal_d = false;
  }
  CHECK_FALSE(all_equal_c);
  CHECK_FALSE(all_equal_d);
}

TEST_CASE("uniform variates are sane") {
  RandomStream r(1, 0);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
  }
  CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("normal variates have the right moments") {
  RandomStream r(2, 0);
  double s1 = 0.0, s2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    double x = r.normal();
    s1 += x;
    s2 += x * x;
  }
  CHECK(std::abs(s1 / n) < 0.01);
  CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.02));
}
