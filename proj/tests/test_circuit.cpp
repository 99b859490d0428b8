#include <doctest.h>

#include <cmath>
#include <vector>

#include "baga/circuit.hpp"
#include "baga/errors.hpp"
#include "baga/rng.hpp"

using namespace baga;
using namespace baga::circuit;

TEST_CASE("linear response") {
  CHECK(linear_response(5.99994, 10, 60) == doctest::Approx(0.99999).epsilon(1e-9));
  CHECK(linear_response(0.0, 10, 60) == 0.0);
  CHECK(linear_response(4.783, 10, 60) == doctest::Approx(0.797).epsilon(1e-3));
  CHECK(linear_response(-2.5, 10, 60) == 0.0);
  CHECK_THROWS_AS(linear_response(1.0, 10, 0), ParameterError);
}

TEST_CASE("hill response") {
  CHECK(hill_response(27, 1, 27, 6) == 0.5);
  CHECK(hill_response(3.5, 2.0, 3.5, 2.5) == 1.0);
  CHECK(hill_response(90, 1, 27, 6) == doctest::Approx(1.0 / (1.0 + std::pow(0.3, 6))).epsilon(1e-12));
  CHECK(hill_response(90, 1, 27, 6) == doctest::Approx(0.999272).epsilon(1e-6));
  CHECK(hill_response(0, 1, 27, 6) == 0.0);
  CHECK_THROWS_AS(hill_response(1, 1, 0, 6), ParameterError);
}

TEST_CASE("hill response is increasing and bounded") {
  Rng rng(17);
  for (int i = 0; i < 2000; ++i) {
    const double v = 0.1 + 5 * rng.uniform();
    const double k = 0.1 + 100 * rng.uniform();
    const double n = 0.2 + 8 * rng.uniform();
    const double x = 200 * rng.uniform();
    const double dx = 0.01 + rng.uniform();
    const double z = hill_response(x, v, k, n);
    REQUIRE(z <= v);
    REQUIRE(z >= 0.0);
    if (x > 0 && z < v * (1 - 1e-9)) REQUIRE(hill_response(x + dx, v, k, n) > z);
  }
}

TEST_CASE("inverse response round trip") {
  const ResponseFn lin = LinearResponse{10, 7000};
  CHECK(respond(lin, inverse_response(lin, 1.0)) == doctest::Approx(1.0).epsilon(1e-14));
  const ResponseFn hill = HillResponse{1, 27, 6};
  for (double z : {0.0, 0.1, 0.5, 0.9, 0.999}) CHECK(respond(hill, inverse_response(hill, z)) == doctest::Approx(z).epsilon(1e-12));
  CHECK_THROWS_AS(inverse_response(hill, 1.0), ParameterError);
  CHECK_THROWS_AS(inverse_response(lin, -0.1), ParameterError);
}

TEST_CASE("transport velocity") {
  const TransportParams p{1.0, 140.0 / 3.0, 0.02};
  CHECK(transport_velocity(90, 0, p) == doctest::Approx(0.658537).epsilon(1e-6));
  CHECK(transport_velocity(105, 10, p) == doctest::Approx(105.0 / (105.0 + 46.666666666666667 * 501.0)).epsilon(1e-12));
  CHECK(transport_velocity(105, 10, p) == doctest::Approx(0.0044709).epsilon(1e-4));
  CHECK(transport_velocity(0, 3, p) == 0.0);
}

TEST_CASE("transport velocity monotonicity") {
  Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    const TransportParams p{0.1 + rng.uniform(), 1 + 100 * rng.uniform(), 0.001 + rng.uniform()};
    const double s = 0.1 + 200 * rng.uniform();
    const double inh = 50 * rng.uniform();
    const double v = transport_velocity(s, inh, p);
    REQUIRE(v < p.vmax);
    REQUIRE(transport_velocity(s, inh + 0.5, p) < v);
    REQUIRE(transport_velocity(s + 0.5, inh, p) > v);
  }
}

TEST_CASE("uninhibited transport equals the plain Michaelis-Menten form") {
  Rng rng(6);
  for (int i = 0; i < 10000; ++i) {
    const TransportParams p{0.1 + 10 * rng.uniform(), 0.1 + 100 * rng.uniform(), 0.02};
    const double s = 1000 * rng.uniform();
    const double ref = p.vmax * s / (p.michaelis + s);
    const double got = transport_velocity(s, 0.0, p);
    REQUIRE(std::abs(got - ref) <= std::abs(std::nextafter(ref, 2 * ref + 1) - ref));
  }
}

TEST_CASE("michaelis constant from item values") {
  const std::vector<double> v{50, 55, 35};
  CHECK(michaelis_from_values(v, 3) == doctest::Approx(46.6667).epsilon(1e-5));
  const std::vector<double> one{10};
  CHECK(michaelis_from_values(one, 1) == 10.0);
  const std::vector<double> zeros{0, 0, 0};
  CHECK_THROWS_AS(michaelis_from_values(zeros, 3), ParameterError);
}

TEST_CASE("gfp level") {
  CHECK(gfp_level(1.0, 150) == 150.0);
  CHECK(gfp_level(0.0, 150) == 0.0);
  CHECK(gfp_level(0.99999, 150) == doctest::Approx(149.9985).epsilon(1e-9));
  CHECK(gfp_level(0.99999, 150) >= 149.0);
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const double a = rng.uniform(), b = rng.uniform();
    REQUIRE(gfp_level(a + b, 150) == doctest::Approx(gfp_level(a, 150) + gfp_level(b, 150)).epsilon(1e-15));
  }
}

TEST_CASE("growth rate update") {
  const SelectionParams sp{0.03, 0.8, 10};
  CHECK(updated_growth_rate(0.0, sp) == 0.03);
  CHECK(updated_growth_rate(1.0, sp) == doctest::Approx(0.11).epsilon(1e-12));
  const SelectionParams p{0.03, 0.0, 1.0};
  Rng rng(2);
  for (int i = 0; i < 1000; ++i) REQUIRE(updated_growth_rate(10 * rng.uniform(), p) == 0.03);
  // Affine in z.
  const double k1 = updated_growth_rate(0.2, sp), k2 = updated_growth_rate(0.6, sp), k3 = updated_growth_rate(1.0, sp);
  CHECK(k2 - k1 == doctest::Approx(k3 - k2).epsilon(1e-12));
  CHECK_THROWS_AS(updated_growth_rate(1.0, {0.03, 0.8, 0.0}), ParameterError);
}

TEST_CASE("eugenic rule kills at or below the threshold") {
  CHECK(eugenic_check(150, 149));
  CHECK_FALSE(eugenic_check(149, 149));
  CHECK_FALSE(eugenic_check(0, 0));
}
