#include <doctest.h>

#include <boost/multiprecision/cpp_complex.hpp>

#include "eitfwm/params.hpp"

using namespace eitfwm;

namespace {

MediumParams vapor_medium(double two_d) {
  return {two_d, two_pi * 145e6, 1000.0, two_pi * 6.835e9, 0.075, 3.0};
}

DriveParams vapor_drive(double rabi_hz, double delta = 0.0, double f = 1.0) {
  return {two_pi * rabi_hz, delta, f};
}

}  // namespace

TEST_CASE("derived parameters reproduce the published light shifts") {
  const MediumParams m = vapor_medium(98.0);

  SUBCASE("9 MHz control") {
    const DerivedParams d = derive_params(m, vapor_drive(9e6));
    CHECK(d.delta_s / two_pi == doctest::Approx(35.6e3).epsilon(0.01));
    // published as 36 kHz
    CHECK(std::abs(d.delta_s / two_pi - 36e3) / 36e3 < 0.05);
  }
  SUBCASE("14 MHz control") {
    const DerivedParams d = derive_params(m, vapor_drive(14e6));
    CHECK(d.delta_s / two_pi == doctest::Approx(86e3).epsilon(0.01));
    CHECK(d.delta_r / two_pi == doctest::Approx(-28.7e3).epsilon(0.01));
    // published as 84 kHz and -28 kHz; agreement within a few percent
    CHECK(std::abs(d.delta_s / two_pi - 84e3) / 84e3 < 0.05);
    CHECK(std::abs(d.delta_r / two_pi - (-28e3)) / 28e3 < 0.05);
  }
}

TEST_CASE("zero-drive limit") {
  MediumParams m = vapor_medium(52.0);
  DriveParams drv = vapor_drive(1e-3);  // omega -> 0, must stay > 0
  const DerivedParams d = derive_params(m, drv);
  CHECK(std::abs(d.delta_s) < 1e-10);
  CHECK(std::abs(d.delta_r) < 1e-10);
  CHECK(d.gamma_0 == doctest::Approx(m.gamma_sg).epsilon(1e-12));
}

TEST_CASE("derive_params rejects bad inputs") {
  MediumParams m = vapor_medium(52.0);
  CHECK_THROWS_AS(derive_params({0.0, m.gamma, m.gamma_sg, m.delta_hf, m.length, 3.0},
                                vapor_drive(9e6)),
                  std::invalid_argument);
  m.delta_hf = 0.0;
  // delta_hf = 0 fails the > 0 invariant before the division is reached
  CHECK_THROWS(derive_params(m, vapor_drive(9e6)));
  CHECK_THROWS_AS(derive_params(vapor_medium(52.0), {two_pi * 9e6, 0.0, 1.5}),
                  std::invalid_argument);
}

TEST_CASE("derive_params is homogeneous of degree two in Omega") {
  const MediumParams m = vapor_medium(98.0);
  const DerivedParams d1 = derive_params(m, vapor_drive(9e6));
  const DerivedParams d2 = derive_params(m, vapor_drive(27e6));  // c = 3
  CHECK(d2.delta_s == doctest::Approx(9.0 * d1.delta_s).epsilon(1e-14));
  CHECK(d2.delta_r == doctest::Approx(9.0 * d1.delta_r).epsilon(1e-14));
}

TEST_CASE("eit_delay * vg_over_l = 1 exactly") {
  for (double rabi : {9e6, 14e6}) {
    const DerivedParams d = derive_params(vapor_medium(110.0), vapor_drive(rabi));
    CHECK(d.eit_delay * d.vg_over_l == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("response components at exact two-photon resonance, lossless limit") {
  // gamma_0 -> 0 and Delta_R -> 0 via gamma_sg = 0 and huge Delta_hf
  MediumParams m = vapor_medium(98.0);
  m.gamma_sg = 0.0;
  m.delta_hf *= 1e12;
  DriveParams drv = vapor_drive(9e6);
  DerivedParams d = derive_params(m, drv);
  drv.delta = d.delta_s;  // delta = delta_s, omega = 0
  const ResponseComponents r = response_at(m, drv, d, 0.0);
  CHECK(std::abs(r.beta) < 1e-6);
  CHECK(std::abs(r.xi) < 1e-6);
  CHECK(std::abs(r.sigma) < 1e-6);
}

TEST_CASE("response against a high-precision recomputation") {
  using mp = boost::multiprecision::cpp_complex_50;
  using real50 = mp::value_type;

  const MediumParams m = vapor_medium(98.0);
  const DriveParams drv = vapor_drive(9e6, 0.0, 1.0);
  const DerivedParams d = derive_params(m, drv);

  for (double w : {0.0, two_pi * 50e3, -two_pi * 120e3}) {
    const ResponseComponents r = response_at(m, drv, d, w);

    const real50 om(drv.omega), gamma(m.gamma), gsg(m.gamma_sg), dhf(m.delta_hf);
    const real50 cg(m.cg_ratio), L(m.length), dd(m.two_d / 2), wr(w), delta(drv.delta);
    const real50 ds = cg * om * om / dhf;
    const real50 dr = -om * om / dhf;
    const real50 g0 = gsg + gamma * cg * om * om / (dhf * dhf);
    const real50 dt = delta - ds + wr;
    const mp i{0, 1};
    const mp F = om * om + (gamma - i * (delta - 2 * ds + wr)) * (g0 - i * dt);
    const mp beta = sqrt((g0 - i * dt) * (g0 - i * dt) + 4 * dr * dr);
    const mp pre = real50(0.5) * dd * gamma / (F * L);
    const mp sigma = pre * (dt + i * g0);
    const mp xi = pre * beta;

    auto rel = [](complex got, mp want) {
      const mp diff = mp(got.real(), got.imag()) - want;
      return (abs(diff) / abs(want)).convert_to<double>();
    };
    CHECK(rel(r.f_denom, F) < 1e-14);
    CHECK(rel(r.beta, beta) < 1e-14);
    CHECK(rel(r.sigma, sigma) < 1e-13);
    CHECK(rel(r.xi, xi) < 1e-13);
  }
}

TEST_CASE("xi/sigma ratio identity") {
  const MediumParams m = vapor_medium(52.0);
  const DriveParams drv = vapor_drive(14e6, two_pi * 40e3, 0.5);
  const DerivedParams d = derive_params(m, drv);
  for (double w : {0.0, two_pi * 17e3, -two_pi * 230e3}) {
    const ResponseComponents r = response_at(m, drv, d, w);
    const complex denom{drv.delta - d.delta_s + w, d.gamma_0};
    CHECK(std::abs(r.xi / r.sigma - r.beta / denom) < 1e-12 * std::abs(r.beta / denom));
  }
}

TEST_CASE("F conjugation symmetry under sign-flipped imaginary parts") {
  const MediumParams m = vapor_medium(98.0);
  const DriveParams drv = vapor_drive(9e6, two_pi * 25e3, 1.0);
  const DerivedParams d = derive_params(m, drv);
  for (double w : {0.0, two_pi * 80e3}) {
    const ResponseComponents r = response_at(m, drv, d, w);
    const complex ge{m.gamma, drv.delta - 2.0 * d.delta_s + w};
    const complex gs{d.gamma_0, drv.delta - d.delta_s + w};
    const complex flipped = drv.omega * drv.omega + ge * gs;
    CHECK(std::abs(std::conj(r.f_denom) - flipped) < 1e-12 * std::abs(flipped));
  }
}

TEST_CASE("operations are pure") {
  const MediumParams m = vapor_medium(110.0);
  const DriveParams drv = vapor_drive(14e6, two_pi * 10e3, 0.3);
  const DerivedParams d1 = derive_params(m, drv);
  const DerivedParams d2 = derive_params(m, drv);
  CHECK(d1.delta_s == d2.delta_s);
  CHECK(d1.gamma_0 == d2.gamma_0);
  const ResponseComponents r1 = response_at(m, drv, d1, 123.0);
  const ResponseComponents r2 = response_at(m, drv, d1, 123.0);
  CHECK(r1.f_denom == r2.f_denom);
  CHECK(r1.xi == r2.xi);
}
