#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "krh/cpoly.hpp"
#include "krh/errors.hpp"
#include "krh/rng.hpp"

using namespace krh;

namespace {

// Cofactor-expansion determinant, the independent oracle for det_lu.
cplx det_cofactor(const ComplexMatrix& m) {
  if (m.dim == 1) return m.at(0, 0);
  cplx acc{0.0};
  double sign = 1.0;
  for (int k = 0; k < m.dim; ++k) {
    ComplexMatrix minor(m.dim - 1);
    for (int i = 1; i < m.dim; ++i) {
      int col = 0;
      for (int j = 0; j < m.dim; ++j) {
        if (j == k) continue;
        minor.at(i - 1, col++) = m.at(i, j);
      }
    }
    acc += sign * m.at(0, k) * det_cofactor(minor);
    sign = -sign;
  }
  return acc;
}

ComplexMatrix random_matrix(int d, SplitMix64& rng) {
  ComplexMatrix m(d);
  for (auto& x : m.a) x = rng.complex_gaussian();
  return m;
}

ComplexPolynomial random_poly(int deg, SplitMix64& rng, double coeff_cap = 10.0) {
  std::vector<cplx> c(static_cast<std::size_t>(deg) + 1);
  for (auto& x : c) x = coeff_cap * 0.1 * rng.complex_gaussian();
  if (std::abs(c.back()) < 0.05) c.back() += 1.0;
  return ComplexPolynomial(std::move(c));
}

}  // namespace

TEST_CASE("eval: direct substitution cases") {
  CHECK(eval(ComplexPolynomial{{1.0, 1.0}}, cplx{0.0, 1.0}) == cplx{1.0, 1.0});
  CHECK(eval(ComplexPolynomial{}, cplx{3.0, -2.0}) == cplx{0.0});
  // 2 + 3z^2 at z = 1+i: (1+i)^2 = 2i, so 2 + 6i
  cplx v = eval(ComplexPolynomial{{2.0, 0.0, 3.0}}, cplx{1.0, 1.0});
  CHECK(std::abs(v - cplx{2.0, 6.0}) < 1e-15);
}

TEST_CASE("eval: Horner agrees with naive power sums") {
  SplitMix64 rng(11);
  for (int rep = 0; rep < 40; ++rep) {
    int deg = 1 + static_cast<int>(rng.next() % 50);
    ComplexPolynomial p = random_poly(deg, rng);
    cplx z = 2.0 * rng.complex_gaussian();
    cplx naive{0.0};
    for (int k = 0; k <= deg; ++k)
      naive += p.coeffs[static_cast<std::size_t>(k)] * std::pow(z, k);
    cplx horner = eval(p, z);
    CHECK(std::abs(horner - naive) <= 1e-12 * (std::abs(naive) + 1.0));
  }
}

TEST_CASE("derivative: degree drops by one") {
  ComplexPolynomial d1 = derivative(ComplexPolynomial{{1.0, 1.0}});
  REQUIRE(d1.degree() == 0);
  CHECK(d1.coeffs[0] == cplx{1.0});
  ComplexPolynomial d2 = derivative(ComplexPolynomial{{0.0, 0.0, 1.0}});
  REQUIRE(d2.degree() == 1);
  CHECK(d2.coeffs[0] == cplx{0.0});
  CHECK(d2.coeffs[1] == cplx{2.0});
  CHECK(derivative(ComplexPolynomial{{5.0}}).is_zero());
}

TEST_CASE("conj_coeffs: involution and the bar identity") {
  CHECK(conj_coeffs(ComplexPolynomial{{cplx{0.0, 1.0}}}).coeffs[0] == cplx{0.0, -1.0});
  SplitMix64 rng(7);
  ComplexPolynomial p = random_poly(6, rng);
  ComplexPolynomial pb = conj_coeffs(p);
  // involution is exact
  ComplexPolynomial back = conj_coeffs(pb);
  for (std::size_t k = 0; k < p.coeffs.size(); ++k) CHECK(back.coeffs[k] == p.coeffs[k]);
  // pb(conj z) = conj(p(z))
  cplx z{0.0, 3.0};
  CHECK(std::abs(eval(pb, std::conj(z)) - std::conj(eval(p, z))) < 1e-14);
  // real coefficients unchanged
  ComplexPolynomial real_p{{1.0, -2.0, 0.5}};
  ComplexPolynomial real_pb = conj_coeffs(real_p);
  for (std::size_t k = 0; k < real_p.coeffs.size(); ++k)
    CHECK(real_pb.coeffs[k] == real_p.coeffs[k]);
}

TEST_CASE("roots_aberth: known root sets") {
  auto near = [](cplx a, cplx b) { return std::abs(a - b) < 1e-10; };

  auto r1 = roots_aberth(ComplexPolynomial{{1.0, 0.0, 1.0}});
  REQUIRE(r1.size() == 2);
  std::sort(r1.begin(), r1.end(), [](cplx a, cplx b) { return a.imag() < b.imag(); });
  CHECK(near(r1[0], cplx{0.0, -1.0}));
  CHECK(near(r1[1], cplx{0.0, 1.0}));

  auto r2 = roots_aberth(ComplexPolynomial{{-1.0, 0.0, 0.0, 1.0}});
  REQUIRE(r2.size() == 3);
  for (const auto& r : r2) CHECK(std::abs(std::pow(r, 3) - 1.0) < 1e-9);

  // (z-2)(z-3)(z+1) = z^3 - 4z^2 + z + 6
  auto r3 = roots_aberth(ComplexPolynomial{{6.0, 1.0, -4.0, 1.0}});
  REQUIRE(r3.size() == 3);
  std::sort(r3.begin(), r3.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
  CHECK(near(r3[0], cplx{-1.0}));
  CHECK(near(r3[1], cplx{2.0}));
  CHECK(near(r3[2], cplx{3.0}));
}

TEST_CASE("roots_aberth: Vieta sums and products on random monic inputs") {
  SplitMix64 rng(23);
  for (int rep = 0; rep < 25; ++rep) {
    int deg = 2 + static_cast<int>(rng.next() % 14);
    ComplexPolynomial p = random_poly(deg, rng);
    p.coeffs.back() = 1.0;
    auto roots = roots_aberth(p);
    REQUIRE(static_cast<int>(roots.size()) == deg);
    cplx sum{0.0}, prod{1.0};
    for (const auto& r : roots) {
      sum += r;
      prod *= r;
    }
    cplx vieta_sum = -p.coeffs[static_cast<std::size_t>(deg - 1)];
    cplx vieta_prod = (deg % 2 == 0 ? 1.0 : -1.0) * p.coeffs[0];
    CHECK(std::abs(sum - vieta_sum) < 1e-8 * (1.0 + std::abs(vieta_sum)));
    CHECK(std::abs(prod - vieta_prod) <= 1e-6 * (1.0 + std::abs(vieta_prod)));
  }
}

TEST_CASE("roots_aberth: residuals certified at scale") {
  SplitMix64 rng(5);
  ComplexPolynomial p = random_poly(30, rng);
  auto roots = roots_aberth(p, 300, 1e-10);
  for (const auto& r : roots)
    CHECK(std::abs(eval(p, r)) <= 1e-9 * coefficient_scale(p, std::abs(r)));
}

TEST_CASE("det_lu: identity, 2x2 and triangular product rules") {
  CHECK(std::abs(det_lu(ComplexMatrix::identity(5)) - 1.0) < 1e-15);

  cplx a{1.3, -0.4}, b{0.2, 2.0};
  ComplexMatrix m(2);
  m.at(0, 0) = 1.0;
  m.at(0, 1) = -a;
  m.at(1, 0) = 1.0;
  m.at(1, 1) = -b;
  CHECK(std::abs(det_lu(m) - (a - b)) < 1e-14);

  SplitMix64 rng(3);
  ComplexMatrix t(7);
  for (int i = 0; i < 7; ++i)
    for (int j = i; j < 7; ++j) t.at(i, j) = rng.complex_gaussian() + (i == j ? cplx{2.0} : cplx{0.0});
  cplx diag{1.0};
  for (int i = 0; i < 7; ++i) diag *= t.at(i, i);
  CHECK(std::abs(det_lu(t) - diag) < 1e-12 * std::abs(diag));
}

TEST_CASE("det_lu: multiplicativity and the cofactor oracle") {
  SplitMix64 rng(17);
  for (int d : {4, 8}) {
    ComplexMatrix m = random_matrix(d, rng);
    cplx lu = det_lu(m);
    cplx cof = det_cofactor(m);
    CHECK(std::abs(lu - cof) <= 1e-10 * (1.0 + std::abs(cof)));
  }
  for (int d : {3, 6, 12}) {
    ComplexMatrix a = random_matrix(d, rng);
    ComplexMatrix b = random_matrix(d, rng);
    ComplexMatrix ab(d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        cplx acc{0.0};
        for (int k = 0; k < d; ++k) acc += a.at(i, k) * b.at(k, j);
        ab.at(i, j) = acc;
      }
    cplx lhs = det_lu(ab);
    cplx rhs = det_lu(a) * det_lu(b);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("sylvester_resultant_at: hand-checked low-degree cases") {
  cplx a{0.7, 0.1}, b{-1.2, 0.5};
  // f = w - a, g = w - b: Res = a - b at any z0
  std::vector<ComplexPolynomial> f{ComplexPolynomial{{-a}}, ComplexPolynomial{{cplx{1.0}}}};
  std::vector<ComplexPolynomial> g{ComplexPolynomial{{-b}}, ComplexPolynomial{{cplx{1.0}}}};
  CHECK(std::abs(sylvester_resultant_at(f, g, cplx{2.0, -1.0}) - (a - b)) < 1e-13);

  // f = w - z, g = w - 2z at z0 = 3: Res = z - 2z = -z0 = -3
  std::vector<ComplexPolynomial> f2{ComplexPolynomial{{0.0, -1.0}}, ComplexPolynomial{{cplx{1.0}}}};
  std::vector<ComplexPolynomial> g2{ComplexPolynomial{{0.0, -2.0}}, ComplexPolynomial{{cplx{1.0}}}};
  CHECK(std::abs(sylvester_resultant_at(f2, g2, cplx{3.0}) - cplx{-3.0}) < 1e-13);

  // f = w^2 - z, g = w - 1 at z0 = 4: substitute w = 1: Res = 1 - z0 = -3
  std::vector<ComplexPolynomial> f3{ComplexPolynomial{{0.0, -1.0}}, ComplexPolynomial{},
                                    ComplexPolynomial{{cplx{1.0}}}};
  f3[1] = ComplexPolynomial{{cplx{0.0}}};
  std::vector<ComplexPolynomial> g3{ComplexPolynomial{{cplx{-1.0}}}, ComplexPolynomial{{cplx{1.0}}}};
  CHECK(std::abs(sylvester_resultant_at(f3, g3, cplx{4.0}) - cplx{-3.0}) < 1e-13);
}

TEST_CASE("sylvester_resultant_at: degenerate leading coefficient is refused") {
  // f's leading w-coefficient is z, which vanishes at z0 = 0
  std::vector<ComplexPolynomial> f{ComplexPolynomial{{cplx{1.0}}},
                                   ComplexPolynomial{{0.0, 1.0}}};
  std::vector<ComplexPolynomial> g{ComplexPolynomial{{cplx{1.0}}},
                                   ComplexPolynomial{{cplx{1.0}}}};
  CHECK_THROWS_AS(sylvester_resultant_at(f, g, cplx{0.0}), DegenerateLeadingCoefficient);
}

TEST_CASE("interpolate_dft: exact small cases") {
  std::vector<cplx> constant(4, cplx{2.5, -1.0});
  ComplexPolynomial c = canonicalized(interpolate_dft(constant, 1.0), 1e-13);
  REQUIRE(c.degree() == 0);
  CHECK(std::abs(c.coeffs[0] - cplx{2.5, -1.0}) < 1e-14);

  // samples of z^2 at the 4 fourth roots of unity
  std::vector<cplx> sq(4);
  for (int k = 0; k < 4; ++k)
    sq[static_cast<std::size_t>(k)] = std::pow(std::polar(1.0, std::numbers::pi * k / 2.0), 2);
  ComplexPolynomial z2 = interpolate_dft(sq, 1.0);
  CHECK(std::abs(z2.coeffs[2] - 1.0) < 1e-14);
  CHECK(std::abs(z2.coeffs[0]) < 1e-14);
  CHECK(std::abs(z2.coeffs[1]) < 1e-14);
  CHECK(std::abs(z2.coeffs[3]) < 1e-14);

  // 1 + z sampled at 8 points of radius 2
  ComplexPolynomial p{{1.0, 1.0}};
  std::vector<cplx> vals(8);
  for (int k = 0; k < 8; ++k)
    vals[static_cast<std::size_t>(k)] = eval(p, std::polar(2.0, 2.0 * std::numbers::pi * k / 8.0));
  ComplexPolynomial rec = interpolate_dft(vals, 2.0);
  CHECK(std::abs(rec.coeffs[0] - 1.0) < 1e-14);
  CHECK(std::abs(rec.coeffs[1] - 1.0) < 1e-14);
  for (std::size_t k = 2; k < 8; ++k) CHECK(std::abs(rec.coeffs[k]) < 1e-13);
}

TEST_CASE("interpolate_dft: random round trip to 1e-9") {
  SplitMix64 rng(41);
  for (int rep = 0; rep < 10; ++rep) {
    int deg = 1 + static_cast<int>(rng.next() % 20);
    ComplexPolynomial p = random_poly(deg, rng);
    int n = deg + 1 + static_cast<int>(rng.next() % 5);
    double scale = 1.2;
    std::vector<cplx> vals(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
      vals[static_cast<std::size_t>(k)] =
          eval(p, std::polar(scale, 2.0 * std::numbers::pi * k / n));
    ComplexPolynomial rec = interpolate_dft(vals, scale);
    for (int k = 0; k < n; ++k) {
      cplx want = k <= deg ? p.coeffs[static_cast<std::size_t>(k)] : cplx{0.0};
      CHECK(std::abs(rec.coeffs[static_cast<std::size_t>(k)] - want) < 1e-9);
    }
  }
}

TEST_CASE("canonicalized trims trailing zeros only") {
  ComplexPolynomial p{{1.0, 0.0, 0.0}};
  CHECK(canonicalized(p).degree() == 0);
  CHECK(canonicalized(ComplexPolynomial{}).degree() == -1);
  ComplexPolynomial q{{0.0, 1e-15, 1.0, 1e-15}};
  CHECK(canonicalized(q, 1e-12).degree() == 2);
}
