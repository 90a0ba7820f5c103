#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace krh {

using cplx = std::complex<double>;

/// Dense univariate polynomial over complex doubles, ascending degree order:
/// coeffs[k] multiplies z^k. An empty vector is the zero polynomial.
/// Constructed from a coefficient vector only: a brace list of two scalars
/// would be ambiguous against std::complex's (re, im) form.
struct ComplexPolynomial {
  std::vector<cplx> coeffs;

  ComplexPolynomial() = default;
  explicit ComplexPolynomial(std::vector<cplx> c) : coeffs(std::move(c)) {}

  /// Degree as stored; -1 for the empty (zero) polynomial.
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  bool is_zero() const;

  cplx leading() const { return coeffs.empty() ? cplx{0.0} : coeffs.back(); }
};

/// Drops trailing coefficients with |c| <= rel_eps * max|c| (exact zeros when
/// rel_eps = 0), so a nonzero result has a nonzero leading coefficient.
ComplexPolynomial canonicalized(const ComplexPolynomial& p, double rel_eps = 0.0);

/// Horner evaluation; the zero polynomial evaluates to 0.
cplx eval(const ComplexPolynomial& p, cplx z);

ComplexPolynomial derivative(const ComplexPolynomial& p);

/// The bar polynomial: conjugated coefficients, so conj_coeffs(p) evaluated at
/// conj(z) equals conj(p(z)).
ComplexPolynomial conj_coeffs(const ComplexPolynomial& p);

/// Sum_k |coeffs[k]| r^k, the natural magnitude of p near |z| = r.
double coefficient_scale(const ComplexPolynomial& p, double r);

/// All deg(p) roots by simultaneous Aberth-Ehrlich iteration. Starting points
/// lie on circles read off the Newton polygon of the coefficient magnitudes,
/// with a deterministic angular stagger of 0.4 rad; evaluation switches to the
/// reversed polynomial at 1/z outside the unit disk so no large powers are
/// formed. Each returned root r satisfies |p(r)| <= tol * coefficient_scale.
/// Throws NonConvergence if that cannot be met within max_iter sweeps.
std::vector<cplx> roots_aberth(const ComplexPolynomial& p, int max_iter = 200,
                               double tol = 1e-10);

/// Square complex matrix, row-major.
struct ComplexMatrix {
  int dim = 0;
  std::vector<cplx> a;

  explicit ComplexMatrix(int d) : dim(d), a(static_cast<std::size_t>(d) * d) {}

  cplx& at(int i, int j) { return a[static_cast<std::size_t>(i) * dim + j]; }
  const cplx& at(int i, int j) const { return a[static_cast<std::size_t>(i) * dim + j]; }

  static ComplexMatrix identity(int d);
};

/// Determinant by LU with partial (row-max modulus) pivoting.
cplx det_lu(ComplexMatrix m);

/// Res_w(f, g) evaluated at z = z0. f_w and g_w list the w-coefficients in
/// ascending w order, each coefficient itself a polynomial in z. Throws
/// DegenerateLeadingCoefficient when a leading w-coefficient is within 1e-14
/// of zero at z0; the caller should perturb the sample point.
cplx sylvester_resultant_at(std::span<const ComplexPolynomial> f_w,
                            std::span<const ComplexPolynomial> g_w, cplx z0);

/// Recovers the unique polynomial of degree < N through samples taken at the
/// N points scale * exp(2*pi*i*k/N), k = 0..N-1: inverse DFT followed by a
/// per-coefficient division by scale^k.
ComplexPolynomial interpolate_dft(std::span<const cplx> values, double scale);

}  // namespace krh
