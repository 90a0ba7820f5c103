#pragma once

#include <vector>

#include "krh/cpoly.hpp"

namespace krh {

/// H(z) = p(z) + conj(q(z)); n = deg p >= m = deg q after canonicalization.
struct HarmonicPolynomial {
  ComplexPolynomial p;
  ComplexPolynomial q;
};

cplx eval(const HarmonicPolynomial& h, cplx z);

struct ZeroRecord {
  cplx location;
  int orientation = 0;    // sign of |p'(z)|^2 - |q'(z)|^2
  double residual = 0.0;  // |H(location)|
};

struct ZeroSet {
  std::vector<ZeroRecord> records;
  int n_plus = 0;
  int n_minus = 0;
  bool validated = false;
  int winding = 0;  // argument increment of H on the validation contour
  /// Refined zeros whose Jacobian fell below threshold; excluded from the
  /// signed counts (measure zero under every continuous ensemble).
  std::vector<cplx> degenerate;

  int total() const { return static_cast<int>(records.size()); }
};

struct SolveOptions {
  double dedupe_radius_rel = 1e-7;  // times the root bound
  double residual_tol = 1e-8;       // times the coefficient scale at |z|
  int newton_iters = 50;
};

/// Smallest R >= 1 (by doubling and bisection) such that the top term of p
/// strictly dominates everything else on |z| = R, so all zeros lie inside.
/// Throws UnboundedZeroSet when n = m and the leading moduli agree to 1e-12.
double root_bound(const HarmonicPolynomial& h);

/// Argument-principle count: total increment of arg H(radius e^{i theta}) /
/// 2 pi, accumulated from unwrapped phase differences. Doubles the sample
/// count (up to 3 times) whenever a single step exceeds pi/2; throws
/// PhaseStepTooLarge after that. The caller is responsible for keeping zeros
/// away from the contour.
int winding_number(const HarmonicPolynomial& h, double radius, int samples);

/// All zeros of H by conjugate-variable elimination: w = conj(z) is treated
/// as independent, Res_w of {p(z) + q~(w), q(z) + p~(w)} is sampled on a
/// circle and interpolated, its roots are polished by damped Newton on
/// (Re H, Im H), and the survivors are deduplicated, oriented, and checked
/// against the winding number. Reliable through roughly n <= 12 in doubles.
ZeroSet find_zeros(const HarmonicPolynomial& h, const SolveOptions& opts = {});

/// Test oracle: dense grid sign-change scan over the root-bound disk followed
/// by Newton refinement. Exhaustive for small degrees, very slow otherwise.
std::vector<cplx> brute_force_zeros(const HarmonicPolynomial& h, int grid = 600);

}  // namespace krh
