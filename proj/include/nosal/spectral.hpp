#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nosal/error.hpp"
#include "nosal/graph.hpp"

namespace nosal {

/// Exact rational number kept as decimal strings, plus a double approximation.
struct ExactRational {
  std::string numerator = "0";
  std::string denominator = "1";
  double approx = 0.0;
};

struct SpectralCertificate {
  double lambda = 0.0;
  /// Nonnegative unit vector over all of V, zero off the chosen component.
  std::vector<double> perron;
  /// ||A perron - lambda perron||_inf
  double residual = 0.0;
  /// Rayleigh quotient of the rounded integer witness; a proven lower bound
  /// on the spectral radius.
  ExactRational rational_lower_bound;
  std::size_t iterations = 0;
  /// Vertices of the component the Perron vector lives on.
  std::vector<Vertex> component;
};

struct SpectralOptions {
  double tol = 1e-10;
  std::size_t max_iters = 200000;
};

/// Thrown when power iteration does not reach the residual tolerance; carries
/// the best iterate so callers can retry from it.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, SpectralCertificate best)
      : Error(ErrorKind::Convergence, what), best_(std::move(best)) {}
  const SpectralCertificate& best() const noexcept { return best_; }

 private:
  SpectralCertificate best_;
};

/// Result of a run of shifted power iteration.
struct PowerState {
  double lambda = 0.0;
  double residual = 0.0;
  std::vector<double> x;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Power iteration on A + (lambda/2) I started from `start` (length n,
/// nonnegative). The iterate stays supported where `start` is reachable.
/// Stops once the residual is <= tol or after max_iters steps. Rounding in
/// high-degree rows can floor the residual near 1e-10; a residual that has
/// stalled there is accepted when it is <= tol * max(1, lambda).
PowerState power_iterate(const Graph& g, std::vector<double> start, double tol,
                         std::size_t max_iters);

/// x^T A x for an arbitrary vector (not normalized).
double quadratic_form(const Graph& g, std::span<const double> x);

SpectralCertificate spectral_radius(const Graph& g, SpectralOptions opts = {});

/// Scale used to round Perron vectors into integer witnesses.
inline constexpr std::int64_t kWitnessScale = 1'000'000;

struct RayleighWitness {
  /// y^T A y and y^T y for y = round(scale * x).
  ExactRational quotient;
  /// (y^T A y)^2 > m (y^T y)^2, decided in exact integer arithmetic.
  bool exceeds_sqrt_m = false;
};

/// Rounds x to integers at kWitnessScale and evaluates the Rayleigh quotient
/// exactly. exceeds_sqrt_m proves lambda(G) > sqrt(m) when true.
RayleighWitness rayleigh_witness(const Graph& g, std::span<const double> x);

enum class NosalKind { CertifiedYes, NumericallyNo, Inconclusive };

const char* to_string(NosalKind k) noexcept;

struct NosalVerdict {
  NosalKind kind = NosalKind::Inconclusive;
  double lambda = 0.0;
  double residual = 0.0;
  /// lambda - sqrt(m), floating.
  double margin = 0.0;
  /// Present for CertifiedYes: exact Rayleigh quotient of the witness.
  std::optional<ExactRational> witness;
};

/// Decides lambda(G) > sqrt(m). Only CertifiedYes is rigorous; NumericallyNo
/// is a floating-point verdict.
NosalVerdict is_nosal(const Graph& g, SpectralOptions opts = {});
NosalVerdict is_nosal(const Graph& g, const SpectralCertificate& cert);

inline constexpr std::size_t kDenseSpectrumCap = 2000;

/// All adjacency eigenvalues, descending, by cyclic Jacobi rotations.
std::vector<double> full_spectrum(const Graph& g, std::size_t cap = kDenseSpectrumCap);

/// Eigenvalues of a dense symmetric matrix (row-major, n x n), descending.
std::vector<double> jacobi_eigenvalues(std::vector<double> a, std::size_t n);

struct WalkTraces {
  std::int64_t tr2 = 0;
  std::int64_t tr3 = 0;
  std::int64_t tr4 = 0;
};

/// Exact traces of A^2, A^3, A^4 by codegree accumulation.
WalkTraces walk_traces(const Graph& g);

/// Largest eigenvalue of the signless Laplacian D + A. Same stopping rule as
/// power_iterate; q can be of order m, so its rounding floor is higher.
double signless_q(const Graph& g, double tol = 1e-10, std::size_t max_iters = 200000);

}  // namespace nosal
