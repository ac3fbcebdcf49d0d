#pragma once

#include <limits>
#include <string_view>
#include <vector>

#include "swiptgame/game_core.hpp"
#include "swiptgame/matrix.hpp"
#include "swiptgame/scenario.hpp"

namespace swiptgame {

/// Interference-coupling matrix: entry (n, m) is gamma_n * G_mn / G_nn for
/// m != n and zero on the diagonal. Row n collects what destination n
/// suffers from every other source. The equilibrium exists (and is then
/// unique) exactly when the spectral radius of this matrix is below one.
Matrix build_omega(const Scenario& s);

struct SpectralRadiusResult {
  double value = 0.0;
  double lower = 0.0;  // certified bracket of the Perron root at the last iterate
  double upper = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Perron root of a nonnegative matrix by power iteration on the shifted
/// matrix m + eps*I with eps = max_row_sum/2. The shift damps the rotating
/// modes of imprimitive matrices (zero-diagonal coupling matrices are the
/// typical case) and is subtracted back out exactly, since all eigenvalues
/// of a nonnegative matrix shift by eps. lower/upper are the min/max
/// component ratios of successive positive iterates, which bracket the root;
/// iteration stops when the bracket width drops below tol.
SpectralRadiusResult spectral_radius(const Matrix& m, double tol = 1e-10,
                                     int max_iter = 50000);

enum class ExistenceVerdict { exists, not_exists, boundary };

std::string_view to_string(ExistenceVerdict v);

/// Joint verdict of two independent routes: the certified power-iteration
/// bracket, and positivity of the solution of (I - Omega) x = 1 (a linear
/// solve that succeeds with x > 0 exactly when the spectral radius is below
/// one). "boundary" is reported when the routes cannot agree, which only
/// happens with the spectral radius within tolerance of one.
struct ExistenceReport {
  double spectral_radius = 0.0;
  bool exists = false;  // verdict == exists
  ExistenceVerdict verdict = ExistenceVerdict::boundary;
  std::string_view method = "shifted-power-iteration+m-matrix-solve";
  int iterations_used = 0;
  double bound_gap = 0.0;
  bool power_method_exists = false;
  bool mmatrix_positive = false;
};

ExistenceReport existence_check(const Scenario& s, double tol = 1e-10);

enum class UpdateSchedule { jacobi, gauss_seidel };

std::string_view to_string(UpdateSchedule s);

struct DynamicsOptions {
  UpdateSchedule schedule = UpdateSchedule::jacobi;
  double tol = 1e-8;  // on max_n |p_new - p_old| / p_old
  int max_iter = 1000;
  bool record_trace = true;
};

struct DynamicsResult {
  std::vector<StrategyProfile> trace;  // trace[0] is the initial profile
  StrategyProfile final;
  bool converged = false;
  int iterations = 0;
  double residual = std::numeric_limits<double>::infinity();
};

/// The local view of pair `pair` under the given transmit powers.
LocalObservation observe(const Scenario& s, const std::vector<double>& powers, int pair);

/// Iterated best responses from `init` until the relative power change drops
/// below tol or max_iter is reached. jacobi updates every pair from the
/// previous round's powers (the distributed setting); gauss_seidel sweeps in
/// index order using the freshest values. Non-convergence is reported in the
/// result, never thrown: studying divergent instances is supported.
DynamicsResult best_response_dynamics(const Scenario& s, const StrategyProfile& init,
                                      const DynamicsOptions& opt = {});

struct NeVerification {
  bool ok = false;
  std::vector<double> power_residual;  // |p - best_response|/p per pair
  std::vector<double> alpha_residual;  // |alpha - splitting_ratio(p)| per pair
  std::vector<double> sinr_rel_dev;    // |SINR - gamma|/gamma per pair
  std::vector<double> eh_rel_dev;      // |E - E_min|/E_min per pair (0 when E_min = 0)
};

/// Fixed-point test: every pair's power must be its own best response and
/// every alpha the matching splitting ratio, with both constraints holding
/// within tol of equality.
NeVerification verify_ne(const StrategyProfile& profile, const Scenario& s, double tol = 1e-6);

struct ContractionGapResult {
  std::vector<double> lhs;  // |T_n(p) - T_n(q)| per pair
  std::vector<double> rhs;  // (Omega |p - q|)_n per pair
};

/// Componentwise comparison of the best-response displacement against the
/// coupling-matrix bound; lhs < rhs strictly on positive inputs with
/// eh > 0, sinr thresholds >= 1 (0 dB) and id noise > 0, which is the
/// contraction property behind uniqueness of the equilibrium.
ContractionGapResult contraction_gap(const Scenario& s, const std::vector<double>& p,
                                     const std::vector<double>& q);

/// The normalized discriminant-difference ratio appearing in the contraction
/// bound; |z_factor| < 1 whenever eh, sinr threshold and id noise of the
/// pair are all positive.
double z_factor(const Scenario& s, int pair, const std::vector<double>& p,
                const std::vector<double>& q);

}  // namespace swiptgame
