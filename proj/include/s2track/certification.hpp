#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "s2track/control_law.hpp"

namespace s2track {

/// Free controller gains as entered by the user; everything else is derived.
struct GainParams {
  double Lambda = 1.0;
  double eta = 1.0;
  double gamma1 = 1.0;
  double gamma2 = 1.0;
  double gamma4 = 1.0;
  double gamma5 = 1.0;
};

Gains derive_gains(const GainParams& p, double lambda_J);

/// Operating envelope the certificate is valid on.
struct Envelope {
  double wd_max = 0.0;      // sup ‖ᵇω_d‖ [rad/s]
  double wd_dot_max = 0.0;  // sup ‖ᵇω̇_d‖ [rad/s²]
  double psi_max = 2.0;     // sup Ψ
  double f_max = 0.0;       // extra user-declared bound on ‖f − J⁻¹Ĵf̂‖
  double w_max = 0.0;       // sup ‖ᵇω‖ used when sampling the drift mismatch
};

/// Sampled suprema of the perturbation terms, inflated by the safety factor.
struct BoundEstimates {
  double A1_max = 0.0;
  double A2_max = 0.0;
  double B_max = 0.0;
  double Upsilon_max = 0.0;  // sup (Λ+Ψ)‖B‖
  double A_breve_max = 0.0;  // sup η‖B‖ + (Λ+Ψ)‖A‖
  double f_max_effective = 0.0;
};

inline constexpr double bound_inflation = 1.1;

/// λ_J = λ_min(J⁻¹Ĵ). Real and positive for SPD J, Ĵ.
double lambda_j(const InertiaModel& model);

/// Deterministic low-discrepancy estimate of the bounds over the envelope.
/// Every 16th sample pins the envelope boundary (magnitudes and pointing
/// misalignment at their maxima) so suprema that are attained on the boundary
/// are hit exactly. Results are inflated by `bound_inflation`.
BoundEstimates estimate_bounds(const InertiaModel& model, const Gains& gains,
                               const Envelope& envelope, int samples,
                               std::uint64_t seed);

struct GainCheck {
  std::string id;  // "1e", "1f", "1g", "1h", "8a", "8b"
  bool pass = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs − lhs
};

/// The gain conditions. (1f) is enforced at the worst case over Ψ ∈ [0, psi_max],
/// where the ratio (Λ+Ψ)²/Ψ² is smallest. (1h) is checked in the multiplied form
/// η(γ5λ_J − A2max) > A1max, which is equivalent for a positive denominator and
/// well defined when (1g) fails.
std::vector<GainCheck> validate_gains(const Gains& gains, double lambda_J,
                                      const BoundEstimates& bounds,
                                      double psi_max);

struct WMatrices {
  Mat2 W1, W2, W3, W4, W5;
};

/// The five 2×2 comparison matrices at a given Ψ ∈ [0, 2].
WMatrices w_matrices(const Gains& gains, double lambda_J, double psi);

/// Eigenvalues of a symmetric 2×2 in closed form (ascending).
Vec2 eig2_sym(const Mat2& m);

struct WExtremes {
  double W1_min, W1_max;
  double W2_min, W2_max;
  double W3_min, W3_max;
  double W4_min, W4_max;
  double W5_min, W5_max;
};

inline constexpr int psi_grid_points = 64;

/// Conservative eigenvalue extremes of W1..W5 over a uniform Ψ grid on
/// [0, psi_max].
WExtremes w_extremes(const Gains& gains, double lambda_J, double psi_max);

struct Thresholds {
  double e_w_threshold = 0.0;  // Ă_max / ((γ5λ_J − A2max)η² − ηA1max)
  double z_q_threshold = 0.0;  // √(Υmax / λ_min(W3))
  double radius = 0.0;         // guaranteed envelope radius, same expression
  double decay_rate = 0.0;     // λ_min(W5) / λ_max(W2), worst case over grid
};

/// Throws NotCertifiableError if the velocity-term denominator or λ_min(W3)
/// is not positive.
Thresholds thresholds_and_radius(const Gains& gains, double lambda_J,
                                 const BoundEstimates& bounds, double psi_max);

/// Conditions (8a)–(8b). An identically-zero left-hand side (no perturbation)
/// passes vacuously.
std::vector<GainCheck> check_set_containment(const Gains& gains, double lambda_J,
                                             const BoundEstimates& bounds,
                                             double psi_max);

struct CertificationReport {
  double lambda_J = 0.0;
  std::uint64_t seed = 0;
  int samples = 0;
  double inflation = bound_inflation;
  Envelope envelope;
  GainParams gain_params;
  BoundEstimates bounds;
  std::vector<GainCheck> gain_checks;
  std::vector<GainCheck> set_conditions;
  WExtremes w_eigs{};
  bool thresholds_valid = false;
  Thresholds thresholds;
  bool certified = false;

  std::string to_json(int indent = 2) const;
  static CertificationReport from_json(const std::string& text);
};

bool report_equals(const CertificationReport& a, const CertificationReport& b);

/// Full certification pass: λ_J, sampled bounds, every condition, thresholds.
CertificationReport certify(const InertiaModel& model, const GainParams& params,
                            const Envelope& envelope, int samples,
                            std::uint64_t seed);

}  // namespace s2track
