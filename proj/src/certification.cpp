#include "s2track/certification.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"

namespace s2track {

Gains derive_gains(const GainParams& p, double lambda_J) {
  return Gains::derive(p.Lambda, p.eta, p.gamma1, p.gamma2, p.gamma4, p.gamma5,
                       lambda_J);
}

double lambda_j(const InertiaModel& model) {
  Eigen::SelfAdjointEigenSolver<Mat3> jcheck(model.J);
  if (jcheck.eigenvalues().minCoeff() <= 1e-12 * model.J.norm()) {
    throw SingularInertiaError("lambda_j: J not positive definite");
  }
  // Ĵ v = λ J v has the eigenvalues of J⁻¹Ĵ; the pencil form keeps them real.
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat3> eigs(model.J_hat, model.J);
  return eigs.eigenvalues().minCoeff();
}

namespace {

double halton(std::uint64_t index, std::uint32_t base) {
  double f = 1.0;
  double r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

constexpr std::uint32_t kBases[15] = {2,  3,  5,  7,  11, 13, 17, 19,
                                      23, 29, 31, 37, 41, 43, 47};

double spectral_norm(const Mat3& m) {
  return Eigen::JacobiSVD<Mat3>(m).singularValues()(0);
}

Mat3 quaternion_to_matrix(double w, double x, double y, double z) {
  Mat3 m;
  m << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
      2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
      2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
  return m;
}

/// Uniform rotation from three unit-cube coordinates (Shoemake's method).
Mat3 uniform_rotation(double u1, double u2, double u3) {
  const double two_pi = 2.0 * M_PI;
  const double a = std::sqrt(1.0 - u1);
  const double b = std::sqrt(u1);
  return quaternion_to_matrix(b * std::cos(two_pi * u3),
                              a * std::sin(two_pi * u2),
                              a * std::cos(two_pi * u2),
                              b * std::sin(two_pi * u3));
}

Vec3 unit_from_pair(double t_z, double t_az) {
  const double z = 2.0 * t_z - 1.0;
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double az = 2.0 * M_PI * t_az;
  return Vec3(r * std::cos(az), r * std::sin(az), z);
}

/// Deterministic orthonormal pair completing q.
void perp_basis(const Vec3& q, Vec3& b1, Vec3& b2) {
  const Vec3 seed = std::abs(q.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  b1 = q.cross(seed).normalized();
  b2 = q.cross(b1);
}

}  // namespace

BoundEstimates estimate_bounds(const InertiaModel& model, const Gains& gains,
                               const Envelope& envelope, int samples,
                               std::uint64_t seed) {
  const bool perfect = model.perfect_knowledge();

  // ΔJ = I − J⁻¹Ĵ and the product P = J⁻¹Ĵ. Identical estimates give exactly
  // zero mismatch terms, keeping perfect-knowledge certificates exact.
  const auto j_llt = model.J.llt();
  const Mat3 P = perfect ? Mat3::Identity()
                         : Mat3(j_llt.solve(model.J_hat));
  const Mat3 dJ = perfect ? Mat3::Zero() : Mat3(Mat3::Identity() - P);

  // Admissible pointing misalignment: Ψ ≤ psi_max ⟺ qᵀq_d ≥ (2−psi_max)²/2 − 1,
  // kept strictly inside the antipodal exclusion.
  const double psi_max = std::clamp(envelope.psi_max, 0.0, 2.0);
  const double c_min =
      std::max((2.0 - psi_max) * (2.0 - psi_max) / 2.0 - 1.0,
               -1.0 + 2.0 * eps_antipodal);
  const double theta_max = std::acos(std::clamp(c_min, -1.0, 1.0));

  const UnitVec3 r_body = UnitVec3::from_unit(Vec3::UnitZ());

  BoundEstimates out;
  double sup_fmis = 0.0;

  for (int i = 0; i < std::max(samples, 1); ++i) {
    const std::uint64_t idx = 1 + seed + static_cast<std::uint64_t>(i);
    double h[15];
    for (int d = 0; d < 15; ++d) h[d] = halton(idx, kBases[d]);
    const bool boundary = (i % 16) == 0;

    const Mat3 Qm = uniform_rotation(h[0], h[1], h[2]);
    const Vec3 q = Qm * r_body.vec();

    const double theta = boundary ? theta_max : h[3] * theta_max;
    Vec3 b1, b2;
    perp_basis(q, b1, b2);
    const Vec3 tilt_axis =
        std::cos(2.0 * M_PI * h[4]) * b1 + std::sin(2.0 * M_PI * h[4]) * b2;
    const Rotation tilt = exp_rodrigues(UnitVec3::from_unit(tilt_axis), theta);
    const Rotation spin =
        exp_rodrigues(r_body, 2.0 * M_PI * h[5]);
    const Rotation Q = Rotation::unchecked(Qm);
    const Rotation Qd = tilt * Q * spin;

    const double w_mag = boundary ? envelope.w_max : h[8] * envelope.w_max;
    const double wd_mag = boundary ? envelope.wd_max : h[11] * envelope.wd_max;
    const double wdd_mag =
        boundary ? envelope.wd_dot_max : h[14] * envelope.wd_dot_max;
    const Vec3 w = w_mag * unit_from_pair(h[6], h[7]);
    const Vec3 wd = wd_mag * unit_from_pair(h[9], h[10]);
    const Vec3 wdd = wdd_mag * unit_from_pair(h[12], h[13]);

    const ErrorState err =
        compute_error_state(BodyState{Q, w}, ReferenceState{Qd, wd, wdd}, r_body);
    const double lam_psi = gains.Lambda + err.psi;
    const Mat3 rel = Q.matrix().transpose() * Qd.matrix();

    const Mat3 A1 = dJ * (err.e_q * err.e_q.transpose() + lam_psi * err.E);
    const Mat3 A2 = dJ * hat(rel * wd);
    const Mat3 A = A1 - gains.eta * A2;

    Vec3 fmis = Vec3::Zero();
    if (!perfect) {
      const Vec3 f = drift_f(model.J, model.c, model.tau, w);
      const Vec3 f_hat = drift_f(model.J_hat, model.c, model.tau_hat, w);
      fmis = f - j_llt.solve(model.J_hat * f_hat);
    }
    sup_fmis = std::max(sup_fmis, fmis.norm());

    const Vec3 B = dJ * (lam_psi * (err.Xi * wd) - gains.eta * (rel * wdd)) +
                   gains.eta * fmis;
    const double b_norm = B.norm() + gains.eta * envelope.f_max;

    out.A1_max = std::max(out.A1_max, spectral_norm(A1));
    out.A2_max = std::max(out.A2_max, spectral_norm(A2));
    out.B_max = std::max(out.B_max, b_norm);
    out.Upsilon_max = std::max(out.Upsilon_max, lam_psi * b_norm);
    out.A_breve_max = std::max(
        out.A_breve_max, gains.eta * b_norm + lam_psi * spectral_norm(A));
  }

  out.A1_max *= bound_inflation;
  out.A2_max *= bound_inflation;
  out.B_max *= bound_inflation;
  out.Upsilon_max *= bound_inflation;
  out.A_breve_max *= bound_inflation;
  out.f_max_effective = bound_inflation * sup_fmis + envelope.f_max;
  return out;
}

std::vector<GainCheck> validate_gains(const Gains& gains, double lambda_J,
                                      const BoundEstimates& bounds,
                                      double psi_max) {
  std::vector<GainCheck> checks;

  {
    // (1e) holds by construction of the derived fields; reported for audit.
    GainCheck c{"1e", true, gains.gamma,
                gains.gamma1 + gains.gamma2 + gains.gamma3, 0.0};
    c.pass = c.lhs == c.rhs && gains.gamma3 == gains.gamma4 + gains.gamma5;
    c.margin = 0.0;
    if (!c.pass) {
      throw InvalidGainError("validate_gains: derived gain sums are broken");
    }
    checks.push_back(c);
  }
  {
    GainCheck c;
    c.id = "1f";
    c.lhs = gains.gamma3;
    const double lp = gains.Lambda + psi_max;
    c.rhs = psi_max > 0.0 ? gains.gamma4 * lp * lp / (psi_max * psi_max)
                          : std::numeric_limits<double>::infinity();
    c.margin = c.rhs - c.lhs;
    c.pass = c.lhs < c.rhs;
    checks.push_back(c);
  }
  {
    GainCheck c;
    c.id = "1g";
    c.lhs = bounds.A2_max / lambda_J;
    c.rhs = gains.gamma5;
    c.margin = c.rhs - c.lhs;
    c.pass = c.rhs > c.lhs;
    checks.push_back(c);
  }
  {
    GainCheck c;
    c.id = "1h";
    c.lhs = bounds.A1_max;
    c.rhs = gains.eta * (gains.gamma5 * lambda_J - bounds.A2_max);
    c.margin = c.rhs - c.lhs;
    c.pass = c.rhs > c.lhs;
    checks.push_back(c);
  }
  return checks;
}

Vec2 eig2_sym(const Mat2& m) {
  const double a = m(0, 0);
  const double b = 0.5 * (m(0, 1) + m(1, 0));
  const double c = m(1, 1);
  const double mean = 0.5 * (a + c);
  const double disc = std::sqrt(0.25 * (a - c) * (a - c) + b * b);
  return Vec2(mean - disc, mean + disc);
}

WMatrices w_matrices(const Gains& gains, double lambda_J, double psi) {
  if (psi < 0.0 || psi > 2.0) {
    throw std::invalid_argument("w_matrices: psi outside [0, 2]");
  }
  const double lp = gains.Lambda + psi;
  const double eta = gains.eta;
  const double k = gains.kappa;
  const double g23 = gains.gamma2 + gains.gamma3;

  WMatrices w;
  w.W1 << lp * lp / 2.0 + k, -lp * eta / 2.0, -lp * eta / 2.0, eta * eta / 2.0;
  w.W2 << lp * lp / 2.0 + 2.0 * k, lp * eta / 2.0, lp * eta / 2.0,
      eta * eta / 2.0;
  w.W3 << gains.gamma2 * lambda_J * lp * lp, -gains.gamma2 * lambda_J * psi * eta,
      -gains.gamma2 * lambda_J * psi * eta, gains.gamma2 * lambda_J * eta * eta;
  w.W4 << gains.gamma3 * lambda_J * lp * lp, -gains.gamma3 * lambda_J * psi * eta,
      -gains.gamma3 * lambda_J * psi * eta, gains.gamma4 * lambda_J * eta * eta;
  w.W5 << g23 * lp * lp, -g23 * psi * eta, -g23 * psi * eta, g23 * eta * eta;
  return w;
}

WExtremes w_extremes(const Gains& gains, double lambda_J, double psi_max) {
  WExtremes x{};
  constexpr double inf = std::numeric_limits<double>::infinity();
  x.W1_min = x.W2_min = x.W3_min = x.W4_min = x.W5_min = inf;
  x.W1_max = x.W2_max = x.W3_max = x.W4_max = x.W5_max = -inf;
  for (int i = 0; i < psi_grid_points; ++i) {
    const double psi = psi_max * static_cast<double>(i) /
                       static_cast<double>(psi_grid_points - 1);
    const WMatrices w = w_matrices(gains, lambda_J, psi);
    const auto upd = [](const Mat2& m, double& lo, double& hi) {
      const Vec2 e = eig2_sym(m);
      lo = std::min(lo, e(0));
      hi = std::max(hi, e(1));
    };
    upd(w.W1, x.W1_min, x.W1_max);
    upd(w.W2, x.W2_min, x.W2_max);
    upd(w.W3, x.W3_min, x.W3_max);
    upd(w.W4, x.W4_min, x.W4_max);
    upd(w.W5, x.W5_min, x.W5_max);
  }
  return x;
}

Thresholds thresholds_and_radius(const Gains& gains, double lambda_J,
                                 const BoundEstimates& bounds, double psi_max) {
  const double denom =
      (gains.gamma5 * lambda_J - bounds.A2_max) * gains.eta * gains.eta -
      gains.eta * bounds.A1_max;
  const WExtremes x = w_extremes(gains, lambda_J, psi_max);
  if (denom <= 0.0 || x.W3_min <= 0.0) {
    throw NotCertifiableError(
        "thresholds_and_radius: velocity-term denominator or lambda_min(W3) "
        "not positive");
  }
  Thresholds t;
  t.e_w_threshold = bounds.A_breve_max / denom;
  t.radius = std::sqrt(bounds.Upsilon_max / x.W3_min);
  t.z_q_threshold = t.radius;
  t.decay_rate = x.W5_min / x.W2_max;
  return t;
}

std::vector<GainCheck> check_set_containment(const Gains& gains, double lambda_J,
                                             const BoundEstimates& bounds,
                                             double psi_max) {
  const WExtremes x = w_extremes(gains, lambda_J, psi_max);
  const double denom =
      (gains.gamma5 * lambda_J - bounds.A2_max) * gains.eta * gains.eta -
      gains.eta * bounds.A1_max;

  std::vector<GainCheck> checks;
  {
    GainCheck c;
    c.id = "8a";
    c.lhs = bounds.Upsilon_max;
    c.rhs = x.W3_min;
    c.margin = c.rhs - c.lhs;
    c.pass = c.lhs < c.rhs;
    checks.push_back(c);
  }
  {
    GainCheck c;
    c.id = "8b";
    c.lhs = bounds.A_breve_max;
    c.rhs = x.W3_min > 0.0
                ? denom * std::sqrt(bounds.Upsilon_max / x.W3_min)
                : 0.0;
    c.margin = c.rhs - c.lhs;
    // Zero perturbation makes M1 empty; the containment is vacuous.
    c.pass = c.lhs < c.rhs || (c.lhs == 0.0 && c.rhs == 0.0);
    checks.push_back(c);
  }
  return checks;
}

CertificationReport certify(const InertiaModel& model, const GainParams& params,
                            const Envelope& envelope, int samples,
                            std::uint64_t seed) {
  CertificationReport r;
  r.lambda_J = lambda_j(model);
  r.seed = seed;
  r.samples = samples;
  r.envelope = envelope;
  r.gain_params = params;

  const Gains gains = derive_gains(params, r.lambda_J);
  r.bounds = estimate_bounds(model, gains, envelope, samples, seed);
  r.gain_checks = validate_gains(gains, r.lambda_J, r.bounds, envelope.psi_max);
  r.set_conditions =
      check_set_containment(gains, r.lambda_J, r.bounds, envelope.psi_max);
  r.w_eigs = w_extremes(gains, r.lambda_J, envelope.psi_max);

  try {
    r.thresholds = thresholds_and_radius(gains, r.lambda_J, r.bounds,
                                         envelope.psi_max);
    r.thresholds_valid = true;
  } catch (const NotCertifiableError&) {
    r.thresholds_valid = false;
  }

  bool all = r.thresholds_valid;
  for (const auto& c : r.gain_checks) all = all && c.pass;
  for (const auto& c : r.set_conditions) all = all && c.pass;
  r.certified = all;
  return r;
}

namespace {

using nlohmann::json;

// Infinite margins (e.g. (1f) at psi_max = 0) are not representable in JSON
// numbers; they round-trip through string sentinels.
json num_to_json(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double num_from_json(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    return std::numeric_limits<double>::quiet_NaN();
  }
  return j.get<double>();
}

json check_to_json(const GainCheck& c) {
  return json{{"id", c.id},
              {"pass", c.pass},
              {"lhs", num_to_json(c.lhs)},
              {"rhs", num_to_json(c.rhs)},
              {"margin", num_to_json(c.margin)}};
}

GainCheck check_from_json(const json& j) {
  GainCheck c;
  c.id = j.at("id").get<std::string>();
  c.pass = j.at("pass").get<bool>();
  c.lhs = num_from_json(j.at("lhs"));
  c.rhs = num_from_json(j.at("rhs"));
  c.margin = num_from_json(j.at("margin"));
  return c;
}

}  // namespace

std::string CertificationReport::to_json(int indent) const {
  json j;
  j["lambda_J"] = lambda_J;
  j["seed"] = seed;
  j["samples"] = samples;
  j["inflation"] = inflation;
  j["envelope"] = {{"wd_max", envelope.wd_max},
                   {"wd_dot_max", envelope.wd_dot_max},
                   {"psi_max", envelope.psi_max},
                   {"f_max", envelope.f_max},
                   {"w_max", envelope.w_max}};
  j["gains"] = {{"Lambda", gain_params.Lambda},   {"eta", gain_params.eta},
                {"gamma1", gain_params.gamma1},   {"gamma2", gain_params.gamma2},
                {"gamma4", gain_params.gamma4},   {"gamma5", gain_params.gamma5}};
  j["bounds"] = {{"A1_max", bounds.A1_max},
                 {"A2_max", bounds.A2_max},
                 {"B_max", bounds.B_max},
                 {"Upsilon_max", bounds.Upsilon_max},
                 {"A_breve_max", bounds.A_breve_max},
                 {"f_max_effective", bounds.f_max_effective}};
  json gc = json::array();
  for (const auto& c : gain_checks) gc.push_back(check_to_json(c));
  j["gain_checks"] = gc;
  json sc = json::array();
  for (const auto& c : set_conditions) sc.push_back(check_to_json(c));
  j["set_conditions"] = sc;
  j["W_eigs"] = {
      {"W1", {{"lambda_min", w_eigs.W1_min}, {"lambda_max", w_eigs.W1_max}}},
      {"W2", {{"lambda_min", w_eigs.W2_min}, {"lambda_max", w_eigs.W2_max}}},
      {"W3", {{"lambda_min", w_eigs.W3_min}, {"lambda_max", w_eigs.W3_max}}},
      {"W4", {{"lambda_min", w_eigs.W4_min}, {"lambda_max", w_eigs.W4_max}}},
      {"W5", {{"lambda_min", w_eigs.W5_min}, {"lambda_max", w_eigs.W5_max}}}};
  j["thresholds_valid"] = thresholds_valid;
  if (thresholds_valid) {
    j["thresholds"] = {{"e_w_threshold", thresholds.e_w_threshold},
                       {"z_q_threshold", thresholds.z_q_threshold},
                       {"radius", thresholds.radius},
                       {"decay_rate", thresholds.decay_rate}};
  }
  j["certified"] = certified;
  return j.dump(indent);
}

CertificationReport CertificationReport::from_json(const std::string& text) {
  const json j = json::parse(text);
  CertificationReport r;
  r.lambda_J = j.at("lambda_J").get<double>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.samples = j.at("samples").get<int>();
  r.inflation = j.at("inflation").get<double>();
  const json& e = j.at("envelope");
  r.envelope = Envelope{e.at("wd_max").get<double>(),
                        e.at("wd_dot_max").get<double>(),
                        e.at("psi_max").get<double>(),
                        e.at("f_max").get<double>(),
                        e.at("w_max").get<double>()};
  const json& g = j.at("gains");
  r.gain_params = GainParams{g.at("Lambda").get<double>(),
                             g.at("eta").get<double>(),
                             g.at("gamma1").get<double>(),
                             g.at("gamma2").get<double>(),
                             g.at("gamma4").get<double>(),
                             g.at("gamma5").get<double>()};
  const json& b = j.at("bounds");
  r.bounds = BoundEstimates{b.at("A1_max").get<double>(),
                            b.at("A2_max").get<double>(),
                            b.at("B_max").get<double>(),
                            b.at("Upsilon_max").get<double>(),
                            b.at("A_breve_max").get<double>(),
                            b.at("f_max_effective").get<double>()};
  for (const auto& cj : j.at("gain_checks")) {
    r.gain_checks.push_back(check_from_json(cj));
  }
  for (const auto& cj : j.at("set_conditions")) {
    r.set_conditions.push_back(check_from_json(cj));
  }
  const json& w = j.at("W_eigs");
  const auto pair = [&](const char* key, double& lo, double& hi) {
    lo = w.at(key).at("lambda_min").get<double>();
    hi = w.at(key).at("lambda_max").get<double>();
  };
  pair("W1", r.w_eigs.W1_min, r.w_eigs.W1_max);
  pair("W2", r.w_eigs.W2_min, r.w_eigs.W2_max);
  pair("W3", r.w_eigs.W3_min, r.w_eigs.W3_max);
  pair("W4", r.w_eigs.W4_min, r.w_eigs.W4_max);
  pair("W5", r.w_eigs.W5_min, r.w_eigs.W5_max);
  r.thresholds_valid = j.at("thresholds_valid").get<bool>();
  if (r.thresholds_valid) {
    const json& t = j.at("thresholds");
    r.thresholds = Thresholds{t.at("e_w_threshold").get<double>(),
                              t.at("z_q_threshold").get<double>(),
                              t.at("radius").get<double>(),
                              t.at("decay_rate").get<double>()};
  }
  r.certified = j.at("certified").get<bool>();
  return r;
}

namespace {

bool num_eq(double a, double b) {
  if (std::isnan(a) && std::isnan(b)) return true;
  return a == b;
}

bool checks_eq(const std::vector<GainCheck>& a, const std::vector<GainCheck>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].id != b[i].id || a[i].pass != b[i].pass ||
        !num_eq(a[i].lhs, b[i].lhs) || !num_eq(a[i].rhs, b[i].rhs) ||
        !num_eq(a[i].margin, b[i].margin)) {
      return false;
    }
  }
  return true;
}

}  // namespace

bool report_equals(const CertificationReport& a, const CertificationReport& b) {
  const bool thresholds_match =
      a.thresholds_valid == b.thresholds_valid &&
      (!a.thresholds_valid ||
       (num_eq(a.thresholds.e_w_threshold, b.thresholds.e_w_threshold) &&
        num_eq(a.thresholds.z_q_threshold, b.thresholds.z_q_threshold) &&
        num_eq(a.thresholds.radius, b.thresholds.radius) &&
        num_eq(a.thresholds.decay_rate, b.thresholds.decay_rate)));
  return num_eq(a.lambda_J, b.lambda_J) && a.seed == b.seed &&
         a.samples == b.samples && num_eq(a.inflation, b.inflation) &&
         num_eq(a.envelope.wd_max, b.envelope.wd_max) &&
         num_eq(a.envelope.wd_dot_max, b.envelope.wd_dot_max) &&
         num_eq(a.envelope.psi_max, b.envelope.psi_max) &&
         num_eq(a.envelope.f_max, b.envelope.f_max) &&
         num_eq(a.envelope.w_max, b.envelope.w_max) &&
         num_eq(a.gain_params.Lambda, b.gain_params.Lambda) &&
         num_eq(a.gain_params.eta, b.gain_params.eta) &&
         num_eq(a.gain_params.gamma1, b.gain_params.gamma1) &&
         num_eq(a.gain_params.gamma2, b.gain_params.gamma2) &&
         num_eq(a.gain_params.gamma4, b.gain_params.gamma4) &&
         num_eq(a.gain_params.gamma5, b.gain_params.gamma5) &&
         num_eq(a.bounds.A1_max, b.bounds.A1_max) &&
         num_eq(a.bounds.A2_max, b.bounds.A2_max) &&
         num_eq(a.bounds.B_max, b.bounds.B_max) &&
         num_eq(a.bounds.Upsilon_max, b.bounds.Upsilon_max) &&
         num_eq(a.bounds.A_breve_max, b.bounds.A_breve_max) &&
         num_eq(a.bounds.f_max_effective, b.bounds.f_max_effective) &&
         checks_eq(a.gain_checks, b.gain_checks) &&
         checks_eq(a.set_conditions, b.set_conditions) &&
         num_eq(a.w_eigs.W1_min, b.w_eigs.W1_min) &&
         num_eq(a.w_eigs.W1_max, b.w_eigs.W1_max) &&
         num_eq(a.w_eigs.W2_min, b.w_eigs.W2_min) &&
         num_eq(a.w_eigs.W2_max, b.w_eigs.W2_max) &&
         num_eq(a.w_eigs.W3_min, b.w_eigs.W3_min) &&
         num_eq(a.w_eigs.W3_max, b.w_eigs.W3_max) &&
         num_eq(a.w_eigs.W4_min, b.w_eigs.W4_min) &&
         num_eq(a.w_eigs.W4_max, b.w_eigs.W4_max) &&
         num_eq(a.w_eigs.W5_min, b.w_eigs.W5_min) &&
         num_eq(a.w_eigs.W5_max, b.w_eigs.W5_max) &&
         thresholds_match && a.certified == b.certified;
}

}  // namespace s2track
