#include "matlog/laws.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "matlog/linalg.hpp"
#include "matlog/matfun.hpp"

namespace matlog {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct CheckedLog {
  double cut_distance = 0.0;
  std::optional<ComplexMatrix> value;
};

// One Schur pass: cut distance always, the principal log only off the cut.
CheckedLog checked_log(const ComplexMatrix& m, const Config& cfg) {
  auto schur = schur_decompose(m, cfg);
  double dist = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < schur.dim(); ++i)
    dist = std::min(dist, cut_distance(schur.t(i, i)));
  CheckedLog out{dist, std::nullopt};
  if (dist > cfg.cut_tol) out.value = mat_log_from_schur(schur, cfg);
  return out;
}

double relative_diff(const ComplexMatrix& got, const ComplexMatrix& want) {
  double scale = want.norm();
  return (got - want).norm() / (scale > 0 ? scale : 1.0);
}

}  // namespace

std::string to_string(LawVerdict v) {
  switch (v) {
    case LawVerdict::LawHoldsCommuting: return "LAW_HOLDS_COMMUTING";
    case LawVerdict::LawHoldsNoncommuting: return "LAW_HOLDS_NONCOMMUTING";
    case LawVerdict::LawFails: return "LAW_FAILS";
    case LawVerdict::Inapplicable: return "INAPPLICABLE";
  }
  return "INAPPLICABLE";
}

std::string to_string(FalsifyTarget t) {
  switch (t) {
    case FalsifyTarget::Thm1_2x2: return "thm1";
    case FalsifyTarget::Thm2Triangular: return "thm2";
    case FalsifyTarget::Prop4HermitianPd: return "prop4";
  }
  return "thm1";
}

LawReport log_law_report(const ComplexMatrix& x, const ComplexMatrix& y,
                         const Config& cfg) {
  require_same_dim(x, y, "log_law_report");
  require_finite(x, "log_law_report");
  require_finite(y, "log_law_report");

  LawReport rep;
  rep.commutator_norm = commutator_norm(x, y);
  try {
    CheckedLog lx = checked_log(x, cfg);
    CheckedLog ly = checked_log(y, cfg);
    CheckedLog lxy = checked_log(x * y, cfg);
    rep.cut_distances = {lx.cut_distance, ly.cut_distance, lxy.cut_distance};
    if (!lx.value || !ly.value || !lxy.value) {
      rep.note = "spectrum within cut tolerance of ]-inf,0]";
      return rep;
    }
    rep.low_confidence =
        std::min({lx.cut_distance, ly.cut_distance, lxy.cut_distance}) <
        cfg.low_confidence_cut;
    rep.law_residual = (*lxy.value - *lx.value - *ly.value).norm() /
                       (lx.value->norm() + ly.value->norm() + 1.0);
    if (rep.law_residual <= cfg.law_residual_tol)
      rep.verdict = rep.commutator_norm <= cfg.commuting_tol
                        ? LawVerdict::LawHoldsCommuting
                        : LawVerdict::LawHoldsNoncommuting;
    else
      rep.verdict = LawVerdict::LawFails;
  } catch (const Error& e) {
    rep.verdict = LawVerdict::Inapplicable;
    rep.note = e.what();
  }
  return rep;
}

std::pair<ComplexMatrix, ComplexMatrix> gen_commuting_arg_pair(
    std::uint64_t seed, int n, const Config& cfg) {
  if (n < 1) throw ConfigError("gen_commuting_arg_pair: n must be >= 1");
  Rng rng(Rng::mix(seed, 0x61726770ULL + static_cast<std::uint64_t>(n)));

  for (int attempt = 0; attempt < 64; ++attempt) {
    // Common eigenbasis: a random unitary times a mild upper shear, so the
    // pair commutes exactly and stays well conditioned.
    ComplexMatrix g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = rng.unit_square();
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    ComplexMatrix shear = ComplexMatrix::Identity(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) shear(i, j) = 0.25 * rng.unit_square();
    ComplexMatrix p = q * shear;
    ComplexMatrix p_inv = p.partialPivLu().inverse();

    // Paired arguments kept inside |arg lambda_j + arg mu_j| <= pi - 0.35,
    // moduli away from 0, so all three spectra clear the cut by >= 0.1.
    ComplexVector lam(n), mu(n);
    for (int j = 0; j < n; ++j) {
      double th = rng.uniform(-0.8 * kPi, 0.8 * kPi);
      double lo = std::max(-0.8 * kPi, -(kPi - 0.35) - th);
      double hi = std::min(0.8 * kPi, (kPi - 0.35) - th);
      double ps = rng.uniform(lo, hi);
      lam(j) = std::polar(rng.uniform(0.7, 1.5), th);
      mu(j) = std::polar(rng.uniform(0.7, 1.5), ps);
    }

    ComplexMatrix x = p * lam.asDiagonal() * p_inv;
    ComplexMatrix y = p * mu.asDiagonal() * p_inv;

    if (commutator_norm(x, y) > 1e-11) continue;
    if (!check_spectrum_off_cut(x, cfg).off_cut) continue;
    if (!check_spectrum_off_cut(y, cfg).off_cut) continue;
    if (!check_spectrum_off_cut(x * y, cfg).off_cut) continue;
    return {std::move(x), std::move(y)};
  }
  throw GenerationExhausted("gen_commuting_arg_pair: retries exhausted");
}

Item3Instance gen_item3_pair(Complex u, Complex v, Complex lambda, Complex mu,
                             const std::optional<ComplexMatrix>& conjugator,
                             const Config& cfg) {
  if (std::abs(u) < cfg.root_separation || std::abs(v) < cfg.root_separation)
    throw InvalidCompanionPair("gen_item3_pair: u and v must be nonzero");
  if (std::abs(u - v) < cfg.root_separation)
    throw InvalidCompanionPair("gen_item3_pair: u != v required");
  Complex level = phi_scalar(u);
  if (std::abs(level) <= cfg.companion_residual_tol)
    throw InvalidCompanionPair("gen_item3_pair: phi(u) must not vanish");
  if (std::abs(phi_scalar(v) - level) > cfg.companion_residual_tol)
    throw InvalidCompanionPair(
        "gen_item3_pair: phi(u) and phi(v) disagree beyond tolerance");

  Item3Instance inst;
  inst.lambda = lambda;
  inst.mu = mu;
  inst.u = u;
  inst.v = v;
  inst.a = ComplexMatrix{{lambda, Complex{0.0, 0.0}},
                         {Complex{0.0, 0.0}, lambda + u}};
  inst.b = ComplexMatrix{{mu + v, Complex{1.0, 0.0}},
                         {Complex{0.0, 0.0}, mu}};

  if (conjugator) {
    if (conjugator->rows() != 2 || conjugator->cols() != 2)
      throw ConfigError("gen_item3_pair: conjugator must be 2x2");
    ComplexMatrix p_inv;
    try {
      p_inv = mat_inverse(*conjugator, cfg);
    } catch (const SingularMatrix&) {
      throw ConfigError("gen_item3_pair: conjugator is singular");
    }
    inst.a = *conjugator * inst.a * p_inv;
    inst.b = *conjugator * inst.b * p_inv;
    inst.conjugator = conjugator;
  }

  inst.identity_residual =
      relative_diff(mat_exp(ComplexMatrix(inst.a + inst.b), cfg),
                    mat_exp(inst.a, cfg) * mat_exp(inst.b, cfg));
  if (inst.identity_residual > cfg.item3_identity_tol)
    throw InvalidCompanionPair(
        "gen_item3_pair: constructed pair misses e^{a+b} = e^a e^b at " +
        std::to_string(inst.identity_residual));
  if (commutator(inst.a, inst.b).norm() == 0.0)
    throw InvalidCompanionPair("gen_item3_pair: pair unexpectedly commutes");
  return inst;
}

namespace {

// First 20 upper-half-plane roots of e^u = 1 + u. Any root with |Im| below
// the band ceiling lies inside this band (or its conjugate), so membership
// is decided there and UNKNOWN_BAND beyond.
struct URootTable {
  std::vector<Complex> roots;
  double im_ceiling;
};

const URootTable& u_root_table() {
  static const URootTable table = [] {
    Rectangle band{0.0, 6.0, 1.0, kTwoPi * 21.0};
    URootTable t;
    t.roots = u_set_search(band, default_config()).roots;
    t.im_ceiling = band.im_max;
    return t;
  }();
  return table;
}

bool near_2pi_multiple(Complex w, double tol) {
  double k = std::round(w.imag() / kTwoPi);
  if (k == 0.0) return false;
  return std::abs(w - Complex{0.0, kTwoPi * k}) <= tol;
}

}  // namespace

Prop1Classification classify_prop1(const ComplexMatrix& a,
                                   const ComplexMatrix& b, const Config& cfg) {
  if (a.rows() != 2 || a.cols() != 2 || b.rows() != 2 || b.cols() != 2)
    throw DimensionMismatch("classify_prop1: expects 2x2 matrices");
  require_finite(a, "classify_prop1");
  require_finite(b, "classify_prop1");

  Prop1Classification cls;
  cls.identity_residual = relative_diff(mat_exp(ComplexMatrix(a + b), cfg),
                                        mat_exp(a, cfg) * mat_exp(b, cfg));
  cls.commutator_norm = commutator_norm(a, b);
  cls.applicable = cls.identity_residual <= cfg.identity_rel_tol &&
                   cls.commutator_norm > cfg.commuting_tol;
  if (!cls.applicable) return cls;

  auto ea = eigenvalues(a, cfg);
  auto eb = eigenvalues(b, cfg);
  cls.gap_a = ea(0) - ea(1);
  cls.gap_b = eb(0) - eb(1);

  cls.item1 = near_2pi_multiple(cls.gap_a, cfg.classify_gap_tol) &&
              near_2pi_multiple(cls.gap_b, cfg.classify_gap_tol);

  const auto& table = u_root_table();
  long limit = std::min<long>(static_cast<long>(cfg.classify_u_roots),
                              static_cast<long>(table.roots.size()));
  std::array<Complex, 4> candidates{cls.gap_a, -cls.gap_a, cls.gap_b,
                                    -cls.gap_b};
  for (std::size_t i = 0; i < 4; ++i) {
    Prop1Probe probe;
    probe.candidate = candidates[i];
    if (std::abs(probe.candidate.imag()) > table.im_ceiling) {
      probe.unknown_band = true;
      cls.item2_unknown_band = true;
    } else {
      for (long k = 0; k < limit; ++k) {
        Complex r = table.roots[static_cast<std::size_t>(k)];
        if (std::abs(probe.candidate - r) <= cfg.classify_u_membership_tol ||
            std::abs(probe.candidate - std::conj(r)) <=
                cfg.classify_u_membership_tol) {
          probe.in_u = true;
          break;
        }
      }
    }
    cls.item2 = cls.item2 || probe.in_u;
    cls.item2_probes[i] = probe;
  }

  // Item (3): some signing of the eigenvalue gaps forms a companion pair.
  for (int s1 = 0; s1 < 2; ++s1) {
    for (int s2 = 0; s2 < 2; ++s2) {
      Complex cu = (s1 ? -cls.gap_a : cls.gap_a);
      Complex cv = (s2 ? -cls.gap_b : cls.gap_b);
      if (std::abs(cu) < cfg.root_separation ||
          std::abs(cv) < cfg.root_separation)
        continue;
      if (std::abs(cu - cv) < cfg.root_separation) continue;
      Complex pu = phi_scalar(cu);
      if (std::abs(pu) <= cfg.classify_gap_tol) continue;
      if (std::abs(pu - phi_scalar(cv)) <= cfg.classify_gap_tol) {
        cls.item3 = true;
      }
    }
  }
  return cls;
}

ComplexMatrix Prop3Instance::a1() const {
  return a0 - alpha * ComplexMatrix::Identity(a0.rows(), a0.cols());
}

ComplexMatrix Prop3Instance::b1() const {
  return b0 - beta * ComplexMatrix::Identity(b0.rows(), b0.cols());
}

ComplexVector Prop3Instance::w() const { return a1() * v_col - b1() * u_col; }

ComplexMatrix Prop3Instance::assemble_a() const {
  Eigen::Index m = inner_dim();
  ComplexMatrix a = ComplexMatrix::Zero(m + 1, m + 1);
  a.topLeftCorner(m, m) = a0;
  a.topRightCorner(m, 1) = u_col;
  a(m, m) = alpha;
  return a;
}

ComplexMatrix Prop3Instance::assemble_b() const {
  Eigen::Index m = inner_dim();
  ComplexMatrix b = ComplexMatrix::Zero(m + 1, m + 1);
  b.topLeftCorner(m, m) = b0;
  b.topRightCorner(m, 1) = v_col;
  b(m, m) = beta;
  return b;
}

Prop3Report verify_prop3(const Prop3Instance& inst, const Config& cfg) {
  const Eigen::Index m = inst.inner_dim();
  if (m < 1 || inst.b0.rows() != m || inst.b0.cols() != m ||
      inst.a0.cols() != m || inst.u_col.size() != m || inst.v_col.size() != m)
    throw DimensionMismatch("verify_prop3: inconsistent block dimensions");
  if (!detail::exactly_upper_triangular(inst.a0) ||
      !detail::exactly_upper_triangular(inst.b0))
    throw ConfigError("verify_prop3: a0 and b0 must be upper triangular "
                      "(use joint_triangularize first)");
  if (commutator(inst.a0, inst.b0).norm() > cfg.prop3_commute_tol)
    throw ConfigError("verify_prop3: a0 and b0 do not commute to tolerance");

  Prop3Report rep;

  // Route one: the n x n identity, straight from the exponentials.
  ComplexMatrix a = inst.assemble_a();
  ComplexMatrix b = inst.assemble_b();
  ComplexMatrix prod = mat_exp(a, cfg) * mat_exp(b, cfg);
  ComplexMatrix eab = mat_exp(ComplexMatrix(a + b), cfg);
  double prod_norm = prod.norm();
  rep.identity_residual = (eab - prod).norm() / (prod_norm > 0 ? prod_norm : 1);
  rep.identity_holds = rep.identity_residual <= cfg.identity_rel_tol;

  // Route two: condition (6) on the blocks, through the phi-function. The
  // normalization mirrors route one with the e^{alpha+beta} factor removed,
  // so the two verdicts are comparable at the same threshold.
  ComplexMatrix a1 = inst.a1();
  ComplexMatrix b1 = inst.b1();
  ComplexMatrix phi_a1 = mat_phi(a1, cfg);
  ComplexMatrix phi_b1 = mat_phi(b1, cfg);
  ComplexMatrix phi_ab = mat_phi(ComplexMatrix(a1 + b1), cfg);
  ComplexMatrix exp_a1 = mat_exp(a1, cfg);
  ComplexMatrix exp_b1 = mat_exp(b1, cfg);

  ComplexVector lhs6 = (phi_ab - phi_a1) * inst.u_col;
  ComplexVector rhs6 = (exp_a1 * phi_b1 - phi_ab) * inst.v_col;
  ComplexVector offdiag = exp_a1 * (phi_b1 * inst.v_col) + phi_a1 * inst.u_col;
  double block_scale = std::sqrt(std::pow((exp_a1 * exp_b1).norm(), 2) +
                                 std::pow(offdiag.norm(), 2) + 1.0);
  rep.cond6_residual = (lhs6 - rhs6).norm() / block_scale;
  rep.cond6_holds = rep.cond6_residual <= cfg.identity_rel_tol;

  ComplexVector w = inst.w();
  ComplexVector c7 = (phi_ab - phi_a1) * w;
  rep.cond7_residual =
      c7.norm() / (1.0 + (phi_ab - phi_a1).norm() * w.norm());
  rep.cond7_holds = rep.cond7_residual <= cfg.identity_rel_tol;

  ComplexMatrix phi_neg_a1 = mat_phi(ComplexMatrix(-a1), cfg);
  ComplexVector c8 = (phi_b1 - phi_neg_a1) * w;
  rep.cond8_residual =
      c8.norm() / (1.0 + (phi_b1 - phi_neg_a1).norm() * w.norm());
  rep.cond8_holds = rep.cond8_residual <= cfg.identity_rel_tol;

  rep.pivot_k = 0;
  for (Eigen::Index i = m; i-- > 0;)
    if (std::abs(w(i)) > cfg.pivot_floor) {
      rep.pivot_k = static_cast<long>(i) + 1;  // 1-based, as in the reports
      break;
    }

  auto item4_at = [&](Eigen::Index i) {
    Complex ai = a1(i, i), bi = b1(i, i);
    return std::abs(bi) > cfg.item_condition_tol &&
           std::abs(phi_scalar(ai + bi) - phi_scalar(ai)) <=
               cfg.item_condition_tol;
  };
  auto item5_at = [&](Eigen::Index i) {
    Complex ai = a1(i, i), bi = b1(i, i);
    return std::abs(ai) > cfg.item_condition_tol &&
           std::abs(bi) <= cfg.item_condition_tol &&
           std::abs(phi_scalar(-ai) - Complex{1.0, 0.0}) <=
               cfg.item_condition_tol;
  };
  for (Eigen::Index i = 0; i < m; ++i) {
    rep.item4_any = rep.item4_any || item4_at(i);
    rep.item5_any = rep.item5_any || item5_at(i);
  }
  if (rep.pivot_k > 0) {
    rep.item4_at_pivot = item4_at(rep.pivot_k - 1);
    rep.item5_at_pivot = item5_at(rep.pivot_k - 1);
  }

  auto in_band = [&](double r) {
    return r >= cfg.borderline_lo && r <= cfg.borderline_hi;
  };
  rep.borderline = in_band(rep.identity_residual) || in_band(rep.cond6_residual);
  return rep;
}

Prop3Instance gen_prop3_random(std::uint64_t seed, int n, const Config&) {
  if (n < 2) throw ConfigError("gen_prop3_random: n must be >= 2");
  const int m = n - 1;
  Rng rng(Rng::mix(seed, 0x70726f7033ULL + static_cast<std::uint64_t>(n)));

  Prop3Instance inst;
  for (int attempt = 0; attempt < 32; ++attempt) {
    ComplexMatrix a0 = ComplexMatrix::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      a0(i, i) = rng.unit_square();
      for (int j = i + 1; j < m; ++j) a0(i, j) = 0.8 * rng.unit_square();
    }
    double na = a0.norm();
    if (na < 1e-3) continue;
    a0 *= rng.uniform(0.5, 2.0) / na;

    // b0 as a polynomial in a0: commutes exactly, stays upper triangular.
    int deg = std::min(m - 1, 3);
    ComplexMatrix b0 = ComplexMatrix::Zero(m, m);
    ComplexMatrix power = ComplexMatrix::Identity(m, m);
    for (int k = 0; k <= deg; ++k) {
      b0 += rng.unit_square() * power;
      power = power * a0;
    }
    double nb = b0.norm();
    if (nb < 1e-3) continue;
    b0 *= rng.uniform(0.5, 2.0) / nb;

    inst.a0 = std::move(a0);
    inst.b0 = std::move(b0);
    inst.alpha = 0.7 * rng.unit_square();
    inst.beta = 0.7 * rng.unit_square();
    inst.u_col = ComplexVector(m);
    inst.v_col = ComplexVector(m);
    for (int i = 0; i < m; ++i) {
      inst.u_col(i) = rng.unit_square();
      inst.v_col(i) = rng.unit_square();
    }
    return inst;
  }
  throw GenerationExhausted("gen_prop3_random: retries exhausted");
}

Prop3Instance gen_prop3_exceptional(const CompanionPair& pair,
                                    std::uint64_t seed, int n,
                                    const Config& cfg) {
  if (n < 2) throw ConfigError("gen_prop3_exceptional: n must be >= 2");
  if (std::abs(pair.u - pair.v) < cfg.root_separation)
    throw InvalidCompanionPair("gen_prop3_exceptional: u != v required");
  const int m = n - 1;
  Rng rng(Rng::mix(seed, 0x70726f7065ULL + static_cast<std::uint64_t>(n)));

  Complex lambda = 0.4 * rng.unit_square();
  Complex mu = 0.4 * rng.unit_square();

  // Diagonal a0, b0 carrying the item-(3) block on the first coordinate:
  // a ~ diag(lambda, ..., lambda+u), b couples coordinate 1 to the last
  // column, so w = (-u, 0, ...) and the pivot sits at index 1.
  Prop3Instance inst;
  inst.a0 = ComplexMatrix::Zero(m, m);
  inst.b0 = ComplexMatrix::Zero(m, m);
  inst.a0(0, 0) = lambda;
  inst.b0(0, 0) = mu + pair.v;
  for (int i = 1; i < m; ++i) {
    inst.a0(i, i) = 0.7 * rng.unit_square();
    inst.b0(i, i) = 0.7 * rng.unit_square();
  }
  inst.alpha = lambda + pair.u;
  inst.beta = mu;
  inst.u_col = ComplexVector::Zero(m);
  inst.v_col = ComplexVector::Zero(m);
  inst.v_col(0) = Complex{1.0, 0.0};
  return inst;
}

std::pair<ComplexMatrix, ComplexMatrix> joint_triangularize(
    const ComplexMatrix& a, const ComplexMatrix& b, const Config& cfg) {
  require_same_dim(a, b, "joint_triangularize");
  if (commutator_norm(a, b) > cfg.commuting_tol)
    throw ConfigError("joint_triangularize: inputs do not commute");

  const Eigen::Index n = a.rows();
  const double tol = 1e-10 * (a.norm() + b.norm() + 1.0);

  // Schur basis of a + tau b triangularizes both when [a, b] = 0 and the
  // combination has simple spectrum; scan a few fixed tau.
  static const Complex taus[] = {{0.0, 0.0},   {0.618, 0.382},
                                 {-0.414, 0.707}, {0.301, -0.577},
                                 {1.414, 0.159}};
  for (Complex tau : taus) {
    ComplexMatrix m = a + tau * b;
    SchurForm schur;
    try {
      schur = schur_decompose(m, cfg);
    } catch (const SchurFailure&) {
      continue;
    }
    ComplexMatrix ta = schur.q.adjoint() * a * schur.q;
    ComplexMatrix tb = schur.q.adjoint() * b * schur.q;
    double resid = 0.0;
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = j + 1; i < n; ++i)
        resid = std::max({resid, std::abs(ta(i, j)), std::abs(tb(i, j))});
    if (resid <= tol) {
      for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = j + 1; i < n; ++i) {
          ta(i, j) = Complex{0.0, 0.0};
          tb(i, j) = Complex{0.0, 0.0};
        }
      return {std::move(ta), std::move(tb)};
    }
  }
  throw Error("joint_triangularize: no tested combination triangularized both "
              "inputs to tolerance");
}

ComplexMatrix random_offcut_dense(Rng& rng, int n, const Config& cfg) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = rng.unit_square();
    double nm = m.norm();
    if (nm < 1e-6) continue;
    m *= rng.uniform(0.5, 3.0) / nm;

    // Real shift pushing every low-imaginary eigenvalue to cut distance 0.1;
    // shifts leave the commutator of a pair untouched.
    auto eigs = eigenvalues(m, cfg);
    double shift = 0.0;
    for (Eigen::Index i = 0; i < eigs.size(); ++i)
      if (std::abs(eigs(i).imag()) < 0.1)
        shift = std::max(shift, 0.1 - eigs(i).real());
    m += shift * ComplexMatrix::Identity(n, n);
    return m;
  }
  throw GenerationExhausted("random_offcut_dense: retries exhausted");
}

std::pair<ComplexMatrix, ComplexMatrix> random_triangular_pair(Rng& rng,
                                                               int n) {
  ComplexMatrix x = ComplexMatrix::Zero(n, n);
  ComplexMatrix y = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    // |arg| capped at 0.8 pi each and |arg sum| likewise, so x, y and the
    // triangular product xy all clear the cut.
    double th = rng.uniform(-0.8 * kPi, 0.8 * kPi);
    double lo = std::max(-0.8 * kPi, -0.8 * kPi - th);
    double hi = std::min(0.8 * kPi, 0.8 * kPi - th);
    double ps = rng.uniform(lo, hi);
    x(i, i) = std::polar(rng.uniform(0.5, 2.0), th);
    y(i, i) = std::polar(rng.uniform(0.5, 2.0), ps);
    for (int j = i + 1; j < n; ++j) {
      x(i, j) = rng.unit_square();
      y(i, j) = rng.unit_square();
    }
  }
  return {std::move(x), std::move(y)};
}

ComplexMatrix random_hermitian_pd(Rng& rng, int n) {
  ComplexMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.unit_square();
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i) d(i) = rng.uniform(0.2, 5.0);
  ComplexMatrix x = q * d.asDiagonal() * q.adjoint();
  return 0.5 * (x + x.adjoint());
}

namespace {

std::pair<ComplexMatrix, ComplexMatrix> sample_target(FalsifyTarget target,
                                                      Rng& rng, int n,
                                                      const Config& cfg) {
  switch (target) {
    case FalsifyTarget::Thm1_2x2:
      return {random_offcut_dense(rng, 2, cfg), random_offcut_dense(rng, 2, cfg)};
    case FalsifyTarget::Thm2Triangular:
      return random_triangular_pair(rng, n);
    case FalsifyTarget::Prop4HermitianPd:
      return {random_hermitian_pd(rng, n), random_hermitian_pd(rng, n)};
  }
  throw Error("sample_target: unreachable");
}

void perturb_inplace(FalsifyTarget target, Rng& rng, ComplexMatrix& m,
                     double step) {
  const int n = static_cast<int>(m.rows());
  switch (target) {
    case FalsifyTarget::Thm1_2x2: {
      int i = static_cast<int>(rng.uniform_int(0, n - 1));
      int j = static_cast<int>(rng.uniform_int(0, n - 1));
      m(i, j) += step * rng.unit_square();
      return;
    }
    case FalsifyTarget::Thm2Triangular: {
      int i = static_cast<int>(rng.uniform_int(0, n - 1));
      int j = static_cast<int>(rng.uniform_int(i, n - 1));
      m(i, j) += step * rng.unit_square();
      return;
    }
    case FalsifyTarget::Prop4HermitianPd: {
      int i = static_cast<int>(rng.uniform_int(0, n - 1));
      int j = static_cast<int>(rng.uniform_int(i, n - 1));
      if (i == j) {
        m(i, i) += Complex{step * rng.uniform(-1.0, 1.0), 0.0};
      } else {
        Complex d = step * rng.unit_square();
        m(i, j) += d;
        m(j, i) += std::conj(d);
      }
      return;
    }
  }
}

}  // namespace

SearchReport falsify_theorem(FalsifyTarget target, int n, long trials,
                             std::uint64_t seed, const Config& cfg) {
  if (trials < 1) throw ConfigError("falsify_theorem: trials must be >= 1");
  if (target == FalsifyTarget::Thm1_2x2 && n != 2)
    throw ConfigError("falsify_theorem: thm1 is a 2x2 statement");
  if (n < 1) throw ConfigError("falsify_theorem: n must be >= 1");

  SearchReport rep;
  rep.target = target;
  rep.n = n;
  rep.seed = seed;
  rep.trials = trials;
  rep.rows.reserve(static_cast<std::size_t>(trials));

  const long descent_iters = static_cast<long>(cfg.descent_iterations);

  for (long trial = 0; trial < trials; ++trial) {
    Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(trial));

    // Sample until applicable and honestly noncommuting.
    ComplexMatrix x, y;
    LawReport law;
    bool sampled = false;
    for (int attempt = 0; attempt < 200; ++attempt) {
      std::tie(x, y) = sample_target(target, rng, n, cfg);
      law = log_law_report(x, y, cfg);
      if (law.verdict != LawVerdict::Inapplicable &&
          law.commutator_norm >= cfg.noncommuting_floor) {
        sampled = true;
        break;
      }
    }

    TrialOutcome row;
    row.trial = trial;
    if (!sampled) {
      rep.rows.push_back(row);  // inapplicable trial, infinite residual
      continue;
    }

    double best = law.law_residual;
    double best_comm = law.commutator_norm;
    LawVerdict best_verdict = law.verdict;

    // Derivative-free local descent: random single-entry perturbations with
    // step halving, constrained to the class and the commutator floor.
    double step = 0.1;
    int rejects = 0;
    for (long it = 0; it < descent_iters; ++it) {
      ComplexMatrix cx = x, cy = y;
      if (rng.unit() < 0.5)
        perturb_inplace(target, rng, cx, step);
      else
        perturb_inplace(target, rng, cy, step);
      LawReport cand = log_law_report(cx, cy, cfg);
      if (cand.verdict != LawVerdict::Inapplicable &&
          cand.commutator_norm >= cfg.noncommuting_floor &&
          cand.law_residual < best) {
        x = std::move(cx);
        y = std::move(cy);
        best = cand.law_residual;
        best_comm = cand.commutator_norm;
        best_verdict = cand.verdict;
        rejects = 0;
      } else if (++rejects >= 8) {
        step *= 0.5;
        rejects = 0;
      }
    }

    row.residual = best;
    row.commutator_norm = best_comm;
    row.verdict = best_verdict;
    row.flagged = best < cfg.counterexample_tol;
    rep.rows.push_back(row);

    if (row.flagged) rep.flagged_trials.push_back(trial);
    if (best < rep.min_law_residual) {
      rep.min_law_residual = best;
      rep.argmin_trial = trial;
      rep.argmin_x = x;
      rep.argmin_y = y;
    }
    if (std::isfinite(best) && best > 0) {
      int bucket = static_cast<int>(std::floor(std::log10(best))) + 16;
      bucket = std::clamp(bucket, 0, 18);
      ++rep.histogram[static_cast<std::size_t>(bucket)];
    }
  }
  return rep;
}

Prop4Structure verify_prop4_structure(const ComplexMatrix& x,
                                      const ComplexMatrix& y,
                                      const Config& cfg) {
  require_same_dim(x, y, "verify_prop4_structure");
  require_finite(x, "verify_prop4_structure");
  require_finite(y, "verify_prop4_structure");

  Prop4Structure rep;
  rep.hermitian_x = (x - x.adjoint()).norm() / std::max(1.0, x.norm());
  rep.hermitian_y = (y - y.adjoint()).norm() / std::max(1.0, y.norm());
  if (rep.hermitian_x > cfg.prop4_hermitian_tol ||
      rep.hermitian_y > cfg.prop4_hermitian_tol)
    throw ConfigError("verify_prop4_structure: inputs are not Hermitian "
                      "within tolerance");

  for (const ComplexMatrix* m : {&x, &y}) {
    auto eigs = eigenvalues(*m, cfg);
    for (Eigen::Index i = 0; i < eigs.size(); ++i)
      if (!(eigs(i).real() > cfg.cut_tol))
        throw ConfigError(
            "verify_prop4_structure: input is not positive definite");
  }

  ComplexMatrix a = mat_log_principal(x, cfg);
  ComplexMatrix b = mat_log_principal(y, cfg);
  rep.log_hermitian_a = (a - a.adjoint()).norm() / std::max(1.0, a.norm());
  rep.log_hermitian_b = (b - b.adjoint()).norm() / std::max(1.0, b.norm());

  LawReport law = log_law_report(x, y, cfg);
  rep.law_residual = law.law_residual;
  rep.law_holds = law.verdict == LawVerdict::LawHoldsCommuting ||
                  law.verdict == LawVerdict::LawHoldsNoncommuting;

  ComplexMatrix ea = mat_exp(a, cfg);
  ComplexMatrix eb = mat_exp(b, cfg);
  ComplexMatrix prod = ea * eb;
  rep.chain_commute_residual =
      (prod - eb * ea).norm() / std::max(1.0, prod.norm());
  rep.xy_commutator = commutator_norm(x, y);

  // The proof chain: the law forces e^a e^b = (e^{a+b})* = e^b e^a, hence
  // xy = yx; vacuous when the law already fails.
  rep.implications_hold =
      !rep.law_holds ||
      (rep.log_hermitian_a <= cfg.prop4_log_hermitian_tol &&
       rep.log_hermitian_b <= cfg.prop4_log_hermitian_tol &&
       rep.chain_commute_residual <= 2.0 * cfg.law_residual_tol &&
       rep.xy_commutator <= 10.0 * cfg.law_residual_tol);
  return rep;
}

}  // namespace matlog
