#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "matlog/config.hpp"
#include "matlog/rng.hpp"
#include "matlog/scalar.hpp"
#include "matlog/types.hpp"

namespace matlog {

enum class LawVerdict {
  LawHoldsCommuting,
  LawHoldsNoncommuting,  // a reportable counterexample candidate
  LawFails,
  Inapplicable,
};

std::string to_string(LawVerdict v);

struct CutDistances {
  double x = -1.0;
  double y = -1.0;
  double xy = -1.0;
};

// Residuals of log(xy) = log(x) + log(y) against the commutator, with the
// cut distances that gate applicability.
struct LawReport {
  double law_residual = std::numeric_limits<double>::quiet_NaN();
  double commutator_norm = 0.0;
  CutDistances cut_distances;
  LawVerdict verdict = LawVerdict::Inapplicable;
  bool low_confidence = false;  // some cut distance under the confidence floor
  std::string note;             // inapplicability reason, when any
  std::uint64_t seed = 0;       // provenance, filled in by harnesses
  long trial = -1;
};

LawReport log_law_report(const ComplexMatrix& x, const ComplexMatrix& y,
                         const Config& cfg = default_config());

// Commuting pair whose paired eigenvalue arguments satisfy
// |arg(lambda_j) + arg(mu_j)| < pi with margin; the positive direction of
// the law holds on every output.
std::pair<ComplexMatrix, ComplexMatrix> gen_commuting_arg_pair(
    std::uint64_t seed, int n, const Config& cfg = default_config());

// The exceptional noncommuting 2x2 family: a ~ diag(lambda, lambda+u),
// b ~ [[mu+v, 1], [0, mu]] for a companion pair (u, v). Satisfies
// e^{a+b} = e^a e^b exactly while ab != ba.
struct Item3Instance {
  Complex lambda;
  Complex mu;
  Complex u;
  Complex v;
  ComplexMatrix a;
  ComplexMatrix b;
  std::optional<ComplexMatrix> conjugator;
  double identity_residual = 0.0;  // relative, checked at construction
};

Item3Instance gen_item3_pair(Complex u, Complex v, Complex lambda, Complex mu,
                             const std::optional<ComplexMatrix>& conjugator =
                                 std::nullopt,
                             const Config& cfg = default_config());

struct Prop1Probe {
  Complex candidate;
  bool in_u = false;
  bool unknown_band = false;  // |Im| beyond the scanned U-root band
};

// Which of the three necessary conditions hold for a noncommuting 2x2 pair
// with e^{a+b} = e^a e^b. The similarity-shape part of item (3) is not
// verified; only the spectral/phi conditions are, hence "PARTIAL".
struct Prop1Classification {
  bool applicable = false;
  double identity_residual = 0.0;
  double commutator_norm = 0.0;
  Complex gap_a;
  Complex gap_b;
  bool item1 = false;
  bool item2 = false;
  bool item2_unknown_band = false;
  bool item3 = false;
  std::array<Prop1Probe, 4> item2_probes{};  // +gap_a, -gap_a, +gap_b, -gap_b
  std::string structural = "PARTIAL";
};

Prop1Classification classify_prop1(const ComplexMatrix& a,
                                   const ComplexMatrix& b,
                                   const Config& cfg = default_config());

// Block-structured pair of Proposition 3: a = [[a0, u], [0, alpha]],
// b = [[b0, v], [0, beta]] with a0, b0 commuting upper triangular.
struct Prop3Instance {
  ComplexMatrix a0;
  ComplexMatrix b0;
  Complex alpha;
  Complex beta;
  ComplexVector u_col;
  ComplexVector v_col;

  Eigen::Index inner_dim() const { return a0.rows(); }
  ComplexMatrix a1() const;     // a0 - alpha I
  ComplexMatrix b1() const;     // b0 - beta I
  ComplexVector w() const;      // a1 v - b1 u, recomputed on access
  ComplexMatrix assemble_a() const;
  ComplexMatrix assemble_b() const;
};

struct Prop3Report {
  double identity_residual = 0.0;
  double cond6_residual = 0.0;
  double cond7_residual = 0.0;
  double cond8_residual = 0.0;
  bool identity_holds = false;
  bool cond6_holds = false;
  bool cond7_holds = false;
  bool cond8_holds = false;
  long pivot_k = 0;  // 1-based largest index with |w_k| above floor; 0 = none
  bool item4_at_pivot = false;
  bool item5_at_pivot = false;
  bool item4_any = false;
  bool item5_any = false;
  bool borderline = false;  // a residual landed inside the borderline band
};

Prop3Report verify_prop3(const Prop3Instance& inst,
                         const Config& cfg = default_config());

Prop3Instance gen_prop3_random(std::uint64_t seed, int n,
                               const Config& cfg = default_config());

// Embeds an item-(3) companion pair into the n-dimensional block shape;
// the identity holds with w != 0 and item (4) true at the pivot.
Prop3Instance gen_prop3_exceptional(const CompanionPair& pair,
                                    std::uint64_t seed, int n,
                                    const Config& cfg = default_config());

// Joint Schur step for commuting pairs: one unitary rendering both upper
// triangular (to tolerance; residue is zeroed).
std::pair<ComplexMatrix, ComplexMatrix> joint_triangularize(
    const ComplexMatrix& a, const ComplexMatrix& b,
    const Config& cfg = default_config());

enum class FalsifyTarget { Thm1_2x2, Thm2Triangular, Prop4HermitianPd };

std::string to_string(FalsifyTarget t);

struct TrialOutcome {
  long trial = 0;
  double residual = std::numeric_limits<double>::infinity();
  double commutator_norm = 0.0;
  LawVerdict verdict = LawVerdict::Inapplicable;
  bool flagged = false;
};

struct SearchReport {
  FalsifyTarget target = FalsifyTarget::Thm1_2x2;
  int n = 2;
  std::uint64_t seed = 0;
  long trials = 0;
  double min_law_residual = std::numeric_limits<double>::infinity();
  long argmin_trial = -1;
  ComplexMatrix argmin_x;
  ComplexMatrix argmin_y;
  std::vector<TrialOutcome> rows;          // one per trial, in trial order
  std::vector<long> flagged_trials;        // residual under the candidate tol
  std::array<long, 19> histogram{};        // log10 buckets 1e-16 .. 1e+2
};

// Seeded random search over the target class, keeping samples noncommuting,
// with a per-trial random-perturbation descent on the law residual. A
// residual under counterexample_tol would contradict the corresponding
// theorem and is flagged.
SearchReport falsify_theorem(FalsifyTarget target, int n, long trials,
                             std::uint64_t seed,
                             const Config& cfg = default_config());

struct Prop4Structure {
  double hermitian_x = 0.0;  // ||x - x*||_F / max(1, ||x||_F)
  double hermitian_y = 0.0;
  double log_hermitian_a = 0.0;
  double log_hermitian_b = 0.0;
  double law_residual = 0.0;
  double chain_commute_residual = 0.0;  // ||e^a e^b - e^b e^a|| relative
  double xy_commutator = 0.0;           // ||xy - yx|| / (||x|| ||y||)
  bool law_holds = false;
  bool implications_hold = false;  // law => chain => commuting, or vacuous
};

Prop4Structure verify_prop4_structure(const ComplexMatrix& x,
                                      const ComplexMatrix& y,
                                      const Config& cfg = default_config());

// Sampling ensembles shared by the harnesses and tests.
ComplexMatrix random_offcut_dense(Rng& rng, int n,
                                  const Config& cfg = default_config());
std::pair<ComplexMatrix, ComplexMatrix> random_triangular_pair(Rng& rng, int n);
ComplexMatrix random_hermitian_pd(Rng& rng, int n);

}  // namespace matlog
