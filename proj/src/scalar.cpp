#include "matlog/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

namespace matlog {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex f_exp_linear(Complex lambda, Complex z) {
  return expm1c(z) - lambda * z;
}

Rectangle suggest_perturbed(const Rectangle& rect) {
  double pad = std::max(0.05, 0.03 * std::max(rect.width(), rect.height()));
  return {rect.re_min - pad, rect.re_max + pad, rect.im_min - pad,
          rect.im_max + pad};
}

// Accumulates the change of arg(f) along the contour. Each accepted segment
// satisfies |f2 - f1| < accept * min(|f1|, |f2|), which bounds the phase step
// strictly under pi/2 and makes principal-value unwrapping unambiguous.
class BoundaryWalk {
 public:
  BoundaryWalk(Complex lambda, const Rectangle& rect, double floor,
               double accept)
      : lambda_(lambda), rect_(rect), floor_(floor), accept_(accept) {}

  void run() {
    Complex bl{rect_.re_min, rect_.im_min};
    Complex br{rect_.re_max, rect_.im_min};
    Complex tr{rect_.re_max, rect_.im_max};
    Complex tl{rect_.re_min, rect_.im_max};
    edge(bl, br);
    edge(br, tr);
    edge(tr, tl);
    edge(tl, bl);
  }

  double total_arg() const { return total_arg_; }
  double min_abs() const { return min_abs_; }
  long segments() const { return segments_; }

 private:
  Complex eval(Complex z) {
    Complex fz = f_exp_linear(lambda_, z);
    double a = std::abs(fz);
    min_abs_ = std::min(min_abs_, a);
    if (a < floor_)
      throw BoundaryTooClose(
          "winding_zero_count: |f| = " + std::to_string(a) +
              " on the boundary is under the safety floor; perturb the "
              "rectangle",
          suggest_perturbed(rect_), a);
    return fz;
  }

  void edge(Complex za, Complex zb) {
    double len = std::abs(zb - za);
    long steps = std::clamp(static_cast<long>(std::ceil(len / 0.25)), 4L, 4096L);
    Complex zp = za;
    Complex fp = eval(za);
    for (long i = 1; i <= steps; ++i) {
      Complex zi = za + (zb - za) * (double(i) / double(steps));
      Complex fi = eval(zi);
      segment(zp, fp, zi, fi, 0);
      zp = zi;
      fp = fi;
    }
  }

  void segment(Complex z1, Complex f1, Complex z2, Complex f2, int depth) {
    if (std::abs(f2 - f1) <
        accept_ * std::min(std::abs(f1), std::abs(f2))) {
      total_arg_ += std::arg(f2 * std::conj(f1));
      ++segments_;
      return;
    }
    if (depth > 48)
      throw Error("winding_zero_count: boundary refinement did not settle");
    Complex zm = 0.5 * (z1 + z2);
    Complex fm = eval(zm);
    segment(z1, f1, zm, fm, depth + 1);
    segment(zm, fm, z2, f2, depth + 1);
  }

  Complex lambda_;
  Rectangle rect_;
  double floor_;
  double accept_;
  double total_arg_ = 0.0;
  double min_abs_ = std::numeric_limits<double>::infinity();
  long segments_ = 0;
};

ZeroCensus census_with_floor(Complex lambda, const Rectangle& rect,
                             double floor, const Config& cfg) {
  if (!rect.valid())
    throw ConfigError("winding_zero_count: degenerate rectangle");

  for (double accept : {0.99, 0.45}) {
    BoundaryWalk walk(lambda, rect, floor, accept);
    walk.run();
    double winding = walk.total_arg() / kTwoPi;
    double rounded = std::round(winding);
    if (std::abs(winding - rounded) <= cfg.census_integrality_tol) {
      if (rounded < 0)
        throw Error("winding_zero_count: negative winding for analytic f");
      return ZeroCensus{lambda, rect, static_cast<long>(rounded),
                        walk.min_abs(), walk.segments()};
    }
  }
  throw Error("winding_zero_count: winding sum is not integral after refinement");
}

std::optional<Complex> newton_exp_linear(Complex lambda, Complex seed,
                                         const Config& cfg) {
  Complex z = seed;
  for (long it = 0; it < static_cast<long>(cfg.newton_iter_cap); ++it) {
    Complex fz = f_exp_linear(lambda, z);
    Complex dfz = std::exp(z) - lambda;
    if (std::abs(dfz) < 1e-300) return std::nullopt;
    Complex step = fz / dfz;
    z -= step;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      return std::nullopt;
    if (std::abs(step) < cfg.newton_step_tol * (1.0 + std::abs(z))) return z;
  }
  return std::nullopt;
}

void sort_dedup(std::vector<Complex>& roots, double separation) {
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    if (a.imag() != b.imag()) return a.imag() < b.imag();
    return a.real() < b.real();
  });
  std::vector<Complex> out;
  for (Complex r : roots) {
    bool dup = false;
    for (Complex s : out)
      if (std::abs(r - s) < separation) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(r);
  }
  roots = std::move(out);
}

}  // namespace

ZeroCensus winding_zero_count(Complex lambda, const Rectangle& rect,
                              const Config& cfg) {
  return census_with_floor(lambda, rect, cfg.boundary_floor, cfg);
}

USetResult u_set_search(const Rectangle& band, const Config& cfg) {
  if (!band.valid()) throw ConfigError("u_set_search: degenerate band");
  if (band.distance_to(Complex{0.0, 0.0}) < 0.5)
    throw ConfigError(
        "u_set_search: band must exclude the disc of radius 0.5 around 0 "
        "(the trivial solution)");

  ZeroCensus total = winding_zero_count(Complex{1.0, 0.0}, band, cfg);

  // 1x1 cells localize Newton seeds; cells whose own census cannot be taken
  // (a zero too near a cell edge) fall back to a denser seed grid.
  std::vector<Complex> roots;
  auto polish = [&](Complex seed) {
    auto r = newton_exp_linear(Complex{1.0, 0.0}, seed, cfg);
    if (!r) return;
    if (!band.contains(*r)) return;
    if (std::abs(f_exp_linear(Complex{1.0, 0.0}, *r)) > cfg.root_residual_tol)
      return;
    roots.push_back(*r);
  };

  for (double x = band.re_min; x < band.re_max; x += 1.0) {
    for (double y = band.im_min; y < band.im_max; y += 1.0) {
      Rectangle cell{x, std::min(x + 1.0, band.re_max), y,
                     std::min(y + 1.0, band.im_max)};
      Complex center{0.5 * (cell.re_min + cell.re_max),
                     0.5 * (cell.im_min + cell.im_max)};
      double hw = 0.25 * cell.width(), hh = 0.25 * cell.height();
      try {
        ZeroCensus c = winding_zero_count(Complex{1.0, 0.0}, cell, cfg);
        if (c.count == 0) continue;
        polish(center);
        if (c.count > 1 || roots.empty()) {
          polish(center + Complex{hw, hh});
          polish(center + Complex{-hw, hh});
          polish(center + Complex{hw, -hh});
          polish(center + Complex{-hw, -hh});
        }
      } catch (const BoundaryTooClose&) {
        polish(center);
        polish(center + Complex{hw, hh});
        polish(center + Complex{-hw, hh});
        polish(center + Complex{hw, -hh});
        polish(center + Complex{-hw, -hh});
      }
    }
  }

  sort_dedup(roots, cfg.root_separation);
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    double ia = std::abs(a.imag()), ib = std::abs(b.imag());
    if (ia != ib) return ia < ib;
    if (a.imag() != b.imag()) return a.imag() < b.imag();
    return a.real() < b.real();
  });

  if (static_cast<long>(roots.size()) != total.count)
    throw CensusMismatch("u_set_search: census counted " +
                             std::to_string(total.count) +
                             " zeros but Newton polished " +
                             std::to_string(roots.size()),
                         total.count, static_cast<long>(roots.size()));

  return USetResult{std::move(roots), total.count, band};
}

std::vector<Complex> solve_u_set(long count, const Rectangle& band,
                                 const Config& cfg) {
  if (count < 1) throw ConfigError("solve_u_set: count must be >= 1");
  auto result = u_set_search(band, cfg);
  if (static_cast<long>(result.roots.size()) > count)
    result.roots.resize(static_cast<std::size_t>(count));
  return result.roots;
}

std::vector<CompanionPair> companions(Complex u, const Rectangle& band,
                                      double grid_step, const Config& cfg) {
  if (!band.valid()) throw ConfigError("companions: degenerate band");
  if (grid_step <= 0) throw ConfigError("companions: grid step must be positive");
  if (std::abs(u) < cfg.root_separation)
    throw ConfigError("companions: u must be nonzero");
  Complex level = phi_scalar(u);
  if (std::abs(level) <= cfg.companion_residual_tol)
    throw ConfigError("companions: phi(u) vanishes; no level set to search");

  std::vector<Complex> hits;
  for (double x = band.re_min + 0.5 * grid_step; x < band.re_max;
       x += grid_step) {
    for (double y = band.im_min + 0.5 * grid_step; y < band.im_max;
         y += grid_step) {
      auto r = newton_exp_linear(level, Complex{x, y}, cfg);
      if (!r) continue;
      Complex v = *r;
      if (!band.contains(v)) continue;
      if (std::abs(v) < cfg.root_separation) continue;       // trivial zero of g
      if (std::abs(v - u) < cfg.root_separation) continue;   // u itself
      if (std::abs(phi_scalar(v) - level) > cfg.companion_residual_tol)
        continue;
      hits.push_back(v);
    }
  }
  sort_dedup(hits, cfg.root_separation);

  std::vector<CompanionPair> pairs;
  pairs.reserve(hits.size());
  for (Complex v : hits)
    pairs.push_back(CompanionPair{u, v, level, std::abs(phi_scalar(v) - level)});
  return pairs;
}

Prop2Window verify_prop2_window(Complex u, const Config& cfg) {
  if (std::abs(u) < 0.5)
    throw ConfigError("verify_prop2_window: |u| < 0.5 (near-confluent with the "
                      "zero at the origin)");
  if (std::abs(u.imag()) >= kTwoPi)
    throw ConfigError("verify_prop2_window: |Im u| must be < 2pi");

  Complex lambda = phi_scalar(u);
  double r = std::max(10.0, std::abs(u.real()) + 5.0);

  Config window_cfg = cfg;
  window_cfg.boundary_floor = cfg.window_clearance;

  // The proof picks a in ]0, 2pi[ with Im u inside ]-a, 2pi - a[ and no zero
  // of f on the horizontal edges; scan a grid of offsets and accept the first
  // window whose boundary clears the floor.
  for (int j = 1; j < 40; ++j) {
    double a = kTwoPi * double(j) / 40.0;
    if (!(u.imag() > -a && u.imag() < kTwoPi - a)) continue;
    Rectangle rect{-r, r, -a, kTwoPi - a};
    try {
      ZeroCensus census = winding_zero_count(lambda, rect, window_cfg);
      return Prop2Window{u,     lambda, rect, a, r, census,
                         census.count == 2};
    } catch (const BoundaryTooClose&) {
      continue;
    }
  }
  throw NoValidWindow(
      "verify_prop2_window: every candidate offset hit a boundary zero");
}

}  // namespace matlog
