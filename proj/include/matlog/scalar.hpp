#pragma once

#include <vector>

#include "matlog/config.hpp"
#include "matlog/errors.hpp"
#include "matlog/scalar_fun.hpp"
#include "matlog/types.hpp"

namespace matlog {

// Integer zero count of f(z) = e^z - lambda z - 1 over a rectangle, from the
// winding number of f along the boundary.
struct ZeroCensus {
  Complex lambda;
  Rectangle rect;
  long count = 0;
  double boundary_min_abs = 0.0;  // smallest |f| sampled on the contour
  long segments = 0;              // boundary subdivisions used
};

// Distinct nonzero u, v with phi(u) = phi(v) != 0.
struct CompanionPair {
  Complex u;
  Complex v;
  Complex level;    // the common value phi(u) = phi(v)
  double residual;  // |phi(v) - phi(u)|
};

struct USetResult {
  std::vector<Complex> roots;  // sorted by |Im|, all inside the band
  long census_count = 0;
  Rectangle band;
};

struct Prop2Window {
  Complex u;
  Complex lambda;
  Rectangle rect;
  double offset_a = 0.0;  // the window is Im in ]-a, 2pi - a[
  double half_width_r = 0.0;
  ZeroCensus census;
  bool pass = false;  // census count == 2 (zeros 0 and u, nothing else)
};

ZeroCensus winding_zero_count(Complex lambda, const Rectangle& rect,
                              const Config& cfg = default_config());

// All roots of e^u = 1 + u inside the band (census-verified), sorted by |Im|.
USetResult u_set_search(const Rectangle& band,
                        const Config& cfg = default_config());

// First `count` of the above.
std::vector<Complex> solve_u_set(long count, const Rectangle& band,
                                 const Config& cfg = default_config());

std::vector<CompanionPair> companions(Complex u, const Rectangle& band,
                                      double grid_step = 0.5,
                                      const Config& cfg = default_config());

Prop2Window verify_prop2_window(Complex u,
                                const Config& cfg = default_config());

}  // namespace matlog
