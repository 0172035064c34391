#pragma once

#include <complex>

#include <Eigen/Dense>

namespace matlog {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Axis-aligned closed rectangle in the complex plane.
struct Rectangle {
  double re_min = 0.0;
  double re_max = 0.0;
  double im_min = 0.0;
  double im_max = 0.0;

  bool valid() const { return re_min < re_max && im_min < im_max; }
  double width() const { return re_max - re_min; }
  double height() const { return im_max - im_min; }

  bool contains(Complex z) const {
    return z.real() >= re_min && z.real() <= re_max && z.imag() >= im_min &&
           z.imag() <= im_max;
  }

  // Euclidean distance from the rectangle (as a solid set) to a point.
  double distance_to(Complex z) const {
    double dx = std::max({re_min - z.real(), 0.0, z.real() - re_max});
    double dy = std::max({im_min - z.imag(), 0.0, z.imag() - im_max});
    return std::hypot(dx, dy);
  }
};

inline double frob(const ComplexMatrix& a) { return a.norm(); }

}  // namespace matlog
