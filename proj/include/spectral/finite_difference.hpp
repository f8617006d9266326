#ifndef SPECTRAL_FINITE_DIFFERENCE_HPP
#define SPECTRAL_FINITE_DIFFERENCE_HPP

#include <array>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "spectral/error.hpp"

namespace spectral::fd {

struct Tap {
  int offset;
  double weight;
};

inline constexpr std::array<Tap, 2> kFirstOrder2{{{-1, -0.5}, {1, 0.5}}};
inline constexpr std::array<Tap, 4> kFirstOrder4{{{-2, 1.0 / 12}, {-1, -8.0 / 12}, {1, 8.0 / 12}, {2, -1.0 / 12}}};
inline constexpr std::array<Tap, 3> kSecondOrder2{{{-1, 1.0}, {0, -2.0}, {1, 1.0}}};
inline constexpr std::array<Tap, 5> kSecondOrder4{
    {{-2, -1.0 / 12}, {-1, 16.0 / 12}, {0, -30.0 / 12}, {1, 16.0 / 12}, {2, -1.0 / 12}}};

inline std::span<const Tap> first_stencil(int order) {
  if (order == 2) return kFirstOrder2;
  if (order == 4) return kFirstOrder4;
  throw Error(ErrorKind::InvalidData, "stencil order must be 2 or 4");
}

inline std::span<const Tap> second_stencil(int order) {
  if (order == 2) return kSecondOrder2;
  if (order == 4) return kSecondOrder4;
  throw Error(ErrorKind::InvalidData, "stencil order must be 2 or 4");
}

/// Weighted sum of f at o + tap.offset * e_axis, divided by h^power.
/// Works for any T with + and scalar * (double, Eigen vectors and matrices).
template <class Field, class Offset>
auto apply(const Field& f, const Offset& o, int axis, std::span<const Tap> taps, double h, int power) {
  using T = std::decay_t<decltype(f(o))>;
  Offset shifted = o;
  shifted[axis] += taps[0].offset;
  T acc = taps[0].weight * f(shifted);
  for (std::size_t k = 1; k < taps.size(); ++k) {
    shifted = o;
    shifted[axis] += taps[k].offset;
    acc = acc + taps[k].weight * f(shifted);
  }
  double denom = 1.0;
  for (int p = 0; p < power; ++p) denom *= h;
  return T(acc / denom);
}

template <class Field, class Offset>
auto d1(const Field& f, const Offset& o, int axis, double h, int order) {
  return apply(f, o, axis, first_stencil(order), h, 1);
}

template <class Field, class Offset>
auto d2(const Field& f, const Offset& o, int axis, double h, int order) {
  return apply(f, o, axis, second_stencil(order), h, 2);
}

/// Central difference of a scalar function of one real variable.
template <class F>
double derivative(const F& f, double x, double h, int order) {
  double acc = 0.0;
  for (const auto& t : first_stencil(order)) acc += t.weight * f(x + t.offset * h);
  return acc / h;
}

}  // namespace spectral::fd

#endif  // SPECTRAL_FINITE_DIFFERENCE_HPP
