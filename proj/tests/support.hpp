#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

#include "gschw/error.hpp"
#include "gschw/sl2.hpp"

namespace testing {

inline double rel(double x, double y) { return std::abs(x - y) / std::max({1.0, std::abs(x), std::abs(y)}); }

inline double mat_diff(const gschw::Matrix& x, const gschw::Matrix& y) {
  return std::max({std::abs(x.a - y.a), std::abs(x.b - y.b), std::abs(x.c - y.c), std::abs(x.d - y.d)});
}

template <class F>
std::optional<gschw::ErrorKind> thrown_kind(F&& f) {
  try {
    f();
  } catch (const gschw::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

}  // namespace testing
