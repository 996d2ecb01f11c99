#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

#include "fracrod/material.hpp"

namespace testing_support {

inline const fracrod::MaterialParams kReference{0.045, 0.5};

inline double rel_diff(std::complex<double> got, std::complex<double> want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

inline double rel_diff(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

} // namespace testing_support
