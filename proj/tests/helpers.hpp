#pragma once

#include <functional>

#include <Eigen/Dense>

#include "conevol/errors.hpp"
#include "doctest.h"

inline conevol::ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const conevol::Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return conevol::ErrorCode::Internal;
}

inline Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}
