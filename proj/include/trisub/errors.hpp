#pragma once

#include <stdexcept>
#include <string>

namespace trisub {

// Domain errors raised at API boundaries. Internal loops never throw.

struct PointDegenerate : std::domain_error {
  explicit PointDegenerate(const std::string& what) : std::domain_error(what) {}
};

struct DegenerateAngle : std::domain_error {
  explicit DegenerateAngle(const std::string& what) : std::domain_error(what) {}
};

struct DepthTooLarge : std::invalid_argument {
  explicit DepthTooLarge(const std::string& what) : std::invalid_argument(what) {}
};

struct FlatTrace : std::domain_error {
  explicit FlatTrace(const std::string& what) : std::domain_error(what) {}
};

struct SizeMismatch : std::invalid_argument {
  explicit SizeMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct ZeroPolynomial : std::invalid_argument {
  explicit ZeroPolynomial(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace trisub
