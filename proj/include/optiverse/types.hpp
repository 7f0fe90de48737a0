#pragma once

#include <Eigen/Core>

#include <complex>
#include <numbers>

namespace optiverse {

template <typename Scalar> using Vector2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar> using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar> using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;

using Vec2 = Vector2<double>;
using Vec3 = Vector3<double>;
using Mat3 = Matrix3<double>;
using VecX = Eigen::VectorXd;
using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

} // namespace optiverse
