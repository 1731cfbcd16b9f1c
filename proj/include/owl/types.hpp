#pragma once

#include <Eigen/Dense>

#include <cstdint>

namespace owl {

template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Index = Eigen::Index;
using IndexVector = Eigen::Matrix<Index, Eigen::Dynamic, 1>;
using SignVector = Eigen::Matrix<std::int8_t, Eigen::Dynamic, 1>;

} // namespace owl
