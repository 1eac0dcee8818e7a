#pragma once

#include <Eigen/Core>

namespace wordsimplex {

// Point clouds are stored one word per row.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

}  // namespace wordsimplex
