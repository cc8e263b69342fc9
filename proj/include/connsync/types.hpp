#pragma once

#include <Eigen/Dense>

namespace connsync {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

}  // namespace connsync
