#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace ericksen {

/// Nodal coefficients of a P1 scalar field, one entry per vertex.
using ScalarField = Eigen::VectorXd;

/// Nodal coefficients of a P1 vector field: row z holds the d components at vertex z.
/// Column-major storage keeps each component contiguous, so a scalar operator
/// applied componentwise is a single sparse * dense product.
using VectorField = Eigen::MatrixXd;

/// Symmetric sparse operator in compressed-row storage.
using CsrMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor, int>;

using CellArray = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace ericksen
