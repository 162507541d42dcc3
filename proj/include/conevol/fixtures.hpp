#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "conevol/polytope.hpp"

// Normal matrices that recur in examples, tests and the CLI suite.
namespace conevol::fixtures {

/// (e_1, e_2, -e_1, -e_2)
NormalMatrix square();
/// (e_1..e_n, -e_1..-e_n)
NormalMatrix cube(int n);
/// Columns A and -A for an invertible n x n matrix A.
NormalMatrix parallelepiped(const Eigen::MatrixXd& a);
/// (e_2, (e_1+e_2)/sqrt2, -e_2, (-e_1+e_2)/sqrt2)
NormalMatrix trapezoid();
/// u_1 = e_2, u_2 = (-1,-a2)/l_2, u_3 = -e_2, u_4 = (1,a4)/l_4 with a4 > 0 > a2.
NormalMatrix trapezoid(double a2, double a4);
/// (e_1, -e_2, -e_1, e_2, (1,1)/sqrt2)
NormalMatrix pentagon();
/// (-e_1, -e_2, (1,1)/sqrt2)
NormalMatrix triangle();
/// (e_1..e_n, -(1,..,1)/sqrt n)
NormalMatrix simplex(int n);
/// Fixed matrices with every n columns independent; (n,m) in {(2,4),(3,5)}.
NormalMatrix general_position(int n, int m);

/// Uniformly random unit columns, redrawn until they positively span R^n.
NormalMatrix random_normals(int n, int m, std::mt19937_64& rng);

}  // namespace conevol::fixtures
