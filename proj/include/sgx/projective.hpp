#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>

namespace sgx {

using Triple = Eigen::Vector3d;

struct RP2Point {
    bool infinite = false;
    Eigen::Vector2d v = Eigen::Vector2d::Zero();  // affine coordinates, or unit direction

    static RP2Point affine(double x, double y);
    static RP2Point at_infinity(double dx, double dy);
    static RP2Point theta() { return affine(0.0, 0.0); }

    bool approx(const RP2Point& o, double tol = 1e-12) const;
    std::string str() const;
};

// pi: R^3 \ 0 -> RP^2
RP2Point project(const Triple& x);
// a representative of the preimage line
Triple lift(const RP2Point& p);

Eigen::Matrix3d cyclic_J();
Eigen::Matrix3d transfer_matrix(double alpha, int i);
Triple apply_P(double alpha, int i, const Triple& x);
RP2Point apply_P_proj(double alpha, int i, const RP2Point& p);
// rotation by 120 degrees, applied k times (k may be negative)
RP2Point rotate_J(const RP2Point& p, int k = 1);
// {1, (6-a)/((2-a)(5-a)), 1/(5-a)}
std::array<double, 3> transfer_eigenvalues(double alpha);

// forbidden transfer parameters
void check_alpha(double alpha);

}  // namespace sgx
