#include "sgx/projective.hpp"

#include <cmath>
#include <sstream>

#include "sgx/errors.hpp"

namespace sgx {

namespace {
const double kS3 = std::sqrt(3.0);

Eigen::Matrix<double, 2, 3> Qt() {
    Eigen::Matrix<double, 2, 3> q;
    q << 0.0, -kS3 / 2.0, kS3 / 2.0, 1.0, -0.5, -0.5;
    return q;
}

Eigen::Matrix2d G() {
    Eigen::Matrix2d g;
    g << -0.5, -kS3 / 2.0, kS3 / 2.0, -0.5;
    return g;
}

Eigen::Vector2d normalize_dir(Eigen::Vector2d d) {
    double n = d.norm();
    if (n == 0) throw ZeroVector("RP2Point: zero direction");
    d /= n;
    if (d[0] < 0 || (d[0] == 0 && d[1] < 0)) d = -d;
    return d;
}
}  // namespace

RP2Point RP2Point::affine(double x, double y) {
    RP2Point p;
    p.v = {x, y};
    return p;
}

RP2Point RP2Point::at_infinity(double dx, double dy) {
    RP2Point p;
    p.infinite = true;
    p.v = normalize_dir({dx, dy});
    return p;
}

bool RP2Point::approx(const RP2Point& o, double tol) const {
    if (infinite != o.infinite) return false;
    if (!infinite) return (v - o.v).norm() <= tol * (1.0 + v.norm());
    return std::min((v - o.v).norm(), (v + o.v).norm()) <= tol;
}

std::string RP2Point::str() const {
    std::ostringstream os;
    os.precision(12);
    if (infinite)
        os << "[" << v[0] << ", " << v[1] << "]_inf";
    else
        os << "(" << v[0] << ", " << v[1] << ")";
    return os.str();
}

RP2Point project(const Triple& x) {
    const double n1 = x.lpNorm<1>();
    if (n1 == 0) throw ZeroVector("project: zero vector");
    const double s = x.sum();
    Eigen::Vector2d q = Qt() * x;
    if (std::abs(s) <= 1e-12 * n1) return RP2Point::at_infinity(q[0], q[1]);
    return RP2Point::affine(q[0] / s, q[1] / s);
}

Triple lift(const RP2Point& p) {
    // rows of (1, Q)^t are orthogonal with squared norms 3, 3/2, 3/2
    const double t = p.infinite ? 0.0 : 1.0;
    const auto q = Qt();
    Triple x = Triple::Constant(t / 3.0);
    x += (2.0 / 3.0) * (p.v[0] * q.row(0).transpose() + p.v[1] * q.row(1).transpose());
    return x;
}

Eigen::Matrix3d cyclic_J() {
    Eigen::Matrix3d J;
    J << 0, 0, 1, 1, 0, 0, 0, 1, 0;
    return J;
}

void check_alpha(double alpha) {
    for (double f : {2.0, 5.0, 6.0})
        if (std::abs(alpha - f) <= 1e-12) throw ForbiddenAlpha("transfer parameter " + std::to_string(alpha) + " is forbidden");
}

Eigen::Matrix3d transfer_matrix(double alpha, int i) {
    check_alpha(alpha);
    if (i < 1 || i > 3) throw DomainError("transfer_matrix: symbol out of range");
    const double d = (2.0 - alpha) * (5.0 - alpha);
    const double b = 4.0 - alpha;
    Eigen::Matrix3d P;
    P << d, 0, 0, b, b, 2, b, 2, b;
    P /= d;
    const Eigen::Matrix3d J = cyclic_J();
    if (i == 2) return J * P * J.transpose();
    if (i == 3) return J * J * P * J.transpose() * J.transpose();
    return P;
}

Triple apply_P(double alpha, int i, const Triple& x) { return transfer_matrix(alpha, i) * x; }

RP2Point rotate_J(const RP2Point& p, int k) {
    k = ((k % 3) + 3) % 3;
    RP2Point q = p;
    for (int t = 0; t < k; ++t) q.v = G() * q.v;
    if (q.infinite) q.v = normalize_dir(q.v);
    return q;
}

RP2Point apply_P_proj(double alpha, int i, const RP2Point& p) {
    check_alpha(alpha);
    if (i < 1 || i > 3) throw DomainError("apply_P_proj: symbol out of range");
    if (i != 1) return rotate_J(apply_P_proj(alpha, 1, rotate_J(p, -(i - 1))), i - 1);
    const double a = alpha;
    Eigen::Vector3d h(p.infinite ? 0.0 : 1.0, p.v[0], p.v[1]);
    Eigen::Vector3d c((5 - a) * (6 - a), 0.0, 2 * (2 - a) * (6 - a));
    Eigen::Matrix<double, 2, 3> R;
    R << 0.0, 3 * (2 - a), 0.0, -a * (5 - a), 0.0, (2 - a) * (9 - 2 * a);
    const double den = c.dot(h);
    const Eigen::Vector2d num = R * h;
    const double scale = std::abs(c[0] * h[0]) + std::abs(c[2] * h[2]);
    if (std::abs(den) <= 1e-12 * std::max(scale, num.norm())) return RP2Point::at_infinity(num[0], num[1]);
    return RP2Point::affine(num[0] / den, num[1] / den);
}

std::array<double, 3> transfer_eigenvalues(double alpha) {
    check_alpha(alpha);
    return {1.0, (6.0 - alpha) / ((2.0 - alpha) * (5.0 - alpha)), 1.0 / (5.0 - alpha)};
}

}  // namespace sgx
