#include "sgx/regions.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "sgx/decimation.hpp"
#include "sgx/errors.hpp"

namespace sgx {

namespace {
const double kS3 = std::sqrt(3.0);
}

std::string pair_name(int k) {
    switch (k) {
        case 1: return "23";
        case 2: return "31";
        case 3: return "12";
    }
    throw DomainError("pair code out of range");
}

int parse_pair(const std::string& ij) {
    if (ij == "23" || ij == "32") return 1;
    if (ij == "31" || ij == "13") return 2;
    if (ij == "12" || ij == "21") return 3;
    throw DomainError("bad pair: " + ij);
}

std::string RegionClass::name() const {
    switch (kind) {
        case RegionKind::Outside: return "Outside";
        case RegionKind::Theta: return "Theta";
        case RegionKind::SegmentL: return "SegmentL(" + pair_name(index) + ")";
        case RegionKind::SubTriangleG: return "SubTriangleG(" + std::to_string(index) + ")";
        case RegionKind::VertexZeta: return "VertexZeta(" + pair_name(index) + ")";
        case RegionKind::EdgeI: return "EdgeI(" + std::to_string(index) + ")";
        case RegionKind::BoundaryOther: return "BoundaryOther";
    }
    return "?";
}

RegionClass classify_triple(double alpha, const Triple& a, ClassifyTolerance tol) {
    if (!(alpha > 0.0 && alpha < 6.0)) throw DomainError("classify: alpha outside (0, 6)");
    const double amax = a.cwiseAbs().maxCoeff();
    if (amax == 0.0) throw ZeroVector("classify: zero boundary triple");
    const Triple b = a / amax;
    const double s = b.sum();
    const Triple d = b.array() - s / 3.0;
    const double N = alpha * std::abs(s) / 3.0 + (6.0 - alpha) * d.cwiseAbs().maxCoeff();
    Triple z;
    for (int i = 0; i < 3; ++i) z[i] = ((4.0 - alpha) * b[i] - 2.0 * (b[(i + 1) % 3] + b[(i + 2) % 3])) / N;

    RegionClass r;
    int pos = 0, neg = 0, zeros = 0;
    bool fuzzy = false;
    for (int i = 0; i < 3; ++i) {
        if (z[i] > tol.region)
            ++pos;
        else if (z[i] < -tol.region)
            ++neg;
        else {
            ++zeros;
            if (std::abs(z[i]) > tol.snap) fuzzy = true;
        }
    }
    if (pos > 0 && neg > 0) return r;  // Outside
    r.slope_sign = pos > 0 ? 1 : (neg > 0 ? -1 : 0);
    r.near_boundary = fuzzy;
    if (zeros == 3) {
        r.kind = RegionKind::BoundaryOther;
        r.near_boundary = true;
        return r;
    }
    if (zeros == 2) {
        r.kind = RegionKind::VertexZeta;
        for (int i = 0; i < 3; ++i)
            if (std::abs(z[i]) > tol.region) r.index = i + 1;
        return r;
    }
    if (zeros == 1) {
        r.kind = RegionKind::EdgeI;
        for (int i = 0; i < 3; ++i)
            if (std::abs(z[i]) <= tol.region) r.index = i + 1;
        return r;
    }
    // open triangle: the median structure is read off the largest (sign-adjusted) coordinate
    const double sigma = s > 0 ? 1.0 : -1.0;
    Triple e = sigma * (6.0 - alpha) * d / N;
    int order[3] = {0, 1, 2};
    std::sort(order, order + 3, [&](int x, int y) { return e[x] > e[y]; });
    const double spread = e[order[0]] - e[order[2]];
    const double gap = e[order[0]] - e[order[1]];
    if (spread <= tol.region) {
        r.kind = RegionKind::Theta;
        r.near_median = spread > tol.snap;
    } else if (gap <= tol.region) {
        r.kind = RegionKind::SegmentL;
        r.index = order[2] + 1;
        r.near_median = gap > tol.snap;
    } else {
        r.kind = RegionKind::SubTriangleG;
        r.index = order[0] + 1;
    }
    return r;
}

RegionClass classify(double alpha, const RP2Point& p, double tol) {
    if (!(alpha > 0.0 && alpha < 6.0)) throw DomainError("classify: alpha outside (0, 6)");
    if (p.infinite) return RegionClass{};
    return classify_triple(alpha, lift(p), ClassifyTolerance{tol, std::min(tol, 1e-11)});
}

RP2Point zeta(double alpha, int k) {
    const double h = alpha / (2.0 * (6.0 - alpha));
    switch (k) {
        case 1: return RP2Point::affine(0.0, -2.0 * h);
        case 2: return RP2Point::affine(kS3 * h, h);
        case 3: return RP2Point::affine(-kS3 * h, h);
    }
    throw DomainError("zeta: pair code out of range");
}

bool in_M(double lambda0, double lambda1, int k, const RP2Point& p) {
    if (!(lambda1 > 0.0 && lambda1 < 2.0)) throw DomainError("in_M: lambda1 outside (0, 2)");
    if (std::abs(lambda0 - phi_forward(lambda1)) > 1e-10) throw DomainError("in_M: lambda0 != Phi(lambda1)");
    const RP2Point q = rotate_J(p, -(k - 1));
    if (q.infinite) return false;
    const double x = q.v[0], y = q.v[1];
    const double cap = (3.0 - lambda1) / (6.0 - lambda1) * lambda0 / (2.0 * (6.0 - lambda0));
    const double r = (5.0 - lambda1) / (3.0 - lambda1) * kS3;
    const double base = lambda0 / (6.0 - lambda0);
    return y < cap && y > -r * x - base && y > r * x - base;
}

bool preimage_classify(double alpha, int i, const RP2Point& p) {
    const RP2Point q = rotate_J(p, -(i - 1));
    const double x = q.v[0], y = q.v[1];
    if (alpha > 0.0 && alpha < 2.0) {
        if (q.infinite) return false;
        const double f = phi_forward(alpha);
        return f / (2.0 * (6.0 - f)) > y && y > std::abs(x) / kS3;
    }
    if (std::abs(alpha - 3.0) <= 1e-12) {
        if (q.infinite) return false;
        return y < -std::abs(x) / kS3;
    }
    if (alpha > 3.0 && alpha < 5.0) {
        if (q.infinite) return std::abs(y) > std::abs(x) / kS3;
        const double f = phi_forward(alpha);
        return (y > f / (2.0 * (6.0 - f)) && y > std::abs(x) / kS3) || y < -std::abs(x) / kS3;
    }
    throw DomainError("preimage_classify: alpha outside (0,2) u [3,5)");
}

bool covered_by_edge_clause(double alpha, const RP2Point& p, double tol) {
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) {
            if (i == j) continue;
            const RegionClass c = classify(alpha, apply_P_proj(alpha, i, p), tol);
            if (c.kind == RegionKind::EdgeI && c.index == j) return true;
        }
    return false;
}

CoverageReport covering_check(double alpha, std::int64_t samples, std::uint64_t seed) {
    if (!(alpha > 3.0 && alpha < 5.0)) throw DomainError("covering_check: alpha outside (3, 5)");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    CoverageReport rep;
    rep.alpha = alpha;
    for (std::int64_t t = 0; t < samples; ++t) {
        RP2Point p;
        if (unit(rng) < 0.9) {
            const double scale = std::exp(gauss(rng));
            p = RP2Point::affine(scale * gauss(rng), scale * gauss(rng));
        } else {
            p = RP2Point::at_infinity(gauss(rng), gauss(rng));
        }
        ++rep.samples;
        if (p.approx(RP2Point::theta(), 0.0)) {
            ++rep.theta;
            continue;
        }
        bool hit = false;
        for (int i = 1; i <= 3 && !hit; ++i) hit = classify(alpha, apply_P_proj(alpha, i, p)).in_D();
        if (hit) {
            ++rep.in_preimage;
            continue;
        }
        if (covered_by_edge_clause(alpha, p)) {
            ++rep.on_edge_clause;
            continue;
        }
        ++rep.uncovered;
        throw CoverageViolation("covering_check: uncovered point " + p.str() + " at alpha " + std::to_string(alpha));
    }
    return rep;
}

std::string region_polylines_csv(const std::vector<double>& alphas) {
    std::ostringstream os;
    os.precision(12);
    os << "alpha,region,x,y\n";
    auto emit = [&](double a, const std::string& name, const std::vector<RP2Point>& pts) {
        for (const auto& p : pts) os << a << ',' << name << ',' << p.v[0] << ',' << p.v[1] << '\n';
    };
    for (double a : alphas) {
        const RP2Point z23 = zeta(a, 1), z31 = zeta(a, 2), z12 = zeta(a, 3);
        emit(a, "D", {z23, z31, z12, z23});
        emit(a, "L23", {RP2Point::theta(), z23});
        emit(a, "L31", {RP2Point::theta(), z31});
        emit(a, "L12", {RP2Point::theta(), z12});
        if (a > 0.0 && a < 2.0) {
            const double f = phi_forward(a);
            for (int i = 1; i <= 3; ++i) {
                // preimage of D under P^i is G_{Phi(a),i}
                const RP2Point g1 = zeta(f, i % 3 + 1), g2 = zeta(f, (i + 1) % 3 + 1);
                emit(a, "pre" + std::to_string(i), {RP2Point::theta(), g1, g2, RP2Point::theta()});
            }
        }
    }
    return os.str();
}

}  // namespace sgx
