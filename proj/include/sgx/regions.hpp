#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sgx/projective.hpp"

namespace sgx {

enum class RegionKind { Outside, Theta, SegmentL, SubTriangleG, VertexZeta, EdgeI, BoundaryOther };

// Pairs ij are encoded by the complementary symbol k: 23 -> 1, 31 -> 2, 12 -> 3.
std::string pair_name(int k);
int parse_pair(const std::string& ij);

struct RegionClass {
    RegionKind kind = RegionKind::Outside;
    int index = 0;  // i for SubTriangleG/EdgeI, pair code k for SegmentL/VertexZeta
    // common sign of the non-vanishing corner forms (proportional to the normal derivatives);
    // +1 means the set found is a minimum, -1 a maximum
    int slope_sign = 0;
    bool near_boundary = false;  // a D-membership or zero-derivative decision fell inside the tolerance band
    bool near_median = false;    // a theta/L/G decision fell inside the tolerance band

    bool in_D() const {
        return kind == RegionKind::Theta || kind == RegionKind::SegmentL || kind == RegionKind::SubTriangleG;
    }
    bool on_boundary() const { return kind == RegionKind::EdgeI || kind == RegionKind::VertexZeta; }
    std::string name() const;
};

struct ClassifyTolerance {
    double region = 1e-9;
    double snap = 1e-11;
};

// region of tau(u) for a boundary triple, alpha in (0, 6)
RegionClass classify_triple(double alpha, const Triple& a, ClassifyTolerance tol = {});
RegionClass classify(double alpha, const RP2Point& p, double tol = 1e-9);

// triangle vertex zeta_{alpha,ij}
RP2Point zeta(double alpha, int k);

bool in_M(double lambda0, double lambda1, int k, const RP2Point& p);
bool preimage_classify(double alpha, int i, const RP2Point& p);

struct CoverageReport {
    double alpha = 0;
    std::int64_t samples = 0;
    std::int64_t in_preimage = 0;
    std::int64_t on_edge_clause = 0;
    std::int64_t theta = 0;
    std::int64_t uncovered = 0;
};
CoverageReport covering_check(double alpha, std::int64_t samples, std::uint64_t seed);
// membership in the edge clause of the covering: P^i(p) in I_j or P^j(p) in I_i for some pair
bool covered_by_edge_clause(double alpha, const RP2Point& p, double tol = 1e-9);

// CSV `alpha,region,x,y` with closed polylines of D, its medians and the preimage triangles
std::string region_polylines_csv(const std::vector<double>& alphas);

}  // namespace sgx
