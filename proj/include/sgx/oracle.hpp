#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "sgx/gasket.hpp"

namespace sgx {

struct Cluster {
    double lambda = 0;
    int multiplicity = 0;
    Eigen::MatrixXd basis;  // columns are full V_m vectors (zero on V_0 for dirichlet)
};

// Neumann uses the mass-weighted problem L u = lambda M u, M = 1 inside and 1/2 on V_0;
// its basis is M-orthonormal. Dirichlet bases are orthonormal.
struct DiscreteSpectrum {
    int level = 0;
    BoundaryKind kind = BoundaryKind::Dirichlet;
    std::vector<Cluster> clusters;
    int dimension() const;
};

const DiscreteSpectrum& discrete_spectrum(int m, BoundaryKind kind);
Eigen::MatrixXd eigenspace(int m, BoundaryKind kind, double lambda_m, double tol = 1e-8);

struct PrelocalizedCluster {
    double lambda_m = 0;
    Eigen::MatrixXd basis;  // full V_m vectors vanishing on V_0
};
std::vector<PrelocalizedCluster> find_prelocalized(int m, double tol = 1e-8);

struct CrosscheckRow {
    double lambda_m = 0;
    int multiplicity = 0;
    int predicted = 0;
    bool match = false;
};
struct CrosscheckReport {
    int level = 0;
    BoundaryKind kind = BoundaryKind::Dirichlet;
    std::vector<CrosscheckRow> rows;
    double max_deviation = 0;
    bool ok = false;
    std::string csv() const;
};
// oracle multiset against the decimation prediction at level m
CrosscheckReport crosscheck_decimation(int m, BoundaryKind kind, double tol = 1e-9);

}  // namespace sgx
