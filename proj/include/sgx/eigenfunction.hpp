#pragma once

#include <memory>
#include <vector>

#include "sgx/decimation.hpp"
#include "sgx/gasket.hpp"
#include "sgx/projective.hpp"

namespace sgx {

struct ValueGrid {
    std::shared_ptr<const GasketGraph> graph;
    std::vector<double> values;
    double lambda_M = 0.0;

    int level() const { return graph->level(); }
    double sup_norm() const;
    double at(const VertexId& v) const { return values[static_cast<std::size_t>(graph->index_of(v))]; }
    // max_p |(Delta_M v)(p) + lambda_M v(p)| over V_M \ V_0
    double interior_residual() const;
};

// An eigenfunction given by its values on V_{m0} (the seed) and its decimation path.
// For m0 = 0 the seed is the boundary triple.
struct EigenFn {
    DecimationPath path;
    std::vector<double> seed;
    double lambda = 0.0;

    static EigenFn from_seed(std::vector<double> seed, DecimationPath path);
    static EigenFn from_boundary(const Triple& a, DecimationPath path);
    // lambda in (0, lambda_1^D): lambda_0 = psi^{-1}(lambda), no branch symbols
    static EigenFn small(double lambda, const Triple& a);

    int seed_level() const { return path.m0; }
    Triple a() const { return Triple(seed[0], seed[1], seed[2]); }
    EigenFn scaled(double k) const;
};

ValueGrid extend(const EigenFn& fn, int M);
// grid of an arbitrary level-s seed extended along lambda_{s+1}, ..., lambda_M
ValueGrid extend_seed(const std::vector<double>& seed, int s, const std::vector<double>& lambdas, int M);

// values of u o F_w at V_0
Triple cell_triple(const EigenFn& fn, const Word& w);
EigenFn restrict_to_cell(const EigenFn& fn, const Word& w);

double normal_derivative(const EigenFn& fn, int corner, double tol = 1e-12, int depth_cap = 60);
double gauss_green_residual(const EigenFn& fn, int M);

// discrete energy (5/3)^M sum over edges and the boundary-weighted quadrature of u^2
double discrete_energy(const ValueGrid& g);
double quadrature_l2sq(const ValueGrid& g);

// sum over w in W_n of the zero extension of fn into cell w
EigenFn replicate_into_cells(const EigenFn& fn, int n, double tol = 1e-9);

}  // namespace sgx
