#include "sgx/eigenfunction.hpp"

#include <cmath>

#include "sgx/errors.hpp"

namespace sgx {

double ValueGrid::sup_norm() const {
    double m = 0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

double ValueGrid::interior_residual() const {
    double worst = 0;
    const auto n = static_cast<std::int32_t>(values.size());
    for (std::int32_t p = 3; p < n; ++p) {
        const std::int32_t* nb = graph->neighbors(p);
        double lap = -4.0 * values[static_cast<std::size_t>(p)];
        for (int k = 0; k < 4; ++k) lap += values[static_cast<std::size_t>(nb[k])];
        worst = std::max(worst, std::abs(lap + lambda_M * values[static_cast<std::size_t>(p)]));
    }
    return worst;
}

EigenFn EigenFn::from_seed(std::vector<double> seed, DecimationPath path) {
    if (static_cast<std::int64_t>(seed.size()) != vertex_count(path.m0))
        throw DomainError("EigenFn: seed size does not match level " + std::to_string(path.m0));
    bool nonzero = false;
    for (double v : seed) nonzero = nonzero || v != 0.0;
    if (!nonzero) throw ZeroVector("EigenFn: zero seed");
    EigenFn f;
    f.lambda = path.eigenvalue();
    f.path = std::move(path);
    f.seed = std::move(seed);
    return f;
}

EigenFn EigenFn::from_boundary(const Triple& a, DecimationPath path) {
    if (path.m0 != 0) throw DomainError("EigenFn::from_boundary: path must start at level 0");
    return from_seed({a[0], a[1], a[2]}, std::move(path));
}

EigenFn EigenFn::small(double lambda, const Triple& a) {
    if (!(lambda > 0.0 && lambda < constants().lambda1_D)) throw DomainError("EigenFn::small: lambda outside (0, lambda_1^D)");
    return from_boundary(a, DecimationPath(0, psi_inverse(lambda), BranchWord(), Series::Generic));
}

EigenFn EigenFn::scaled(double k) const {
    EigenFn f = *this;
    for (double& v : f.seed) v *= k;
    return f;
}

ValueGrid extend_seed(const std::vector<double>& seed, int s, const std::vector<double>& lambdas, int M) {
    if (M < s) throw DomainError("extend: target level below seed level");
    ValueGrid g;
    g.graph = build_graph(M);
    g.values.assign(static_cast<std::size_t>(g.graph->size()), 0.0);
    std::copy(seed.begin(), seed.end(), g.values.begin());
    double* u = g.values.data();
    for (int k = s; k < M; ++k) {
        const double alpha = lambdas[static_cast<std::size_t>(k + 1 - s)];
        const double den = (2.0 - alpha) * (5.0 - alpha);
        if (std::abs(den) <= 1e-12) throw ForbiddenValue("extend: lambda_" + std::to_string(k + 1) + " in {2, 5}");
        const double p = (4.0 - alpha) / den, q = 2.0 / den;
        const auto& cells = g.graph->cells(k);
        const std::int64_t off = GasketGraph::offset(k + 1);
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const double u1 = u[cells[c][0]], u2 = u[cells[c][1]], u3 = u[cells[c][2]];
            double* mid = u + off + 3 * static_cast<std::int64_t>(c);
            mid[0] = p * (u2 + u3) + q * u1;
            mid[1] = p * (u3 + u1) + q * u2;
            mid[2] = p * (u1 + u2) + q * u3;
        }
    }
    g.lambda_M = lambdas[static_cast<std::size_t>(M - s)];
    return g;
}

ValueGrid extend(const EigenFn& fn, int M) {
    if (M < fn.path.m0) throw DomainError("extend: M below the seed level");
    return extend_seed(fn.seed, fn.path.m0, fn.path.sequence(M), M);
}

Triple cell_triple(const EigenFn& fn, const Word& w) {
    const int m0 = fn.path.m0;
    const int len = static_cast<int>(w.size());
    if (len <= m0) {
        const auto g = build_graph(m0);
        const auto& c = g->cell(w);
        return Triple(fn.seed[static_cast<std::size_t>(c[0])], fn.seed[static_cast<std::size_t>(c[1])],
                      fn.seed[static_cast<std::size_t>(c[2])]);
    }
    Triple a = cell_triple(fn, w.prefix(static_cast<std::size_t>(m0)));
    const auto seq = fn.path.sequence(len);
    for (int t = m0; t < len; ++t) a = transfer_matrix(seq[static_cast<std::size_t>(t + 1 - m0)], w[static_cast<std::size_t>(t)]) * a;
    return a;
}

EigenFn restrict_to_cell(const EigenFn& fn, const Word& w) {
    const int m0 = fn.path.m0;
    const int len = static_cast<int>(w.size());
    if (len == 0) return fn;
    if (len <= m0) {
        const int r = m0 - len;
        const auto gl = build_graph(r);
        const auto gs = build_graph(m0);
        std::vector<double> seed(static_cast<std::size_t>(gl->size()));
        for (std::int32_t v = 0; v < gl->size(); ++v)
            seed[static_cast<std::size_t>(v)] = fn.seed[static_cast<std::size_t>(gs->index_of(map_vertex(w, gl->vertex(v))))];
        return EigenFn::from_seed(std::move(seed), DecimationPath(r, fn.path.lambda_birth, fn.path.eps));
    }
    const int consumed = len - m0 - fn.path.forced();
    DecimationPath p(0, fn.path.lambda_at(len), fn.path.eps.suffix(static_cast<std::size_t>(std::max(consumed, 0))));
    const Triple a = cell_triple(fn, w);
    return EigenFn::from_seed({a[0], a[1], a[2]}, std::move(p));
}

double normal_derivative(const EigenFn& fn, int corner, double tol, int depth_cap) {
    if (corner < 1 || corner > 3) throw DomainError("normal_derivative: corner out of range");
    const int i = corner - 1, j = corner % 3, l = (corner + 1) % 3;
    const int m0 = fn.path.m0;
    const auto seq = fn.path.sequence(std::max(m0, depth_cap) + 1);
    double scale = 0;
    for (double v : fn.seed) scale = std::max(scale, std::abs(v));

    // differences from the corner value, carried without cancellation
    const Triple a0 = fn.a();
    const double corner_value = a0[i];
    Triple delta = a0.array() - corner_value;
    Word w;
    double t_prev = -delta[j] - delta[l];
    double d_prev = 0, est_prev = t_prev;
    double factor = 1.0;
    int quiet = 0;
    for (int k = 1; k <= depth_cap; ++k) {
        w = w + corner;
        if (k <= m0) {
            delta = cell_triple(fn, w).array() - corner_value;
        } else {
            const double beta = seq[static_cast<std::size_t>(k - m0)];
            Triple lift = Triple::Constant(beta / (2.0 - beta));
            lift[i] = 0;
            delta = transfer_matrix(beta, corner) * delta + corner_value * lift;
            delta[i] = 0;
        }
        factor *= 5.0 / 3.0;
        const double t = factor * (-delta[j] - delta[l]);
        const double d = t - t_prev;
        double est = t;
        if (k >= 2 && d_prev != 0.0) {
            const double r = d / d_prev;
            if (std::abs(r) < 0.9) est = t + d * r / (1.0 - r);
        }
        if (k > m0 + 1 && std::abs(est - est_prev) <= tol * (std::abs(est) + scale)) {
            if (++quiet >= 2) return est;
        } else {
            quiet = 0;
        }
        t_prev = t;
        d_prev = d;
        est_prev = est;
    }
    throw NoConvergence("normal_derivative: depth cap reached");
}

double discrete_energy(const ValueGrid& g) {
    double e = 0;
    for (const auto& c : g.graph->cells(g.level())) {
        const double a = g.values[static_cast<std::size_t>(c[0])], b = g.values[static_cast<std::size_t>(c[1])],
                     d = g.values[static_cast<std::size_t>(c[2])];
        e += (a - b) * (a - b) + (b - d) * (b - d) + (d - a) * (d - a);
    }
    return std::pow(5.0 / 3.0, g.level()) * e;
}

double quadrature_l2sq(const ValueGrid& g) {
    const double w = 1.0 / std::pow(3.0, g.level() + 1);
    double s = 0;
    for (std::size_t p = 0; p < g.values.size(); ++p) s += (p < 3 ? w : 2 * w) * g.values[p] * g.values[p];
    return s;
}

double gauss_green_residual(const EigenFn& fn, int M) {
    const ValueGrid g = extend(fn, M);
    double boundary = 0;
    const Triple a = fn.a();
    for (int i = 1; i <= 3; ++i)
        if (a[i - 1] != 0.0) boundary += a[i - 1] * normal_derivative(fn, i);
    return std::abs(discrete_energy(g) - boundary - fn.lambda * quadrature_l2sq(g));
}

EigenFn replicate_into_cells(const EigenFn& fn, int n, double tol) {
    const Triple a = fn.a();
    double scale = 0;
    for (double v : fn.seed) scale = std::max(scale, std::abs(v));
    if (a.cwiseAbs().maxCoeff() > tol * scale) throw DomainError("replicate_into_cells: boundary values must vanish");
    const int m0 = fn.path.m0;
    const auto g0 = build_graph(m0);
    const auto gN = build_graph(m0 + n);
    std::vector<double> seed(static_cast<std::size_t>(gN->size()), 0.0);
    const std::int64_t cells = pow3(n);
    for (std::int64_t c = 0; c < cells; ++c) {
        const Word w = Word::from_index(c, n);
        for (std::int32_t v = 0; v < g0->size(); ++v) {
            const auto idx = gN->index_of(map_vertex(w, g0->vertex(v)));
            if (v >= 3) seed[static_cast<std::size_t>(idx)] = fn.seed[static_cast<std::size_t>(v)];
        }
    }
    return EigenFn::from_seed(std::move(seed),
                              DecimationPath(m0 + n, fn.path.lambda_birth, fn.path.eps, fn.path.series));
}

}  // namespace sgx
