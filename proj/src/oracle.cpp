#include "sgx/oracle.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "sgx/errors.hpp"
#include "sgx/spectrum.hpp"

namespace sgx {

namespace {

constexpr double kClusterGap = 1e-8;

DiscreteSpectrum solve(int m, BoundaryKind kind) {
    const auto g = build_graph(m);
    const Eigen::MatrixXd L = laplacian_matrix(*g, kind);
    const std::int64_t n = g->size();
    Eigen::VectorXd evals;
    Eigen::MatrixXd vecs;  // full V_m vectors
    if (kind == BoundaryKind::Dirichlet) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
        evals = es.eigenvalues();
        vecs = Eigen::MatrixXd::Zero(n, L.rows());
        vecs.bottomRows(n - 3) = es.eigenvectors();
    } else {
        const Eigen::VectorXd w = neumann_mass(*g).cwiseSqrt().cwiseInverse();
        const Eigen::MatrixXd S = w.asDiagonal() * L * w.asDiagonal();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
        evals = es.eigenvalues();
        vecs = w.asDiagonal() * es.eigenvectors();
    }
    DiscreteSpectrum ds;
    ds.level = m;
    ds.kind = kind;
    std::int64_t start = 0;
    for (std::int64_t k = 1; k <= evals.size(); ++k) {
        if (k == evals.size() || evals[k] - evals[k - 1] > kClusterGap) {
            Cluster c;
            c.multiplicity = static_cast<int>(k - start);
            c.lambda = evals.segment(start, k - start).mean();
            c.basis = vecs.middleCols(start, k - start);
            ds.clusters.push_back(std::move(c));
            start = k;
        }
    }
    return ds;
}

}  // namespace

int DiscreteSpectrum::dimension() const {
    int d = 0;
    for (const auto& c : clusters) d += c.multiplicity;
    return d;
}

const DiscreteSpectrum& discrete_spectrum(int m, BoundaryKind kind) {
    if (m < 0) throw DomainError("discrete_spectrum: negative level");
    if (m > 5) throw LevelTooLarge("discrete_spectrum: dense oracle limited to level 5");
    static std::mutex mu;
    static std::map<std::pair<int, int>, DiscreteSpectrum> cache;
    std::lock_guard<std::mutex> lock(mu);
    const auto key = std::make_pair(m, static_cast<int>(kind));
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, solve(m, kind)).first;
    return it->second;
}

Eigen::MatrixXd eigenspace(int m, BoundaryKind kind, double lambda_m, double tol) {
    for (const auto& c : discrete_spectrum(m, kind).clusters)
        if (std::abs(c.lambda - lambda_m) <= tol) return c.basis;
    std::ostringstream os;
    os << "eigenspace: no " << kind_name(kind) << " cluster at " << lambda_m << " on level " << m;
    throw NoSuchEigenvalue(os.str());
}

std::vector<PrelocalizedCluster> find_prelocalized(int m, double tol) {
    std::vector<PrelocalizedCluster> out;
    const auto& dir = discrete_spectrum(m, BoundaryKind::Dirichlet);
    const auto& neu = discrete_spectrum(m, BoundaryKind::Neumann);
    for (const auto& dc : dir.clusters) {
        for (const auto& nc : neu.clusters) {
            if (std::abs(dc.lambda - nc.lambda) > tol) continue;
            const Eigen::MatrixXd B = nc.basis.topRows(3);
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(B, Eigen::ComputeFullV);
            const auto& sv = svd.singularValues();
            int rank = 0;
            for (int k = 0; k < sv.size(); ++k)
                if (sv[k] > tol) ++rank;
            const int null_dim = static_cast<int>(nc.basis.cols()) - rank;
            if (null_dim <= 0) continue;
            Eigen::MatrixXd U = nc.basis * svd.matrixV().rightCols(null_dim);
            // keep the part inside the dirichlet eigenspace
            const Eigen::MatrixXd& D = dc.basis;
            const Eigen::MatrixXd R = U - D * (D.transpose() * U);
            if (R.norm() > tol * std::max(1.0, U.norm())) continue;
            Eigen::HouseholderQR<Eigen::MatrixXd> qr(U);
            Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(U.rows(), null_dim);
            Q.topRows(3).setZero();
            out.push_back({dc.lambda, Q});
        }
    }
    return out;
}

std::string CrosscheckReport::csv() const {
    std::ostringstream os;
    os.precision(12);
    os << "level,kind,lambda_m,multiplicity,predicted_multiplicity,match\n";
    for (const auto& r : rows)
        os << level << ',' << kind_name(kind) << ',' << r.lambda_m << ',' << r.multiplicity << ',' << r.predicted << ','
           << (r.match ? "true" : "false") << '\n';
    return os.str();
}

CrosscheckReport crosscheck_decimation(int m, BoundaryKind kind, double tol) {
    CrosscheckReport rep;
    rep.level = m;
    rep.kind = kind;
    std::vector<std::pair<double, std::int64_t>> pred;
    for (const auto& [v, k] : predicted_discrete_spectrum(kind, m)) {
        bool merged = false;
        for (auto& p : pred)
            if (std::abs(p.first - v) <= tol) {
                p.second += k;
                merged = true;
            }
        if (!merged) pred.emplace_back(v, k);
    }
    std::vector<bool> used(pred.size(), false);
    bool ok = true;
    for (const auto& c : discrete_spectrum(m, kind).clusters) {
        CrosscheckRow row{c.lambda, c.multiplicity, 0, false};
        for (std::size_t t = 0; t < pred.size(); ++t) {
            if (used[t] || std::abs(pred[t].first - c.lambda) > tol) continue;
            used[t] = true;
            row.predicted = static_cast<int>(pred[t].second);
            row.match = row.predicted == row.multiplicity;
            rep.max_deviation = std::max(rep.max_deviation, std::abs(pred[t].first - c.lambda));
            break;
        }
        ok = ok && row.match;
        rep.rows.push_back(row);
    }
    for (std::size_t t = 0; t < pred.size(); ++t)
        if (!used[t]) {
            rep.rows.push_back({pred[t].first, 0, static_cast<int>(pred[t].second), false});
            ok = false;
        }
    rep.ok = ok;
    return rep;
}

}  // namespace sgx
