#include "sgx/decimation.hpp"

#include <cmath>

#include "sgx/errors.hpp"

namespace sgx {

namespace {
constexpr double kGuard = 1e-12;

bool near(double x, double v) { return std::abs(x - v) <= kGuard * std::max(1.0, std::abs(v)); }
}  // namespace

double phi_forward(double x) { return x * (5.0 - x); }

double phi_branch(int sign, double x) {
    if (x > 6.25) throw DomainError("phi_branch: x > 25/4");
    if (sign != 1 && sign != -1) throw DomainError("phi_branch: sign must be +-1");
    double r = std::sqrt(25.0 - 4.0 * x);
    if (sign < 0) {
        // stable form of (5 - r)/2 for small x
        return 2.0 * x / (5.0 + r);
    }
    return 0.5 * (5.0 + r);
}

double psi(double x, double tol, int max_iter) {
    if (!(x < 6.25)) throw DomainError("psi: x >= 25/4");
    if (x == 0.0) return 0.0;
    double y = x;
    double scale = 1.0;
    double v = 1.5 * x;
    for (int m = 1; m <= max_iter; ++m) {
        y = phi_branch(-1, y);
        scale *= 5.0;
        double nv = 1.5 * scale * y;
        if (std::abs(nv - v) < tol * (1.0 + std::abs(nv))) return nv;
        v = nv;
    }
    throw NoConvergence("psi: iteration cap reached");
}

double psi_inverse(double y, double tol) {
    if (y < 0) throw DomainError("psi_inverse: y < 0");
    if (y == 0.0) return 0.0;
    double lo = 0.0, hi = 6.25 - 1e-12;
    if (psi(hi) < y) throw DomainError("psi_inverse: y beyond bracket");
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        if (psi(mid) < y)
            lo = mid;
        else
            hi = mid;
    }
    double x = 0.5 * (lo + hi);
    (void)tol;
    return x;
}

BranchWord::BranchWord(std::vector<int> signs) : signs_(std::move(signs)) {
    for (int s : signs_)
        if (s != 1 && s != -1) throw DomainError("BranchWord: entries must be +-1");
    if (!signs_.empty() && signs_.back() != 1) throw DomainError("BranchWord: last entry must be +1");
}

BranchWord BranchWord::parse(const std::string& s) {
    std::vector<int> v;
    if (s == "none" || s == "empty") return BranchWord();
    for (char c : s) {
        if (c == '+')
            v.push_back(1);
        else if (c == '-')
            v.push_back(-1);
        else if (c == ' ' || c == ',')
            continue;
        else
            throw DomainError("BranchWord: bad symbol '" + std::string(1, c) + "'");
    }
    return BranchWord(std::move(v));
}

BranchWord BranchWord::suffix(std::size_t from) const {
    BranchWord b;
    if (from < signs_.size()) b.signs_.assign(signs_.begin() + static_cast<long>(from), signs_.end());
    return b;
}

std::string BranchWord::str() const {
    std::string s;
    for (int v : signs_) s.push_back(v > 0 ? '+' : '-');
    return s;
}

double phi_word(const BranchWord& eps, double x) {
    for (int s : eps.signs()) x = phi_branch(s, x);
    return x;
}

double big_psi(int m, const BranchWord& eps, double x) {
    double y = phi_word(eps, x);
    return std::pow(5.0, m + static_cast<int>(eps.size())) * psi(y);
}

std::string series_name(Series s) {
    switch (s) {
        case Series::D2: return "D2";
        case Series::D5: return "D5";
        case Series::D6: return "D6";
        case Series::N0: return "N0";
        case Series::N5: return "N5";
        case Series::N6: return "N6";
        case Series::N6p: return "N6p";
        case Series::Generic: return "Generic";
    }
    return "Generic";
}

Series parse_series(const std::string& s) {
    for (Series v : {Series::D2, Series::D5, Series::D6, Series::N0, Series::N5, Series::N6, Series::N6p, Series::Generic})
        if (series_name(v) == s) return v;
    if (s == "N6'") return Series::N6p;
    throw DomainError("unknown series: " + s);
}

DecimationPath::DecimationPath(int m0_, double lb, BranchWord e, Series s)
    : m0(m0_), lambda_birth(lb), eps(std::move(e)), series(s) {
    if (m0 < 0) throw DomainError("DecimationPath: m0 < 0");
    if (lb < 0 || lb > 6.25) throw DomainError("DecimationPath: lambda_birth outside [0, 25/4]");
    // validates forbidden values up to the settle level (+1 for the first phi_{-1})
    (void)sequence(settle_level() + 1);
}

int DecimationPath::forced() const { return near(lambda_birth, 6.0) ? 1 : 0; }

std::vector<double> DecimationPath::sequence(int m_max) const {
    if (m_max < m0) throw DomainError("lambda_sequence: m_max < m0");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(m_max - m0 + 1));
    double x = lambda_birth;
    out.push_back(x);
    const int f = forced();
    for (int m = m0; m < m_max; ++m) {
        int k = m - m0;  // steps taken so far
        double nx;
        if (k < f)
            nx = 3.0;
        else if (static_cast<std::size_t>(k - f) < eps.size())
            nx = phi_branch(eps[static_cast<std::size_t>(k - f)], x);
        else
            nx = phi_branch(-1, x);
        if (near(nx, 2.0) || near(nx, 5.0) || near(nx, 6.0))
            throw ForbiddenValue("lambda_sequence: lambda_" + std::to_string(m + 1) + " = " + std::to_string(nx));
        x = nx;
        out.push_back(x);
    }
    return out;
}

double DecimationPath::lambda_at(int m) const { return sequence(m).back(); }

double DecimationPath::eigenvalue() const {
    if (lambda_birth == 0.0) return 0.0;
    const int f = forced();
    double x = f ? 3.0 : lambda_birth;
    return big_psi(m0 + f, eps, x);
}

std::vector<double> lambda_sequence(const DecimationPath& path, int m_max) { return path.sequence(m_max); }

const SpectralConstants& constants() {
    static const SpectralConstants c = [] {
        SpectralConstants k{};
        k.d_S = std::log(9.0) / std::log(5.0);
        k.gamma = 1.0 / std::sqrt(5.0);
        k.psi2 = psi(2.0);
        k.psi3 = psi(3.0);
        k.psi5 = psi(5.0);
        k.lambda1_D = 5.0 * k.psi2;
        k.lambda2_N = 5.0 * k.psi3;
        return k;
    }();
    return c;
}

}  // namespace sgx
