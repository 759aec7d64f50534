#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sgx {

// Phi(x) = x(5 - x)
double phi_forward(double x);

// inverse branches (5 -/+ sqrt(25 - 4x)) / 2, sign = -1 or +1
double phi_branch(int sign, double x);

// renormalized limit (3/2) lim 5^m phi_{-1}^m(x)
double psi(double x, double tol = 1e-13, int max_iter = 200);

// bisection inverse of psi on [0, 25/4)
double psi_inverse(double y, double tol = 1e-13);

class BranchWord {
public:
    BranchWord() = default;
    explicit BranchWord(std::vector<int> signs);
    static BranchWord parse(const std::string& s);  // "+-+", "" or "-" for empty

    std::size_t size() const { return signs_.size(); }
    bool empty() const { return signs_.empty(); }
    int operator[](std::size_t k) const { return signs_[k]; }
    const std::vector<int>& signs() const { return signs_; }
    BranchWord suffix(std::size_t from) const;
    std::string str() const;

    bool operator==(const BranchWord&) const = default;

private:
    std::vector<int> signs_;
};

// apply phi_{eps_1} first, phi_{eps_n} last
double phi_word(const BranchWord& eps, double x);

// Psi(m, eps, x) = 5^{m+|eps|} psi(phi_eps(x))
double big_psi(int m, const BranchWord& eps, double x);

enum class Series { D2, D5, D6, N0, N5, N6, N6p, Generic };
std::string series_name(Series s);
Series parse_series(const std::string& s);

struct DecimationPath {
    int m0 = 0;
    double lambda_birth = 0.0;
    BranchWord eps;
    Series series = Series::Generic;

    DecimationPath() = default;
    DecimationPath(int m0, double lambda_birth, BranchWord eps, Series series = Series::Generic);

    // birth value 6 forces lambda_{m0+1} = 3 before eps is applied
    int forced() const;
    // first level from which only phi_{-1} is applied
    int settle_level() const { return m0 + forced() + static_cast<int>(eps.size()); }
    std::vector<double> sequence(int m_max) const;  // (lambda_{m0}, ..., lambda_{m_max})
    double lambda_at(int m) const;
    double eigenvalue() const;
};

std::vector<double> lambda_sequence(const DecimationPath& path, int m_max);

struct SpectralConstants {
    double d_S;
    double gamma;
    double lambda1_D;
    double lambda2_N;
    double psi2, psi3, psi5;
};

const SpectralConstants& constants();

}  // namespace sgx
