#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sgx/decimation.hpp"
#include "sgx/gasket.hpp"

namespace sgx {

struct SpectrumEntry {
    double lambda = 0;
    Series series = Series::Generic;
    int m0 = 0;
    BranchWord eps;
    std::int64_t multiplicity = 0;

    DecimationPath path() const;
    // m + |eps| in Psi(m, eps, .)
    int total_level() const;
};

std::int64_t series_multiplicity(Series s, int m0);

std::vector<SpectrumEntry> enumerate_spectrum(BoundaryKind kind, double x_max);
std::int64_t counting_function(BoundaryKind kind, double x);
double weyl_ratio(BoundaryKind kind, double x);

std::string spectrum_csv(const std::vector<SpectrumEntry>& entries);
std::string weyl_csv(BoundaryKind kind, const std::vector<double>& xs);

// the finite-level multiset: every series born at or below level m, all branch prefixes alive at m
std::vector<std::pair<double, std::int64_t>> predicted_discrete_spectrum(BoundaryKind kind, int m);

struct ThetaPartition {
    double x = 1;
    std::vector<double> gammas;
    double d_S = 0;
    std::vector<Word> words;

    std::size_t size() const { return words.size(); }
    double gamma_of(const Word& w) const;
};

// Sum gamma_i^d = 1
double similarity_dimension(const std::vector<double>& gammas);
ThetaPartition theta_partition(double x, const std::vector<double>& gammas);
// trie check: every internal node has all children, leaves are exactly the words
bool is_prefix_free_cover(const ThetaPartition& t);

}  // namespace sgx
