#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sgx {

struct RunConfig {
    double psi_tol = 1e-13;
    double region_tol = 1e-9;
    double eig_tol = 1e-8;
    double tie_tol = 1e-12;
    int depth_cap = 64;
    int max_level = 12;
    std::uint64_t rng_seed = 20261016;
    std::string format = "csv";  // csv or json

    // key=value lines, '#' comments; unknown keys are an error
    void load(const std::string& path);
    void validate() const;
};

// exit codes: 0 success, 1 verification failure or runtime error, 2 usage error
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sgx
