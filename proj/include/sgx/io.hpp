#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "sgx/eigenfunction.hpp"
#include "sgx/extrema.hpp"
#include "sgx/oracle.hpp"

namespace sgx {

// First line `# {json}` carries level, lambda, path and seed; then `c1,c2,c3,value` per vertex of V_M.
void write_grid_csv(std::ostream& os, const ValueGrid& grid, const EigenFn& fn);

struct GridFile {
    ValueGrid grid;
    std::optional<EigenFn> fn;  // present when the header carries path and seed
};
GridFile read_grid_csv(std::istream& is);

std::string count_report_json(const CountReport& r, int indent = 2);
std::string region_json(double alpha, const Triple& a, const RegionClass& rc);

}  // namespace sgx
