#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sgx/eigenfunction.hpp"
#include "sgx/regions.hpp"

namespace sgx {

enum class ExtremeKind { Max, Min };
enum class LocusType { Vertex, CellTriangle, CellLimit, Plateau };
std::string kind_name(ExtremeKind k);
std::string locus_name(LocusType t);

struct ExtremeSet {
    ExtremeKind kind = ExtremeKind::Max;
    LocusType locus = LocusType::Vertex;
    Word word;                      // CellTriangle / CellLimit
    VertexId vertex;                // Vertex, or a representative for Plateau
    std::vector<VertexId> members;  // Plateau only
    double value = 0;
    double lo = 0, hi = 0;  // equal to value except for CellLimit

    std::string where() const;
};

enum class CountMethod { Exact, Discrete };
enum class AmbiguityPolicy { Fallback, Resolve, Strict };

struct CountReport {
    std::int64_t count = 0;
    std::vector<ExtremeSet> sets;
    CountMethod method = CountMethod::Exact;
    int level_used = 0;
    std::vector<std::string> flags;
    // exact method only: sets strictly inside level-n cells and sets meeting V_n \ V_0
    std::int64_t cell_sets = 0;
    std::int64_t vertex_sets = 0;

    bool has_flag(const std::string& f) const;
    bool ambiguous() const { return has_flag("near_boundary"); }
};

struct CountOptions {
    int depth_cap = 64;
    double region_tol = 1e-9;
    double snap_tol = 1e-11;
    double tie_tol = 1e-12;
    AmbiguityPolicy policy = AmbiguityPolicy::Fallback;
    int fallback_extra = 8;
};

// level at which every cell restriction has eigenvalue below lambda_1^D and is past its last branch symbol
int analysis_level(const EigenFn& fn);

// lambda in (0, lambda_1^D): the extreme set not meeting V_0, if any
std::optional<ExtremeSet> locate_small_lambda(const EigenFn& fn, const CountOptions& opt = {});

struct VertexVerdict {
    bool extreme = false;
    ExtremeKind kind = ExtremeKind::Max;
    LocusType locus = LocusType::Vertex;
    bool near_boundary = false;
};
// is F_w p_ij (pair code k) part of an extreme set; |w| < analysis_level(fn)
VertexVerdict vertex_is_extreme(const EigenFn& fn, const Word& w, int pair, const CountOptions& opt = {});

CountReport count_exact(const EigenFn& fn, const CountOptions& opt = {});
CountReport count_discrete(const ValueGrid& grid, double tie_tol = 1e-12);

}  // namespace sgx
