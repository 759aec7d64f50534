#include "sgx/extrema.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "sgx/errors.hpp"

namespace sgx {

namespace {

// below this the normalised triple no longer resolves the region predicates
constexpr double kPrecisionFloor = 1e-7;

double region_scale(double alpha, const Triple& a) {
    const Triple b = a / a.cwiseAbs().maxCoeff();
    const double s = b.sum();
    return alpha * std::abs(s) / 3.0 + (6.0 - alpha) * (b.array() - s / 3.0).abs().maxCoeff();
}

VertexId midpoint_of(const Word& w, int pair) {
    Bary b{1, 1, 1};
    b[static_cast<std::size_t>(pair - 1)] = 0;
    return map_vertex(w, VertexId{1, b});
}

ExtremeKind kind_of(int slope_sign) { return slope_sign > 0 ? ExtremeKind::Min : ExtremeKind::Max; }

void add_flag(std::vector<std::string>& flags, const std::string& f) {
    if (std::find(flags.begin(), flags.end(), f) == flags.end()) flags.push_back(f);
}

struct UnionFind {
    std::vector<std::int32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::int32_t find(std::int32_t x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(std::int32_t a, std::int32_t b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

// lambdas[k] = lambda_{base + k}
struct Ladder {
    int base = 0;
    std::vector<double> values;
    double at(int level) const { return values[static_cast<std::size_t>(level - base)]; }
};

Ladder ladder(const EigenFn& fn, int from, int to) {
    Ladder l;
    l.base = from;
    const auto seq = fn.path.sequence(to);
    l.values.assign(seq.begin() + (from - fn.path.m0), seq.end());
    return l;
}

// locator descent inside the cell w (at level |w|) whose triple lies in D
ExtremeSet descend(Triple a, Word w, RegionClass rc, const Ladder& lam, const CountOptions& opt,
                   std::vector<std::string>& flags) {
    ExtremeSet es;
    es.kind = kind_of(rc.slope_sign);
    const int start = static_cast<int>(w.size());
    auto cell_limit = [&](const char* why) {
        es.locus = LocusType::CellLimit;
        es.word = w;
        es.value = a.mean();
        es.lo = a.minCoeff();
        es.hi = a.maxCoeff();
        add_flag(flags, why);
        return es;
    };
    for (;;) {
        const int L = static_cast<int>(w.size());
        const double beta = lam.at(L + 1);
        if (rc.near_median) add_flag(flags, "near_median");
        switch (rc.kind) {
            case RegionKind::Theta:
                es.locus = LocusType::CellTriangle;
                es.word = w;
                es.value = es.lo = es.hi = 2.0 * a.mean() / (2.0 - beta);
                return es;
            case RegionKind::SegmentL: {
                const double den = (2.0 - beta) * (5.0 - beta);
                const int k = rc.index - 1;
                es.locus = LocusType::Vertex;
                es.vertex = midpoint_of(w, rc.index);
                es.value = es.lo = es.hi = ((4.0 - beta) * (a.sum() - a[k]) + 2.0 * a[k]) / den;
                return es;
            }
            case RegionKind::SubTriangleG: break;
            default: return cell_limit("drift");
        }
        if (L - start >= opt.depth_cap) return cell_limit("depth_cap");
        const Triple next = transfer_matrix(beta, rc.index) * a;
        if (region_scale(lam.at(L + 1), next) < kPrecisionFloor) return cell_limit("precision_cap");
        a = next;
        w = w + rc.index;
        rc = classify_triple(lam.at(L + 1), a, ClassifyTolerance{opt.region_tol, opt.snap_tol});
        if (!rc.in_D()) return cell_limit("drift");
    }
}

struct Analysis {
    int n = 0;
    Ladder lam;
    ValueGrid grid;
    std::vector<RegionClass> cls;  // per level-n cell; kind Outside for cells where u vanishes
    std::vector<bool> zero_cell;
    bool near_boundary = false;
};

Analysis analyse(const EigenFn& fn, const CountOptions& opt) {
    Analysis an;
    an.n = analysis_level(fn);
    an.lam = ladder(fn, an.n, an.n + opt.depth_cap + 2);
    an.grid = extend(fn, an.n);
    const double scale = an.grid.sup_norm();
    const auto& cells = an.grid.graph->cells(an.n);
    an.cls.resize(cells.size());
    an.zero_cell.assign(cells.size(), false);
    const double alpha = an.lam.at(an.n);
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const Triple a(an.grid.values[static_cast<std::size_t>(cells[c][0])], an.grid.values[static_cast<std::size_t>(cells[c][1])],
                       an.grid.values[static_cast<std::size_t>(cells[c][2])]);
        if (a.cwiseAbs().maxCoeff() <= 1e-12 * scale) {
            an.zero_cell[c] = true;
            continue;
        }
        an.cls[c] = classify_triple(alpha, a, ClassifyTolerance{opt.region_tol, opt.snap_tol});
        an.near_boundary = an.near_boundary || an.cls[c].near_boundary;
    }
    return an;
}

struct Component {
    std::vector<std::int32_t> vertices;
    bool ok = true;
    int sign = 0;
};

// extreme sets meeting V_n \ V_0, built from constant edges and zero-derivative corners
std::vector<Component> sweep(const Analysis& an) {
    const auto& g = *an.grid.graph;
    const auto& cells = g.cells(an.n);
    const auto nv = static_cast<std::size_t>(g.size());
    UnionFind uf(nv);
    std::vector<bool> bad(nv, false);
    std::vector<int> sign(nv, 0);
    std::vector<bool> touched(nv, false);
    auto note = [&](std::int32_t v, bool good, int s) {
        auto i = static_cast<std::size_t>(v);
        touched[i] = true;
        if (!good || s == 0) {
            bad[i] = true;
            return;
        }
        if (sign[i] == 0)
            sign[i] = s;
        else if (sign[i] != s)
            bad[i] = true;
    };
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const auto& rc = an.cls[c];
        for (int slot = 0; slot < 3; ++slot) {
            const std::int32_t v = cells[c][static_cast<std::size_t>(slot)];
            if (an.zero_cell[c]) {
                note(v, false, 0);
                continue;
            }
            const bool on_edge = rc.kind == RegionKind::VertexZeta && rc.index != slot + 1;
            const bool flat_corner = rc.kind == RegionKind::EdgeI && rc.index == slot + 1;
            note(v, on_edge || flat_corner, rc.slope_sign);
        }
        if (!an.zero_cell[c] && rc.kind == RegionKind::VertexZeta) {
            std::int32_t ends[2];
            int e = 0;
            for (int slot = 0; slot < 3; ++slot)
                if (slot + 1 != rc.index) ends[e++] = cells[c][static_cast<std::size_t>(slot)];
            uf.unite(ends[0], ends[1]);
        }
    }
    // only vertices reached by a constant edge or a flat corner can start a component
    std::vector<std::int32_t> root_slot(nv, -1);
    std::vector<Component> comps;
    for (std::int32_t v = 0; v < static_cast<std::int32_t>(nv); ++v) {
        const auto r = static_cast<std::size_t>(uf.find(v));
        if (root_slot[r] < 0) {
            root_slot[r] = static_cast<std::int32_t>(comps.size());
            comps.emplace_back();
        }
        auto& comp = comps[static_cast<std::size_t>(root_slot[r])];
        comp.vertices.push_back(v);
        const auto i = static_cast<std::size_t>(v);
        if (v < 3 || bad[i] || !touched[i]) {
            comp.ok = false;
            continue;
        }
        if (comp.sign == 0)
            comp.sign = sign[i];
        else if (comp.sign != sign[i])
            comp.ok = false;
    }
    std::vector<Component> out;
    for (auto& c : comps)
        if (c.ok && c.sign != 0) out.push_back(std::move(c));
    return out;
}

ExtremeSet component_set(const Analysis& an, const Component& comp) {
    const auto& g = *an.grid.graph;
    ExtremeSet es;
    es.kind = kind_of(comp.sign);
    es.value = es.lo = es.hi = an.grid.values[static_cast<std::size_t>(comp.vertices.front())];
    es.vertex = g.vertex(comp.vertices.front()).reduced();
    if (comp.vertices.size() == 1) {
        es.locus = LocusType::Vertex;
        return es;
    }
    // the boundary of the middle triangle of a coarser cell: three coarsest vertices are its midpoints
    int coarsest = an.n + 1;
    for (auto v : comp.vertices) coarsest = std::min(coarsest, g.creation_level(v));
    std::vector<std::int32_t> top;
    for (auto v : comp.vertices)
        if (g.creation_level(v) == coarsest) top.push_back(v);
    if (coarsest >= 1 && top.size() == 3) {
        std::sort(top.begin(), top.end());
        const std::int64_t rel = top[0] - GasketGraph::offset(coarsest);
        const bool same_cell = rel % 3 == 0 && top[1] == top[0] + 1 && top[2] == top[0] + 2;
        const auto expected = static_cast<std::size_t>(3 * (std::int64_t{1} << (an.n - coarsest)));
        if (same_cell && comp.vertices.size() == expected) {
            es.locus = LocusType::CellTriangle;
            es.word = Word::from_index(rel / 3, coarsest - 1);
            return es;
        }
    }
    es.locus = LocusType::Plateau;
    for (auto v : comp.vertices) es.members.push_back(g.vertex(v).reduced());
    return es;
}

}  // namespace

std::string kind_name(ExtremeKind k) { return k == ExtremeKind::Max ? "max" : "min"; }

std::string locus_name(LocusType t) {
    switch (t) {
        case LocusType::Vertex: return "vertex";
        case LocusType::CellTriangle: return "cell_triangle";
        case LocusType::CellLimit: return "cell_limit";
        case LocusType::Plateau: return "plateau";
    }
    return "?";
}

std::string ExtremeSet::where() const {
    switch (locus) {
        case LocusType::CellTriangle:
        case LocusType::CellLimit: return word.empty() ? "root" : word.str();
        default: return vertex.str();
    }
}

bool CountReport::has_flag(const std::string& f) const { return std::find(flags.begin(), flags.end(), f) != flags.end(); }

int analysis_level(const EigenFn& fn) {
    if (!(fn.lambda > 0)) throw DomainError("analysis_level: lambda must be positive");
    const double l1 = constants().lambda1_D;
    int n = 0;
    while (fn.lambda / std::pow(5.0, n) >= l1 * (1 - 1e-12)) ++n;
    return std::max(n, fn.path.settle_level());
}

std::optional<ExtremeSet> locate_small_lambda(const EigenFn& fn, const CountOptions& opt) {
    if (!(fn.lambda > 0 && fn.lambda < constants().lambda1_D)) throw DomainError("locate_small_lambda: lambda outside (0, lambda_1^D)");
    const Triple a = fn.a();
    if (a.cwiseAbs().maxCoeff() == 0.0) throw ZeroVector("locate_small_lambda: zero boundary data");
    if (fn.path.m0 != 0) throw DomainError("locate_small_lambda: expects a level-0 seed");
    const Ladder lam = ladder(fn, 0, opt.depth_cap + 2);
    const RegionClass rc = classify_triple(lam.at(0), a, ClassifyTolerance{opt.region_tol, opt.snap_tol});
    if (rc.near_boundary && opt.policy == AmbiguityPolicy::Strict)
        throw AmbiguousClassification("locate_small_lambda: " + rc.name() + " within tolerance of the boundary");
    if (!rc.in_D()) return std::nullopt;
    std::vector<std::string> flags;
    return descend(a, Word(), rc, lam, opt, flags);
}

VertexVerdict vertex_is_extreme(const EigenFn& fn, const Word& w, int pair, const CountOptions& opt) {
    const Analysis an = analyse(fn, opt);
    if (static_cast<int>(w.size()) >= an.n) throw DomainError("vertex_is_extreme: vertex must lie in V_n for the analysis level n");
    const VertexId target = midpoint_of(w, pair);
    const auto idx = an.grid.graph->index_of(target);
    VertexVerdict vv;
    vv.near_boundary = an.near_boundary;
    if (vv.near_boundary && opt.policy == AmbiguityPolicy::Strict)
        throw AmbiguousClassification("vertex_is_extreme: near-boundary classification");
    for (const auto& comp : sweep(an)) {
        if (std::find(comp.vertices.begin(), comp.vertices.end(), idx) == comp.vertices.end()) continue;
        const ExtremeSet es = component_set(an, comp);
        vv.extreme = true;
        vv.kind = es.kind;
        vv.locus = es.locus;
    }
    return vv;
}

CountReport count_exact(const EigenFn& fn, const CountOptions& opt) {
    CountReport rep;
    rep.method = CountMethod::Exact;
    if (fn.lambda == 0.0) {
        rep.flags.push_back("constant");
        return rep;
    }
    const Analysis an = analyse(fn, opt);
    rep.level_used = an.n;
    if (an.near_boundary) {
        add_flag(rep.flags, "near_boundary");
        if (opt.policy == AmbiguityPolicy::Strict)
            throw AmbiguousClassification("count_exact: near-boundary classification at level " + std::to_string(an.n));
        if (opt.policy == AmbiguityPolicy::Fallback) {
            const int M = std::min(an.n + opt.fallback_extra, GasketGraph::kMaxLevel);
            CountReport d = count_discrete(extend(fn, M), opt.tie_tol);
            d.flags.insert(d.flags.begin(), {"near_boundary", "fallback"});
            if (M < an.n + opt.fallback_extra) d.flags.push_back("fallback_level_capped");
            return d;
        }
    }
    const auto& cells = an.grid.graph->cells(an.n);
    for (std::size_t c = 0; c < cells.size(); ++c) {
        if (an.zero_cell[c] || !an.cls[c].in_D()) continue;
        const Triple a(an.grid.values[static_cast<std::size_t>(cells[c][0])], an.grid.values[static_cast<std::size_t>(cells[c][1])],
                       an.grid.values[static_cast<std::size_t>(cells[c][2])]);
        rep.sets.push_back(descend(a, Word::from_index(static_cast<std::int64_t>(c), an.n), an.cls[c], an.lam, opt, rep.flags));
        ++rep.cell_sets;
    }
    for (const auto& comp : sweep(an)) {
        rep.sets.push_back(component_set(an, comp));
        ++rep.vertex_sets;
    }
    rep.count = static_cast<std::int64_t>(rep.sets.size());
    return rep;
}

CountReport count_discrete(const ValueGrid& grid, double tie_tol) {
    CountReport rep;
    rep.method = CountMethod::Discrete;
    rep.level_used = grid.level();
    const auto& g = *grid.graph;
    const auto& u = grid.values;
    const double tie = tie_tol * grid.sup_norm();
    if (grid.sup_norm() == 0.0) return rep;
    const auto n = static_cast<std::int32_t>(u.size());
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(n), 0);
    std::vector<std::int32_t> stamp(static_cast<std::size_t>(n), -1);
    std::int32_t stamp_id = 0;
    std::vector<std::int32_t> comp, queue;
    for (int pass = 0; pass < 2; ++pass) {
        const double sgn = pass == 0 ? 1.0 : -1.0;
        const std::uint8_t bit = pass == 0 ? 1 : 2;
        for (std::int32_t p = 3; p < n; ++p) {
            if (seen[static_cast<std::size_t>(p)] & bit) continue;
            const double v0 = u[static_cast<std::size_t>(p)];
            const std::int32_t* nb = g.neighbors(p);
            bool candidate = true;
            for (int k = 0; k < 4 && candidate; ++k) candidate = sgn * (u[static_cast<std::size_t>(nb[k])] - v0) <= tie;
            if (!candidate) continue;
            // plateau of values tied with v0
            comp.clear();
            queue.assign(1, p);
            ++stamp_id;
            stamp[static_cast<std::size_t>(p)] = stamp_id;
            bool keep = true;
            while (!queue.empty()) {
                const std::int32_t x = queue.back();
                queue.pop_back();
                comp.push_back(x);
                seen[static_cast<std::size_t>(x)] |= bit;
                if (x < 3) keep = false;
                const std::int32_t* xn = g.neighbors(x);
                for (int k = 0; k < g.degree(x); ++k) {
                    const std::int32_t y = xn[k];
                    if (stamp[static_cast<std::size_t>(y)] == stamp_id) continue;
                    if (std::abs(u[static_cast<std::size_t>(y)] - v0) <= tie) {
                        stamp[static_cast<std::size_t>(y)] = stamp_id;
                        queue.push_back(y);
                    } else if (sgn * (u[static_cast<std::size_t>(y)] - v0) > 0) {
                        keep = false;
                    }
                }
            }
            if (!keep) continue;
            std::sort(comp.begin(), comp.end());
            ExtremeSet es;
            es.kind = pass == 0 ? ExtremeKind::Max : ExtremeKind::Min;
            es.value = es.lo = es.hi = v0;
            es.vertex = g.vertex(comp.front()).reduced();
            if (comp.size() == 1) {
                es.locus = LocusType::Vertex;
            } else {
                es.locus = LocusType::Plateau;
                for (auto x : comp) es.members.push_back(g.vertex(x).reduced());
            }
            rep.sets.push_back(std::move(es));
        }
    }
    rep.count = static_cast<std::int64_t>(rep.sets.size());
    return rep;
}

}  // namespace sgx
