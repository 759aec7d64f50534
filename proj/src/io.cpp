#include "sgx/io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "sgx/errors.hpp"

namespace sgx {

using nlohmann::json;

void write_grid_csv(std::ostream& os, const ValueGrid& grid, const EigenFn& fn) {
    json h;
    h["level"] = grid.level();
    h["lambda"] = fn.lambda;
    h["lambda_M"] = grid.lambda_M;
    h["m0"] = fn.path.m0;
    h["lambda_birth"] = fn.path.lambda_birth;
    h["eps"] = fn.path.eps.str();
    h["series"] = series_name(fn.path.series);
    h["seed"] = fn.seed;
    h["a"] = {fn.seed[0], fn.seed[1], fn.seed[2]};
    os << "# " << h.dump() << '\n';
    os << "c1,c2,c3,value\n";
    os.precision(17);
    const auto& g = *grid.graph;
    for (std::int32_t v = 0; v < g.size(); ++v) {
        const auto b = g.vertex(v).bary;
        os << b[0] << ',' << b[1] << ',' << b[2] << ',' << grid.values[static_cast<std::size_t>(v)] << '\n';
    }
}

GridFile read_grid_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("# ", 0) != 0) throw DomainError("grid csv: missing header line");
    const json h = json::parse(line.substr(2));
    const int level = h.at("level").get<int>();
    if (level < 0 || level > GasketGraph::kMaxLevel) throw LevelTooLarge("grid csv: level out of range");
    GridFile f;
    f.grid.graph = build_graph(level);
    f.grid.lambda_M = h.value("lambda_M", 0.0);
    f.grid.values.assign(static_cast<std::size_t>(f.grid.graph->size()), 0.0);
    std::vector<bool> filled(f.grid.values.size(), false);
    std::getline(is, line);  // column names
    std::size_t rows = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        Bary b{};
        char comma;
        double value;
        if (!(ls >> b[0] >> comma >> b[1] >> comma >> b[2] >> comma >> value)) throw DomainError("grid csv: bad row: " + line);
        const auto idx = static_cast<std::size_t>(f.grid.graph->index_of(VertexId{level, b}));
        f.grid.values[idx] = value;
        if (!filled[idx]) ++rows;
        filled[idx] = true;
    }
    if (rows != f.grid.values.size()) throw DomainError("grid csv: vertex rows missing");
    if (h.contains("seed") && h.contains("m0")) {
        DecimationPath p(h.at("m0").get<int>(), h.at("lambda_birth").get<double>(),
                         BranchWord::parse(h.value("eps", std::string())), parse_series(h.value("series", std::string("Generic"))));
        f.fn = EigenFn::from_seed(h.at("seed").get<std::vector<double>>(), p);
    }
    return f;
}

std::string count_report_json(const CountReport& r, int indent) {
    json j;
    j["count"] = r.count;
    j["method"] = r.method == CountMethod::Exact ? "exact" : "discrete";
    j["level"] = r.level_used;
    json sets = json::array();
    for (const auto& s : r.sets) {
        json e;
        e["kind"] = kind_name(s.kind);
        e["locus_type"] = locus_name(s.locus);
        e["word_or_vertex"] = s.where();
        e["value"] = s.value;
        if (s.locus == LocusType::CellLimit) e["interval"] = {s.lo, s.hi};
        if (s.locus == LocusType::Plateau) e["size"] = s.members.size();
        sets.push_back(e);
    }
    j["sets"] = sets;
    j["flags"] = r.flags;
    return j.dump(indent);
}

std::string region_json(double alpha, const Triple& a, const RegionClass& rc) {
    json j;
    j["alpha"] = alpha;
    j["region"] = rc.name();
    j["near_boundary"] = rc.near_boundary;
    j["near_median"] = rc.near_median;
    const RP2Point t = project(a);
    j["tau"] = {{"infinite", t.infinite}, {"x", t.v[0]}, {"y", t.v[1]}};
    return j.dump(2);
}

}  // namespace sgx
