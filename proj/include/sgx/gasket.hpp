#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace sgx {

enum class BoundaryKind { Dirichlet, Neumann };
std::string kind_name(BoundaryKind k);
BoundaryKind parse_kind(const std::string& s);

// word over {1,2,3}; w[0] is the outermost map
struct Word {
    std::vector<std::uint8_t> s;

    Word() = default;
    Word(std::initializer_list<int> syms);
    static Word parse(const std::string& str);

    std::size_t size() const { return s.size(); }
    bool empty() const { return s.empty(); }
    int operator[](std::size_t k) const { return s[k]; }
    Word operator+(const Word& o) const;
    Word operator+(int sym) const;
    Word prefix(std::size_t n) const;
    // base-3 index, first symbol most significant
    std::int64_t index() const;
    static Word from_index(std::int64_t idx, int length);
    std::string str() const;

    bool operator==(const Word&) const = default;
    bool operator<(const Word& o) const { return s < o.s; }
};

using Bary = std::array<std::int64_t, 3>;

struct VertexId {
    int level = 0;
    Bary bary{1, 0, 0};

    VertexId at_level(int m) const;  // m >= level
    VertexId reduced() const;        // smallest level holding the point
    std::string str() const;
    bool operator==(const VertexId& o) const;
};

// F_w p_i at level |w|
VertexId vertex_of(const Word& w, int i);
// F_w applied to a vertex given at some level; result at level |w| + v.level
VertexId map_vertex(const Word& w, const VertexId& v);

inline std::int64_t pow3(int k) {
    std::int64_t r = 1;
    while (k-- > 0) r *= 3;
    return r;
}
inline std::int64_t vertex_count(int m) { return (pow3(m + 1) + 3) / 2; }

class GasketGraph {
public:
    static constexpr int kMaxLevel = 14;
    using Corners = std::array<std::int32_t, 3>;

    explicit GasketGraph(int m);

    int level() const { return level_; }
    std::int64_t size() const { return static_cast<std::int64_t>(bary_.size()); }
    const std::vector<Corners>& cells(int k) const { return cells_.at(static_cast<std::size_t>(k)); }
    const Corners& cell(const Word& w) const { return cells(static_cast<int>(w.size()))[static_cast<std::size_t>(w.index())]; }
    VertexId vertex(std::int32_t v) const { return VertexId{level_, bary_[static_cast<std::size_t>(v)]}; }
    std::int32_t index_of(const VertexId& v) const;
    int degree(std::int32_t v) const { return v < 3 ? 2 : 4; }
    const std::int32_t* neighbors(std::int32_t v) const { return &adj_[static_cast<std::size_t>(v) * 4]; }
    bool is_boundary(std::int32_t v) const { return v < 3; }
    int creation_level(std::int32_t v) const;
    std::int64_t edge_count() const { return pow3(level_ + 1); }
    std::vector<std::array<std::int32_t, 2>> edges() const;

    // first index created at level L (L >= 1)
    static std::int64_t offset(int L) { return vertex_count(L - 1); }

private:
    int level_;
    std::vector<Bary> bary_;
    std::vector<std::vector<Corners>> cells_;
    std::vector<std::int32_t> adj_;
};

// cached, shared, immutable
std::shared_ptr<const GasketGraph> build_graph(int m);

// plain -Delta_m: diagonal = degree, -1 per edge; dirichlet restricted to V_m \ V_0
Eigen::MatrixXd laplacian_matrix(const GasketGraph& g, BoundaryKind bc);
// vertex masses matching the decimation boundary equation: 1 inside, 1/2 on V_0
Eigen::VectorXd neumann_mass(const GasketGraph& g);

std::string edge_list_csv(const GasketGraph& g);

}  // namespace sgx
