#include "sgx/gasket.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "sgx/errors.hpp"

namespace sgx {

std::string kind_name(BoundaryKind k) { return k == BoundaryKind::Dirichlet ? "dirichlet" : "neumann"; }

BoundaryKind parse_kind(const std::string& s) {
    if (s == "d" || s == "dirichlet" || s == "D") return BoundaryKind::Dirichlet;
    if (s == "n" || s == "neumann" || s == "N") return BoundaryKind::Neumann;
    throw DomainError("unknown boundary kind: " + s);
}

Word::Word(std::initializer_list<int> syms) {
    for (int v : syms) {
        if (v < 1 || v > 3) throw DomainError("Word: symbol out of range");
        s.push_back(static_cast<std::uint8_t>(v));
    }
}

Word Word::parse(const std::string& str) {
    Word w;
    for (char c : str) {
        if (c < '1' || c > '3') throw DomainError("Word: bad symbol in '" + str + "'");
        w.s.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return w;
}

Word Word::operator+(const Word& o) const {
    Word w = *this;
    w.s.insert(w.s.end(), o.s.begin(), o.s.end());
    return w;
}

Word Word::operator+(int sym) const {
    Word w = *this;
    w.s.push_back(static_cast<std::uint8_t>(sym));
    return w;
}

Word Word::prefix(std::size_t n) const {
    Word w;
    w.s.assign(s.begin(), s.begin() + static_cast<long>(std::min(n, s.size())));
    return w;
}

std::int64_t Word::index() const {
    std::int64_t r = 0;
    for (auto c : s) r = 3 * r + (c - 1);
    return r;
}

Word Word::from_index(std::int64_t idx, int length) {
    Word w;
    w.s.resize(static_cast<std::size_t>(length));
    for (int t = length - 1; t >= 0; --t) {
        w.s[static_cast<std::size_t>(t)] = static_cast<std::uint8_t>(idx % 3 + 1);
        idx /= 3;
    }
    return w;
}

std::string Word::str() const {
    std::string r;
    for (auto c : s) r.push_back(static_cast<char>('0' + c));
    return r;
}

VertexId VertexId::at_level(int m) const {
    if (m < level) throw DomainError("VertexId::at_level: cannot coarsen");
    VertexId v = *this;
    for (; v.level < m; ++v.level)
        for (auto& c : v.bary) c *= 2;
    return v;
}

VertexId VertexId::reduced() const {
    VertexId v = *this;
    while (v.level > 0 && v.bary[0] % 2 == 0 && v.bary[1] % 2 == 0 && v.bary[2] % 2 == 0) {
        for (auto& c : v.bary) c /= 2;
        --v.level;
    }
    return v;
}

std::string VertexId::str() const {
    std::ostringstream os;
    os << "L" << level << "(" << bary[0] << "," << bary[1] << "," << bary[2] << ")";
    return os.str();
}

bool VertexId::operator==(const VertexId& o) const {
    int m = std::max(level, o.level);
    return at_level(m).bary == o.at_level(m).bary;
}

VertexId map_vertex(const Word& w, const VertexId& v) {
    Bary c = v.bary;
    for (std::size_t t = w.size(); t-- > 0;) {
        std::int64_t sum = c[0] + c[1] + c[2];
        c[static_cast<std::size_t>(w[t] - 1)] += sum;
    }
    return VertexId{v.level + static_cast<int>(w.size()), c};
}

VertexId vertex_of(const Word& w, int i) {
    if (i < 1 || i > 3) throw DomainError("vertex_of: corner out of range");
    Bary c{0, 0, 0};
    c[static_cast<std::size_t>(i - 1)] = 1;
    return map_vertex(w, VertexId{0, c});
}

GasketGraph::GasketGraph(int m) : level_(m) {
    if (m < 0) throw DomainError("build_graph: negative level");
    if (m > kMaxLevel) throw LevelTooLarge("build_graph: level " + std::to_string(m) + " > 14");
    const std::int64_t n = vertex_count(m);
    bary_.resize(static_cast<std::size_t>(n));
    const std::int64_t top = std::int64_t{1} << m;
    bary_[0] = {top, 0, 0};
    bary_[1] = {0, top, 0};
    bary_[2] = {0, 0, top};
    cells_.resize(static_cast<std::size_t>(m + 1));
    cells_[0] = {Corners{0, 1, 2}};
    for (int L = 1; L <= m; ++L) {
        const auto& parent = cells_[static_cast<std::size_t>(L - 1)];
        auto& child = cells_[static_cast<std::size_t>(L)];
        child.resize(parent.size() * 3);
        const std::int64_t off = offset(L);
        for (std::size_t c = 0; c < parent.size(); ++c) {
            const Corners& pc = parent[c];
            std::array<std::int32_t, 3> mid;
            for (int e = 0; e < 3; ++e) {
                const int i = (e + 1) % 3, j = (e + 2) % 3;
                const auto v = static_cast<std::int32_t>(off + 3 * static_cast<std::int64_t>(c) + e);
                mid[static_cast<std::size_t>(e)] = v;
                const Bary& bi = bary_[static_cast<std::size_t>(pc[static_cast<std::size_t>(i)])];
                const Bary& bj = bary_[static_cast<std::size_t>(pc[static_cast<std::size_t>(j)])];
                bary_[static_cast<std::size_t>(v)] = {(bi[0] + bj[0]) / 2, (bi[1] + bj[1]) / 2, (bi[2] + bj[2]) / 2};
            }
            for (int i = 0; i < 3; ++i) {
                Corners cc;
                for (int j = 0; j < 3; ++j) {
                    if (j == i)
                        cc[static_cast<std::size_t>(j)] = pc[static_cast<std::size_t>(i)];
                    else
                        cc[static_cast<std::size_t>(j)] = mid[static_cast<std::size_t>(3 - i - j)];
                }
                child[3 * c + static_cast<std::size_t>(i)] = cc;
            }
        }
    }
    adj_.assign(static_cast<std::size_t>(n) * 4, -1);
    std::vector<int> fill(static_cast<std::size_t>(n), 0);
    for (const Corners& c : cells_[static_cast<std::size_t>(m)]) {
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                if (a == b) continue;
                const auto v = static_cast<std::size_t>(c[static_cast<std::size_t>(a)]);
                adj_[v * 4 + static_cast<std::size_t>(fill[v]++)] = c[static_cast<std::size_t>(b)];
            }
    }
}

int GasketGraph::creation_level(std::int32_t v) const {
    if (v < 3) return 0;
    int L = 1;
    while (offset(L + 1) <= v) ++L;
    return L;
}

std::int32_t GasketGraph::index_of(const VertexId& vid) const {
    VertexId v = vid.reduced();
    if (v.level > level_) throw DomainError("index_of: vertex not in V_" + std::to_string(level_));
    if (v.bary[0] + v.bary[1] + v.bary[2] != (std::int64_t{1} << v.level) || v.bary[0] < 0 || v.bary[1] < 0 ||
        v.bary[2] < 0)
        throw DomainError("index_of: invalid barycentric triple");
    if (v.level == 0) {
        for (int i = 0; i < 3; ++i)
            if (v.bary[static_cast<std::size_t>(i)] == 1) return i;
    }
    const int L = v.level;
    Bary c = v.bary;
    std::int64_t cell = 0;
    for (int k = L; k > 1; --k) {
        const std::int64_t half = std::int64_t{1} << (k - 1);
        int sym = -1;
        for (int i = 0; i < 3; ++i)
            if (c[static_cast<std::size_t>(i)] >= half) sym = i;
        if (sym < 0) throw DomainError("index_of: vertex not on the gasket");
        c[static_cast<std::size_t>(sym)] -= half;
        cell = 3 * cell + sym;
    }
    int e = -1;
    for (int i = 0; i < 3; ++i)
        if (c[static_cast<std::size_t>(i)] == 0) e = i;
    if (e < 0) throw DomainError("index_of: vertex not on the gasket");
    return static_cast<std::int32_t>(offset(L) + 3 * cell + e);
}

std::vector<std::array<std::int32_t, 2>> GasketGraph::edges() const {
    std::vector<std::array<std::int32_t, 2>> out;
    out.reserve(static_cast<std::size_t>(edge_count()));
    for (const Corners& c : cells_[static_cast<std::size_t>(level_)]) {
        out.push_back({c[0], c[1]});
        out.push_back({c[1], c[2]});
        out.push_back({c[2], c[0]});
    }
    return out;
}

std::shared_ptr<const GasketGraph> build_graph(int m) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const GasketGraph>> cache;
    if (m > GasketGraph::kMaxLevel) throw LevelTooLarge("build_graph: level " + std::to_string(m) + " > 14");
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    auto g = std::make_shared<const GasketGraph>(m);
    cache[m] = g;
    return g;
}

Eigen::MatrixXd laplacian_matrix(const GasketGraph& g, BoundaryKind bc) {
    if (g.level() > 7) throw LevelTooLarge("laplacian_matrix: dense assembly limited to level 7");
    const std::int64_t n = g.size();
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (std::int32_t v = 0; v < n; ++v) {
        L(v, v) = g.degree(v);
        const std::int32_t* nb = g.neighbors(v);
        for (int k = 0; k < g.degree(v); ++k) L(v, nb[k]) -= 1.0;
    }
    if (bc == BoundaryKind::Neumann) return L;
    return L.bottomRightCorner(n - 3, n - 3);
}

Eigen::VectorXd neumann_mass(const GasketGraph& g) {
    Eigen::VectorXd m = Eigen::VectorXd::Ones(g.size());
    m.head(3).setConstant(0.5);
    return m;
}

std::string edge_list_csv(const GasketGraph& g) {
    std::ostringstream os;
    os << "level,v1_c1,v1_c2,v1_c3,v2_c1,v2_c2,v2_c3\n";
    for (const auto& e : g.edges()) {
        const auto a = g.vertex(e[0]).bary, b = g.vertex(e[1]).bary;
        os << g.level() << ',' << a[0] << ',' << a[1] << ',' << a[2] << ',' << b[0] << ',' << b[1] << ',' << b[2]
           << '\n';
    }
    return os.str();
}

}  // namespace sgx
