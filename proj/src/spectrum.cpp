#include "sgx/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <tuple>

#include "sgx/errors.hpp"

namespace sgx {

namespace {

double birth_value(Series s) {
    switch (s) {
        case Series::D2: return 2.0;
        case Series::D5:
        case Series::N5: return 5.0;
        case Series::D6:
        case Series::N6: return 6.0;
        case Series::N6p: return 3.0;
        case Series::N0: return 0.0;
        default: throw DomainError("birth_value: generic series has no fixed birth value");
    }
}

bool is_forbidden(double x) {
    for (double f : {2.0, 5.0, 6.0})
        if (std::abs(x - f) <= 1e-12) return true;
    return false;
}

// all eps of length k with last symbol +1
std::vector<BranchWord> branch_words(int k) {
    std::vector<BranchWord> out;
    if (k == 0) {
        out.emplace_back();
        return out;
    }
    const std::int64_t n = std::int64_t{1} << (k - 1);
    for (std::int64_t bits = 0; bits < n; ++bits) {
        std::vector<int> s(static_cast<std::size_t>(k), 1);
        for (int t = 0; t < k - 1; ++t) s[static_cast<std::size_t>(t)] = (bits >> t) & 1 ? 1 : -1;
        out.emplace_back(std::move(s));
    }
    return out;
}

struct SeriesRange {
    Series series;
    int m0_lo;
    bool single;  // only m0 = m0_lo
};

std::vector<SeriesRange> series_for(BoundaryKind kind) {
    if (kind == BoundaryKind::Dirichlet)
        return {{Series::D2, 1, true}, {Series::D5, 1, false}, {Series::D6, 2, false}};
    return {{Series::N5, 2, false}, {Series::N6, 1, false}, {Series::N6p, 1, true}};
}

}  // namespace

DecimationPath SpectrumEntry::path() const {
    if (series == Series::Generic) throw DomainError("SpectrumEntry::path: generic series");
    return DecimationPath(m0, birth_value(series), eps, series);
}

int SpectrumEntry::total_level() const {
    const int forced = (series == Series::D6 || series == Series::N6) ? 1 : 0;
    return m0 + forced + static_cast<int>(eps.size());
}

std::int64_t series_multiplicity(Series s, int m0) {
    switch (s) {
        case Series::D2:
        case Series::N0: return m0 == 1 ? 1 : 0;
        case Series::D5: return m0 >= 1 ? (pow3(m0 - 1) + 3) / 2 : 0;
        case Series::D6: return m0 >= 2 ? (pow3(m0) - 3) / 2 : 0;
        case Series::N5: return m0 >= 2 ? (pow3(m0 - 1) - 1) / 2 : 0;
        case Series::N6: return m0 >= 1 ? (pow3(m0) + 3) / 2 : 0;
        case Series::N6p: return m0 == 1 ? 2 : 0;
        default: return 0;
    }
}

std::vector<SpectrumEntry> enumerate_spectrum(BoundaryKind kind, double x_max) {
    std::vector<SpectrumEntry> out;
    if (x_max < 0) return out;
    const double limit = x_max + 1e-9 * std::max(1.0, x_max);
    if (kind == BoundaryKind::Neumann) out.push_back({0.0, Series::N0, 1, BranchWord(), 1});
    const double psi2 = constants().psi2;
    // every eigenvalue with total level L is at least 5^L psi(2)
    for (int L = 1; std::pow(5.0, L) * psi2 <= limit; ++L) {
        for (const auto& r : series_for(kind)) {
            const int forced = (r.series == Series::D6 || r.series == Series::N6) ? 1 : 0;
            const int m0_hi = r.single ? r.m0_lo : L - forced;
            for (int m0 = r.m0_lo; m0 <= m0_hi; ++m0) {
                const int k = L - m0 - forced;
                if (k < 0) continue;
                for (auto& eps : branch_words(k)) {
                    SpectrumEntry e{0.0, r.series, m0, eps, series_multiplicity(r.series, m0)};
                    e.lambda = big_psi(m0 + forced, eps, forced ? 3.0 : birth_value(r.series));
                    if (e.lambda <= limit) out.push_back(std::move(e));
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
        return std::tie(a.lambda, a.series, a.m0) < std::tie(b.lambda, b.series, b.m0);
    });
    return out;
}

std::int64_t counting_function(BoundaryKind kind, double x) {
    std::int64_t n = 0;
    for (const auto& e : enumerate_spectrum(kind, x)) n += e.multiplicity;
    return n;
}

double weyl_ratio(BoundaryKind kind, double x) {
    if (x <= 0) throw DomainError("weyl_ratio: x must be positive");
    return static_cast<double>(counting_function(kind, x)) / std::pow(x, constants().d_S / 2.0);
}

std::string spectrum_csv(const std::vector<SpectrumEntry>& entries) {
    std::ostringstream os;
    os.precision(15);
    os << "lambda,series,m0,eps,multiplicity\n";
    for (const auto& e : entries)
        os << e.lambda << ',' << series_name(e.series) << ',' << e.m0 << ',' << (e.eps.empty() ? "none" : e.eps.str())
           << ',' << e.multiplicity << '\n';
    return os.str();
}

std::string weyl_csv(BoundaryKind kind, const std::vector<double>& xs) {
    std::ostringstream os;
    os.precision(15);
    os << "x,count,ratio\n";
    for (double x : xs) {
        const auto n = counting_function(kind, x);
        os << x << ',' << n << ',' << static_cast<double>(n) / std::pow(x, constants().d_S / 2.0) << '\n';
    }
    return os.str();
}

std::vector<std::pair<double, std::int64_t>> predicted_discrete_spectrum(BoundaryKind kind, int m) {
    std::vector<std::pair<double, std::int64_t>> out;
    if (m < 1) return out;
    auto add_series = [&](Series s, int m0) {
        if (m0 > m) return;
        const std::int64_t mult = series_multiplicity(s, m0);
        double start = birth_value(s);
        int steps = m - m0;
        if (start == 6.0 && steps >= 1) {
            start = 3.0;
            --steps;
        }
        std::vector<double> vals{start};
        for (int t = 0; t < steps; ++t) {
            std::vector<double> next;
            for (double x : vals)
                for (int sgn : {-1, 1}) {
                    const double y = phi_branch(sgn, x);
                    if (!is_forbidden(y)) next.push_back(y);
                }
            vals = std::move(next);
        }
        for (double v : vals) out.emplace_back(v, mult);
    };
    if (kind == BoundaryKind::Dirichlet) {
        add_series(Series::D2, 1);
        for (int m0 = 1; m0 <= m; ++m0) add_series(Series::D5, m0);
        for (int m0 = 2; m0 <= m; ++m0) add_series(Series::D6, m0);
    } else {
        add_series(Series::N0, 1);
        for (int m0 = 2; m0 <= m; ++m0) add_series(Series::N5, m0);
        for (int m0 = 1; m0 <= m; ++m0) add_series(Series::N6, m0);
        add_series(Series::N6p, 1);
    }
    std::sort(out.begin(), out.end());
    return out;
}

double ThetaPartition::gamma_of(const Word& w) const {
    double g = 1.0;
    for (std::size_t k = 0; k < w.size(); ++k) g *= gammas[static_cast<std::size_t>(w[k] - 1)];
    return g;
}

double similarity_dimension(const std::vector<double>& gammas) {
    if (gammas.size() < 2) throw DomainError("similarity_dimension: need at least two ratios");
    for (double g : gammas)
        if (!(g > 0 && g < 1)) throw DomainError("similarity_dimension: ratios must lie in (0,1)");
    auto f = [&](double d) {
        double s = 0;
        for (double g : gammas) s += std::pow(g, d);
        return s - 1.0;
    };
    double lo = 0, hi = 1;
    while (f(hi) > 0) hi *= 2;
    for (int k = 0; k < 200 && hi - lo > 1e-16 * hi; ++k) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

ThetaPartition theta_partition(double x, const std::vector<double>& gammas) {
    if (gammas.size() != 3) throw DomainError("theta_partition: three ratios expected");
    if (!(x >= 1)) throw DomainError("theta_partition: x must be at least 1");
    ThetaPartition t;
    t.x = x;
    t.gammas = gammas;
    t.d_S = similarity_dimension(gammas);
    // a child becomes a leaf once gamma_w^2 x drops strictly below 1
    std::function<void(const Word&, double)> refine = [&](const Word& w, double g2) {
        for (int i = 1; i <= 3; ++i) {
            const double gi = gammas[static_cast<std::size_t>(i - 1)];
            const double c = g2 * gi * gi;
            if (c * x < 1.0 - 1e-12)
                t.words.push_back(w + i);
            else
                refine(w + i, c);
        }
    };
    refine(Word(), 1.0);
    std::sort(t.words.begin(), t.words.end());
    return t;
}

bool is_prefix_free_cover(const ThetaPartition& t) {
    std::vector<Word> ws = t.words;
    std::sort(ws.begin(), ws.end());
    if (ws.empty()) return false;
    // words in [lo, hi) all extend prefix p
    std::function<bool(std::size_t, std::size_t, std::size_t)> check = [&](std::size_t lo, std::size_t hi,
                                                                           std::size_t depth) -> bool {
        if (lo == hi) return false;
        if (ws[lo].size() == depth) return hi - lo == 1;
        std::size_t a = lo;
        for (int sym = 1; sym <= 3; ++sym) {
            std::size_t b = a;
            while (b < hi && ws[b].size() > depth && ws[b][depth] == sym) ++b;
            if (!check(a, b, depth + 1)) return false;
            a = b;
        }
        return a == hi;
    };
    return check(0, ws.size(), 0);
}

}  // namespace sgx
