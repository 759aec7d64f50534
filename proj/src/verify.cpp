#include "sgx/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <json.hpp>

#include "sgx/errors.hpp"
#include "sgx/oracle.hpp"
#include "sgx/spectrum.hpp"

namespace sgx {

namespace {

constexpr std::size_t kMaxWitnesses = 20;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

std::string describe(const EigenFn& fn) {
    std::ostringstream os;
    os.precision(12);
    os << "lambda=" << fn.lambda << " m0=" << fn.path.m0 << " birth=" << fn.path.lambda_birth << " eps=" << fn.path.eps.str()
       << " a=(" << fn.seed[0] << "," << fn.seed[1] << "," << fn.seed[2] << ")";
    return os.str();
}

Triple gaussian_triple(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Triple a;
    do {
        a = Triple(g(rng), g(rng), g(rng));
    } while (a.norm() < 1e-3);
    return a;
}

BranchWord random_eps(std::mt19937_64& rng, int n) {
    std::vector<int> s(static_cast<std::size_t>(n), 1);
    std::bernoulli_distribution coin(0.5);
    for (int k = 0; k + 1 < n; ++k) s[static_cast<std::size_t>(k)] = coin(rng) ? 1 : -1;
    return BranchWord(s);
}

void check_signs(SuiteReport& rep, const CountReport& cr, const std::string& who) {
    for (const auto& s : cr.sets) {
        ++rep.sign_checked;
        const bool ok = s.kind == ExtremeKind::Max ? s.value > 0 : s.value < 0;
        if (!ok) {
            ++rep.sign_violations;
            rep.check(false, "sign: " + kind_name(s.kind) + " value " + fmt(s.value) + " at " + s.where() + " for " + who);
        }
    }
}

// count_discrete at level n+6 must agree with an unflagged exact count
void check_equivalence(SuiteReport& rep, const EigenFn& fn, const CountReport& cr, const CountOptions& opt) {
    if (cr.method != CountMethod::Exact || cr.ambiguous()) return;
    const int M = cr.level_used + 6;
    if (M > GasketGraph::kMaxLevel) return;
    const CountReport d = count_discrete(extend(fn, M), opt.tie_tol);
    ++rep.equivalence_checked;
    if (d.count != cr.count) {
        ++rep.equivalence_mismatches;
        rep.check(false, "equivalence: exact " + std::to_string(cr.count) + " vs discrete " + std::to_string(d.count) + " at level " +
                             std::to_string(M) + " for " + describe(fn));
    }
}

// vertex id strictly inside cell i (level 1), away from F_i V_0
bool strictly_inside_cell(const VertexId& v, int i, int M) {
    const VertexId at = v.at_level(M);
    const std::int64_t half = std::int64_t{1} << (M - 1);
    const auto& b = at.bary;
    if (b[static_cast<std::size_t>(i - 1)] < half) return false;
    if (b[static_cast<std::size_t>(i - 1)] == 2 * half) return false;  // p_i
    for (int j = 0; j < 3; ++j)
        if (j != i - 1 && b[static_cast<std::size_t>(i - 1)] == half && b[static_cast<std::size_t>(j)] == half) return false;
    return true;
}

double parallel_defect(const Triple& x, const Triple& y) {
    const double nx = x.norm(), ny = y.norm();
    if (nx == 0 || ny == 0) return nx == ny ? 0.0 : 1.0;
    return x.cross(y).norm() / (nx * ny);
}

}  // namespace

void SuiteReport::check(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    pass = false;
    if (failures.size() < kMaxWitnesses) failures.push_back(what);
}

void SuiteReport::merge(const SuiteReport& o) {
    pass = pass && o.pass;
    checks += o.checks;
    for (const auto& f : o.failures)
        if (failures.size() < kMaxWitnesses) failures.push_back(o.suite + ": " + f);
    for (const auto& [k, v] : o.metrics) metrics[o.suite + "." + k] = v;
    samples += o.samples;
    flagged += o.flagged;
    equivalence_checked += o.equivalence_checked;
    equivalence_mismatches += o.equivalence_mismatches;
    sign_checked += o.sign_checked;
    sign_violations += o.sign_violations;
}

std::string SuiteReport::json() const {
    nlohmann::json j;
    j["suite"] = suite;
    j["pass"] = pass;
    j["checks"] = checks;
    j["failures"] = failures;
    j["metrics"] = metrics;
    j["samples"] = samples;
    j["flagged"] = flagged;
    j["equivalence"] = {{"checked", equivalence_checked}, {"mismatches", equivalence_mismatches}};
    j["signs"] = {{"checked", sign_checked}, {"violations", sign_violations}};
    return j.dump(2);
}

SuiteReport verify_decimation(const VerifyConfig&, int max_level) {
    SuiteReport rep;
    rep.suite = "decimation";
    double worst = 0;
    for (int m = 1; m <= max_level; ++m)
        for (BoundaryKind k : {BoundaryKind::Dirichlet, BoundaryKind::Neumann}) {
            const CrosscheckReport cc = crosscheck_decimation(m, k, 1e-9);
            worst = std::max(worst, cc.max_deviation);
            std::string bad;
            for (const auto& r : cc.rows)
                if (!r.match) bad += " " + fmt(r.lambda_m) + "(oracle x" + std::to_string(r.multiplicity) + ", predicted x" + std::to_string(r.predicted) + ")";
            rep.check(cc.ok, "level " + std::to_string(m) + " " + kind_name(k) + ":" + bad);
            const int dim = discrete_spectrum(m, k).dimension();
            const auto expect = vertex_count(m) - (k == BoundaryKind::Dirichlet ? 3 : 0);
            rep.check(dim == expect, "dimension at level " + std::to_string(m) + " " + kind_name(k));
        }
    rep.metrics["max_deviation"] = worst;
    return rep;
}

SuiteReport verify_psi(const VerifyConfig& cfg) {
    SuiteReport rep;
    rep.suite = "psi";
    double worst_fe = 0, worst_inv = 0;
    for (int k = 1; k <= 100; ++k) {
        const double x = 6.0 * k / 101.0;
        const double fe = std::abs(5.0 * psi(phi_branch(-1, x), cfg.psi_tol) - psi(x, cfg.psi_tol));
        worst_fe = std::max(worst_fe, fe);
        rep.check(fe <= 1e-11, "functional equation at x=" + fmt(x) + ": " + fmt(fe));
        const double y = psi(x, cfg.psi_tol);
        const double back = psi_inverse(y);
        const double err = std::max(std::abs(back - x), std::abs(psi(back, cfg.psi_tol) - y));
        worst_inv = std::max(worst_inv, err);
        rep.check(err <= 1e-9, "inverse round trip at x=" + fmt(x) + ": " + fmt(err));
    }
    rep.metrics["functional_equation_max"] = worst_fe;
    rep.metrics["inverse_round_trip_max"] = worst_inv;
    return rep;
}

SuiteReport verify_condition_a(const VerifyConfig& cfg, bool locator_checks) {
    SuiteReport rep;
    rep.suite = locator_checks ? "thm34" : "conditionA";
    std::mt19937_64 rng(cfg.rng_seed);
    const double l1 = constants().lambda1_D;
    std::uniform_real_distribution<double> frac(0.01, 0.99);
    std::int64_t g_checked = 0;
    for (int t = 0; t < cfg.condition_a_samples; ++t) {
        const double lambda = frac(rng) * l1;
        const Triple a = gaussian_triple(rng);
        const EigenFn fn = EigenFn::small(lambda, a);
        const double alpha = fn.path.lambda_birth;
        const RegionClass rc = classify_triple(alpha, a, ClassifyTolerance{cfg.count.region_tol, cfg.count.snap_tol});
        const CountReport cr = count_exact(fn, cfg.count);
        ++rep.samples;
        const bool flagged = rc.near_boundary || cr.ambiguous();
        if (flagged) {
            ++rep.flagged;
            continue;
        }
        const std::string who = describe(fn);
        rep.check(cr.count == 0 || cr.count == 1, "count " + std::to_string(cr.count) + " outside {0,1} for " + who);
        rep.check((cr.count == 1) == rc.in_D(), "count " + std::to_string(cr.count) + " but region " + rc.name() + " for " + who);
        check_signs(rep, cr, who);
        check_equivalence(rep, fn, cr, cfg.count);
        if (locator_checks && rc.kind == RegionKind::SubTriangleG) {
            const int M = 10;
            const CountReport d = count_discrete(extend(fn, M), cfg.count.tie_tol);
            ++g_checked;
            bool inside = d.count == 1;
            if (inside) {
                const auto& s = d.sets.front();
                if (s.locus == LocusType::Plateau) {
                    for (const auto& v : s.members) inside = inside && strictly_inside_cell(v, rc.index, M);
                } else {
                    inside = strictly_inside_cell(s.vertex, rc.index, M);
                }
            }
            rep.check(inside, "discrete level-10 plateau not unique or not inside cell " + std::to_string(rc.index) + " (count " +
                                  std::to_string(d.count) + ") for " + who);
        }
    }
    const double frac_flagged = static_cast<double>(rep.flagged) / std::max<std::int64_t>(1, rep.samples);
    rep.check(frac_flagged < 0.01, "flagged fraction " + fmt(frac_flagged));
    rep.metrics["flagged_fraction"] = frac_flagged;
    if (locator_checks) {
        rep.metrics["subtriangle_checked"] = static_cast<double>(g_checked);
        // symmetric data: the middle triangle
        const auto sym = locate_small_lambda(EigenFn::small(0.5 * l1, Triple(1, 1, 1)), cfg.count);
        rep.check(sym && sym->locus == LocusType::CellTriangle && sym->word.empty(), "a=(1,1,1) does not give the root cell triangle");
        // two tied corners above the third: the vertex p_23
        const double alpha = psi_inverse(0.3 * l1);
        const double d = 0.01 * alpha;
        const auto seg = locate_small_lambda(EigenFn::small(0.3 * l1, Triple(1, 1 + d, 1 + d)), cfg.count);
        rep.check(seg && seg->locus == LocusType::Vertex && seg->vertex == VertexId{1, {0, 1, 1}}, "segment data does not locate p_23");
    }
    return rep;
}

SuiteReport verify_ueps_bracket(const VerifyConfig& cfg) {
    SuiteReport rep;
    rep.suite = "thm35";
    std::mt19937_64 rng(cfg.rng_seed ^ 0x35);
    std::uniform_real_distribution<double> birth(0.0, 6.0);
    const auto& c = constants();
    for (int n = 1; n <= cfg.ueps_max_n; ++n) {
        const double lo = std::pow(3.0, n - 1), hi = 4.0 * std::pow(3.0, n);
        std::int64_t min_count = -1, max_count = 0;
        for (int t = 0; t < cfg.ueps_samples; ++t) {
            const double l0 = birth(rng);
            const BranchWord eps = random_eps(rng, n);
            const Triple a = gaussian_triple(rng);
            const EigenFn fn = EigenFn::from_boundary(a, DecimationPath(0, l0, eps));
            const std::string who = describe(fn);
            ++rep.samples;
            rep.check(std::pow(5.0, n) * c.psi3 < fn.lambda && fn.lambda < std::pow(5.0, n) * c.psi5, "lambda outside (5^n psi(3), 5^n psi(5)) for " + who);
            const CountReport cr = count_exact(fn, cfg.count);
            if (cr.ambiguous()) ++rep.flagged;
            const double N = static_cast<double>(cr.count);
            rep.check(lo <= N && N <= hi, "count " + std::to_string(cr.count) + " outside [" + fmt(lo) + ", " + fmt(hi) + "] for " + who);
            min_count = min_count < 0 ? cr.count : std::min(min_count, cr.count);
            max_count = std::max(max_count, cr.count);
            check_signs(rep, cr, who);
            check_equivalence(rep, fn, cr, cfg.count);
        }
        rep.metrics["n" + std::to_string(n) + ".min_count"] = static_cast<double>(min_count);
        rep.metrics["n" + std::to_string(n) + ".max_count"] = static_cast<double>(max_count);
    }
    return rep;
}

namespace {

struct Bracket {
    double lo = 0, hi = 0;  // on N / lambda^{d_S/2}
    bool zero = false;
};

Bracket growth_bracket(Series s, bool eps_empty, double lambda) {
    const auto& c = constants();
    const double h = c.d_S / 2.0;
    Bracket b;
    if ((s == Series::N6p && eps_empty) || s == Series::N0) {
        b.zero = true;
        return b;
    }
    if (!eps_empty) {
        b.lo = std::pow(c.psi5, -h) / 3.0;
        b.hi = 4.0 * std::pow(c.psi3, -h) + std::pow(c.psi2, -h);
    } else if (s == Series::D2) {
        b.lo = 1.0 / std::pow(lambda, h);
        b.hi = 6.0 / std::pow(lambda, h);
    } else if (s == Series::D5 || s == Series::N5) {
        b.lo = std::pow(c.psi5, -h) / 3.0;
        b.hi = 4.0 * std::pow(c.psi2, -h);
    } else {
        b.lo = std::pow(c.psi5, -h) / 9.0;
        b.hi = 4.0 * std::pow(c.psi2, -h);
    }
    return b;
}

double global_constant() {
    const auto& c = constants();
    double C = 1;
    for (Series s : {Series::D2, Series::D5, Series::D6})
        for (bool e : {true, false}) {
            const Bracket b = growth_bracket(s, e, c.lambda1_D);
            C = std::max({C, b.hi, 1.0 / b.lo});
        }
    return C;
}

bool full_support(const EigenFn& fn, int level) {
    const ValueGrid g = extend(fn, level);
    const double tol = 1e-9 * g.sup_norm();
    for (const auto& cell : g.graph->cells(level)) {
        double m = 0;
        for (auto v : cell) m = std::max(m, std::abs(g.values[static_cast<std::size_t>(v)]));
        if (m < tol) return false;
    }
    return true;
}

}  // namespace

SuiteReport verify_growth_bracket(const VerifyConfig& cfg) {
    SuiteReport rep;
    rep.suite = "thm1";
    std::mt19937_64 rng(cfg.rng_seed ^ 0x7131);
    std::normal_distribution<double> g;
    const auto& c = constants();
    const double x_max = std::pow(5.0, 5) * c.psi5;
    const double C = global_constant();
    double tightest = 0;
    std::int64_t rejected = 0, eigenvalues = 0;
    for (BoundaryKind kind : {BoundaryKind::Dirichlet, BoundaryKind::Neumann}) {
        for (const auto& e : enumerate_spectrum(kind, x_max)) {
            ++eigenvalues;
            const std::string tag = kind_name(kind) + " " + series_name(e.series) + " m0=" + std::to_string(e.m0) + " eps=" + e.eps.str();
            if (e.series == Series::N0) {
                const EigenFn fn = EigenFn::from_seed(std::vector<double>(static_cast<std::size_t>(vertex_count(1)), 1.0), e.path());
                const CountReport cr = count_exact(fn, cfg.count);
                ++rep.samples;
                rep.check(cr.count == 0 && fn.lambda == 0.0, "constant eigenfunction has count " + std::to_string(cr.count));
                continue;
            }
            const DecimationPath path = e.path();
            const Eigen::MatrixXd basis = eigenspace(e.m0, kind, path.lambda_birth, cfg.eig_tol);
            rep.check(basis.cols() == e.multiplicity, "eigenspace dimension " + std::to_string(basis.cols()) + " for " + tag);
            const Bracket br = growth_bracket(e.series, e.eps.empty(), path.eigenvalue());
            for (int t = 0; t < cfg.growth_samples; ++t) {
                std::optional<EigenFn> fn;
                for (int attempt = 0; attempt < 50 && !fn; ++attempt) {
                    Eigen::VectorXd coef(basis.cols());
                    for (Eigen::Index k = 0; k < coef.size(); ++k) coef[k] = g(rng);
                    const Eigen::VectorXd v = basis * coef;
                    EigenFn cand = EigenFn::from_seed(std::vector<double>(v.data(), v.data() + v.size()), path);
                    if (full_support(cand, analysis_level(cand)))
                        fn = std::move(cand);
                    else
                        ++rejected;
                }
                if (!fn) {
                    rep.check(false, "no full-support sample for " + tag);
                    continue;
                }
                ++rep.samples;
                const std::string who = tag + " " + describe(*fn);
                const CountReport cr = count_exact(*fn, cfg.count);
                if (cr.ambiguous()) ++rep.flagged;
                check_signs(rep, cr, who);
                check_equivalence(rep, *fn, cr, cfg.count);
                const double N = static_cast<double>(cr.count);
                if (br.zero) {
                    rep.check(cr.count == 0, "expected count 0, got " + std::to_string(cr.count) + " for " + who);
                    continue;
                }
                const double ratio = N / std::pow(fn->lambda, c.d_S / 2.0);
                rep.check(br.lo <= ratio && ratio <= br.hi, "count " + std::to_string(cr.count) + " ratio " + fmt(ratio) + " outside [" + fmt(br.lo) +
                                                                 ", " + fmt(br.hi) + "] for " + who);
                rep.check(1.0 / C <= ratio && ratio <= C, "ratio " + fmt(ratio) + " outside the global bracket for " + who);
                if (ratio > 0) tightest = std::max({tightest, ratio, 1.0 / ratio});
            }
        }
    }
    rep.metrics["C"] = C;
    rep.metrics["empirical_C"] = tightest;
    rep.metrics["eigenvalues"] = static_cast<double>(eigenvalues);
    rep.metrics["rejected_samples"] = static_cast<double>(rejected);
    return rep;
}

SuiteReport verify_partition(const VerifyConfig&) {
    SuiteReport rep;
    rep.suite = "prop13";
    const double g5 = 1.0 / std::sqrt(5.0);
    for (const std::vector<double>& gammas : {std::vector<double>{g5, g5, g5}, std::vector<double>{0.5, 0.5, 0.25}}) {
        const double gmin = *std::min_element(gammas.begin(), gammas.end());
        double worst_sum = 0;
        for (int k = 0; k < 20; ++k) {
            const double x = std::pow(10.0, 6.0 * k / 19.0);
            const ThetaPartition t = theta_partition(x, gammas);
            const std::string who = "x=" + fmt(x) + " gammas=(" + fmt(gammas[0]) + "," + fmt(gammas[1]) + "," + fmt(gammas[2]) + ")";
            rep.check(is_prefix_free_cover(t), "not a prefix-free cover at " + who);
            double s = 0;
            for (const auto& w : t.words) s += std::pow(t.gamma_of(w), t.d_S);
            worst_sum = std::max(worst_sum, std::abs(s - 1.0));
            rep.check(std::abs(s - 1.0) <= 1e-12, "sum of gamma_w^d = " + fmt(s) + " at " + who);
            const double theta = static_cast<double>(t.size());
            const double scale = std::pow(x, t.d_S / 2.0);
            rep.check(scale < theta, "theta(x) = " + fmt(theta) + " not above x^{d/2} at " + who);
            rep.check(theta <= std::pow(1.0 / gmin, t.d_S) * scale * (1 + 1e-12), "theta(x) = " + fmt(theta) + " above the upper bound at " + who);
        }
        rep.metrics[gammas[2] == g5 ? "equal.max_sum_defect" : "unequal.max_sum_defect"] = worst_sum;
    }
    return rep;
}

SuiteReport verify_prelocalized(const VerifyConfig& cfg) {
    SuiteReport rep;
    rep.suite = "prop14";
    rep.check(find_prelocalized(1, cfg.eig_tol).empty(), "level 1 has a pre-localized vector");
    const auto found = find_prelocalized(2, cfg.eig_tol);
    rep.check(!found.empty(), "find_prelocalized(2) is empty");
    if (found.empty()) return rep;
    bool has_six = false;
    for (const auto& cluster : found) {
        has_six = has_six || std::abs(cluster.lambda_m - 6.0) <= cfg.eig_tol;
        const std::string tag = "lambda_m=" + fmt(cluster.lambda_m);
        rep.metrics[tag + ".dimension"] = static_cast<double>(cluster.basis.cols());
        const Eigen::VectorXd u = cluster.basis.col(0) / cluster.basis.col(0).cwiseAbs().maxCoeff();
        const EigenFn base = EigenFn::from_seed(std::vector<double>(u.data(), u.data() + u.size()), DecimationPath(2, cluster.lambda_m, BranchWord()));
        for (int n = 1; n <= 2; ++n) {
            const EigenFn un = replicate_into_cells(base, n);
            const std::string who = tag + " u_" + std::to_string(n);
            const CountReport cr = count_exact(un, cfg.count);
            if (cr.ambiguous()) ++rep.flagged;
            ++rep.samples;
            rep.metrics[who + ".count"] = static_cast<double>(cr.count);
            rep.check(cr.count >= pow3(n), "count " + std::to_string(cr.count) + " below 3^" + std::to_string(n) + " for " + who);
            check_signs(rep, cr, who);
            const double scale = extend(un, un.path.m0 + 2).sup_norm();
            double worst = 0;
            for (int i = 1; i <= 3; ++i) {
                worst = std::max(worst, std::abs(un.seed[static_cast<std::size_t>(i - 1)]) / scale);
                worst = std::max(worst, std::abs(normal_derivative(un, i)) / scale);
            }
            rep.metrics[who + ".boundary_defect"] = worst;
            rep.check(worst <= 1e-7, "boundary values or normal derivatives reach " + fmt(worst) + " for " + who);
        }
    }
    rep.check(has_six, "no pre-localized cluster at lambda_m = 6 on level 2");
    return rep;
}

SuiteReport verify_derivatives(const VerifyConfig& cfg) {
    SuiteReport rep;
    rep.suite = "derivatives";
    std::mt19937_64 rng(cfg.rng_seed ^ 0xd0);
    std::uniform_real_distribution<double> birth(0.05, 5.9);
    std::uniform_int_distribution<int> len(1, 3), corner(1, 3);
    double worst_match = 0, worst_zero = 0, least_perturbed = 1e300;
    for (int t = 0; t < cfg.derivative_samples; ++t) {
        const Triple a = gaussian_triple(rng);
        const BranchWord eps = t % 2 == 0 ? BranchWord() : random_eps(rng, len(rng));
        const EigenFn fn = EigenFn::from_boundary(a, DecimationPath(0, birth(rng), eps));
        const double scale = extend(fn, static_cast<int>(eps.size()) + 8).sup_norm();
        for (int i = 1; i <= 3; ++i)
            for (int j = i + 1; j <= 3; ++j) {
                const double s = normal_derivative(restrict_to_cell(fn, Word{i}), j) + normal_derivative(restrict_to_cell(fn, Word{j}), i);
                worst_match = std::max(worst_match, std::abs(s) / scale);
                rep.check(std::abs(s) <= 1e-6 * scale, "matching defect " + fmt(s) + " at p_" + std::to_string(i) + std::to_string(j) + " for " + describe(fn));
            }
        ++rep.samples;
    }
    for (int t = 0; t < cfg.derivative_samples; ++t) {
        double alpha;
        do alpha = birth(rng);
        while (std::abs(alpha - 4.0) < 0.3);
        const int i = corner(rng);
        const int j = i % 3 + 1, k = j % 3 + 1;
        Triple a = gaussian_triple(rng);
        a[i - 1] = 2.0 * (a[j - 1] + a[k - 1]) / (4.0 - alpha);
        a /= a.cwiseAbs().maxCoeff();
        const EigenFn fn = EigenFn::from_boundary(a, DecimationPath(0, alpha, BranchWord()));
        const double d0 = std::abs(normal_derivative(fn, i));
        worst_zero = std::max(worst_zero, d0);
        rep.check(d0 < 1e-6, "derivative " + fmt(d0) + " on the zero line for " + describe(fn));
        Triple b = a;
        b[i - 1] += 0.05;
        const double d1 = std::abs(normal_derivative(EigenFn::from_boundary(b, DecimationPath(0, alpha, BranchWord())), i));
        least_perturbed = std::min(least_perturbed, d1);
        rep.check(d1 > 1e-3, "derivative " + fmt(d1) + " after perturbation for " + describe(fn));
        ++rep.samples;
    }
    rep.metrics["matching_max"] = worst_match;
    rep.metrics["zero_line_max"] = worst_zero;
    rep.metrics["perturbed_min"] = least_perturbed;
    return rep;
}

SuiteReport verify_gaussgreen(const VerifyConfig& cfg) {
    SuiteReport rep;
    rep.suite = "gaussgreen";
    std::mt19937_64 rng(cfg.rng_seed ^ 0x66);
    std::uniform_real_distribution<double> birth(0.05, 5.9);
    std::vector<EigenFn> fns;
    for (int t = 0; t < 20; ++t) {
        const BranchWord eps = t % 2 == 0 ? BranchWord() : random_eps(rng, 1 + t % 3);
        fns.push_back(EigenFn::from_boundary(gaussian_triple(rng), DecimationPath(0, birth(rng), eps)));
    }
    {
        const Eigen::MatrixXd d5 = eigenspace(1, BoundaryKind::Dirichlet, 5.0);
        const Eigen::VectorXd v = d5.col(0);
        fns.push_back(EigenFn::from_seed(std::vector<double>(v.data(), v.data() + v.size()), DecimationPath(1, 5.0, BranchWord(), Series::D5)));
        const Eigen::MatrixXd n6 = eigenspace(1, BoundaryKind::Neumann, 6.0);
        const Eigen::VectorXd w = n6.col(0);
        fns.push_back(EigenFn::from_seed(std::vector<double>(w.data(), w.data() + w.size()), DecimationPath(1, 6.0, BranchWord(), Series::N6)));
    }
    double worst = 0;
    for (const auto& fn : fns) {
        const int base = fn.path.settle_level();
        double prev = 1e300;
        double rel = 0;
        for (int M = base + 6; M <= base + 10; M += 2) {
            const double r = gauss_green_residual(fn, M);
            const ValueGrid gr = extend(fn, M);
            const double size = discrete_energy(gr) + std::abs(fn.lambda) * quadrature_l2sq(gr);
            rel = size > 0 ? r / size : r;
            rep.check(r <= prev * (1 + 1e-9) || r <= 1e-12 * size, "residual does not decrease at M=" + std::to_string(M) + " for " + describe(fn));
            prev = r;
        }
        worst = std::max(worst, rel);
        rep.check(rel <= 1e-6, "relative residual " + fmt(rel) + " for " + describe(fn));
        ++rep.samples;
    }
    rep.metrics["relative_residual_max"] = worst;
    return rep;
}

SuiteReport verify_projective(const VerifyConfig& cfg) {
    SuiteReport rep;
    rep.suite = "projective";
    std::mt19937_64 rng(cfg.rng_seed ^ 0x9e);
    std::uniform_real_distribution<double> alpha_dist(0.0, 6.0), unit(0.0, 1.0);
    std::normal_distribution<double> g;
    double worst = 0;
    for (int t = 0; t < cfg.projective_samples; ++t) {
        double alpha;
        do alpha = alpha_dist(rng);
        while (std::abs(alpha - 2.0) < 1e-3 || std::abs(alpha - 5.0) < 1e-3 || alpha < 1e-3);
        Triple x = gaussian_triple(rng);
        if (t % 4 == 0) x.array() -= x.mean();
        for (int i = 1; i <= 3; ++i) {
            const double d = parallel_defect(lift(project(apply_P(alpha, i, x))), lift(apply_P_proj(alpha, i, project(x))));
            worst = std::max(worst, d);
            rep.check(d <= 1e-9, "pi P != P pi at alpha=" + fmt(alpha) + " i=" + std::to_string(i) + " defect " + fmt(d));
        }
    }
    rep.metrics["commutation_max"] = worst;
    for (int k = 0; k < 20; ++k) {
        const double alpha = 0.15 + 5.7 * k / 19.0;
        if (std::abs(alpha - 2.0) < 1e-3 || std::abs(alpha - 5.0) < 1e-3) continue;
        Eigen::EigenSolver<Eigen::Matrix3d> es(transfer_matrix(alpha, 1));
        std::vector<double> got, want;
        for (int j = 0; j < 3; ++j) got.push_back(es.eigenvalues()[j].real());
        for (double v : transfer_eigenvalues(alpha)) want.push_back(v);
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        for (int j = 0; j < 3; ++j)
            rep.check(std::abs(got[static_cast<std::size_t>(j)] - want[static_cast<std::size_t>(j)]) <= 1e-9 * std::max(1.0, std::abs(want[static_cast<std::size_t>(j)])),
                      "transfer eigenvalue mismatch at alpha=" + fmt(alpha));
    }
    // preimage regions: backward formula vs forward map + classification
    std::int64_t compared = 0, skipped = 0;
    auto regime = [&](double lo, double hi, bool point) {
        for (int t = 0; t < cfg.region_samples; ++t) {
            const double alpha = point ? lo : lo + (hi - lo) * (0.001 + 0.998 * unit(rng));
            RP2Point p;
            if (unit(rng) < 0.9) {
                const double s = std::exp(g(rng));
                p = RP2Point::affine(s * g(rng), s * g(rng));
            } else {
                p = RP2Point::at_infinity(g(rng), g(rng));
            }
            const int i = 1 + t % 3;
            const RegionClass fwd = classify(alpha, apply_P_proj(alpha, i, p), cfg.count.region_tol);
            if (fwd.near_boundary || fwd.on_boundary()) {
                ++skipped;
                continue;
            }
            ++compared;
            rep.check(fwd.in_D() == preimage_classify(alpha, i, p),
                      "preimage region disagrees at alpha=" + fmt(alpha) + " i=" + std::to_string(i) + " p=" + p.str());
        }
    };
    regime(0.0, 2.0, false);
    regime(3.0, 5.0, false);
    regime(3.0, 3.0, true);
    rep.metrics["region_compared"] = static_cast<double>(compared);
    rep.metrics["region_skipped"] = static_cast<double>(skipped);
    return rep;
}

std::vector<std::string> suite_names() {
    return {"decimation", "psi",    "thm34",      "conditionA",  "thm35",      "thm1",       "prop13",
            "prop14",     "signs",  "gaussgreen", "derivatives", "projective", "equivalence"};
}

SuiteReport run_suite(const std::string& name, const VerifyConfig& cfg) {
    if (name == "decimation") return verify_decimation(cfg, cfg.decimation_max_level);
    if (name == "psi") return verify_psi(cfg);
    if (name == "thm34") return verify_condition_a(cfg, true);
    if (name == "conditionA") return verify_condition_a(cfg, false);
    if (name == "thm35") return verify_ueps_bracket(cfg);
    if (name == "thm1") return verify_growth_bracket(cfg);
    if (name == "prop13") return verify_partition(cfg);
    if (name == "prop14") return verify_prelocalized(cfg);
    if (name == "gaussgreen") return verify_gaussgreen(cfg);
    if (name == "derivatives") return verify_derivatives(cfg);
    if (name == "projective") return verify_projective(cfg);
    if (name == "signs" || name == "equivalence") {
        SuiteReport all;
        all.suite = name;
        for (auto r : {verify_condition_a(cfg, false), verify_ueps_bracket(cfg), verify_growth_bracket(cfg)}) all.merge(r);
        // only the aggregated invariant decides
        all.pass = name == "signs" ? all.sign_violations == 0 : all.equivalence_mismatches == 0;
        return all;
    }
    throw DomainError("unknown suite: " + name);
}

}  // namespace sgx
