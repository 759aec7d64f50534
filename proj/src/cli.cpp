#include "sgx/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sgx/errors.hpp"
#include "sgx/io.hpp"
#include "sgx/oracle.hpp"
#include "sgx/spectrum.hpp"
#include "sgx/verify.hpp"

namespace sgx {

namespace {

struct UsageError : Error {
    using Error::Error;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(trim(item)));
        } catch (const std::exception&) {
            throw UsageError("not a number: '" + item + "'");
        }
    }
    return out;
}

Triple parse_triple(const std::string& s) {
    const auto v = parse_list(s);
    if (v.size() != 3) throw UsageError("expected three comma-separated values, got '" + s + "'");
    return Triple(v[0], v[1], v[2]);
}

// artifacts also land in $SGX_OUTPUT_DIR when it is set
void emit(std::ostream& out, const std::string& name, const std::string& body) {
    out << body;
    if (!body.empty() && body.back() != '\n') out << '\n';
    if (const char* dir = std::getenv("SGX_OUTPUT_DIR"); dir && *dir) {
        std::filesystem::create_directories(dir);
        std::ofstream f(std::filesystem::path(dir) / name);
        f << body;
    }
}

CountOptions count_options(const RunConfig& rc) {
    CountOptions o;
    o.depth_cap = rc.depth_cap;
    o.region_tol = rc.region_tol;
    o.tie_tol = rc.tie_tol;
    return o;
}

double birth_value_of(Series s) {
    switch (s) {
        case Series::D2: return 2.0;
        case Series::D5:
        case Series::N5: return 5.0;
        case Series::D6:
        case Series::N6: return 6.0;
        case Series::N6p: return 3.0;
        case Series::N0: return 0.0;
        default: return -1.0;
    }
}

}  // namespace

void RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        try {
            if (key == "psi_tol") psi_tol = std::stod(value);
            else if (key == "region_tol") region_tol = std::stod(value);
            else if (key == "eig_tol") eig_tol = std::stod(value);
            else if (key == "tie_tol") tie_tol = std::stod(value);
            else if (key == "depth_cap") depth_cap = std::stoi(value);
            else if (key == "max_level") max_level = std::stoi(value);
            else if (key == "rng_seed") rng_seed = std::stoull(value);
            else if (key == "format") format = value;
            else throw UsageError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        } catch (const std::logic_error&) {
            throw UsageError(path + ":" + std::to_string(lineno) + ": bad value for " + key);
        }
    }
}

void RunConfig::validate() const {
    if (!(psi_tol > 0 && region_tol > 0 && eig_tol > 0 && tie_tol > 0)) throw UsageError("tolerances must be positive");
    if (max_level < 0 || max_level > GasketGraph::kMaxLevel) throw UsageError("max_level must lie in [0, 14]");
    if (depth_cap < 1) throw UsageError("depth_cap must be positive");
    if (format != "csv" && format != "json") throw UsageError("format must be csv or json");
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spectral decimation, extremum counting and verification on the Sierpinski gasket", "sgx"};
    app.require_subcommand(1);
    RunConfig rc;
    std::string config_path;
    std::uint64_t seed_override = 0;
    std::string format_override;
    app.add_option("--config", config_path, "key=value file overriding the run configuration");
    app.add_option("--seed", seed_override, "rng seed (overrides the config file)");
    app.add_option("--format", format_override, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* spectrum_cmd = app.add_subcommand("spectrum", "eigenvalues up to a bound with series data");
    std::string kind_s = "d";
    double x_max = 1000;
    std::string weyl_points;
    spectrum_cmd->add_option("--kind", kind_s, "d or n")->required();
    spectrum_cmd->add_option("--max", x_max, "largest eigenvalue")->required();
    spectrum_cmd->add_option("--weyl", weyl_points, "comma-separated x values: emit the counting function instead");

    auto* oracle_cmd = app.add_subcommand("oracle", "dense discrete spectrum at a small level");
    int level = 1;
    bool crosscheck = false, edges = false;
    oracle_cmd->add_option("--level", level, "level m <= 5")->required();
    oracle_cmd->add_option("--kind", kind_s, "d or n")->required();
    oracle_cmd->add_flag("--crosscheck", crosscheck, "compare against the decimation prediction");
    oracle_cmd->add_flag("--edges", edges, "emit the level-m edge list instead");

    auto* eigen_cmd = app.add_subcommand("eigenfn", "extend an eigenfunction to a level and write its grid");
    std::string series_s = "Generic", eps_s, a_s = "1,0,0", out_path = "-", coef_s;
    int m0 = 0, grid_level = 6;
    double lambda0 = 1.0;
    eigen_cmd->add_option("--series", series_s, "D2 D5 D6 N0 N5 N6 N6' or Generic");
    eigen_cmd->add_option("--m0", m0, "birth level");
    eigen_cmd->add_option("--eps", eps_s, "branch word such as +-+");
    eigen_cmd->add_option("--a", a_s, "boundary triple (Generic series)");
    eigen_cmd->add_option("--lambda0", lambda0, "lambda_0 in (0,6) for the Generic series");
    eigen_cmd->add_option("--coef", coef_s, "coefficients over the oracle eigenspace basis (named series)");
    eigen_cmd->add_option("--level", grid_level, "grid level M")->required();
    eigen_cmd->add_option("--out", out_path, "output file, - for stdout");

    auto* extrema_cmd = app.add_subcommand("extrema", "count extreme sets of a stored eigenfunction grid");
    std::string in_path, method = "exact";
    extrema_cmd->add_option("--in", in_path, "grid CSV written by eigenfn")->required();
    extrema_cmd->add_option("--method", method, "exact or discrete")->check(CLI::IsMember({"exact", "discrete"}));

    auto* classify_cmd = app.add_subcommand("classify", "region of tau(u) for boundary data");
    std::string lambda_s;
    classify_cmd->add_option("--lambda", lambda_s, "eigenvalue in (0, lambda_1^D), or 'small'")->required();
    classify_cmd->add_option("--a", a_s, "boundary triple")->required();

    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    int samples = -1;
    verify_cmd->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
    verify_cmd->add_option("--samples", samples, "override the suite sample count");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (!config_path.empty()) rc.load(config_path);
        if (app.count("--seed")) rc.rng_seed = seed_override;
        if (!format_override.empty()) rc.format = format_override;
        rc.validate();

        if (*spectrum_cmd) {
            const BoundaryKind kind = parse_kind(kind_s);
            if (!weyl_points.empty()) {
                emit(out, "weyl_" + kind_name(kind) + ".csv", weyl_csv(kind, parse_list(weyl_points)));
                return 0;
            }
            const auto entries = enumerate_spectrum(kind, x_max);
            if (rc.format == "json") {
                nlohmann::json j = nlohmann::json::array();
                for (const auto& e : entries)
                    j.push_back({{"lambda", e.lambda}, {"series", series_name(e.series)}, {"m0", e.m0}, {"eps", e.eps.str()}, {"multiplicity", e.multiplicity}});
                emit(out, "spectrum_" + kind_name(kind) + ".json", j.dump(2));
            } else {
                emit(out, "spectrum_" + kind_name(kind) + ".csv", spectrum_csv(entries));
            }
            return 0;
        }
        if (*oracle_cmd) {
            const BoundaryKind kind = parse_kind(kind_s);
            if (edges) {
                emit(out, "edges_" + std::to_string(level) + ".csv", edge_list_csv(*build_graph(level)));
                return 0;
            }
            if (crosscheck) {
                if (level > 4) throw UsageError("--crosscheck needs level <= 4");
                const CrosscheckReport r = crosscheck_decimation(level, kind, rc.eig_tol * 0.1);
                emit(out, "crosscheck_" + std::to_string(level) + "_" + kind_name(kind) + ".csv", r.csv());
                if (!r.ok) err << "crosscheck mismatch, max deviation " << r.max_deviation << '\n';
                return r.ok ? 0 : 1;
            }
            const auto& ds = discrete_spectrum(level, kind);
            std::ostringstream os;
            os.precision(15);
            os << "level,kind,lambda_m,multiplicity\n";
            for (const auto& c : ds.clusters) os << level << ',' << kind_name(kind) << ',' << c.lambda << ',' << c.multiplicity << '\n';
            emit(out, "oracle_" + std::to_string(level) + "_" + kind_name(kind) + ".csv", os.str());
            return 0;
        }
        if (*eigen_cmd) {
            if (grid_level > rc.max_level) throw UsageError("grid level above max_level " + std::to_string(rc.max_level));
            const Series series = parse_series(series_s);
            const BranchWord eps = BranchWord::parse(eps_s);
            EigenFn fn;
            if (series == Series::Generic) {
                fn = EigenFn::from_boundary(parse_triple(a_s), DecimationPath(0, lambda0, eps));
            } else {
                if (series == Series::N0 || series == Series::D2 || series == Series::N6p) m0 = 1;
                const BoundaryKind kind = series_name(series)[0] == 'D' ? BoundaryKind::Dirichlet : BoundaryKind::Neumann;
                const double birth = birth_value_of(series);
                const Eigen::MatrixXd basis = eigenspace(m0, kind, birth, rc.eig_tol);
                Eigen::VectorXd coef = Eigen::VectorXd::Zero(basis.cols());
                if (coef_s.empty()) {
                    coef[0] = 1;
                } else {
                    const auto c = parse_list(coef_s);
                    if (static_cast<Eigen::Index>(c.size()) != basis.cols())
                        throw UsageError("--coef needs " + std::to_string(basis.cols()) + " values for this eigenspace");
                    for (Eigen::Index k = 0; k < coef.size(); ++k) coef[k] = c[static_cast<std::size_t>(k)];
                }
                const Eigen::VectorXd v = basis * coef;
                fn = EigenFn::from_seed(std::vector<double>(v.data(), v.data() + v.size()), DecimationPath(m0, birth, eps, series));
            }
            const ValueGrid g = extend(fn, grid_level);
            if (out_path == "-") {
                write_grid_csv(out, g, fn);
            } else {
                std::ofstream f(out_path);
                if (!f) throw UsageError("cannot write " + out_path);
                write_grid_csv(f, g, fn);
                out << "wrote level-" << grid_level << " grid (" << g.values.size() << " vertices, lambda " << fn.lambda << ") to " << out_path << '\n';
            }
            return 0;
        }
        if (*extrema_cmd) {
            std::ifstream f(in_path);
            if (!f) throw UsageError("cannot open " + in_path);
            const GridFile gf = read_grid_csv(f);
            CountReport r;
            if (method == "exact") {
                if (!gf.fn) throw UsageError("grid header carries no seed; use --method discrete");
                r = count_exact(*gf.fn, count_options(rc));
            } else {
                r = count_discrete(gf.grid, rc.tie_tol);
            }
            emit(out, "extrema.json", count_report_json(r));
            return 0;
        }
        if (*classify_cmd) {
            const double l1 = constants().lambda1_D;
            double lambda;
            if (lambda_s == "small") {
                lambda = 0.5 * l1;
            } else {
                try {
                    lambda = std::stod(lambda_s);
                } catch (const std::exception&) {
                    throw UsageError("--lambda must be a number or 'small'");
                }
            }
            if (!(lambda > 0 && lambda < l1)) throw UsageError("--lambda must lie in (0, lambda_1^D)");
            const double alpha = psi_inverse(lambda, rc.psi_tol);
            const Triple a = parse_triple(a_s);
            const RegionClass cls = classify_triple(alpha, a, ClassifyTolerance{rc.region_tol, std::min(rc.region_tol, 1e-11)});
            if (rc.format == "json") {
                emit(out, "classify.json", region_json(alpha, a, cls));
            } else {
                const RP2Point t = project(a);
                std::ostringstream os;
                os.precision(12);
                os << cls.name() << '\n' << "alpha " << alpha << '\n' << "tau " << t.str() << '\n';
                if (cls.near_boundary) os << "near_boundary\n";
                if (cls.near_median) os << "near_median\n";
                emit(out, "classify.txt", os.str());
            }
            return 0;
        }
        if (*verify_cmd) {
            VerifyConfig vc;
            vc.rng_seed = rc.rng_seed;
            vc.psi_tol = rc.psi_tol;
            vc.eig_tol = rc.eig_tol;
            vc.count = count_options(rc);
            if (samples > 0) {
                vc.condition_a_samples = samples;
                vc.ueps_samples = samples;
                vc.growth_samples = samples;
                vc.derivative_samples = samples;
                vc.projective_samples = samples;
                vc.region_samples = samples;
            }
            const SuiteReport r = run_suite(suite, vc);
            emit(out, "verify_" + suite + ".json", r.json());
            return r.pass ? 0 : 1;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        err << "invalid input: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace sgx
