#include <kolmo/cli.hpp>

#include <kolmo/errors.hpp>
#include <kolmo/hankel.hpp>
#include <kolmo/io.hpp>
#include <kolmo/kernels.hpp>
#include <kolmo/legendre.hpp>
#include <kolmo/moments.hpp>
#include <kolmo/sampler.hpp>
#include <kolmo/simd.hpp>
#include <kolmo/verify.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace kolmo::cli {

namespace {

constexpr const char* kVersion = "1.0.0";

struct Globals {
    std::string format = "csv";
    std::string out;
    int threads = 1;
    bool no_timestamp = false;
};

template <class T>
std::string join(const std::vector<T>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ' ';
        if constexpr (std::is_same_v<T, double>)
            os << io::format_double(v[i]);
        else
            os << v[i];
    }
    return os.str();
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Opens the destination and hands it to `body`; stdout when no path is set.
void with_output(const Globals& g, const std::function<void(std::ostream&)>& body, std::ostream& out) {
    if (g.out.empty() || g.out == "-") {
        body(out);
        return;
    }
    std::ofstream file(g.out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + g.out + " for writing");
    body(file);
    file.flush();
    if (!file) throw std::runtime_error("write to " + g.out + " failed");
}

io::Table start_table(const std::string& command, const Globals& g) {
    io::Table t;
    t.add_meta("tool", std::string("kolmo ") + kVersion);
    t.add_meta("command", command);
    t.add_meta("format", g.format);
    t.add_meta("threads", std::to_string(g.threads));
    t.add_meta("simd", std::string(simd::name(simd::active_isa())));
    if (!g.no_timestamp) t.add_meta("timestamp", utc_timestamp());
    return t;
}

void emit(const io::Table& t, const Globals& g, std::ostream& out) {
    const auto fmt = g.format == "json" ? io::Format::json : io::Format::csv;
    with_output(g, [&](std::ostream& os) { io::write_table(os, t, fmt); }, out);
}

sampler::PathGrid grid_with(const std::vector<double>& ts) {
    std::set<double> all(ts.begin(), ts.end());
    all.insert(0.0);
    all.insert(1.0);
    return sampler::PathGrid(std::vector<double>(all.begin(), all.end()));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Iterated Kolmogorov loops: exact moments, kernels, Hankel representation and sampling",
                 "kolmo"};
    app.fallthrough();
    app.require_subcommand(1);
    Globals g;
    app.add_option("--format", g.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->envname("KOLMO_FORMAT");
    app.add_option("--out", g.out, "output file (default: standard output)")->envname("KOLMO_OUT");
    app.add_option("--threads", g.threads, "worker thread cap")->check(CLI::Range(1, 1024))->envname("KOLMO_THREADS");
    app.add_flag("--no-timestamp", g.no_timestamp, "omit the timestamp metadata field")->envname("KOLMO_NO_TIMESTAMP");

    std::function<int()> action;

    // coeffs
    int c_a = 0, c_k = 0;
    bool c_verify = false;
    auto* coeffs = app.add_subcommand("coeffs", "partial fraction coefficients b_{a,k}^l");
    coeffs->add_option("--a", c_a)->required()->check(CLI::Range(0, moments::CoeffTable::kDefaultMaxA));
    coeffs->add_option("--k", c_k)->required()->check(CLI::Range(0, moments::CoeffTable::kDefaultMaxK));
    coeffs->add_flag("--verify", c_verify, "cross-check against an independent linear solve");
    coeffs->callback([&] {
        action = [&] {
            auto t = start_table("coeffs", g);
            t.add_meta("a", std::to_string(c_a));
            t.add_meta("k", std::to_string(c_k));
            t.add_meta("verify", c_verify ? "true" : "false");
            const auto b = moments::pfd_coeffs(c_a, c_k);
            bool match = true;
            if (c_verify) match = b == moments::pfd_coeffs_by_solve(c_a, c_k);
            t.columns = {"a", "k", "l", "b"};
            if (c_verify) t.columns.push_back("oracle_match");
            for (std::size_t l = 0; l < b.size(); ++l) {
                std::vector<io::Cell> row{(long long)c_a, (long long)c_k, (long long)l, io::Fraction{b[l]}};
                if (c_verify) row.emplace_back(match);
                t.rows.push_back(std::move(row));
            }
            emit(t, g, out);
            return match ? kOk : kVerifyFailed;
        };
    });

    // moments
    int m_N = 16, m_kmax = 4;
    auto* moms = app.add_subcommand("moments", "even moments of S_N against the semicircle");
    moms->add_option("--N", m_N)->check(CLI::Range(1, 100000));
    moms->add_option("--k-max", m_kmax)->check(CLI::Range(0, moments::CoeffTable::kDefaultMaxK));
    moms->callback([&] {
        action = [&] {
            auto t = start_table("moments", g);
            t.add_meta("N", std::to_string(m_N));
            t.add_meta("k_max", std::to_string(m_kmax));
            t.columns = {"k", "sn_even", "sn_even_double", "semicircle", "gap", "bound", "sn_odd"};
            for (int k = 0; k <= m_kmax; ++k) {
                const Rational sn = moments::sn_even_moment_tail(k, m_N);
                const Rational sc = moments::semicircle_even_moment(static_cast<unsigned>(k));
                const Rational bound = moments::sn_moment_gap_constant(k) / m_N;
                t.rows.push_back({(long long)k, io::Fraction{sn}, sn.get_d(), io::Fraction{sc},
                                  Rational(sn - sc).get_d(), m_N >= 2 * k + 1 ? bound.get_d() : NAN,
                                  io::Fraction{moments::sn_odd_moment_exact(k, std::min(m_N, 40))}});
            }
            emit(t, g, out);
            return kOk;
        };
    });

    // kernel-grid
    int kg_N = 64, kg_grid = 101;
    std::string kg_what = "S";
    auto* kgrid = app.add_subcommand("kernel-grid", "C_N, R_N or S_N on an equispaced grid");
    kgrid->add_option("--N", kg_N)->required()->check(CLI::Range(1, 10000000));
    kgrid->add_option("--grid", kg_grid, "points per axis")->check(CLI::Range(2, 100000));
    kgrid->add_option("--what", kg_what)->check(CLI::IsMember({"C", "R", "S"}));
    kgrid->callback([&] {
        action = [&] {
            auto t = start_table("kernel-grid", g);
            t.add_meta("N", std::to_string(kg_N));
            t.add_meta("grid", std::to_string(kg_grid));
            t.add_meta("what", kg_what);
            const auto kind = kg_what == "C" ? kernels::GridKind::C
                              : kg_what == "R" ? kernels::GridKind::R
                                               : kernels::GridKind::S;
            const auto pts = kernels::kernel_grid(kind, kg_N, kg_grid, g.threads);
            if (kind == kernels::GridKind::S) {
                t.columns = {"x", "S_N"};
                for (const auto& p : pts) t.rows.push_back({p.a, p.value});
            } else if (kind == kernels::GridKind::R) {
                t.columns = {"x", "y", "R_N"};
                for (const auto& p : pts) t.rows.push_back({p.a, p.b, p.value});
            } else {
                t.columns = {"s", "t", "C_N"};
                for (const auto& p : pts) t.rows.push_back({p.a, p.b, p.value});
            }
            emit(t, g, out);
            return kOk;
        };
    });

    // decorr
    double d_s = 0.5, d_beta = 0.5;
    std::vector<int> d_N{100, 400, 1600};
    std::vector<double> d_t{1.0};
    auto* decorr = app.add_subcommand("decorr", "N C_N(s, s + N^{-beta} t)");
    decorr->add_option("--s", d_s);
    decorr->add_option("--beta", d_beta);
    decorr->add_option("--N-list", d_N)->delimiter(',');
    decorr->add_option("--t-list", d_t)->delimiter(',');
    decorr->callback([&] {
        action = [&] {
            auto t = start_table("decorr", g);
            t.add_meta("s", io::format_double(d_s));
            t.add_meta("beta", io::format_double(d_beta));
            t.add_meta("N_list", join(d_N));
            t.add_meta("t_list", join(d_t));
            t.columns = {"N", "beta", "t", "NC_N"};
            for (const auto& r : kernels::decorrelation_scan(d_s, d_t, d_beta, d_N))
                t.rows.push_back({(long long)r.N, r.beta, r.t, r.value});
            emit(t, g, out);
            return kOk;
        };
    });

    // sample
    int s_N = 4, s_M = 32, s_R = 1000, s_stride = 1;
    std::uint64_t s_seed = 1;
    std::string s_method = "spectral";
    auto* sample = app.add_subcommand("sample", "draw loop paths on a uniform grid");
    sample->add_option("--N", s_N)->required()->check(CLI::Range(1, 100000));
    sample->add_option("--M", s_M, "grid intervals")->check(CLI::Range(1, 1 << 20));
    sample->add_option("--R", s_R, "paths")->check(CLI::Range(2, 1 << 26));
    sample->add_option("--seed", s_seed)->envname("KOLMO_SEED");
    sample->add_option("--method", s_method)->check(CLI::IsMember({"spectral", "pathwise"}));
    sample->add_option("--stride", s_stride, "pathwise: record every stride-th time")->check(CLI::PositiveNumber);
    sample->callback([&] {
        action = [&] {
            auto t = start_table("sample", g);
            t.add_meta("N", std::to_string(s_N));
            t.add_meta("M", std::to_string(s_M));
            t.add_meta("R", std::to_string(s_R));
            t.add_meta("seed", std::to_string(s_seed));
            t.add_meta("method", s_method);
            t.add_meta("stride", std::to_string(s_stride));
            const auto grid = sampler::PathGrid::uniform(s_M);
            const auto e = s_method == "spectral"
                               ? sampler::sample_spectral(s_N, grid, s_R, s_seed, g.threads)
                               : sampler::sample_pathwise(s_N, grid, s_R, s_seed, g.threads, s_stride);
            if (e.method == sampler::Method::spectral) t.add_meta("jitter", io::format_double(e.jitter));
            t.columns = {"path_id", "t", "value"};
            for (int r = 0; r < e.R; ++r)
                for (int j = 0; j <= e.grid.M(); ++j) t.rows.push_back({(long long)r, e.grid[j], e.value(r, j)});
            emit(t, g, out);
            return kOk;
        };
    });

    // fluctuation
    std::vector<int> f_N{16, 64, 256};
    std::vector<double> f_t{0.25, 0.5, 0.75};
    int f_R = 10000;
    std::uint64_t f_seed = 1;
    auto* fluct = app.add_subcommand("fluctuation", "variance of sqrt(N) L_t against N C_N and the semicircle");
    fluct->add_option("--N-list", f_N)->delimiter(',');
    fluct->add_option("--t-list", f_t)->delimiter(',');
    fluct->add_option("--R", f_R)->check(CLI::Range(2, 1 << 26));
    fluct->add_option("--seed", f_seed)->envname("KOLMO_SEED");
    fluct->callback([&] {
        action = [&] {
            auto t = start_table("fluctuation", g);
            t.add_meta("N_list", join(f_N));
            t.add_meta("t_list", join(f_t));
            t.add_meta("R", std::to_string(f_R));
            t.add_meta("seed", std::to_string(f_seed));
            for (double v : f_t)
                if (!(v > 0.0 && v < 1.0)) throw DomainError("fluctuation times must lie in (0, 1)");
            const auto grid = grid_with(f_t);
            t.columns = {"N", "t", "emp_var", "emp_var_se", "analytic_NCn", "semicircle"};
            for (int N : f_N) {
                const auto e = sampler::sample_spectral(N, grid, f_R, f_seed, g.threads);
                for (const auto& r : sampler::fluctuation_stats(e)) {
                    if (std::find(f_t.begin(), f_t.end(), r.t) == f_t.end()) continue;
                    t.rows.push_back({(long long)r.N, r.t, r.emp_var, r.emp_var_se, r.analytic_NCn, r.semicircle});
                }
            }
            emit(t, g, out);
            return kOk;
        };
    });

    // hankel-check
    int h_N = 4;
    auto* hank = app.add_subcommand("hankel-check", "Hankel representation invariants and alpha polynomials");
    hank->add_option("--N", h_N)->required()->check(CLI::Range(1, hankel::kDefaultCap));
    hank->callback([&] {
        action = [&] {
            const auto results = verify::hankel_checks(h_N);
            for (const auto& r : results) err << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
            const auto base = start_table("hankel-check", g);
            nlohmann::ordered_json doc;
            doc["schema_version"] = io::kSchemaVersion;
            nlohmann::ordered_json meta = nlohmann::ordered_json::object();
            for (const auto& [k, v] : base.meta) meta[k] = v;
            meta["N"] = std::to_string(h_N);
            doc["meta"] = meta;
            nlohmann::ordered_json rows = nlohmann::ordered_json::array();
            for (const auto& r : results) rows.push_back({{"check", r.name}, {"status", r.pass ? "PASS" : "FAIL"}, {"detail", r.detail}});
            doc["rows"] = rows;
            if (verify::all_pass(results)) {
                nlohmann::ordered_json alphas = nlohmann::ordered_json::array();
                for (int l = 1; l <= h_N; ++l) {
                    nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
                    const auto poly = hankel::alpha_closed(h_N, l);
                    for (int d = 0; d <= h_N; ++d) coeffs.push_back(to_fraction_string(poly.coeff(d)));
                    alphas.push_back({{"l", l}, {"coefficients", coeffs}});
                }
                doc["alphas"] = alphas;
            }
            with_output(g, [&](std::ostream& os) { os << doc.dump(2) << '\n'; }, out);
            return verify::all_pass(results) ? kOk : kVerifyFailed;
        };
    });

    // asymptotics
    std::vector<int> a_n{50, 100, 200, 400};
    std::string a_kind = "both";
    int a_points = 2001;
    auto* asym = app.add_subcommand("asymptotics", "scaled error of the Darboux main term");
    asym->add_option("--n-list", a_n)->delimiter(',');
    asym->add_option("--kind", a_kind)->check(CLI::IsMember({"legendre", "integral", "both"}));
    asym->add_option("--theta-points", a_points)->check(CLI::Range(2, 1000000));
    asym->callback([&] {
        action = [&] {
            auto t = start_table("asymptotics", g);
            t.add_meta("n_list", join(a_n));
            t.add_meta("kind", a_kind);
            t.add_meta("theta_points", std::to_string(a_points));
            t.add_meta("theta_range", "pi/6..5pi/6");
            t.columns = {"kind", "n", "max_scaled_error"};
            const double lo = std::numbers::pi / 6, hi = 5 * std::numbers::pi / 6;
            for (int n : a_n) {
                if (a_kind != "integral")
                    t.rows.push_back({std::string("legendre"), (long long)n,
                                      legendre::darboux_scaled_error(legendre::DarbouxApproximant::legendre(n, lo, hi), a_points)});
                if (a_kind != "legendre")
                    t.rows.push_back({std::string("integral"), (long long)n,
                                      legendre::darboux_scaled_error(legendre::DarbouxApproximant::integral(n, lo, hi), a_points)});
            }
            emit(t, g, out);
            return kOk;
        };
    });

    // verify-all
    std::string v_level = "exact";
    auto* ver = app.add_subcommand("verify-all", "run the built-in invariant suites");
    ver->add_option("--level", v_level)->check(CLI::IsMember({"exact", "full"}));
    ver->callback([&] {
        action = [&] {
            auto t = start_table("verify-all", g);
            t.add_meta("level", v_level);
            const auto results = verify::run_suites(v_level == "full" ? verify::Level::full : verify::Level::exact);
            t.columns = {"suite", "check", "status", "detail"};
            for (const auto& r : results)
                t.rows.push_back({r.suite, r.name, std::string(r.pass ? "PASS" : "FAIL"), r.detail});
            emit(t, g, out);
            return verify::all_pass(results) ? kOk : kVerifyFailed;
        };
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }
    try {
        return action();
    } catch (const CapacityError& e) {
        err << "kolmo: " << e.what() << '\n';
    } catch (const DomainError& e) {
        err << "kolmo: " << e.what() << '\n';
    } catch (const FactorizationError& e) {
        err << "kolmo: " << e.what() << " (jitter " << e.jitter() << ")\n";
    } catch (const std::exception& e) {
        err << "kolmo: " << e.what() << '\n';
    }
    return kUsage;
}

}  // namespace kolmo::cli
