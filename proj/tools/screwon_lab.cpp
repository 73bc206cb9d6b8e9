// screwon-lab: command-line front end for the Rajeev-Ranken laboratory.
//
// Subcommands: simulate | classify | spectrum | actionangle | verify.
// Exit codes: 0 success, 2 drift/residual/verification failure, 3 I/O error,
// 4 config parse error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "screwon/actionangle.hpp"
#include "screwon/conserved.hpp"
#include "screwon/dynamics.hpp"
#include "screwon/elliptic.hpp"
#include "screwon/io.hpp"
#include "screwon/lax.hpp"
#include "screwon/levelsets.hpp"
#include "screwon/quantum.hpp"
#include "screwon/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace screwon;

namespace {

constexpr int kExitBoundsViolated = 2;
constexpr int kExitIo = 3;
constexpr int kExitConfig = 4;

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    int workers = 1;
    std::uint64_t seed = 20250809;
    bool check_lax = false;
    bool json_out = false;
};

// every numeric value is emitted via the shortest round-trip decimal
json jnum(double v) { return json::parse(io::format_double(v)); }

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::ios_base::failure("cannot open for writing: " + path.string());
    f << text;
    if (!f) throw std::ios_base::failure("write failed: " + path.string());
}

ModelParams model_from(const io::Config& cfg) {
    ModelParams p;
    p.k = cfg.get_double("model", "k", 1.0);
    p.lambda = cfg.get_double("model", "lambda", 1.0);
    p.hbar = cfg.get_double("model", "hbar", 1.0);
    p.mu = cfg.get_double("model", "mu", 1.0);
    return p;
}

std::vector<double> parse_values(const std::string& text) {
    // "a,b,c" or "lo:hi:count" or a single number
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double lo, hi;
        int count;
        char c1, c2;
        std::istringstream is(text);
        if (!(is >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':' || count < 1)
            throw std::runtime_error("bad range syntax (expected lo:hi:count): " + text);
        for (int i = 0; i < count; ++i)
            out.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
        return out;
    }
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        out.push_back(std::stod(item));
    }
    if (out.empty()) throw std::runtime_error("no values in: " + text);
    return out;
}

// ------------------------------------------------------------- simulate

int cmd_simulate(const CommonOpts& opts, const io::Config& cfg) {
    const ModelParams p = model_from(cfg);
    PhaseState x0;
    const char* names[6] = {"L1", "L2", "L3", "S1", "S2", "S3"};
    for (int a = 0; a < 3; ++a) {
        x0.L[a] = cfg.get_double("initial", names[a], 0.0);
        x0.S[a] = cfg.get_double("initial", names[a + 3], 0.0);
    }
    const double t_end = cfg.get_double("integrate", "t_end", 100.0 / std::abs(p.k));
    const double tol = cfg.get_double("integrate", "tol", 1e-10);
    const int samples = cfg.get_int("integrate", "samples", 1000);
    const double max_drift = cfg.get_double("integrate", "max_drift", 1e-7);
    const double max_lax = cfg.get_double("integrate", "max_lax_residual", 1e-6);

    std::vector<double> times;
    for (int i = 0; i <= samples; ++i) times.push_back(t_end * i / samples);
    const auto traj = dynamics::integrate_sampled(x0, p, times, tol);
    const auto drift = conserved::drift(traj, p);

    write_file(fs::path(opts.out_dir) / "trajectory.csv", io::trajectory_csv(traj, p));

    json j;
    j["tolerance"] = jnum(tol);
    j["t_end"] = jnum(t_end);
    j["steps"] = traj.stats.steps;
    j["rejected_steps"] = traj.stats.rejected;
    j["drift"] = {{"c", jnum(drift.c)},
                  {"m", jnum(drift.m)},
                  {"s", jnum(drift.s)},
                  {"h", jnum(drift.h)},
                  {"E", jnum(drift.E)}};
    bool ok = drift.max() <= max_drift;
    if (opts.check_lax) {
        // the Lax residual needs a fine time step for its 4th-order stencil
        const double dt = 1e-3 / std::abs(p.k);
        const double span = std::min(t_end, 4.0 / std::abs(p.k));
        std::vector<double> fine;
        for (int i = 0; i * dt <= span; ++i) fine.push_back(i * dt);
        const auto fine_traj = dynamics::integrate_sampled(x0, p, fine, tol);
        const double res =
            lax::lax_residual(fine_traj, p, {{0.5, 0.0}, {1.0, 1.0}, {3.0, 0.0}});
        j["lax_residual"] = jnum(res);
        ok = ok && res <= max_lax;
    }
    j["within_bounds"] = ok;
    write_file(fs::path(opts.out_dir) / "drift.json", j.dump(2) + "\n");
    if (opts.json_out) std::cout << j.dump() << "\n";
    return ok ? 0 : kExitBoundsViolated;
}

// ------------------------------------------------------------- classify

int cmd_classify(const CommonOpts& opts, const io::Config& cfg) {
    const double lambda = cfg.get_double("model", "lambda", 1.0);
    const double k = cfg.get_double("model", "k", 1.0);

    struct Point {
        double c, m, s, h;
        std::string expect;
    };
    std::vector<Point> points;

    if (cfg.has("grid", "c")) {
        const auto cs = parse_values(cfg.get("grid", "c"));
        const auto ms = parse_values(cfg.get("grid", "m", "0"));
        const auto ss = parse_values(cfg.get("grid", "s", "1"));
        const auto hs = parse_values(cfg.get("grid", "h", "0"));
        for (double c : cs)
            for (double m : ms)
                for (double s : ss)
                    for (double h : hs) points.push_back({c, m, s, h, ""});
    }
    // explicit list: [points] pN = "c m s h [expected-tag]"
    for (int i = 0; cfg.has("points", "p" + std::to_string(i)); ++i) {
        std::istringstream is(cfg.get("points", "p" + std::to_string(i)));
        Point pt{};
        if (!(is >> pt.c >> pt.m >> pt.s >> pt.h))
            throw std::runtime_error("bad point p" + std::to_string(i));
        is >> pt.expect;
        points.push_back(pt);
    }
    if (points.empty()) throw std::runtime_error("classify: empty grid");

    std::vector<json> records(points.size());
    auto work = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            conserved::ConservedSet q;
            q.c = points[i].c;
            q.m = points[i].m;
            q.s = points[i].s;
            q.h = points[i].h;
            const auto rep = levelsets::classify(q, lambda, k);
            json r;
            r["c"] = jnum(q.c);
            r["m"] = jnum(q.m);
            r["s"] = jnum(q.s);
            r["h"] = jnum(q.h);
            r["tag"] = std::string(levelsets::to_string(rep.tag));
            if (rep.tag == levelsets::Tag::Torus2 || rep.tag == levelsets::Tag::HornTorus) {
                r["u_lo"] = jnum(rep.u_lo);
                r["u_hi"] = jnum(rep.u_hi);
            }
            if (rep.tag == levelsets::Tag::Circle) r["u_d"] = jnum(rep.u_lo);
            r["pole_N"] = std::string(levelsets::to_string(rep.pole_north));
            r["pole_S"] = std::string(levelsets::to_string(rep.pole_south));
            json roots = json::array();
            for (const auto& rm : rep.roots)
                roots.push_back({{"u", jnum(rm.u)}, {"mult", rm.mult}});
            r["roots"] = roots;
            if (!points[i].expect.empty()) {
                r["expected"] = points[i].expect;
                r["match"] = (points[i].expect == std::string(levelsets::to_string(rep.tag)));
            }
            records[i] = std::move(r);
        }
    };
    const int workers = std::max(1, opts.workers);
    if (workers == 1) {
        work(0, points.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (points.size() + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const std::size_t lo = w * chunk, hi = std::min(points.size(), lo + chunk);
            if (lo < hi) pool.emplace_back(work, lo, hi);
        }
        for (auto& t : pool) t.join();
    }

    std::ostringstream os;
    bool all_match = true;
    for (const auto& r : records) {
        os << r.dump() << "\n";
        if (r.contains("match") && !r["match"].get<bool>()) all_match = false;
    }
    write_file(fs::path(opts.out_dir) / "levelsets.jsonl", os.str());
    if (opts.json_out) std::cout << os.str();
    return all_match ? 0 : kExitBoundsViolated;
}

// ------------------------------------------------------------- spectrum

int cmd_spectrum(const CommonOpts& opts, const io::Config& cfg) {
    const std::string mode = cfg.get("problem", "mode", "dimensionless");
    json j;
    j["mode"] = mode;
    std::string dispersion_csv;

    if (mode == "dimensionless") {
        quantum::RadialProblem qp;
        qp.lambda_t = cfg.get_double("problem", "lambda_t", 0.0);
        qp.hbar_t = cfg.get_double("problem", "hbar_t", 1.0);
        qp.l = cfg.get_int("problem", "l", 0);
        qp.pz_t = cfg.get_double("problem", "pz_t", 0.0);
        const int levels = cfg.get_int("problem", "levels", 5);
        quantum::GridSpec grid;
        grid.points = cfg.get_int("problem", "grid", 4000);
        const auto spec = quantum::solve_spectrum(qp, levels, grid);
        j["problem"] = {{"lambda_t", jnum(qp.lambda_t)},
                        {"hbar_t", jnum(qp.hbar_t)},
                        {"l", qp.l},
                        {"pz_t", jnum(qp.pz_t)}};
        json eg = json::array(), diag = json::array();
        for (double e : spec.eigenvalues) eg.push_back(jnum(e));
        for (const auto& d : spec.diagnostics)
            diag.push_back({{"fd", jnum(d.fd_value)},
                            {"shooting", jnum(d.shooting_value)},
                            {"richardson_error", jnum(d.richardson_error)},
                            {"disagreement", jnum(d.disagreement)}});
        j["eigenvalues"] = eg;
        j["diagnostics"] = diag;
        j["grid_points"] = spec.grid_points;
        j["r_max"] = jnum(spec.r_max);
        // dispersion sweep: dimensionful E(k) for the lowest level, with
        // hbar_t = hbar/(k m^2 sqrt(mu)) tracking k
        if (cfg.has("sweep", "k")) {
            const double m = cfg.get_double("sweep", "m", 1.0);
            const double mu = cfg.get_double("sweep", "mu", 1.0);
            const double hbar = cfg.get_double("sweep", "hbar", 1.0);
            std::ostringstream csv;
            csv << "k,E\r\n";
            for (double kv : parse_values(cfg.get("sweep", "k"))) {
                quantum::RadialProblem qk = qp;
                qk.hbar_t = hbar / (kv * m * m * std::sqrt(mu));
                const auto sk = quantum::solve_spectrum(qk, 1, grid);
                const double Et = sk.eigenvalues[0] + qk.pz_t * qk.pz_t +
                                  qk.l * qk.hbar_t * qk.lambda_t + 1.0;
                csv << io::format_double(kv) << ','
                    << io::format_double(0.5 * kv * kv * m * m * Et) << "\r\n";
            }
            dispersion_csv = csv.str();
        }
    } else if (mode == "strong") {
        const double g_t = cfg.get_double("problem", "g_t", 1.0);
        const int l = cfg.get_int("problem", "l", 0);
        const int levels = cfg.get_int("problem", "levels", 3);
        quantum::GridSpec grid;
        grid.points = cfg.get_int("problem", "grid", 4000);
        const auto spec = quantum::strong_coupling_spectrum(g_t, l, levels, grid);
        j["problem"] = {{"g_t", jnum(g_t)}, {"l", l}};
        json eg = json::array();
        for (double e : spec.eigenvalues) eg.push_back(jnum(e));
        j["eigenvalues_E2"] = eg;
        // k-sweep: E2 is k-independent by construction; emit the check data
        if (cfg.has("sweep", "k")) {
            std::ostringstream csv;
            csv << "k,E2_ground\r\n";
            for (double kv : parse_values(cfg.get("sweep", "k"))) {
                // map a dimensionful setup with this k into the limit
                const double m = cfg.get_double("sweep", "m", 1.0);
                const double mu = cfg.get_double("sweep", "mu", 1.0);
                const double hbar = cfg.get_double("sweep", "hbar", 1.0);
                const double lambda = g_t * hbar / (kv * m * m * m);  // lambda giving this g_t
                const double g_check = quantum::strong_coupling_g(lambda, kv, m, mu, hbar);
                const auto s2 = quantum::strong_coupling_spectrum(g_check, l, 1, grid);
                csv << io::format_double(kv) << ',' << io::format_double(s2.eigenvalues[0])
                    << "\r\n";
            }
            dispersion_csv = csv.str();
        }
    } else if (mode == "wkb") {
        quantum::WkbParams wp;
        wp.mu = cfg.get_double("wkb", "mu", 1.0);
        wp.k = cfg.get_double("wkb", "k", 1.0);
        wp.lambda = cfg.get_double("wkb", "lambda", 1.0);
        wp.m = cfg.get_double("wkb", "m", 1.0);
        wp.hbar = cfg.get_double("wkb", "hbar", 1.0);
        wp.p_z = cfg.get_double("wkb", "p_z", 0.0);
        wp.p_theta = cfg.get_double("wkb", "p_theta", 0.0);
        const int n_lo = cfg.get_int("wkb", "n_lo", 1);
        const int n_hi = cfg.get_int("wkb", "n_hi", n_lo);
        const auto levels = quantum::wkb_levels(wp, n_lo, n_hi);
        json eg = json::array();
        for (double e : levels) eg.push_back(jnum(e));
        j["wkb_levels"] = eg;
        j["n_lo"] = n_lo;
        j["n_hi"] = n_hi;
    } else {
        throw std::runtime_error("spectrum: unknown mode " + mode);
    }

    write_file(fs::path(opts.out_dir) / "spectrum.json", j.dump(2) + "\n");
    if (!dispersion_csv.empty())
        write_file(fs::path(opts.out_dir) / "dispersion.csv", dispersion_csv);
    if (opts.json_out) std::cout << j.dump() << "\n";
    return 0;
}

// ----------------------------------------------------------- actionangle

int cmd_actionangle(const CommonOpts& opts, const io::Config& cfg) {
    const ModelParams p = model_from(cfg);
    conserved::ConservedSet q;
    q.c = cfg.get_double("conserved", "c", 3.0);
    q.m = cfg.get_double("conserved", "m", -1.0);
    q.s = cfg.get_double("conserved", "s", 1.0);
    q.h = cfg.get_double("conserved", "h", 1.0);
    q.E = 0.5 * q.s2() + q.c + 1.0 / (2.0 * p.lambda * p.lambda);
    const double periods = cfg.get_double("run", "periods", 2.0);
    const int samples = cfg.get_int("run", "samples", 200);

    const auto roots = elliptic::chi_roots(q, p.lambda);
    if (roots.size() != 3) throw std::runtime_error("actionangle: not a torus level set");
    const auto [g2, g3] = elliptic::weierstrass_invariants(q, p.lambda, p.k);
    const auto hp = elliptic::half_periods(g2, g3);
    const double t_end = periods * 2.0 * hp.omega_R;

    const double u0 = roots[0].u + 1e-3 * (roots[1].u - roots[0].u);
    const auto x0 = levelsets::seed_state(q, p, u0, 0.1, +1);
    std::vector<double> times;
    for (int i = 0; i <= samples; ++i) times.push_back(t_end * i / samples);
    const auto traj = dynamics::integrate_sampled(x0, p, times, 1e-11);
    const auto aa = actionangle::torus_actions(q, p);

    std::ostringstream csv;
    csv << "t,theta1,theta2,I1,I2\r\n";
    const double span = roots[1].u - roots[0].u;
    double prev_u = traj.states.front().u(p);
    bool rising = true;
    double theta_prev = 0.0;
    bool have_prev = false;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const auto& st = traj.states[i];
        const double u = st.u(p);
        if (i > 0) rising = u >= prev_u;
        prev_u = u;
        // skip samples too close to the turning points
        if (u - roots[0].u < 1e-4 * span || roots[1].u - u < 1e-4 * span) continue;
        double theta = std::atan2(st.L[1] / p.k, st.L[0] / p.k);
        if (have_prev) {
            while (theta - theta_prev > M_PI) theta -= 2.0 * M_PI;
            while (theta - theta_prev < -M_PI) theta += 2.0 * M_PI;
        }
        theta_prev = theta;
        have_prev = true;
        const auto branch = rising ? elliptic::Branch::StartAtMin : elliptic::Branch::StartAtMax;
        const double th1 = actionangle::theta1(u, q, p, branch);
        const double th2 = actionangle::theta2(u, theta, q, p, 0.0, branch).value;
        csv << io::format_double(traj.times[i]) << ',' << io::format_double(th1) << ','
            << io::format_double(th2) << ',' << io::format_double(aa.I1) << ','
            << io::format_double(aa.I2) << "\r\n";
    }
    write_file(fs::path(opts.out_dir) / "actionangle.csv", csv.str());
    return 0;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const CommonOpts& opts, const io::Config& cfg) {
    verify::Options vopt;
    vopt.seed = opts.seed;
    const std::string fault = cfg.get("verify", "inject_fault", "none");
    if (fault == "rmatrix") vopt.rmatrix_scale = 1.0 + 1e-6;
    else if (fault != "none" && !fault.empty())
        throw std::runtime_error("verify: unknown fault " + fault);

    const auto results = verify::run_all(vopt);
    json j = json::array();
    for (const auto& r : results) {
        j.push_back({{"name", r.name},
                     {"pass", r.pass},
                     {"value", jnum(r.value)},
                     {"threshold", jnum(r.threshold)}});
        if (!opts.json_out)
            std::cout << (r.pass ? "PASS " : "FAIL ") << r.name
                      << "  value=" << io::format_double(r.value)
                      << "  bound=" << io::format_double(r.threshold) << "\n";
    }
    if (opts.json_out) std::cout << j.dump() << "\n";
    write_file(fs::path(opts.out_dir) / "verify.json", j.dump(2) + "\n");
    return verify::all_passed(results) ? 0 : kExitBoundsViolated;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"screwon-lab: classical and quantum Rajeev-Ranken model workbench"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string command;
    for (const char* name : {"simulate", "classify", "spectrum", "actionangle", "verify"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", opts.config_path, "INI-style run configuration");
        sub->add_option("--out", opts.out_dir, "output directory");
        sub->add_option("--workers", opts.workers, "worker threads for sweeps");
        sub->add_option("--seed", opts.seed, "random seed");
        sub->add_flag("--check-lax", opts.check_lax, "also verify the Lax residual");
        sub->add_flag("--json", opts.json_out, "emit JSON to stdout");
        sub->callback([&command, name]() { command = name; });
    }

    CLI11_PARSE(app, argc, argv);

    io::Config cfg;
    try {
        if (!opts.config_path.empty()) cfg = io::Config::parse_file(opts.config_path);
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        fs::create_directories(opts.out_dir);
        if (command == "simulate") return cmd_simulate(opts, cfg);
        if (command == "classify") return cmd_classify(opts, cfg);
        if (command == "spectrum") return cmd_spectrum(opts, cfg);
        if (command == "actionangle") return cmd_actionangle(opts, cfg);
        if (command == "verify") return cmd_verify(opts, cfg);
    } catch (const std::ios_base::failure& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return 0;
}
