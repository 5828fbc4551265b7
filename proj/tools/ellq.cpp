// Command-line front end: theta evaluation, relation-space dimensions,
// Hilbert-series truncations, and the seeded verification suite.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ellq/contour.hpp"
#include "ellq/hilbert.hpp"
#include "ellq/parallel.hpp"
#include "ellq/shuffle.hpp"
#include "ellq/verify.hpp"

namespace {

ellq::cplx parse_complex(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw ellq::ConfigError("expected RE,IM, got '" + s + "'");
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

void print_result_line(const ellq::CheckResult& r) {
    std::string head = r.status == "pass"        ? "PASS"
                       : r.status == "ambiguous" ? "AMBIGUOUS"
                                                 : "FAIL";
    std::printf("%-9s %-22s", head.c_str(), r.check_id.c_str());
    int shown = 0;
    for (const auto& [k, v] : r.metrics) {
        if (shown++ == 3)
            break;
        std::printf(" %s=%.3g", k.c_str(), v);
    }
    std::printf("  [%lld ms]\n", static_cast<long long>(r.runtime_ms));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical engine for the elliptic quadratic algebras Q_{n,k}(E,tau)"};
    app.require_subcommand(1);

    std::string eta_s = "0,1";
    std::uint64_t seed = ellq::RunConfig{}.seed;
    double tol_scale = 1.0;
    int samples = 20;
    int workers = 0;
    bool serial = false;
    app.add_option("--eta", eta_s, "lattice modulus RE,IM (Im > 0)");
    app.add_option("--seed", seed, "seed for all sampled checks");
    app.add_option("--tol", tol_scale, "scale factor on residual thresholds");
    app.add_option("--samples", samples, "tau samples for sampling checks");
    app.add_option("--workers", workers, "worker threads (0 = auto)");
    app.add_flag("--serial", serial, "force the serial reference kernels");

    // theta eval
    auto* theta_cmd = app.add_subcommand("theta", "theta function evaluation");
    auto* eval_cmd = theta_cmd->add_subcommand("eval", "evaluate theta_alpha at a point");
    long alpha = 0;
    int theta_n = 1;
    std::string z_s = "0,0";
    eval_cmd->add_option("--alpha", alpha, "basis index")->required();
    eval_cmd->add_option("--z", z_s, "argument RE,IM")->required();
    eval_cmd->add_option("--n", theta_n, "order n (default 1: the basic theta)");

    // rel dim
    auto* rel_cmd = app.add_subcommand("rel", "relation space of Q_{n,k}(E,tau)");
    auto* dim_cmd = rel_cmd->add_subcommand("dim", "rank and spectrum of the relation space");
    int rn = 3, rk = 1;
    std::string tau_s;
    std::string torsion_s;
    std::string rel_out;
    dim_cmd->add_option("--n", rn, "order n")->required();
    dim_cmd->add_option("--k", rk, "coprime parameter k")->required();
    dim_cmd->add_option("--tau", tau_s, "tau as RE,IM");
    dim_cmd->add_option("--torsion", torsion_s, "torsion point a,b meaning (a + b eta)/n");
    dim_cmd->add_option("--out", rel_out, "write the full relation-space JSON here");

    // hilbert
    auto* hil_cmd = app.add_subcommand("hilbert", "truncated Hilbert series of T(V)/(rel)");
    int hn = 3, hk = 1, dmax = 4;
    std::string htau_s;
    std::string csv_path;
    bool csv_flag = false;
    hil_cmd->add_option("--n", hn, "order n")->required();
    hil_cmd->add_option("--k", hk, "coprime parameter k")->required();
    hil_cmd->add_option("--dmax", dmax, "largest degree (<= 5)");
    hil_cmd->add_option("--tau", htau_s, "tau as RE,IM (default: seeded generic)");
    hil_cmd->add_flag("--csv", csv_flag, "emit CSV rows");
    hil_cmd->add_option("--csv-out", csv_path, "write CSV to a file");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run one named check or the whole suite");
    std::string check_id;
    bool run_everything = false;
    verify_cmd->add_option("check", check_id, "check id (see --list)");
    verify_cmd->add_flag("--all", run_everything, "run every registered check");
    bool list_checks = false;
    verify_cmd->add_flag("--list", list_checks, "print the registry and exit");

    // report
    auto* report_cmd = app.add_subcommand("report", "run all checks and write a JSON report");
    std::string report_out = "report.json";
    bool with_timing = false;
    report_cmd->add_option("--out", report_out, "output path");
    report_cmd->add_flag("--timing", with_timing, "include wall-clock data in the report");

    try {
        app.parse(argc, argv);

        ellq::RunConfig cfg;
        cfg.seed = seed;
        cfg.eta = parse_complex(eta_s);
        cfg.tau_samples = samples;
        cfg.tol_scale = tol_scale;
        cfg.workers = workers;
        if (workers > 0)
            ellq::set_worker_count(workers);
        if (serial)
            ellq::set_parallel_enabled(false);

        if (eval_cmd->parsed()) {
            const ellq::LatticeData lat(cfg.eta, theta_n);
            const ellq::cplx z = parse_complex(z_s);
            const ellq::ThetaValue v = theta_n == 1 && alpha == 0
                                           ? ellq::theta_basic(z, lat)
                                           : ellq::theta_alpha(alpha, z, lat);
            ellq::json out{{"value", ellq::complex_json(v.value)}, {"tail_bound", v.tail_bound}};
            std::cout << out.dump(2) << "\n";
            return 0;
        }

        if (dim_cmd->parsed()) {
            ellq::cplx tau;
            if (!torsion_s.empty()) {
                const ellq::cplx ab = parse_complex(torsion_s);
                tau = (ab.real() + ab.imag() * cfg.eta) / double(rn);
            } else if (!tau_s.empty()) {
                tau = parse_complex(tau_s);
            } else {
                ellq::Rng rng(ellq::check_seed(cfg.seed, "rel-dim-cli"));
                tau = ellq::random_tau_generic(rng, cfg.eta, rn);
            }
            const ellq::RelationSpace rel =
                ellq::relation_space(ellq::AlgebraParams(rn, rk, tau, cfg.eta));
            ellq::json out{{"n", rn},
                           {"k", rk},
                           {"tau", ellq::complex_json(tau)},
                           {"rank", rel.rank},
                           {"svd_gap", rel.svd_gap},
                           {"svd_spectrum", rel.singular_values}};
            std::cout << out.dump(2) << "\n";
            if (!rel_out.empty()) {
                std::ofstream f(rel_out);
                f << ellq::relation_space_json(rel).dump(2) << "\n";
            }
            return 0;
        }

        if (hil_cmd->parsed()) {
            ellq::cplx tau;
            std::uint64_t tau_seed = 0;
            if (!htau_s.empty()) {
                tau = parse_complex(htau_s);
            } else {
                tau_seed = ellq::check_seed(cfg.seed, "hilbert-cli");
                ellq::Rng rng(tau_seed);
                tau = ellq::random_tau_generic(rng, cfg.eta, hn);
            }
            const ellq::RelationSpace rel =
                ellq::relation_space(ellq::AlgebraParams(hn, hk, tau, cfg.eta));
            const ellq::GradedDims g = ellq::graded_dims(rel, dmax);
            if (csv_flag || !csv_path.empty()) {
                const std::string csv = ellq::graded_dims_csv(g, hk, tau_seed);
                if (!csv_path.empty()) {
                    std::ofstream f(csv_path);
                    f << csv;
                } else {
                    std::cout << csv;
                }
            } else {
                std::printf("n=%d k=%d tau=%.6g%+.6gi\n", hn, hk, tau.real(), tau.imag());
                for (std::size_t d = 0; d < g.dims.size(); ++d)
                    std::printf("  dim A_%zu = %ld   (polynomial ring: %ld)\n", d, g.dims[d],
                                ellq::polynomial_dim(hn, int(d)));
            }
            return 0;
        }

        if (verify_cmd->parsed()) {
            if (list_checks) {
                for (const auto& id : ellq::check_registry())
                    std::cout << id << "\n";
                return 0;
            }
            if (run_everything) {
                const ellq::RunAllResult run = ellq::run_all(cfg);
                for (const auto& r : run.results)
                    print_result_line(r);
                return run.all_pass ? 0 : 1;
            }
            if (check_id.empty())
                throw ellq::ConfigError("verify: give a check id or --all");
            const ellq::CheckResult r = ellq::run_check(check_id, cfg);
            print_result_line(r);
            return r.status == "fail" ? 1 : 0;
        }

        if (report_cmd->parsed()) {
            const ellq::RunAllResult run = ellq::run_all(cfg);
            for (const auto& r : run.results)
                print_result_line(r);
            std::ofstream f(report_out);
            f << ellq::report_json(run, cfg, with_timing).dump(2) << "\n";
            std::cout << "report written to " << report_out << "\n";
            return run.all_pass ? 0 : 1;
        }

        throw ellq::ConfigError("no subcommand action matched");
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ellq::UnknownCheck& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ellq::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
