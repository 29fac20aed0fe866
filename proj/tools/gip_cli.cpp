#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "gip/jobspec.hpp"
#include "gip/runner.hpp"
#include "gip/types.hpp"

int main(int argc, char** argv) {
    CLI::App app{"gip: synthesize curves and invariant surfaces with a prescribed "
                 "geometry-induced potential and solve the separated eigenproblems"};

    std::string spec_path;
    std::string out_dir = ".";
    std::string units;
    int threads = 1;
    bool verify_only = false;

    app.add_option("--spec", spec_path, "job spec file (key = value with [sections])")
        ->required();
    app.add_option("--out", out_dir, "output directory (default: current)");
    app.add_option("--threads", threads, "concurrent sweep workers (default 1)")
        ->check(CLI::PositiveNumber);
    app.add_flag("--verify-only", verify_only, "run the oracle checks, write only the report");
    app.add_option("--units", units, "override the spec's unit system")
        ->check(CLI::IsMember({"natural", "si"}));

    CLI11_PARSE(app, argc, argv);

    try {
        const gip::JobSpec spec = gip::JobSpec::parse_file(spec_path);
        gip::RunOptions opts;
        opts.out_dir = out_dir;
        opts.threads = threads;
        opts.verify_only = verify_only;
        if (!units.empty()) opts.units_override = units;
        const gip::RunReport report = gip::run_job(spec, opts);
        std::cout << report.to_text();
        return 0;
    } catch (const gip::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const gip::InfeasibleError& e) {
        std::cerr << "infeasible problem: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 4;
    }
}
