#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "uniarg/campaign.hpp"
#include "uniarg/io.hpp"

// Runs the same campaign on the serial reference path and the parallel path,
// checks the canonical summaries are byte-identical, and reports timings.
int main(int argc, char** argv) {
    using namespace uniarg;

    CLI::App app{"serial vs parallel campaign benchmark"};
    int n = 4;
    int trials = 400;
    int threads = 0;
    std::uint64_t seed = 0;
    std::string kind = "haar";
    std::vector<std::string> checks{"T1", "T2", "L1"};
    app.add_option("--n", n, "matrix dimension");
    app.add_option("--trials", trials, "trials per run");
    app.add_option("--threads", threads, "parallel thread count (0 = runtime default)");
    app.add_option("--seed", seed, "campaign seed");
    app.add_option("--kind", kind, "sample kind");
    app.add_option("--checks", checks, "checks to run")->delimiter(',');
    CLI11_PARSE(app, argc, argv);

    TrialCampaign c;
    c.spec.n = n;
    c.spec.kind = sample_kind_from_string(kind);
    c.trials = trials;
    for (const std::string& s : checks) c.checks.push_back(check_from_string(s));
    c.profile = ToleranceProfile::for_dim(n);
    c.seed = seed;

    try {
        c.threads = 1;
        CampaignSummary serial = run_campaign(c);
        c.threads = threads;
        CampaignSummary parallel = run_campaign(c);

        const std::string serial_json = to_json(serial).dump(2);
        const std::string parallel_json = to_json(parallel).dump(2);
        if (serial_json != parallel_json) {
            std::cerr << "MISMATCH: serial and parallel summaries differ\n";
            return 1;
        }

        const double speedup = parallel.wall_time_seconds > 0.0
                                   ? serial.wall_time_seconds / parallel.wall_time_seconds
                                   : 0.0;
        std::cout << "trials:   " << trials << " (n = " << n << ")\n"
                  << "serial:   " << serial.wall_time_seconds << " s\n"
                  << "parallel: " << parallel.wall_time_seconds << " s\n"
                  << "speedup:  " << speedup << "x\n"
                  << "summaries identical\n";
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
