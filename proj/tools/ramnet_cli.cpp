// ramnet: explicit Ramanujan communication networks on PSL(2, F_N).
//
// Subcommands: scan, build, verify, protocol. Exit codes: 0 success,
// 1 empty result, 2 invalid input, 3 verification failure.
#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "ramnet/cli_app.hpp"

int main(int argc, char** argv) {
    CLI::App app{"explicit Ramanujan communication networks on PSL(2, F_N)"};
    app.require_subcommand(1);
    ramnet::cli::RunConfig cfg;
    if (const char* t = std::getenv("RAMNET_THREADS")) cfg.threads = std::max(1, std::atoi(t));

    auto add_common = [&cfg](CLI::App* sub, bool need_n) {
        sub->add_option("--field", cfg.field, "arithmetic home: Q or Q_sqrt5")
            ->check(CLI::IsMember({"Q", "Q_sqrt5"}));
        sub->add_option("--p", cfg.p, "prime of the (first) color")->required();
        sub->add_option("--q", cfg.q, "prime of the second color (field Q only)");
        sub->add_option("--seed", cfg.seed, "RNG seed for all randomized steps");
        sub->add_option("--out", cfg.out_prefix, "output path prefix (writes report files)");
        if (need_n) sub->add_option("--N", cfg.N, "PSL(2, F_N) modulus")->required();
    };

    auto* scan = app.add_subcommand("scan", "list valid moduli N for the chosen prime(s)");
    add_common(scan, false);
    scan->add_option("--limit", cfg.limit, "scan bound on N")->required();

    auto* build = app.add_subcommand("build", "construct the colored Cayley graph");
    add_common(build, true);

    auto* verify = app.add_subcommand("verify", "square-property and spectral verification");
    add_common(verify, true);
    verify->add_option("--dense-cap", cfg.dense_cap, "largest n for dense diagonalization");
    verify->add_option("--tol", cfg.tol, "spectral tolerance");

    auto* proto = app.add_subcommand("protocol", "cross-checked transmission and dispersal");
    add_common(proto, true);
    proto->add_option("--payload", cfg.payload_path, "payload file (default: random bytes)");
    proto->add_option("--payload-size", cfg.payload_size, "random payload size in bytes");
    proto->add_option("--shares", cfg.shares, "dispersal share count g");
    proto->add_option("--walk-len", cfg.walk_len, "dispersal walk length");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return ramnet::cli::kInvalid;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    return ramnet::cli::execute(cfg, std::cout);
}
