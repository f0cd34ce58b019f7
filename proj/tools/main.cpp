// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Subcommands:
//   gen-mub          construct and check a complete unbiased basis family
//   verify-relation  scan the affine post-measurement relation over trial states
//   counterexample   best affine fit for non-orthogonal qubit direction triples
//   sample           finite-shot simulation, empirical state, inverse recovery
//
// Exit codes: 0 success (and relation holds), 1 I/O or internal failure,
// 2 invalid input, 3 relation violated.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <mubsim/mubsim.hpp>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitViolated = 3;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// JSON goes to --out when given; the stdout summary stays terse so its
// bytes are stable for fixed flags.
bool write_report(const std::string &path, const std::string &json) {
    if (path.empty()) {
        return true;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open " << path << " for writing\n";
        return false;
    }
    out << json << '\n';
    return out.good();
}

struct GenMubArgs {
    std::size_t dim = 0;
    double tol = 1e-10;
    std::string out;
};

int run_gen_mub(const GenMubArgs &args) {
    const mubsim::MubSet mub = mubsim::generate_mub(args.dim);
    const mubsim::MubVerification check = mubsim::verify_mub(mub.bases(), args.tol);
    std::cout << "dim=" << args.dim << " bases=" << mub.count()
              << " max_deviation=" << fmt(check.max_deviation)
              << " is_mub=" << (check.is_mub ? "true" : "false") << "\n";
    if (!write_report(args.out, mubsim::mub_report_to_json(check, mub.bases()))) {
        return kExitIo;
    }
    return check.is_mub ? kExitOk : kExitViolated;
}

struct VerifyArgs {
    std::size_t dim = 0;
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    std::vector<double> weights;
    double perturb = 0.0;
    double tol = 1e-10;
    double lambda_tol = 1e-9;
    std::string bases_path;
    std::string out;
};

int run_verify_relation(const VerifyArgs &args) {
    std::vector<mubsim::OrthonormalBasis> bases;
    if (!args.bases_path.empty()) {
        std::ifstream in(args.bases_path, std::ios::binary);
        if (!in) {
            std::cerr << "error: cannot read " << args.bases_path << "\n";
            return kExitIo;
        }
        std::stringstream buffer;
        buffer << in.rdbuf();
        bases = mubsim::bases_from_json(buffer.str());
        if (bases.empty()) {
            std::cerr << "error: " << args.bases_path << " holds no bases\n";
            return kExitBadInput;
        }
        if (args.dim != 0 && args.dim != bases[0].dim()) {
            std::cerr << "error: --dim " << args.dim << " conflicts with file dim "
                      << bases[0].dim() << "\n";
            return kExitBadInput;
        }
    } else {
        if (args.dim == 0) {
            std::cerr << "error: need --dim or --bases\n";
            return kExitBadInput;
        }
        bases = mubsim::generate_mub(args.dim).bases();
    }

    if (args.perturb < 0.0) {
        std::cerr << "error: --perturb must be nonnegative\n";
        return kExitBadInput;
    }
    if (args.perturb > 0.0) {
        // Separate substream family from the trial-state streams.
        const std::uint64_t space = mubsim::splitmix64(args.seed ^ 0x70657274757262ULL);
        for (std::size_t a = 0; a < bases.size(); ++a) {
            bases[a] = mubsim::perturb_basis(bases[a], args.perturb,
                                             mubsim::derive_stream_seed(space, a));
        }
    }

    mubsim::MixtureWeights weights = [&]() {
        if (args.weights.empty()) {
            return mubsim::MixtureWeights::uniform(bases.size());
        }
        double sum = 0.0;
        for (const double w : args.weights) {
            sum += w;
        }
        if (std::abs(sum - 1.0) > 1e-9) {
            throw mubsim::InvalidWeights("weights sum to " + std::to_string(sum));
        }
        std::vector<double> scaled = args.weights;
        for (double &w : scaled) {
            w /= sum;
        }
        return mubsim::MixtureWeights(scaled);
    }();
    if (weights.size() != bases.size()) {
        std::cerr << "error: got " << weights.size() << " weights for " << bases.size()
                  << " bases\n";
        return kExitBadInput;
    }

    const mubsim::RelationScan scan = mubsim::scan_relation(bases, weights, args.trials,
                                                            args.seed, args.tol,
                                                            args.lambda_tol);
    std::cout << "dim=" << scan.dim << " trials=" << scan.trials
              << " lambda_fit=" << fmt(scan.lambda_fit)
              << " max_residual=" << fmt(scan.max_residual)
              << " holds=" << (scan.holds ? "true" : "false") << "\n";
    if (!write_report(args.out, mubsim::relation_scan_to_json(scan))) {
        return kExitIo;
    }
    return scan.holds ? kExitOk : kExitViolated;
}

struct CounterArgs {
    std::vector<double> dirs;
    std::vector<double> weights;
    std::size_t trials = 50;
    std::uint64_t seed = 1;
    std::string out;
};

int run_counterexample(const CounterArgs &args) {
    if (args.dirs.size() != 9) {
        std::cerr << "error: --dirs needs 9 numbers (three vectors), got " << args.dirs.size()
                  << "\n";
        return kExitBadInput;
    }
    const mubsim::DirectionTriple dirs = mubsim::DirectionTriple::from_raw(
        mubsim::Vec3{args.dirs[0], args.dirs[1], args.dirs[2]},
        mubsim::Vec3{args.dirs[3], args.dirs[4], args.dirs[5]},
        mubsim::Vec3{args.dirs[6], args.dirs[7], args.dirs[8]});

    mubsim::MixtureWeights weights = [&]() {
        if (args.weights.empty()) {
            return mubsim::MixtureWeights::uniform(3);
        }
        return mubsim::MixtureWeights(args.weights, 1e-9);
    }();
    if (weights.size() != 3) {
        std::cerr << "error: got " << weights.size() << " weights for 3 directions\n";
        return kExitBadInput;
    }

    std::vector<mubsim::DensityMatrix> states;
    states.reserve(args.trials);
    double max_gap = 0.0;
    for (std::size_t t = 0; t < args.trials; ++t) {
        states.push_back(mubsim::random_density(2, mubsim::StateKind::pure,
                                                mubsim::derive_stream_seed(args.seed, t)));
        max_gap = std::max(max_gap,
                           mubsim::expectation_identity_gap(states.back(), dirs, weights));
    }
    const mubsim::AffineFitReport report =
        mubsim::affine_fit_counterexample(dirs, weights, states);
    std::cout << "trials=" << args.trials << " alpha=" << fmt(report.best_alpha)
              << " beta=" << fmt(report.best_beta)
              << " worst_residual=" << fmt(report.worst_case_residual)
              << " identity_gap=" << fmt(max_gap) << "\n";
    if (!write_report(args.out, mubsim::counterexample_report_to_json(
                                    dirs, weights, args.trials, report, max_gap))) {
        return kExitIo;
    }
    return kExitOk;
}

struct SampleArgs {
    std::size_t dim = 0;
    std::uint64_t shots = 0;
    std::uint64_t seed = 1;
    std::string kind = "pure";
    std::string out;
};

int run_sample(const SampleArgs &args) {
    const mubsim::StateKind kind =
        args.kind == "mixed" ? mubsim::StateKind::mixed : mubsim::StateKind::pure;
    const mubsim::MubSet mub = mubsim::generate_mub(args.dim);
    const mubsim::DensityMatrix rho = mubsim::random_density(args.dim, kind, args.seed);
    const mubsim::SampleRecord record =
        mubsim::sample_measurements(rho, mub, args.shots, args.seed);
    const mubsim::MixtureWeights weights = mubsim::MixtureWeights::uniform(mub.count());
    const mubsim::DensityMatrix empirical =
        mubsim::empirical_post_state(record, mub, weights);
    const mubsim::DensityMatrix exact = mubsim::predict_post(rho);
    const double empirical_error = mubsim::frobenius_distance(empirical, exact);
    const mubsim::AffineInverse inverse = mubsim::recover_initial_raw(empirical);
    const double recovered_error =
        mubsim::frobenius_distance(inverse.estimate, rho.matrix());

    std::cout << "dim=" << args.dim << " shots=" << args.shots << " kind=" << args.kind
              << " empirical_error=" << fmt(empirical_error)
              << " recovered_error=" << fmt(recovered_error)
              << " positive=" << (inverse.positive ? "true" : "false") << "\n";

    mubsim::JsonWriter w;
    w.begin_object();
    w.key("dim").value(args.dim);
    w.key("kind").value(args.kind);
    w.key("record").raw(mubsim::sample_record_to_json(record));
    w.key("initial_state").raw(mubsim::matrix_to_json(rho.matrix()));
    w.key("empirical_error").value(empirical_error);
    w.key("recovered_error").value(recovered_error);
    w.key("positive").value(inverse.positive);
    w.key("min_eigenvalue").value(inverse.min_eigenvalue);
    w.end_object();
    if (!write_report(args.out, w.take())) {
        return kExitIo;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Projective measurement simulation over mutually unbiased bases"};
    app.require_subcommand(1);

    GenMubArgs gen_args;
    CLI::App *gen = app.add_subcommand("gen-mub", "Construct a complete unbiased basis family");
    gen->add_option("--dim", gen_args.dim, "State dimension (prime, 2..13)")->required();
    gen->add_option("--tol", gen_args.tol, "Unbiasedness tolerance");
    gen->add_option("--out", gen_args.out, "Write the JSON report here");

    VerifyArgs verify_args;
    CLI::App *verify =
        app.add_subcommand("verify-relation", "Scan the affine relation over trial states");
    verify->add_option("--dim", verify_args.dim, "State dimension (prime, 2..13)");
    verify->add_option("--trials", verify_args.trials, "Trial states")->check(CLI::PositiveNumber);
    verify->add_option("--seed", verify_args.seed, "Trial-state seed");
    verify->add_option("--weights", verify_args.weights, "Basis weights, comma separated")
        ->delimiter(',');
    verify->add_option("--perturb", verify_args.perturb,
                       "Rotate every basis by this angle before the scan");
    verify->add_option("--bases", verify_args.bases_path, "Load bases from this JSON file");
    verify->add_option("--tol", verify_args.tol, "Residual tolerance");
    verify->add_option("--lambda-tol", verify_args.lambda_tol, "Contraction-strength tolerance");
    verify->add_option("--out", verify_args.out, "Write the JSON report here");

    CounterArgs counter_args;
    CLI::App *counter =
        app.add_subcommand("counterexample", "Affine fit for arbitrary direction triples");
    counter->add_option("--dirs", counter_args.dirs,
                        "Nine numbers: three direction vectors, comma separated")
        ->delimiter(',')
        ->required();
    counter->add_option("--weights", counter_args.weights, "Three direction weights")
        ->delimiter(',');
    counter->add_option("--trials", counter_args.trials, "Trial states")
        ->check(CLI::PositiveNumber);
    counter->add_option("--seed", counter_args.seed, "Trial-state seed");
    counter->add_option("--out", counter_args.out, "Write the JSON report here");

    SampleArgs sample_args;
    CLI::App *sample =
        app.add_subcommand("sample", "Finite-shot measurement simulation and recovery");
    sample->add_option("--dim", sample_args.dim, "State dimension (prime, 2..13)")->required();
    sample->add_option("--shots", sample_args.shots, "Shots per basis")
        ->required()
        ->check(CLI::PositiveNumber);
    sample->add_option("--seed", sample_args.seed, "State and sampling seed");
    sample->add_option("--kind", sample_args.kind, "Initial state kind: pure or mixed")
        ->check(CLI::IsMember({"pure", "mixed"}));
    sample->add_option("--out", sample_args.out, "Write the JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitBadInput;
    }

    try {
        if (gen->parsed()) {
            return run_gen_mub(gen_args);
        }
        if (verify->parsed()) {
            return run_verify_relation(verify_args);
        }
        if (counter->parsed()) {
            return run_counterexample(counter_args);
        }
        if (sample->parsed()) {
            return run_sample(sample_args);
        }
    } catch (const mubsim::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const nlohmann::json::exception &e) {
        std::cerr << "error: invalid JSON input: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitBadInput;
}
