// Command-line front end: per-level statistics of mod-p Hecke algebras
// of prime level, sweeps with a resumable cache, plot-data emission and
// evaluation of the asymptotic inequality templates.

#include <CLI11.hpp>

#include <iostream>

#include "heckestat/hecke_algebra.hpp"
#include "heckestat/local_decomposition.hpp"
#include "heckestat/manin.hpp"
#include "heckestat/survey.hpp"

namespace {

using namespace heckestat;

int cmd_compute(std::uint32_t p, long k, long N, const std::string& pipeline,
                bool as_json) {
    auto print = [&](const survey::LevelRecord& r) {
        if (as_json) {
            std::cout << r.to_json_line() << "\n";
        } else {
            std::cout << "p=" << r.p << " k=" << r.k << " N=" << r.N
                      << " pipeline="
                      << (r.pipeline == hecke::Pipeline::A ? "A" : "B")
                      << " d=" << r.d << " #Spec=" << r.num_max_ideals
                      << " a=" << r.a << " b=" << r.b_num << "/" << r.b_den
                      << " c=" << r.c
                      << (r.semisimple ? " semisimple" : " not-semisimple");
            if (r.level_equals_p) std::cout << " [N=p]";
            std::cout << "\n";
        }
    };
    if (pipeline == "a" || pipeline == "both")
        print(survey::compute_level(p, k, N, hecke::Pipeline::A));
    if (pipeline == "b" || pipeline == "both")
        print(survey::compute_level(p, k, N, hecke::Pipeline::B));
    return 0;
}

int cmd_sweep(const survey::SweepOptions& opt) {
    survey::SweepSummary s = survey::sweep(opt);
    std::cout << "computed " << s.computed << ", skipped (cached) "
              << s.skipped << ", failed " << s.failed << "\n";
    for (const std::string& f : s.failures) std::cout << "  failed: " << f
                                                      << "\n";
    return s.failed == 0 ? 0 : 1;
}

int cmd_plot(const std::string& cache_path, const std::string& stat,
             std::uint32_t p, long k, const std::string& out_dir) {
    survey::CacheFile cache(cache_path);
    auto files = survey::emit_plot(cache.load(), stat, p, k, out_dir);
    for (const auto& f : files) std::cout << out_dir << "/" << f << "\n";
    return 0;
}

int cmd_question(const std::string& cache_path, const std::string& id,
                 std::uint32_t p, long k,
                 const survey::QuestionConstants& constants) {
    survey::CacheFile cache(cache_path);
    survey::QuestionReport rep =
        survey::evaluate_question(cache.load(), id, p, k, constants);
    std::cout << "question " << rep.id << " (p=" << rep.p << ", k=" << rep.k
              << "), constants: " << rep.constants_used << "\n";
    std::cout << "levels checked: " << rep.levels_checked
              << ", passing: " << rep.passes << "\n";
    if (!rep.skipped_levels.empty()) {
        std::cout << "skipped (d <= 1): ";
        for (long n : rep.skipped_levels) std::cout << n << " ";
        std::cout << "\n";
    }
    if (rep.fitted_slope) {
        std::cout << "fitted slope a(N) ~ alpha d(N): alpha = "
                  << rep.fitted_slope->get_str() << " = "
                  << survey::decimal_string(*rep.fitted_slope, 6) << "\n";
    }
    if (rep.all_pass()) {
        std::cout << "all levels satisfy the inequality\n";
    } else {
        std::cout << "counterexamples:";
        for (long n : rep.counterexamples) std::cout << " " << n;
        std::cout << "\n";
    }
    return 0;
}

int verify_invariants(const std::string& cache_path) {
    survey::CacheFile cache(cache_path);
    auto records = cache.load();
    std::size_t violations = 0;
    for (const auto& r : records) {
        try {
            r.validate();
            if (r.pipeline == hecke::Pipeline::A && r.N != r.k &&
                ffalg::is_prime_u64(static_cast<std::uint64_t>(r.N))) {
                const long expect = modsym::dim_oracle(r.N, r.k);
                if (r.d != static_cast<std::size_t>(expect))
                    throw std::logic_error("d disagrees with the oracle");
            }
        } catch (const std::exception& e) {
            ++violations;
            std::cout << "violation: p=" << r.p << " k=" << r.k
                      << " N=" << r.N << ": " << e.what() << "\n";
        }
    }
    std::cout << records.size() << " records, " << violations
              << " violations\n";
    return violations == 0 ? 0 : 1;
}

int verify_oracle() {
    std::size_t bad = 0;
    for (long N = 2; N <= 101; ++N) {
        if (!ffalg::is_prime_u64(static_cast<std::uint64_t>(N))) continue;
        auto cusp = modsym::cuspidal_subspace(modsym::build_space(
            N, 2, modsym::CoefficientDomain::rationals()));
        const long g = modsym::dim_oracle(N, 2);
        const bool ok =
            cusp.dimension() == 2 * static_cast<std::size_t>(g);
        if (!ok) ++bad;
        std::cout << "N=" << N << " cuspidal=" << cusp.dimension()
                  << " 2*oracle=" << 2 * g << (ok ? " ok" : " MISMATCH")
                  << "\n";
    }
    std::cout << (bad == 0 ? "oracle suite passed\n"
                           : "oracle suite FAILED\n");
    return bad == 0 ? 0 : 1;
}

int verify_crosscheck() {
    std::size_t findings = 0, levels = 0;
    for (long N = 2; N <= 61; ++N) {
        if (!ffalg::is_prime_u64(static_cast<std::uint64_t>(N))) continue;
        survey::IntegralLevelContext ctx =
            survey::compute_integral_context(N, 2);
        for (std::uint32_t p : {2u, 3u, 5u}) {
            ++levels;
            survey::LevelRecord a = survey::record_from_integral(ctx, p);
            survey::LevelRecord b =
                survey::compute_level(p, 2, N, hecke::Pipeline::B);
            if (a.d != b.d || a.num_max_ideals != b.num_max_ideals ||
                a.residue_degrees != b.residue_degrees) {
                ++findings;
                std::cout << "finding: N=" << N << " p=" << p
                          << ": A(d=" << a.d << ",#Spec=" << a.num_max_ideals
                          << ") vs B(d=" << b.d
                          << ",#Spec=" << b.num_max_ideals << ")\n";
            }
        }
    }
    std::cout << levels << " comparisons, " << findings << " findings\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mod-p Hecke algebra statistics for prime levels"};
    app.require_subcommand(1);

    // compute
    auto* compute = app.add_subcommand(
        "compute", "statistics of a single (p, k, N)");
    std::uint32_t p = 2;
    long k = 2, N = 11;
    std::string pipeline = "a";
    bool as_json = false;
    compute->add_option("--prime", p, "the prime p")->required();
    compute->add_option("--weight", k, "the weight k (even, >= 2)")
        ->required();
    compute->add_option("--level", N, "the level N")->required();
    compute->add_option("--pipeline", pipeline, "a, b or both")
        ->check(CLI::IsMember({"a", "b", "both"}));
    compute->add_flag("--json", as_json, "print the cache-record JSON");

    // sweep
    auto* sweep = app.add_subcommand("sweep",
                                     "compute all prime levels in a range");
    survey::SweepOptions opt;
    std::string sweep_pipeline = "a";
    bool allow_low_weight4 = false;
    sweep->add_option("--prime", opt.p, "the prime p")->required();
    sweep->add_option("--weight", opt.k, "the weight k")->required();
    sweep->add_option("--levels-from", opt.from, "lower level bound")
        ->required();
    sweep->add_option("--levels-to", opt.to, "upper level bound")->required();
    sweep->add_option("--pipeline", sweep_pipeline, "a, b or both")
        ->check(CLI::IsMember({"a", "b", "both"}));
    sweep->add_option("--jobs", opt.jobs, "worker threads");
    sweep->add_option("--cache", opt.cache_path, "cache file (JSON lines)")
        ->required();
    sweep->add_flag("--verbose", opt.verbose, "log per-level progress");
    sweep->add_flag("--allow-low-weight-contributions", allow_low_weight4,
                    "permit weight-4 sweeps at p = 2 or 3, where forced "
                    "lower-weight contributions pollute the statistics");

    // plot
    auto* plot = app.add_subcommand("plot", "emit gnuplot data for a slice");
    std::string cache_path, stat = "a", out_dir = ".";
    plot->add_option("--cache", cache_path, "cache file")->required();
    plot->add_option("--stat", stat, "a, b or c")
        ->check(CLI::IsMember({"a", "b", "c"}))
        ->required();
    plot->add_option("--prime", p, "the prime p")->required();
    plot->add_option("--weight", k, "the weight k")->required();
    plot->add_option("--out", out_dir, "output directory")->required();

    // question
    auto* question = app.add_subcommand(
        "question", "evaluate one of the asymptotic inequality templates");
    std::string qid;
    std::string s_eps, s_alpha, s_beta, s_c1, s_c2, s_bigc, s_bigd;
    question->add_option("--cache", cache_path, "cache file")->required();
    question->add_option("--id", qid, "4.1, 4.2, 4.3 or 4.4")
        ->check(CLI::IsMember({"4.1", "4.2", "4.3", "4.4"}))
        ->required();
    question->add_option("--prime", p, "the prime p")->required();
    question->add_option("--weight", k, "the weight k")->required();
    question->add_option("--epsilon", s_eps, "epsilon (rational)");
    question->add_option("--alpha", s_alpha, "alpha (rational)");
    question->add_option("--beta", s_beta, "beta (rational)");
    question->add_option("--c1", s_c1, "C1 (rational)");
    question->add_option("--c2", s_c2, "C2 (rational)");
    question->add_option("--big-c", s_bigc, "C (rational)");
    question->add_option("--big-d", s_bigd, "D (rational)");

    // verify
    auto* verify = app.add_subcommand("verify", "self-check suites");
    std::string suite;
    std::string verify_cache;
    verify->add_option("--suite", suite, "invariants, oracle or crosscheck")
        ->check(CLI::IsMember({"invariants", "oracle", "crosscheck"}))
        ->required();
    verify->add_option("--cache", verify_cache, "cache file (invariants)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*compute) return cmd_compute(p, k, N, pipeline, as_json);
        if (*sweep) {
            if (sweep_pipeline == "a")
                opt.pipeline = survey::SweepPipeline::A;
            else if (sweep_pipeline == "b")
                opt.pipeline = survey::SweepPipeline::B;
            else
                opt.pipeline = survey::SweepPipeline::Both;
            if (opt.k == 4 && (opt.p == 2 || opt.p == 3) &&
                !allow_low_weight4) {
                std::cerr << "weight-4 sweeps at p = 2 or 3 carry forced "
                             "lower-weight contributions; rerun with "
                             "--allow-low-weight-contributions to proceed\n";
                return 2;
            }
            return cmd_sweep(opt);
        }
        if (*plot) return cmd_plot(cache_path, stat, p, k, out_dir);
        if (*question) {
            survey::QuestionConstants qc;
            if (!s_eps.empty()) qc.epsilon = survey::parse_rational(s_eps);
            if (!s_alpha.empty()) qc.alpha = survey::parse_rational(s_alpha);
            if (!s_beta.empty()) qc.beta = survey::parse_rational(s_beta);
            if (!s_c1.empty()) qc.c1 = survey::parse_rational(s_c1);
            if (!s_c2.empty()) qc.c2 = survey::parse_rational(s_c2);
            if (!s_bigc.empty()) qc.big_c = survey::parse_rational(s_bigc);
            if (!s_bigd.empty()) qc.big_d = survey::parse_rational(s_bigd);
            return cmd_question(cache_path, qid, p, k, qc);
        }
        if (*verify) {
            if (suite == "invariants") return verify_invariants(verify_cache);
            if (suite == "oracle") return verify_oracle();
            return verify_crosscheck();
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
