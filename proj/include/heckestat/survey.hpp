#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heckestat/hecke_algebra.hpp"
#include "heckestat/local_decomposition.hpp"

namespace heckestat {
namespace survey {

inline constexpr const char* kToolVersion = "heckestat 1.0.0";
inline constexpr int kCacheSchema = 1;

// One row of the statistics cache: everything measured for (p, k, N).
struct LevelRecord {
    int schema = kCacheSchema;
    std::uint32_t p = 0;
    long k = 0;
    long N = 0;
    bool level_equals_p = false;
    hecke::Pipeline pipeline = hecke::Pipeline::A;
    std::size_t d = 0;                         // dim of the algebra
    std::size_t num_max_ideals = 0;
    std::vector<std::size_t> residue_degrees;  // ascending
    std::vector<std::size_t> local_dims;       // ascending
    std::size_t a = 0;                         // sum of residue degrees
    long long b_num = 0, b_den = 1;            // a / #Spec in lowest terms
    std::size_t c = 0;                         // max residue degree
    bool semisimple = true;
    std::string tool_version = kToolVersion;
    long wall_time_ms = 0;

    // Checks every stored invariant; throws std::logic_error on failure.
    void validate() const;

    std::string to_json_line() const;
    static LevelRecord from_json_line(const std::string& line);

    // Identity of a record within a cache (pipeline included).
    bool same_key(const LevelRecord& o) const {
        return p == o.p && k == o.k && N == o.N && pipeline == o.pipeline;
    }
    // Field-for-field equality except wall_time_ms.
    bool same_data(const LevelRecord& o) const;
};

// Integral Hecke algebra of one level, reusable across primes p.
struct IntegralLevelContext {
    long N = 0;
    long k = 0;
    hecke::IntegralHeckeAlgebra algebra;
};

IntegralLevelContext compute_integral_context(long N, long k);

// Statistics of the reduction mod p of a prepared integral algebra.
LevelRecord record_from_integral(const IntegralLevelContext& ctx,
                                 std::uint32_t p);

// Statistics of one level through the requested pipeline.
LevelRecord compute_level(std::uint32_t p, long k, long N,
                          hecke::Pipeline pipeline);

// Append-only line-delimited cache with resumable semantics.
class CacheFile {
public:
    explicit CacheFile(std::string path) : path_(std::move(path)) {}

    const std::string& path() const { return path_; }
    // Reads all parseable records; corrupt lines are skipped with a
    // warning on stderr.
    std::vector<LevelRecord> load() const;
    void append(const LevelRecord& r) const;

private:
    std::string path_;
};

enum class SweepPipeline { A, B, Both };

struct SweepOptions {
    std::uint32_t p = 2;
    long k = 2;
    long from = 2;
    long to = 100;
    SweepPipeline pipeline = SweepPipeline::A;
    unsigned jobs = 1;
    std::string cache_path;
    bool verbose = false;
};

struct SweepSummary {
    std::size_t computed = 0;
    std::size_t skipped = 0;
    std::size_t failed = 0;
    std::vector<std::string> failures;
};

// Computes all missing records for prime levels in [from, to], in
// parallel worker threads, appending to the cache as results arrive.
SweepSummary sweep(const SweepOptions& options);

// Least-squares slope of y = alpha x through the origin, in exact
// rational arithmetic.
struct FitResult {
    mpq_class alpha;
    std::size_t points = 0;
    mpq_class sum_xy;
    mpq_class sum_xx;
};

FitResult fit_origin_line(const std::vector<std::pair<mpq_class, mpq_class>>& points);

// Constants of the asymptotic inequality templates.  Missing values fall
// back to the documented defaults of each question.
struct QuestionConstants {
    std::optional<mpq_class> epsilon;
    std::optional<mpq_class> alpha;
    std::optional<mpq_class> beta;
    std::optional<mpq_class> c1;
    std::optional<mpq_class> c2;
    std::optional<mpq_class> big_c;
    std::optional<mpq_class> big_d;
};

struct QuestionReport {
    std::string id;
    std::uint32_t p = 0;
    long k = 0;
    std::string constants_used;
    std::size_t levels_checked = 0;
    std::size_t passes = 0;
    std::vector<long> counterexamples;       // levels violating the bound
    std::vector<long> skipped_levels;        // e.g. d <= 1 where log d = 0
    std::optional<mpq_class> fitted_slope;   // reported for question 4.2
    bool all_pass() const { return counterexamples.empty(); }
};

// Evaluates one of the questions 4.1-4.4 on the cached records of the
// (p, k) slice.  Levels with N == p are excluded.
QuestionReport evaluate_question(const std::vector<LevelRecord>& cache,
                                 const std::string& id, std::uint32_t p,
                                 long k, const QuestionConstants& constants);

// Writes <stat>_p<p>_k<k>.dat / .gp / .fit.txt into out_dir and returns
// the file names.  stat is one of "a", "b", "c".
std::vector<std::string> emit_plot(const std::vector<LevelRecord>& cache,
                                   const std::string& stat, std::uint32_t p,
                                   long k, const std::string& out_dir);

// Deduplicated (p, k) slice used by plots and question evaluation:
// pipeline A records are preferred when both pipelines are cached, and
// levels with N == p are dropped.
std::vector<LevelRecord> question_slice(const std::vector<LevelRecord>& cache,
                                        std::uint32_t p, long k);

// Fixed-point decimal rendering of an exact rational (for plot data).
std::string decimal_string(const mpq_class& q, int digits);

// mpq from "3", "-1/2", "0.75".
mpq_class parse_rational(const std::string& text);

}  // namespace survey
}  // namespace heckestat
