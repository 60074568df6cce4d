#include "heckestat/survey.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "heckestat/manin.hpp"

namespace heckestat {
namespace survey {

using json = nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) {
    throw std::logic_error(msg);
}

long long gcd_ll(long long a, long long b) {
    while (b != 0) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a < 0 ? -a : a;
}

}  // namespace

void LevelRecord::validate() const {
    if (schema != kCacheSchema) fail("record: unknown schema version");
    if (residue_degrees.size() != num_max_ideals ||
        local_dims.size() != num_max_ideals)
        fail("record: multiset sizes disagree with #Spec");
    if (!std::is_sorted(residue_degrees.begin(), residue_degrees.end()) ||
        !std::is_sorted(local_dims.begin(), local_dims.end()))
        fail("record: multisets must be sorted ascending");
    std::size_t sum_deg = 0, sum_dim = 0, max_deg = 0;
    for (std::size_t x : residue_degrees) {
        sum_deg += x;
        max_deg = std::max(max_deg, x);
    }
    for (std::size_t x : local_dims) sum_dim += x;
    if (a != sum_deg) fail("record: a is not the sum of residue degrees");
    if (c != max_deg) fail("record: c is not the max residue degree");
    if (a > d) fail("record: a exceeds d");
    if (c > a) fail("record: c exceeds a");
    if (sum_dim != d) fail("record: local dimensions do not sum to d");
    if (semisimple != (a == d)) fail("record: semisimple flag inconsistent");
    if (b_den <= 0) fail("record: b has nonpositive denominator");
    if (gcd_ll(b_num, b_den) != 1) fail("record: b is not in lowest terms");
    // b * #Spec == a exactly
    if (static_cast<long long>(num_max_ideals) * b_num !=
        static_cast<long long>(a) * b_den)
        fail("record: b * #Spec != a");
    if (level_equals_p != (static_cast<long>(p) == N))
        fail("record: level_equals_p flag inconsistent");
}

std::string LevelRecord::to_json_line() const {
    json j;
    j["schema"] = schema;
    j["p"] = p;
    j["k"] = k;
    j["N"] = N;
    j["level_equals_p"] = level_equals_p;
    j["pipeline"] = pipeline == hecke::Pipeline::A ? "A" : "B";
    j["d"] = d;
    j["num_max_ideals"] = num_max_ideals;
    j["residue_degrees"] = residue_degrees;
    j["local_dims"] = local_dims;
    j["a"] = a;
    j["b_num"] = b_num;
    j["b_den"] = b_den;
    j["c"] = c;
    j["semisimple"] = semisimple;
    j["tool_version"] = tool_version;
    j["wall_time_ms"] = wall_time_ms;
    return j.dump();
}

LevelRecord LevelRecord::from_json_line(const std::string& line) {
    json j = json::parse(line);
    LevelRecord r;
    r.schema = j.at("schema").get<int>();
    r.p = j.at("p").get<std::uint32_t>();
    r.k = j.at("k").get<long>();
    r.N = j.at("N").get<long>();
    r.level_equals_p = j.at("level_equals_p").get<bool>();
    const std::string pl = j.at("pipeline").get<std::string>();
    if (pl == "A") r.pipeline = hecke::Pipeline::A;
    else if (pl == "B") r.pipeline = hecke::Pipeline::B;
    else fail("record: unknown pipeline tag");
    r.d = j.at("d").get<std::size_t>();
    r.num_max_ideals = j.at("num_max_ideals").get<std::size_t>();
    r.residue_degrees =
        j.at("residue_degrees").get<std::vector<std::size_t>>();
    r.local_dims = j.at("local_dims").get<std::vector<std::size_t>>();
    r.a = j.at("a").get<std::size_t>();
    r.b_num = j.at("b_num").get<long long>();
    r.b_den = j.at("b_den").get<long long>();
    r.c = j.at("c").get<std::size_t>();
    r.semisimple = j.at("semisimple").get<bool>();
    r.tool_version = j.at("tool_version").get<std::string>();
    r.wall_time_ms = j.at("wall_time_ms").get<long>();
    r.validate();
    return r;
}

bool LevelRecord::same_data(const LevelRecord& o) const {
    return schema == o.schema && p == o.p && k == o.k && N == o.N &&
           level_equals_p == o.level_equals_p && pipeline == o.pipeline &&
           d == o.d && num_max_ideals == o.num_max_ideals &&
           residue_degrees == o.residue_degrees &&
           local_dims == o.local_dims && a == o.a && b_num == o.b_num &&
           b_den == o.b_den && c == o.c && semisimple == o.semisimple &&
           tool_version == o.tool_version;
}

namespace {

LevelRecord record_from_decomposition(const localdec::Decomposition& dec,
                                      std::uint32_t p, long k, long N,
                                      hecke::Pipeline pipeline) {
    LevelRecord r;
    r.p = p;
    r.k = k;
    r.N = N;
    r.level_equals_p = (static_cast<long>(p) == N);
    r.pipeline = pipeline;
    r.d = dec.ambient_dimension;
    r.num_max_ideals = dec.factors.size();
    for (const auto& f : dec.factors) {
        r.residue_degrees.push_back(f.residue_degree);
        r.local_dims.push_back(f.dimension);
    }
    std::sort(r.residue_degrees.begin(), r.residue_degrees.end());
    std::sort(r.local_dims.begin(), r.local_dims.end());
    r.a = localdec::residue_degree_sum(dec);
    r.c = r.residue_degrees.empty() ? 0 : r.residue_degrees.back();
    if (r.num_max_ideals == 0) {
        r.b_num = 0;
        r.b_den = 1;
    } else {
        const long long g = gcd_ll(static_cast<long long>(r.a),
                                   static_cast<long long>(r.num_max_ideals));
        r.b_num = static_cast<long long>(r.a) / g;
        r.b_den = static_cast<long long>(r.num_max_ideals) / g;
    }
    r.semisimple = localdec::is_semisimple(dec);
    r.validate();
    return r;
}

localdec::Decomposition decompose_algebra(const hecke::ResidualHeckeAlgebra& alg) {
    // The regular representation matrices commute structurally: the
    // constants were verified symmetric and associative products come
    // from genuine operator products.
    return localdec::decompose(hecke::regular_representation(alg),
                               alg.field(), alg.dimension(),
                               /*assume_commuting=*/true);
}

}  // namespace

IntegralLevelContext compute_integral_context(long N, long k) {
    auto cusp = modsym::cuspidal_subspace(
        modsym::build_space(N, k, modsym::CoefficientDomain::rationals()));
    const long B = modsym::sturm_bound(N, k);
    IntegralLevelContext ctx;
    ctx.N = N;
    ctx.k = k;
    ctx.algebra = hecke::build_integral(cusp, B);
    return ctx;
}

LevelRecord record_from_integral(const IntegralLevelContext& ctx,
                                 std::uint32_t p) {
    const auto t0 = std::chrono::steady_clock::now();
    LevelRecord r;
    // The reduced algebra usually acts faithfully on the reduced
    // cuspidal lattice, in which case the statistics come from that
    // small module directly; otherwise take the regular representation
    // through the structure constants.
    if (auto stats = hecke::residual_stats_on_module(ctx.algebra, p)) {
        r.p = p;
        r.k = ctx.k;
        r.N = ctx.N;
        r.level_equals_p = (static_cast<long>(p) == ctx.N);
        r.pipeline = hecke::Pipeline::A;
        r.d = stats->dim;
        r.num_max_ideals = stats->factors.size();
        for (const auto& [dim, deg] : stats->factors) {
            r.local_dims.push_back(dim);
            r.residue_degrees.push_back(deg);
            r.a += deg;
        }
        std::sort(r.local_dims.begin(), r.local_dims.end());
        std::sort(r.residue_degrees.begin(), r.residue_degrees.end());
        r.c = r.residue_degrees.empty() ? 0 : r.residue_degrees.back();
        if (r.num_max_ideals == 0) {
            r.b_num = 0;
            r.b_den = 1;
        } else {
            const long long g =
                gcd_ll(static_cast<long long>(r.a),
                       static_cast<long long>(r.num_max_ideals));
            r.b_num = static_cast<long long>(r.a) / g;
            r.b_den = static_cast<long long>(r.num_max_ideals) / g;
        }
        r.semisimple = (r.a == r.d);
        r.validate();
    } else {
        hecke::ResidualHeckeAlgebra res = hecke::reduce_mod_p(ctx.algebra, p);
        r = record_from_decomposition(decompose_algebra(res), p, ctx.k,
                                      ctx.N, hecke::Pipeline::A);
    }
    r.wall_time_ms = static_cast<long>(
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - t0)
            .count());
    return r;
}

LevelRecord compute_level(std::uint32_t p, long k, long N,
                          hecke::Pipeline pipeline) {
    if (!ffalg::is_prime_u64(p))
        throw std::invalid_argument("compute_level: p must be prime");
    const auto t0 = std::chrono::steady_clock::now();
    LevelRecord r;
    if (pipeline == hecke::Pipeline::A) {
        IntegralLevelContext ctx = compute_integral_context(N, k);
        r = record_from_integral(ctx, p);
    } else {
        auto cusp = modsym::cuspidal_subspace(modsym::build_space(
            N, k, modsym::CoefficientDomain::prime_field(p)));
        const long B = modsym::sturm_bound(N, k);
        hecke::ResidualHeckeAlgebra res =
            hecke::build_residual_direct(cusp, B);
        r = record_from_decomposition(decompose_algebra(res), p, k, N,
                                      hecke::Pipeline::B);
    }
    r.wall_time_ms = static_cast<long>(
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - t0)
            .count());
    return r;
}

std::vector<LevelRecord> CacheFile::load() const {
    std::vector<LevelRecord> out;
    std::ifstream in(path_);
    if (!in) return out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            out.push_back(LevelRecord::from_json_line(line));
        } catch (const std::exception& e) {
            std::cerr << "warning: " << path_ << ":" << lineno
                      << ": skipping corrupt cache line (" << e.what()
                      << ")\n";
        }
    }
    return out;
}

void CacheFile::append(const LevelRecord& r) const {
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("cache: cannot open " + path_);
    out << r.to_json_line() << "\n";
    out.flush();
    if (!out) throw std::runtime_error("cache: write failed on " + path_);
}

SweepSummary sweep(const SweepOptions& options) {
    if (options.cache_path.empty())
        throw std::invalid_argument("sweep: cache path required");
    if (!ffalg::is_prime_u64(options.p))
        throw std::invalid_argument("sweep: p must be prime");
    // Weight-4 sweeps at p in {2, 3} pick up forced lower-weight
    // contributions; the CLI exposes an override that widens this check.
    CacheFile cache(options.cache_path);
    std::vector<LevelRecord> existing = cache.load();

    struct Task {
        long N;
        hecke::Pipeline pipeline;
    };
    std::vector<Task> tasks;
    auto cached = [&](long N, hecke::Pipeline pl) {
        for (const LevelRecord& r : existing)
            if (r.p == options.p && r.k == options.k && r.N == N &&
                r.pipeline == pl)
                return true;
        return false;
    };
    for (long N = std::max(2L, options.from); N <= options.to; ++N) {
        if (!ffalg::is_prime_u64(static_cast<std::uint64_t>(N))) continue;
        if (options.pipeline != SweepPipeline::B &&
            !cached(N, hecke::Pipeline::A))
            tasks.push_back({N, hecke::Pipeline::A});
        if (options.pipeline != SweepPipeline::A &&
            !cached(N, hecke::Pipeline::B))
            tasks.push_back({N, hecke::Pipeline::B});
    }

    SweepSummary summary;
    summary.skipped =
        static_cast<std::size_t>([&] {
            std::size_t count = 0;
            for (long N = std::max(2L, options.from); N <= options.to; ++N) {
                if (!ffalg::is_prime_u64(static_cast<std::uint64_t>(N)))
                    continue;
                if (options.pipeline != SweepPipeline::B &&
                    cached(N, hecke::Pipeline::A))
                    ++count;
                if (options.pipeline != SweepPipeline::A &&
                    cached(N, hecke::Pipeline::B))
                    ++count;
            }
            return count;
        }());

    std::mutex io_mutex;
    std::atomic<std::size_t> next{0};
    const unsigned jobs = std::max(1u, options.jobs);
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const Task& t = tasks[i];
            try {
                LevelRecord r =
                    compute_level(options.p, options.k, t.N, t.pipeline);
                std::lock_guard<std::mutex> lock(io_mutex);
                cache.append(r);
                ++summary.computed;
                if (options.verbose)
                    std::cerr << "level " << t.N << " pipeline "
                              << (t.pipeline == hecke::Pipeline::A ? "A"
                                                                   : "B")
                              << ": d=" << r.d << " a=" << r.a
                              << " c=" << r.c << " (" << r.wall_time_ms
                              << " ms)\n";
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(io_mutex);
                ++summary.failed;
                summary.failures.push_back(
                    "N=" + std::to_string(t.N) + ": " + e.what());
                std::cerr << "error: level " << t.N << ": " << e.what()
                          << "\n";
            }
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return summary;
}

FitResult fit_origin_line(
    const std::vector<std::pair<mpq_class, mpq_class>>& points) {
    FitResult f;
    f.points = points.size();
    for (const auto& [x, y] : points) {
        f.sum_xy += x * y;
        f.sum_xx += x * x;
    }
    if (f.sum_xx == 0)
        throw std::invalid_argument(
            "fit_origin_line: need a point with nonzero x");
    f.alpha = f.sum_xy / f.sum_xx;
    f.alpha.canonicalize();
    return f;
}

std::vector<LevelRecord> question_slice(const std::vector<LevelRecord>& cache,
                                        std::uint32_t p, long k) {
    std::vector<LevelRecord> out;
    for (const LevelRecord& r : cache) {
        if (r.p != p || r.k != k || r.level_equals_p) continue;
        auto it = std::find_if(out.begin(), out.end(), [&](const LevelRecord& o) {
            return o.N == r.N;
        });
        if (it == out.end()) {
            out.push_back(r);
        } else if (it->pipeline == hecke::Pipeline::B &&
                   r.pipeline == hecke::Pipeline::A) {
            *it = r;  // ground-truth pipeline wins
        }
    }
    std::sort(out.begin(), out.end(),
              [](const LevelRecord& a, const LevelRecord& b) {
                  return a.N < b.N;
              });
    return out;
}

namespace {

mpq_class record_b(const LevelRecord& r) {
    mpq_class b(static_cast<long>(r.b_num), static_cast<long>(r.b_den));
    b.canonicalize();
    return b;
}

std::string constants_string(
    const std::vector<std::pair<std::string, mpq_class>>& used) {
    std::ostringstream os;
    for (std::size_t i = 0; i < used.size(); ++i) {
        if (i) os << ", ";
        os << used[i].first << "=" << used[i].second.get_str();
    }
    return os.str();
}

}  // namespace

QuestionReport evaluate_question(const std::vector<LevelRecord>& cache,
                                 const std::string& id, std::uint32_t p,
                                 long k, const QuestionConstants& constants) {
    QuestionReport rep;
    rep.id = id;
    rep.p = p;
    rep.k = k;
    std::vector<LevelRecord> slice = question_slice(cache, p, k);
    if (slice.empty())
        throw std::invalid_argument(
            "evaluate_question: no cached records for this (p, k)");

    auto value_or = [](const std::optional<mpq_class>& v, const char* text) {
        return v.value_or(parse_rational(text));
    };

    if (id == "4.1") {
        // a(N) > (1 - eps) d(N) - C
        const mpq_class eps = value_or(constants.epsilon, "1/2");
        const mpq_class C = value_or(constants.big_c, "10");
        rep.constants_used =
            constants_string({{"epsilon", eps}, {"C", C}});
        for (const LevelRecord& r : slice) {
            ++rep.levels_checked;
            const mpq_class lhs(static_cast<long>(r.a));
            const mpq_class rhs =
                (1 - eps) * mpq_class(static_cast<long>(r.d)) - C;
            if (lhs > rhs) ++rep.passes;
            else rep.counterexamples.push_back(r.N);
        }
    } else if (id == "4.2") {
        // alpha d + C > a > beta d - D
        const mpq_class alpha = value_or(constants.alpha, "3/4");
        const mpq_class beta = value_or(constants.beta, "1/4");
        const mpq_class C = value_or(constants.big_c, "10");
        const mpq_class D = value_or(constants.big_d, "10");
        rep.constants_used = constants_string(
            {{"alpha", alpha}, {"beta", beta}, {"C", C}, {"D", D}});
        std::vector<std::pair<mpq_class, mpq_class>> pts;
        for (const LevelRecord& r : slice) {
            ++rep.levels_checked;
            const mpq_class a(static_cast<long>(r.a));
            const mpq_class d(static_cast<long>(r.d));
            if (alpha * d + C > a && a > beta * d - D) ++rep.passes;
            else rep.counterexamples.push_back(r.N);
            if (r.d > 0) pts.emplace_back(d, a);
        }
        if (!pts.empty()) rep.fitted_slope = fit_origin_line(pts).alpha;
    } else if (id == "4.3") {
        // C1 + alpha d / log d <= b <= C2 + beta d
        const mpq_class alpha = value_or(constants.alpha, "1/4");
        const mpq_class beta = value_or(constants.beta, "3/4");
        const mpq_class c1 = value_or(constants.c1, "0");
        const mpq_class c2 = value_or(constants.c2, "10");
        rep.constants_used = constants_string(
            {{"alpha", alpha}, {"beta", beta}, {"C1", c1}, {"C2", c2}});
        for (const LevelRecord& r : slice) {
            if (r.d <= 1) {
                rep.skipped_levels.push_back(r.N);  // log d vanishes
                continue;
            }
            ++rep.levels_checked;
            const long double b = static_cast<long double>(r.b_num) /
                                  static_cast<long double>(r.b_den);
            const long double dd = static_cast<long double>(r.d);
            const long double lhs =
                static_cast<long double>(c1.get_d()) +
                static_cast<long double>(alpha.get_d()) * dd /
                    std::log(dd);
            const long double rhs =
                static_cast<long double>(c2.get_d()) +
                static_cast<long double>(beta.get_d()) * dd;
            if (lhs <= b && b <= rhs) ++rep.passes;
            else rep.counterexamples.push_back(r.N);
        }
    } else if (id == "4.4") {
        // C1 + alpha d <= c <= C2 + beta d
        const mpq_class alpha = value_or(constants.alpha, "1/4");
        const mpq_class beta = value_or(constants.beta, "3/4");
        const mpq_class c1 = value_or(constants.c1, "0");
        const mpq_class c2 = value_or(constants.c2, "10");
        rep.constants_used = constants_string(
            {{"alpha", alpha}, {"beta", beta}, {"C1", c1}, {"C2", c2}});
        for (const LevelRecord& r : slice) {
            ++rep.levels_checked;
            const mpq_class cc(static_cast<long>(r.c));
            const mpq_class d(static_cast<long>(r.d));
            if (c1 + alpha * d <= cc && cc <= c2 + beta * d) ++rep.passes;
            else rep.counterexamples.push_back(r.N);
        }
    } else {
        throw std::invalid_argument("evaluate_question: unknown id " + id);
    }
    return rep;
}

std::string decimal_string(const mpq_class& q, int digits) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10,
                  static_cast<unsigned long>(digits));
    const bool neg = q < 0;
    mpq_class aq = neg ? mpq_class(-q) : q;
    // round half away from zero
    mpz_class num = aq.get_num() * scale * 2 + aq.get_den();
    mpz_class scaled = num / (aq.get_den() * 2);
    mpz_class whole = scaled / scale;
    mpz_class frac = scaled % scale;
    std::string fs = frac.get_str();
    fs.insert(fs.begin(),
              static_cast<std::size_t>(digits) - fs.size(), '0');
    return (neg ? "-" : "") + whole.get_str() + "." + fs;
}

mpq_class parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational");
    const auto dot = text.find('.');
    if (dot != std::string::npos) {
        const std::string ip = text.substr(0, dot);
        const std::string fp = text.substr(dot + 1);
        if (fp.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad decimal: " + text);
        const bool neg = !ip.empty() && ip[0] == '-';
        mpz_class whole(ip.empty() || ip == "-" || ip == "+" ? "0" : ip);
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
        mpz_class fracnum(fp.empty() ? "0" : fp);
        mpz_class total = abs(whole) * scale + fracnum;
        mpq_class q(total, scale);
        q.canonicalize();
        return neg || (whole < 0) ? mpq_class(-q) : q;
    }
    mpq_class q(text);
    q.canonicalize();
    if (q.get_den() == 0) throw std::invalid_argument("bad rational: " + text);
    return q;
}

std::vector<std::string> emit_plot(const std::vector<LevelRecord>& cache,
                                   const std::string& stat, std::uint32_t p,
                                   long k, const std::string& out_dir) {
    if (stat != "a" && stat != "b" && stat != "c")
        throw std::invalid_argument("emit_plot: stat must be a, b or c");
    std::vector<LevelRecord> slice = question_slice(cache, p, k);
    if (slice.empty())
        throw std::invalid_argument("emit_plot: no records for this slice");

    std::vector<std::pair<mpq_class, mpq_class>> pts;
    for (const LevelRecord& r : slice) {
        mpq_class y;
        if (stat == "a") y = static_cast<long>(r.a);
        else if (stat == "c") y = static_cast<long>(r.c);
        else y = record_b(r);
        pts.emplace_back(mpq_class(static_cast<long>(r.d)), y);
    }
    bool have_x = false;
    for (const auto& [x, y] : pts)
        if (x != 0) have_x = true;
    FitResult fit;
    if (have_x) fit = fit_origin_line(pts);

    std::filesystem::create_directories(out_dir);
    const std::string base = stat + "_p" + std::to_string(p) + "_k" +
                             std::to_string(k);
    const std::string dat = base + ".dat";
    const std::string gp = base + ".gp";
    const std::string fitfile = base + ".fit.txt";
    const std::string alpha_dec =
        have_x ? decimal_string(fit.alpha, 6) : "0.000000";

    {
        std::ofstream out(std::filesystem::path(out_dir) / dat);
        out << "# p=" << p << " k=" << k << " stat=" << stat
            << " alpha=" << alpha_dec << "\n";
        for (std::size_t i = 0; i < slice.size(); ++i) {
            out << slice[i].d << " ";
            if (stat == "b") out << decimal_string(pts[i].second, 6);
            else out << pts[i].second.get_num();
            out << "\n";
        }
    }
    {
        std::ofstream out(std::filesystem::path(out_dir) / gp);
        out << "# " << stat << " statistic vs d(N), p=" << p << ", k=" << k
            << "\n";
        out << "set terminal pngcairo size 900,600\n";
        out << "set output '" << base << ".png'\n";
        out << "set xlabel 'd(N)'\n";
        out << "set ylabel '" << stat << "(N)'\n";
        out << "alpha = " << alpha_dec << "\n";
        out << "plot '" << dat
            << "' using 1:2 with points pt 7 ps 0.6 title '" << stat
            << "(N)', alpha*x with lines lc rgb 'green' title sprintf('%."
               "4f*x', alpha)\n";
    }
    {
        std::ofstream out(std::filesystem::path(out_dir) / fitfile);
        if (have_x)
            out << "alpha = " << fit.alpha.get_str() << " = " << alpha_dec
                << "\n";
        else
            out << "alpha undefined (all x = 0)\n";
        out << "points = " << pts.size() << "\n";
    }
    return {dat, gp, fitfile};
}

}  // namespace survey
}  // namespace heckestat
