#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "heckestat/survey.hpp"

using namespace heckestat;
using namespace heckestat::survey;

namespace {

std::filesystem::path temp_dir() {
    auto p = std::filesystem::temp_directory_path() /
             ("heckestat_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("compute_level fixed small cases") {
    // rank-one algebra: everything is 1
    LevelRecord r1 = compute_level(3, 2, 11, hecke::Pipeline::A);
    CHECK(r1.d == 1);
    CHECK(r1.num_max_ideals == 1);
    CHECK(r1.a == 1);
    CHECK(r1.b_num == 1);
    CHECK(r1.b_den == 1);
    CHECK(r1.c == 1);
    CHECK(r1.semisimple);
    CHECK_FALSE(r1.level_equals_p);

    // x^2 + x - 1 stays irreducible mod 2
    LevelRecord r2 = compute_level(2, 2, 23, hecke::Pipeline::A);
    CHECK(r2.d == 2);
    CHECK(r2.num_max_ideals == 1);
    CHECK(r2.a == 2);
    CHECK(r2.b_num == 2);
    CHECK(r2.b_den == 1);
    CHECK(r2.c == 2);
    CHECK(r2.semisimple);

    // mod 5 the discriminant of x^2 + x - 1 vanishes: one ramified
    // local factor of dimension 2 with residue degree 1
    LevelRecord r3 = compute_level(5, 2, 23, hecke::Pipeline::A);
    CHECK(r3.d == 2);
    CHECK(r3.num_max_ideals == 1);
    CHECK(r3.a == 1);
    CHECK(r3.b_num == 1);
    CHECK(r3.b_den == 1);
    CHECK(r3.c == 1);
    CHECK_FALSE(r3.semisimple);
    CHECK(r3.local_dims == std::vector<std::size_t>{2});
    CHECK(r3.residue_degrees == std::vector<std::size_t>{1});

    // N = p is computed and flagged
    LevelRecord r4 = compute_level(11, 2, 11, hecke::Pipeline::A);
    CHECK(r4.level_equals_p);

    CHECK_THROWS_AS(compute_level(4, 2, 11, hecke::Pipeline::A),
                    std::invalid_argument);
}

TEST_CASE("record validation catches corrupted data") {
    LevelRecord r = compute_level(3, 2, 11, hecke::Pipeline::A);
    r.validate();
    LevelRecord bad = r;
    bad.a = bad.d + 1;
    CHECK_THROWS_AS(bad.validate(), std::logic_error);
    bad = r;
    bad.semisimple = !bad.semisimple;
    CHECK_THROWS_AS(bad.validate(), std::logic_error);
    bad = r;
    bad.b_den = 2;
    CHECK_THROWS_AS(bad.validate(), std::logic_error);
}

TEST_CASE("json round trip") {
    LevelRecord r = compute_level(5, 2, 23, hecke::Pipeline::A);
    LevelRecord back = LevelRecord::from_json_line(r.to_json_line());
    CHECK(back.same_data(r));
    CHECK(back.wall_time_ms == r.wall_time_ms);
}

TEST_CASE("cache skips corrupt lines") {
    auto dir = temp_dir();
    auto path = (dir / "cache.jsonl").string();
    {
        std::ofstream out(path);
        out << compute_level(3, 2, 11, hecke::Pipeline::A).to_json_line()
            << "\n";
        out << "this is not json\n";
        out << "{\"schema\": 99}\n";
        out << compute_level(3, 2, 13, hecke::Pipeline::A).to_json_line()
            << "\n";
    }
    CacheFile cache(path);
    auto records = cache.load();
    CHECK(records.size() == 2);
    std::filesystem::remove_all(dir);
}

TEST_CASE("sweep computes, resumes, and is deterministic across jobs") {
    auto dir = temp_dir();
    SweepOptions opt;
    opt.p = 3;
    opt.k = 2;
    opt.from = 2;
    opt.to = 30;
    opt.pipeline = SweepPipeline::A;
    opt.jobs = 1;
    opt.cache_path = (dir / "c1.jsonl").string();

    SweepSummary s1 = sweep(opt);
    CHECK(s1.computed == 10);  // pi(30) = 10
    CHECK(s1.failed == 0);
    CHECK(s1.skipped == 0);

    // resumability: nothing recomputed
    SweepSummary s2 = sweep(opt);
    CHECK(s2.computed == 0);
    CHECK(s2.skipped == 10);

    // jobs = 4 produces the identical record set
    SweepOptions opt4 = opt;
    opt4.jobs = 4;
    opt4.cache_path = (dir / "c4.jsonl").string();
    SweepSummary s4 = sweep(opt4);
    CHECK(s4.computed == 10);

    auto r1 = CacheFile(opt.cache_path).load();
    auto r4 = CacheFile(opt4.cache_path).load();
    REQUIRE(r1.size() == r4.size());
    auto key = [](const LevelRecord& r) { return r.N; };
    std::sort(r1.begin(), r1.end(), [&](auto& a, auto& b) {
        return key(a) < key(b);
    });
    std::sort(r4.begin(), r4.end(), [&](auto& a, auto& b) {
        return key(a) < key(b);
    });
    for (std::size_t i = 0; i < r1.size(); ++i)
        CHECK(r1[i].same_data(r4[i]));
    std::filesystem::remove_all(dir);
}

TEST_CASE("fit through the origin") {
    using P = std::pair<mpq_class, mpq_class>;
    FitResult f1 = fit_origin_line({P{2, 1}, P{4, 2}});
    CHECK(f1.alpha == mpq_class(1, 2));
    CHECK(fit_origin_line({P{1, 1}}).alpha == 1);
    CHECK(fit_origin_line({P{1, 0}, P{1, 2}}).alpha == 1);
    CHECK_THROWS_AS(fit_origin_line({P{0, 1}, P{0, 2}}),
                    std::invalid_argument);
}

TEST_CASE("question evaluation") {
    std::vector<LevelRecord> cache;
    for (long N : {11L, 13L, 17L, 19L, 23L})
        cache.push_back(compute_level(3, 2, N, hecke::Pipeline::A));

    QuestionConstants qc;
    // vacuous bound: a > 0*d - 1 always holds
    qc.epsilon = mpq_class(1);
    qc.big_c = mpq_class(1);
    QuestionReport rep = evaluate_question(cache, "4.1", 3, 2, qc);
    CHECK(rep.all_pass());
    CHECK(rep.levels_checked == 5);

    // the a = 0, C = 0 edge: a > 0 fails at genus-zero levels
    QuestionConstants edge;
    edge.epsilon = mpq_class(1);
    edge.big_c = mpq_class(0);
    QuestionReport rep0 = evaluate_question(cache, "4.1", 3, 2, edge);
    CHECK_FALSE(rep0.all_pass());  // N = 13, 17, 19 have d = 0 over F_3

    // deliberate violation of 4.4: alpha = 2 forces c >= 2d to fail
    QuestionConstants bad;
    bad.alpha = mpq_class(2);
    bad.c1 = mpq_class(0);
    bad.c2 = mpq_class(1000);
    bad.beta = mpq_class(1000);
    QuestionReport rep44 = evaluate_question(cache, "4.4", 3, 2, bad);
    CHECK_FALSE(rep44.all_pass());

    // 4.2 reports the fitted slope
    QuestionReport rep42 = evaluate_question(cache, "4.2", 3, 2, {});
    CHECK(rep42.fitted_slope.has_value());

    // 4.3 skips d <= 1 levels
    QuestionReport rep43 = evaluate_question(cache, "4.3", 3, 2, {});
    CHECK(rep43.skipped_levels.size() >= 3);

    CHECK_THROWS_AS(evaluate_question(cache, "9.9", 3, 2, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(evaluate_question(cache, "4.1", 7, 2, {}),
                    std::invalid_argument);  // empty slice
}

TEST_CASE("plot emission") {
    auto dir = temp_dir();
    std::vector<LevelRecord> cache;
    for (long N : {11L, 23L})
        cache.push_back(compute_level(3, 2, N, hecke::Pipeline::A));
    auto files = emit_plot(cache, "a", 3, 2, dir.string());
    REQUIRE(files.size() == 3);
    CHECK(files[0] == "a_p3_k2.dat");
    std::ifstream dat(dir / files[0]);
    std::string line;
    std::getline(dat, line);
    CHECK(line.rfind("#", 0) == 0);  // header comment
    std::getline(dat, line);
    CHECK(line == "1 1");  // N=11: d=1, a=1
    std::getline(dat, line);
    CHECK(line == "2 2");  // N=23 mod 3: semisimple split? value = a

    // b statistic renders 6 decimal places
    auto files_b = emit_plot(cache, "b", 3, 2, dir.string());
    std::ifstream datb(dir / files_b[0]);
    std::getline(datb, line);
    std::getline(datb, line);
    CHECK(line.find('.') != std::string::npos);
    CHECK(line.substr(line.find('.') + 1).size() == 6);

    CHECK_THROWS_AS(emit_plot(cache, "x", 3, 2, dir.string()),
                    std::invalid_argument);
    CHECK_THROWS_AS(emit_plot(cache, "a", 7, 2, dir.string()),
                    std::invalid_argument);
    std::filesystem::remove_all(dir);
}

TEST_CASE("decimal and rational parsing helpers") {
    CHECK(decimal_string(mpq_class(4, 5), 6) == "0.800000");
    CHECK(decimal_string(mpq_class(-1, 3), 6) == "-0.333333");
    CHECK(decimal_string(mpq_class(1, 2), 1) == "0.5");
    CHECK(parse_rational("1/2") == mpq_class(1, 2));
    CHECK(parse_rational("0.75") == mpq_class(3, 4));
    CHECK(parse_rational("-0.5") == mpq_class(-1, 2));
    CHECK(parse_rational("3") == 3);
    CHECK_THROWS_AS(parse_rational("abc"), std::exception);
}

TEST_CASE("multi-prime reuse of the integral context") {
    IntegralLevelContext ctx = compute_integral_context(23, 2);
    LevelRecord a = record_from_integral(ctx, 5);
    LevelRecord b = compute_level(5, 2, 23, hecke::Pipeline::A);
    CHECK(a.same_data(b));
}
