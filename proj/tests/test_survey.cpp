#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bruhat/serialize.hpp"
#include "bruhat/survey.hpp"
#include "bruhat/weak_order.hpp"

using namespace bruhat;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() /
                ("bruhat_survey_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                 ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    fs::path operator/(const std::string& name) const { return path_ / name; }

private:
    fs::path path_;
};

SurveyReport run(std::size_t n, std::optional<fs::path> out = {}, bool resume = false,
                 std::optional<std::uint64_t> stop = {}, std::size_t threads = 1, std::size_t chunk = 64) {
    SurveyOptions o;
    o.n = n;
    o.out = std::move(out);
    o.resume = resume;
    o.stop_after = stop;
    o.threads = threads;
    o.chunk = chunk;
    return scan(o);
}

}  // namespace

TEST(Schroeder, Recurrence) {
    const std::vector<int> expected{1, 2, 6, 22, 90, 394, 1806, 8558};
    for (std::size_t k = 0; k < expected.size(); ++k) EXPECT_EQ(schroder(k), expected[k]);
}

TEST(Scan, SmallCounts) {
    const SurveyReport one = run(1);
    EXPECT_EQ(one.total, 1u);
    EXPECT_EQ(one.count_separable, 1u);
    EXPECT_EQ(one.count_rank_symmetric, 1u);
    EXPECT_EQ(one.count_symmetric_cyclotomic, 1u);
    EXPECT_EQ(one.count_symmetric_nondividing, 0u);
    EXPECT_TRUE(one.completed);

    const SurveyReport four = run(4);
    EXPECT_EQ(four.count_separable, 22u);
    for (std::size_t n = 1; n <= 7; ++n) {
        const SurveyReport r = run(n, {}, false, {}, 2, 128);
        EXPECT_EQ(r.count_separable, schroder(n - 1)) << n;
        EXPECT_EQ(r.total, factorial(n));
    }
}

// Rank symmetry is claimed to force a cyclotomic factorization for n <= 8.
// This fails from n = 6 on (see RankSymmetricWithoutCyclotomicFactorization);
// the test is kept as the statement of the claimed invariant.
TEST(Scan, RankSymmetricImpliesCyclotomicUpToSeven) {
    for (std::size_t n = 1; n <= 7; ++n) {
        const SurveyReport r = run(n, {}, false, {}, 2, 512);
        EXPECT_EQ(r.count_symmetric_cyclotomic, r.count_rank_symmetric) << "n=" << n;
    }
}

TEST(Scan, RankSymmetricWithoutCyclotomicFactorization) {
    // [id, 245163] has rank sizes 1,2,2,3,2,2,1: palindromic, but the value
    // 13 at q = 1 would need a Phi_{13^k} factor, of degree at least 12.
    const Permutation p{2, 4, 5, 1, 6, 3};
    const IntPoly f = rank_gf(lower_interval(p));
    EXPECT_EQ(f, (IntPoly{1, 2, 2, 3, 2, 2, 1}));
    EXPECT_TRUE(is_symmetric(f));
    EXPECT_EQ(f.at_one(), 13);
    EXPECT_FALSE(is_cyclotomic_product(f));
    const std::vector<std::uint64_t> gaps{0, 0, 0, 0, 0, 7, 80};
    for (std::size_t n = 1; n <= 7; ++n) {
        const SurveyReport r = run(n, {}, false, {}, 2, 512);
        EXPECT_EQ(r.count_rank_symmetric - r.count_symmetric_cyclotomic, gaps[n - 1]) << "n=" << n;
    }
}

TEST(Scan, RecordsAgreeWithIntervalsAndInvariants) {
    SurveyOptions o;
    o.n = 5;
    o.threads = 1;
    o.on_record = [](const SurveyRecord& r) {
        const Interval iv = lower_interval(r.word);
        EXPECT_EQ(r.gf_below, rank_gf(iv));
        EXPECT_EQ(r.gf_below.at_one(), iv.size());
        if (r.is_separable) {
            EXPECT_TRUE(r.rank_symmetric && r.unimodal && r.divides_qfact) << r.word.to_string();
        }
        if (r.cyclotomic_product) EXPECT_TRUE(r.rank_symmetric) << r.word.to_string();
    };
    scan(o);
}

TEST(Scan, ModesAgreeRecordForRecord) {
    for (std::size_t n = 1; n <= 6; ++n) {
        std::vector<std::string> a, b;
        SurveyOptions o;
        o.n = n;
        o.threads = 2;
        o.chunk = 50;
        o.mode = SurveyMode::formula_accelerated;
        o.on_record = [&](const SurveyRecord& r) { a.push_back(to_csv_row(r)); };
        const auto ra = scan(o);
        o.mode = SurveyMode::exact_bruteforce;
        o.on_record = [&](const SurveyRecord& r) { b.push_back(to_csv_row(r)); };
        const auto rb = scan(o);
        EXPECT_EQ(a, b);
        EXPECT_EQ(a.size(), factorial(n));
        EXPECT_EQ(ra.count_rank_symmetric, rb.count_rank_symmetric);
    }
}

TEST(Scan, Guard) {
    EXPECT_THROW(run(9), GuardExceeded);
    EXPECT_THROW(run(0), InvalidPermutation);
}

TEST(Csv, RowRoundTrip) {
    const SurveyRecord r = survey_record(Permutation{4, 1, 3, 2}, SurveyMode::formula_accelerated, q_factorial(4));
    const std::string row = to_csv_row(r);
    EXPECT_EQ(row, "4132,true,1;2;2;2;1,true,true,true,true\n");
    EXPECT_EQ(to_csv_row(parse_csv_row(row)), row);
    EXPECT_THROW(parse_csv_row("4132,true"), ParseError);
    EXPECT_THROW(parse_csv_row("4132,yes,1,true,true,true,true"), ParseError);
}

TEST(Csv, OutputIndependentOfThreadsAndChunks) {
    TempDir dir;
    run(6, dir / "a.csv", false, {}, 1, 720);
    run(6, dir / "b.csv", false, {}, 3, 17);
    EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "b.csv"));
    EXPECT_FALSE(fs::exists(dir / "a.csv.ckpt"));
    EXPECT_FALSE(fs::exists(dir / "a.csv.partial"));
    const std::string csv = slurp(dir / "a.csv");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 721);
    EXPECT_EQ(csv.rfind(kSurveyCsvHeader, 0), 0u);
}

TEST(Checkpoint, InterruptAtHalfAndResume) {
    TempDir dir;
    const SurveyReport clean = run(6, dir / "clean.csv");
    const SurveyReport first = run(6, dir / "r.csv", false, 360);
    EXPECT_FALSE(first.completed);
    EXPECT_TRUE(fs::exists(dir / "r.csv.ckpt"));
    EXPECT_TRUE(fs::exists(dir / "r.csv.partial"));
    EXPECT_FALSE(fs::exists(dir / "r.csv"));
    const auto ckpt = nlohmann::json::parse(slurp(dir / "r.csv.ckpt"));
    EXPECT_EQ(ckpt.at("records"), 360);
    EXPECT_EQ(ckpt.at("last_rank"), 359);
    const SurveyReport resumed = run(6, dir / "r.csv", true);
    EXPECT_TRUE(resumed.completed);
    EXPECT_TRUE(resumed.same_results(clean));
    EXPECT_EQ(slurp(dir / "r.csv"), slurp(dir / "clean.csv"));
}

TEST(Checkpoint, ResumeWithoutCheckpointRunsFully) {
    TempDir dir;
    const SurveyReport clean = run(5);
    const SurveyReport r = run(5, dir / "x.csv", true);
    EXPECT_TRUE(r.same_results(clean));
}

TEST(Checkpoint, SevenResumedTwiceIsByteIdentical) {
    TempDir dir;
    run(7, dir / "clean.csv", false, {}, 2, 256);
    run(7, dir / "r.csv", false, 1000, 2, 256);
    run(7, dir / "r.csv", true, 2000, 1, 100);
    const SurveyReport last = run(7, dir / "r.csv", true, {}, 2, 300);
    EXPECT_TRUE(last.completed);
    EXPECT_EQ(last.count_separable, 1806u);
    EXPECT_EQ(slurp(dir / "r.csv"), slurp(dir / "clean.csv"));
}

TEST(Checkpoint, CorruptionIsDetected) {
    TempDir dir;
    run(5, dir / "c.csv", false, 60);
    {
        // Flip a flag inside the already-checkpointed rows.
        std::string bytes = slurp(dir / "c.csv.partial");
        const auto pos = bytes.find("true");
        ASSERT_NE(pos, std::string::npos);
        bytes.replace(pos, 4, "fals");
        std::ofstream(dir / "c.csv.partial", std::ios::binary | std::ios::trunc) << bytes;
    }
    EXPECT_THROW(run(5, dir / "c.csv", true), CheckpointError);

    run(5, dir / "d.csv", false, 60);
    std::ofstream(dir / "d.csv.ckpt", std::ios::trunc) << "{ not json";
    EXPECT_THROW(run(5, dir / "d.csv", true), CheckpointError);

    run(5, dir / "e.csv", false, 60);
    fs::resize_file(dir / "e.csv.partial", 100);
    EXPECT_THROW(run(5, dir / "e.csv", true), CheckpointError);

    run(5, dir / "f.csv", false, 60);
    EXPECT_THROW(run(6, dir / "f.csv", true), CheckpointError);
}

TEST(Checkpoint, TrailingPartialWaveIsDiscarded) {
    TempDir dir;
    run(5, dir / "clean.csv");
    run(5, dir / "t.csv", false, 40);
    std::ofstream(dir / "t.csv.partial", std::ios::binary | std::ios::app) << "12345,true,1;";
    run(5, dir / "t.csv", true);
    EXPECT_EQ(slurp(dir / "t.csv"), slurp(dir / "clean.csv"));
}

TEST(Files, AtomicWrite) {
    TempDir dir;
    write_file_atomic(dir / "s.json", "{}\n");
    EXPECT_EQ(slurp(dir / "s.json"), "{}\n");
    EXPECT_FALSE(fs::exists(dir / "s.json.tmp"));
    EXPECT_THROW(write_file_atomic(dir / "missing" / "s.json", "x"), IoError);
}

TEST(Sha256, KnownDigest) {
    Sha256 h;
    h.update("abc");
    EXPECT_EQ(h.hex(), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    EXPECT_EQ(h.hex(), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Serialize, Json) {
    const IntPoly p{1, 2, 2, 2, 1};
    EXPECT_EQ(intpoly_from_json(to_json(p)), p);
    const Poset s = inversion_poset(Permutation{3, 4, 1, 2, 5});
    EXPECT_EQ(poset_from_json(to_json(s)), s);
    const SurveyReport r = run(4);
    const auto j = to_json(r);
    EXPECT_EQ(j.at("count_separable"), 22);
    EXPECT_EQ(witnesses_json(r).at("rank_symmetric_nonseparable").size(), r.symmetric_nonseparable.size());
}
