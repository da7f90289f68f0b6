#pragma once

// Exhaustive scans of S_n recording, for every p, the rank generating
// function of [id, p] and its shape: symmetry, unimodality, cyclotomic
// factorization, and divisibility of [n]!.
//
// Records are produced in lexicographic order of p regardless of the thread
// count. With an output path the scan streams CSV to "<out>.partial" and keeps
// "<out>.ckpt" (record count, byte count and SHA-256 of the emitted bytes) so
// an interrupted run can resume; on completion the partial file is renamed
// onto <out> and the checkpoint removed.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <openssl/evp.h>

#include "json.hpp"

#include "bruhat/errors.hpp"
#include "bruhat/permutation.hpp"
#include "bruhat/poset.hpp"
#include "bruhat/qpoly.hpp"
#include "bruhat/separable.hpp"
#include "bruhat/weak_order.hpp"

namespace bruhat {

inline constexpr std::size_t kMaxSurveySize = 8;

// Large Schroeder numbers: r_0 = 1, r_k = r_{k-1} + sum_{i<k} r_i r_{k-1-i}.
inline BigInt schroder(std::size_t k) {
    std::vector<BigInt> r{1};
    for (std::size_t j = 1; j <= k; ++j) {
        BigInt next = r[j - 1];
        for (std::size_t i = 0; i < j; ++i) next += r[i] * r[j - 1 - i];
        r.push_back(next);
    }
    return r[k];
}

enum class SurveyMode { exact_bruteforce, formula_accelerated };

inline std::string to_string(SurveyMode m) {
    return m == SurveyMode::exact_bruteforce ? "exact-bruteforce" : "formula-accelerated";
}

inline SurveyMode parse_survey_mode(std::string_view s) {
    if (s == "exact-bruteforce" || s == "exact") return SurveyMode::exact_bruteforce;
    if (s == "formula-accelerated" || s == "formula") return SurveyMode::formula_accelerated;
    throw ParseError("unknown survey mode '" + std::string(s) + "'");
}

struct SurveyRecord {
    Permutation word;
    bool is_separable = false;
    IntPoly gf_below;
    bool rank_symmetric = false;
    bool unimodal = false;
    bool cyclotomic_product = false;
    bool divides_qfact = false;

    friend bool operator==(const SurveyRecord&, const SurveyRecord&) = default;
};

struct SurveyReport {
    std::size_t n = 0;
    SurveyMode mode = SurveyMode::formula_accelerated;
    std::uint64_t total = 0;
    std::uint64_t count_separable = 0;
    std::uint64_t count_rank_symmetric = 0;
    std::uint64_t count_symmetric_cyclotomic = 0;
    std::uint64_t count_symmetric_nondividing = 0;
    std::uint64_t count_unimodal = 0;
    bool completed = false;
    double wall_time = 0.0;  // seconds
    // Witness lists for the open questions about rank symmetry.
    std::vector<std::string> symmetric_nonseparable;
    std::vector<std::string> symmetric_nondividing;

    // Everything except wall_time.
    bool same_results(const SurveyReport& o) const {
        return n == o.n && total == o.total && count_separable == o.count_separable &&
               count_rank_symmetric == o.count_rank_symmetric &&
               count_symmetric_cyclotomic == o.count_symmetric_cyclotomic &&
               count_symmetric_nondividing == o.count_symmetric_nondividing && count_unimodal == o.count_unimodal &&
               completed == o.completed && symmetric_nonseparable == o.symmetric_nonseparable &&
               symmetric_nondividing == o.symmetric_nondividing;
    }

    void add(const SurveyRecord& r) {
        ++total;
        count_separable += r.is_separable;
        count_unimodal += r.unimodal;
        if (!r.rank_symmetric) return;
        ++count_rank_symmetric;
        count_symmetric_cyclotomic += r.cyclotomic_product;
        if (!r.divides_qfact) {
            ++count_symmetric_nondividing;
            symmetric_nondividing.push_back(r.word.to_string());
        }
        if (!r.is_separable) symmetric_nonseparable.push_back(r.word.to_string());
    }
};

// ---------------------------------------------------------------------------
// Per-permutation analysis

inline SurveyRecord survey_record(const Permutation& p, SurveyMode mode, const IntPoly& qfact) {
    SurveyRecord r;
    r.word = p;
    r.is_separable = is_separable(p);
    if (mode == SurveyMode::exact_bruteforce) {
        r.gf_below = rank_gf(lower_interval(p));
    } else {
        r.gf_below = r.is_separable ? gf_below_recursive(p) : le_gf(inversion_poset(p));
    }
    const IntPoly& gf = r.gf_below;
    if (!gf.has_nonnegative_coefficients() || gf[0] != 1 || gf.degree() != static_cast<int>(length(p))) {
        throw Error("malformed rank generating function for " + p.to_string() + ": " + gf.to_string());
    }
    r.rank_symmetric = is_symmetric(gf);
    r.unimodal = is_unimodal(gf);
    r.cyclotomic_product = is_cyclotomic_product(gf);
    r.divides_qfact = divides(gf, qfact);
    return r;
}

// ---------------------------------------------------------------------------
// CSV

inline constexpr std::string_view kSurveyCsvHeader = "word,separable,gf,symmetric,unimodal,cyclotomic,divides\n";

inline std::string to_csv_row(const SurveyRecord& r) {
    std::string out = r.word.to_string();
    const auto flag = [](bool b) { return b ? ",true" : ",false"; };
    out += flag(r.is_separable);
    out += ',';
    const auto& c = r.gf_below.coefficients();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) out += ';';
        out += c[i].str();
    }
    out += flag(r.rank_symmetric);
    out += flag(r.unimodal);
    out += flag(r.cyclotomic_product);
    out += flag(r.divides_qfact);
    out += '\n';
    return out;
}

inline SurveyRecord parse_csv_row(std::string_view line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\n' && c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    if (fields.size() != 7) throw ParseError("survey row has " + std::to_string(fields.size()) + " fields");
    const auto flag = [](const std::string& s) {
        if (s == "true") return true;
        if (s == "false") return false;
        throw ParseError("bad boolean '" + s + "' in survey row");
    };
    SurveyRecord r;
    r.word = Permutation::parse(fields[0]);
    r.is_separable = flag(fields[1]);
    std::vector<BigInt> coeffs;
    std::stringstream gf(fields[2]);
    for (std::string tok; std::getline(gf, tok, ';');) coeffs.emplace_back(tok);
    r.gf_below = IntPoly(std::move(coeffs));
    r.rank_symmetric = flag(fields[3]);
    r.unimodal = flag(fields[4]);
    r.cyclotomic_product = flag(fields[5]);
    r.divides_qfact = flag(fields[6]);
    return r;
}

// ---------------------------------------------------------------------------
// Hashing and atomic file output

class Sha256 {
public:
    Sha256() : ctx_(EVP_MD_CTX_new(), &EVP_MD_CTX_free) {
        if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) throw Error("SHA-256 initialization failed");
    }

    void update(std::string_view bytes) { EVP_DigestUpdate(ctx_.get(), bytes.data(), bytes.size()); }

    // Digest of everything so far; the running state is left untouched.
    std::string hex() const {
        std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> copy(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
        EVP_MD_CTX_copy_ex(copy.get(), ctx_.get());
        unsigned char md[EVP_MAX_MD_SIZE];
        unsigned int len = 0;
        EVP_DigestFinal_ex(copy.get(), md, &len);
        static const char* digits = "0123456789abcdef";
        std::string out;
        for (unsigned int i = 0; i < len; ++i) {
            out += digits[md[i] >> 4];
            out += digits[md[i] & 15];
        }
        return out;
    }

private:
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

// Writes via a temporary sibling file and rename.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) throw IoError("write to " + tmp.string() + " failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

// ---------------------------------------------------------------------------
// Scan

struct SurveyOptions {
    std::size_t n = 0;
    SurveyMode mode = SurveyMode::formula_accelerated;
    std::size_t threads = 0;         // 0: BRUHAT_THREADS, else hardware concurrency
    bool force = false;              // allow n above kMaxSurveySize
    std::optional<std::filesystem::path> out;  // CSV destination; enables checkpointing
    bool resume = false;
    std::size_t chunk = 1024;        // records per worker per wave
    std::optional<std::uint64_t> stop_after;   // stop after this many new records (simulated interruption)
    std::function<void(const SurveyRecord&)> on_record;  // called in lexicographic order
};

inline std::size_t resolve_thread_count(std::size_t requested) {
    std::size_t t = requested;
    if (t == 0) {
        t = std::max<std::size_t>(1, std::thread::hardware_concurrency());
        if (const char* env = std::getenv("BRUHAT_THREADS")) {
            const long cap = std::strtol(env, nullptr, 10);
            if (cap > 0) t = std::min(t, static_cast<std::size_t>(cap));
        }
    }
    return std::max<std::size_t>(1, t);
}

namespace detail {

inline std::filesystem::path partial_path(const std::filesystem::path& out) { return out.string() + ".partial"; }
inline std::filesystem::path checkpoint_path(const std::filesystem::path& out) { return out.string() + ".ckpt"; }

struct Checkpoint {
    std::size_t n = 0;
    std::string mode;
    std::uint64_t records = 0;
    std::uint64_t bytes = 0;
    std::string sha256;
};

inline void save_checkpoint(const std::filesystem::path& path, const Checkpoint& c) {
    nlohmann::json j{{"n", c.n},
                     {"mode", c.mode},
                     {"records", c.records},
                     {"last_rank", c.records == 0 ? -1 : static_cast<long long>(c.records - 1)},
                     {"bytes", c.bytes},
                     {"sha256", c.sha256}};
    write_file_atomic(path, j.dump(2) + "\n");
}

inline Checkpoint load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw CheckpointError("cannot read checkpoint " + path.string());
    try {
        const auto j = nlohmann::json::parse(in);
        Checkpoint c;
        c.n = j.at("n").get<std::size_t>();
        c.mode = j.at("mode").get<std::string>();
        c.records = j.at("records").get<std::uint64_t>();
        c.bytes = j.at("bytes").get<std::uint64_t>();
        c.sha256 = j.at("sha256").get<std::string>();
        if (j.at("last_rank").get<long long>() != static_cast<long long>(c.records) - 1)
            throw CheckpointError("checkpoint " + path.string() + " has inconsistent last_rank");
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw CheckpointError("corrupt checkpoint " + path.string() + ": " + e.what());
    }
}

}  // namespace detail

inline SurveyReport scan(const SurveyOptions& opt) {
    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = opt.n;
    if (n == 0) throw InvalidPermutation("survey size must be at least 1");
    if (n > kMaxSurveySize && !opt.force) {
        throw GuardExceeded("survey of S_" + std::to_string(n) + " exceeds the n <= " + std::to_string(kMaxSurveySize) +
                            " guard; pass --force to override");
    }
    if (n > 9) throw GuardExceeded("surveys are limited to n <= 9");

    const IntPoly qfact = q_factorial(n);
    // Fill the cyclotomic memo before any worker threads start.
    for (std::size_t d : cyclotomic_indices_up_to_degree(max_length(n))) (void)cyclotomic(d);

    SurveyReport report;
    report.n = n;
    report.mode = opt.mode;
    const std::uint64_t total = factorial(n);

    std::ofstream csv;
    Sha256 hash;
    detail::Checkpoint ckpt{n, to_string(opt.mode), 0, 0, ""};
    std::uint64_t next_rank = 0;

    if (opt.out) {
        const auto partial = detail::partial_path(*opt.out);
        const auto ckpt_path = detail::checkpoint_path(*opt.out);
        if (opt.resume && std::filesystem::exists(ckpt_path)) {
            const auto saved = detail::load_checkpoint(ckpt_path);
            if (saved.n != n || saved.mode != ckpt.mode) {
                throw CheckpointError("checkpoint " + ckpt_path.string() + " is for n=" + std::to_string(saved.n) +
                                      " mode " + saved.mode);
            }
            std::ifstream in(partial, std::ios::binary);
            if (!in) throw CheckpointError("checkpoint present but " + partial.string() + " is missing");
            std::string bytes(saved.bytes, '\0');
            in.read(bytes.data(), static_cast<std::streamsize>(bytes.size()));
            if (static_cast<std::uint64_t>(in.gcount()) != saved.bytes) {
                throw CheckpointError(partial.string() + " is shorter than its checkpoint");
            }
            hash.update(bytes);
            if (hash.hex() != saved.sha256) throw CheckpointError(partial.string() + " does not match checkpoint hash");
            std::stringstream lines(bytes);
            std::string line;
            std::getline(lines, line);
            if (line + "\n" != std::string(kSurveyCsvHeader)) throw CheckpointError(partial.string() + " has an unexpected header");
            std::uint64_t rows = 0;
            while (std::getline(lines, line)) {
                SurveyRecord r = parse_csv_row(line);
                if (lex_rank(r.word) != rows || r.word.size() != n) {
                    throw CheckpointError(partial.string() + " row " + std::to_string(rows) + " is out of order");
                }
                report.add(r);
                ++rows;
            }
            if (rows != saved.records) throw CheckpointError(partial.string() + " record count disagrees with checkpoint");
            in.close();
            std::filesystem::resize_file(partial, saved.bytes);
            csv.open(partial, std::ios::binary | std::ios::app);
            ckpt = saved;
            next_rank = saved.records;
        } else {
            csv.open(partial, std::ios::binary | std::ios::trunc);
            if (csv) {
                csv << kSurveyCsvHeader;
                hash.update(kSurveyCsvHeader);
                ckpt.bytes = std::string_view(kSurveyCsvHeader).size();
                ckpt.sha256 = hash.hex();
                detail::save_checkpoint(ckpt_path, ckpt);
            }
        }
        if (!csv) throw IoError("cannot open " + partial.string() + " for writing");
    }

    const std::size_t threads = resolve_thread_count(opt.threads);
    const std::size_t chunk = std::max<std::size_t>(1, opt.chunk);
    std::uint64_t budget = opt.stop_after.value_or(total);

    while (next_rank < total && budget > 0) {
        const std::uint64_t wave = std::min<std::uint64_t>({total - next_rank, budget, threads * chunk});
        std::vector<SurveyRecord> records(wave);
        const std::size_t workers = std::min<std::size_t>(threads, static_cast<std::size_t>((wave + chunk - 1) / chunk));
        std::vector<std::exception_ptr> errors(workers);
        auto work = [&](std::size_t t) {
            try {
                const std::uint64_t lo = wave * t / workers;
                const std::uint64_t hi = wave * (t + 1) / workers;
                if (lo == hi) return;
                std::vector<int> w = lex_unrank(n, next_rank + lo).to_vector();
                for (std::uint64_t i = lo; i < hi; ++i) {
                    records[i] = survey_record(Permutation(w), opt.mode, qfact);
                    std::next_permutation(w.begin(), w.end());
                }
            } catch (...) {
                errors[t] = std::current_exception();
            }
        };
        if (workers == 1) {
            work(0);
        } else {
            std::vector<std::jthread> pool;
            for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work, t);
        }
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);

        std::string block;
        for (const auto& r : records) {
            report.add(r);
            if (opt.on_record) opt.on_record(r);
            if (csv.is_open()) block += to_csv_row(r);
        }
        if (csv.is_open()) {
            csv << block;
            csv.flush();
            if (!csv) throw IoError("write to " + detail::partial_path(*opt.out).string() + " failed");
            hash.update(block);
            ckpt.records += wave;
            ckpt.bytes += block.size();
            ckpt.sha256 = hash.hex();
            detail::save_checkpoint(detail::checkpoint_path(*opt.out), ckpt);
        }
        next_rank += wave;
        budget -= wave;
    }

    report.completed = next_rank == total;
    if (csv.is_open()) {
        csv.close();
        if (report.completed) {
            std::error_code ec;
            std::filesystem::rename(detail::partial_path(*opt.out), *opt.out, ec);
            if (ec) throw IoError("cannot rename onto " + opt.out->string() + ": " + ec.message());
            std::filesystem::remove(detail::checkpoint_path(*opt.out));
        }
    }
    report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace bruhat
