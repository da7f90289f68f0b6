#pragma once

// Command-line front end. run_cli() is the whole program minus main(), so the
// tests can drive it with captured streams.

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bruhat/analysis.hpp"
#include "bruhat/bijection.hpp"
#include "bruhat/serialize.hpp"
#include "bruhat/separable.hpp"
#include "bruhat/survey.hpp"
#include "bruhat/verify.hpp"
#include "bruhat/weak_order.hpp"

namespace bruhat {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

// Rough upper bound on working memory for a job that holds `items` records
// of `bytes_each` bytes.
inline std::string memory_estimate(std::uint64_t items, std::uint64_t bytes_each) {
    const double mib = static_cast<double>(items) * static_cast<double>(bytes_each) / (1024.0 * 1024.0);
    std::ostringstream s;
    s << std::fixed << std::setprecision(1) << mib << " MiB";
    return s.str();
}

inline void tree_text(const SeparatingTree& t, int i, int depth, std::ostream& out) {
    const TreeNode& nd = t.node(i);
    out << std::string(static_cast<std::size_t>(depth) * 2, ' ');
    if (nd.is_leaf()) {
        out << nd.value << '\n';
        return;
    }
    out << (nd.sign == NodeSign::positive ? "+" : "-") << " [" << nd.lo << ".." << nd.hi << "]\n";
    tree_text(t, nd.left, depth + 1, out);
    tree_text(t, nd.right, depth + 1, out);
}

inline void print_suite(const SuiteResult& r, std::ostream& out) {
    for (const auto& p : r.properties) {
        out << (p.passed() ? "PASS" : "FAIL") << "  " << r.suite << " (n=" << r.n << "): " << p.name << " ["
            << p.checked << " checked";
        if (!p.passed()) {
            out << ", " << p.failures << " failed; counterexamples:";
            for (const auto& c : p.counterexamples) out << ' ' << c;
        }
        out << "]\n";
    }
}

inline nlohmann::json suite_json(const SuiteResult& r) {
    nlohmann::json props = nlohmann::json::array();
    for (const auto& p : r.properties) {
        props.push_back({{"name", p.name},
                         {"passed", p.passed()},
                         {"checked", p.checked},
                         {"failures", p.failures},
                         {"counterexamples", p.counterexamples}});
    }
    return {{"suite", r.suite}, {"n", r.n}, {"passed", r.passed()}, {"properties", std::move(props)}};
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Weak order intervals, separable permutations and their generating functions", "bruhat"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    bool force = false;
    app.add_flag("--json", as_json, "Machine-readable JSON output");
    app.add_flag("--force", force, "Override size guards");

    std::string perm_text;
    std::string other_text;

    auto* analyze_cmd = app.add_subcommand("analyze", "Summarize one permutation");
    analyze_cmd->add_option("perm", perm_text, "Permutation, e.g. 4132 or 1,10,2,...")->required();

    auto* tree_cmd = app.add_subcommand("tree", "Separating tree of a separable permutation");
    tree_cmd->add_option("perm", perm_text)->required();
    bool tree_dot_flag = false;
    std::string split_rule = "smallest";
    tree_cmd->add_flag("--dot", tree_dot_flag, "Graphviz output");
    tree_cmd->add_option("--split", split_rule, "Block split choice")
        ->check(CLI::IsMember({"smallest", "largest"}));

    auto* interval_cmd = app.add_subcommand("interval", "Interval [id, p] or [p, w0] of the weak order");
    interval_cmd->add_option("perm", perm_text)->required();
    std::string side = "below";
    bool iv_dot = false;
    bool iv_gf = false;
    interval_cmd->add_option("--side", side)->check(CLI::IsMember({"below", "above"}));
    auto* dot_opt = interval_cmd->add_flag("--dot", iv_dot, "Hasse diagram in Graphviz format");
    interval_cmd->add_flag("--gf", iv_gf, "Rank generating function only")->excludes(dot_opt);

    auto* verify_cmd = app.add_subcommand("verify", "Run an exhaustive property suite over S_n");
    std::string suite;
    std::size_t verify_n = 4;
    std::vector<std::string> suite_names;
    for (const auto& [name, fn] : verification_suites()) suite_names.push_back(name);
    verify_cmd->add_option("suite", suite, "One of: " + CLI::detail::join(suite_names, ", "))
        ->required()
        ->check(CLI::IsMember(suite_names));
    verify_cmd->add_option("--n", verify_n, "Permutation size")->check(CLI::Range(1, 16));

    auto* survey_cmd = app.add_subcommand("survey", "Exhaustive S_n scan of rank symmetry and divisibility");
    std::size_t survey_n = 0;
    std::string survey_out;
    std::string survey_mode = "formula-accelerated";
    std::string witness_out;
    std::string summary_out;
    std::size_t threads = 0;
    bool resume = false;
    survey_cmd->add_option("--n", survey_n)->required()->check(CLI::Range(1, 16));
    survey_cmd->add_option("--out", survey_out, "CSV destination (enables checkpointing)");
    survey_cmd->add_flag("--resume", resume, "Continue from the checkpoint next to --out");
    survey_cmd->add_option("--mode", survey_mode)
        ->check(CLI::IsMember({"formula-accelerated", "formula", "exact-bruteforce", "exact"}));
    survey_cmd->add_option("--threads", threads, "Worker threads (default: BRUHAT_THREADS or all cores)");
    survey_cmd->add_option("--witnesses", witness_out, "Write witness lists as JSON");
    survey_cmd->add_option("--summary", summary_out, "Write the summary report as JSON");

    auto* bij_cmd = app.add_subcommand("bijection", "The map (u, v) -> u^{-1} v on [id, p] x [p, w0]");
    bij_cmd->add_option("perm", perm_text)->required();
    bool bij_check = false;
    std::string map_name = "phi";
    auto* check_opt = bij_cmd->add_flag("--check", bij_check, "Report bijectivity and collisions");
    bij_cmd->add_option("--invert", other_text, "Find (u, v) mapping to this permutation")->excludes(check_opt);
    bij_cmd->add_option("--map", map_name)->check(CLI::IsMember({"phi", "phi-prime"}));

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    auto warn_force = [&](std::uint64_t items, std::uint64_t bytes_each) {
        if (force) err << "note: guards overridden; estimated memory " << detail::memory_estimate(items, bytes_each) << '\n';
    };

    try {
        if (*analyze_cmd) {
            const Analysis a = analyze(Permutation::parse(perm_text));
            if (as_json) {
                out << to_json(a).dump(2) << '\n';
            } else {
                auto row = [&](const std::string& k, const std::string& v) {
                    out << std::left << std::setw(22) << k << v << '\n';
                };
                std::string des;
                for (auto d : a.descents) des += (des.empty() ? "" : ",") + std::to_string(d);
                row("word", a.word.to_string());
                row("length", std::to_string(a.length));
                row("descents", des.empty() ? "-" : des);
                row("separable", a.separable ? "true" : "false");
                row("gf_below", a.gf_below.to_string());
                row("gf_above", a.gf_above.to_string());
                row("product_is_qfactorial", a.product_is_qfactorial ? "true" : "false");
                row("rank_symmetric", a.rank_symmetric ? "true" : "false");
                row("unimodal", a.unimodal ? "true" : "false");
                row("cyclotomic_product", a.cyclotomic_product ? "true" : "false");
            }
            return kExitOk;
        }

        if (*tree_cmd) {
            const Permutation p = Permutation::parse(perm_text);
            const SeparatingTree t = separating_tree(p, split_rule == "largest" ? SplitRule::largest : SplitRule::smallest);
            if (tree_dot_flag) {
                out << tree_dot(t);
            } else if (as_json) {
                out << to_json(t).dump(2) << '\n';
            } else {
                detail::tree_text(t, t.root_index(), 0, out);
            }
            return kExitOk;
        }

        if (*interval_cmd) {
            const Permutation p = Permutation::parse(perm_text);
            warn_force(factorial(p.size()), 64);
            const Interval iv = side == "below" ? lower_interval(p, force) : upper_interval(p, force);
            if (iv_dot) {
                out << hasse_dot(iv);
            } else if (iv_gf) {
                out << (as_json ? to_json(rank_gf(iv)).dump() : rank_gf(iv).to_string()) << '\n';
            } else if (as_json) {
                nlohmann::json j = to_json(iv);
                j["gf"] = rank_gf(iv).to_string();
                out << j.dump(2) << '\n';
            } else {
                for (std::size_t r = 0; r < iv.ranks.size(); ++r) {
                    out << "rank " << std::setw(2) << r << " (" << std::setw(3) << iv.ranks[r].size() << "):";
                    for (const auto& w : iv.ranks[r]) out << ' ' << w.to_string();
                    out << '\n';
                }
                out << "gf: " << rank_gf(iv).to_string() << '\n';
            }
            return kExitOk;
        }

        if (*verify_cmd) {
            warn_force(factorial(verify_n), 128);
            const SuiteResult r = verification_suites().at(suite)(verify_n, force);
            if (as_json) {
                out << detail::suite_json(r).dump(2) << '\n';
            } else {
                detail::print_suite(r, out);
            }
            return r.passed() ? kExitOk : kExitDomain;
        }

        if (*survey_cmd) {
            SurveyOptions opt;
            opt.n = survey_n;
            opt.mode = parse_survey_mode(survey_mode);
            opt.threads = threads;
            opt.force = force;
            opt.resume = resume;
            if (!survey_out.empty()) opt.out = survey_out;
            if (resume && !opt.out) {
                err << "error: --resume requires --out\n";
                return kExitUsage;
            }
            warn_force(std::uint64_t{resolve_thread_count(threads)} * opt.chunk, 512);
            const SurveyReport r = scan(opt);
            const nlohmann::json summary = to_json(r);
            if (!summary_out.empty()) write_file_atomic(summary_out, summary.dump(2) + "\n");
            if (!witness_out.empty()) write_file_atomic(witness_out, witnesses_json(r).dump(2) + "\n");
            if (as_json) {
                out << summary.dump(2) << '\n';
            } else {
                auto row = [&](const std::string& k, auto v) { out << std::left << std::setw(30) << k << v << '\n'; };
                row("n", r.n);
                row("mode", to_string(r.mode));
                row("total", r.total);
                row("separable", r.count_separable);
                row("rank-symmetric", r.count_rank_symmetric);
                row("symmetric, cyclotomic", r.count_symmetric_cyclotomic);
                row("symmetric, not dividing [n]!", r.count_symmetric_nondividing);
                row("unimodal", r.count_unimodal);
                row("wall time (s)", r.wall_time);
            }
            return kExitOk;
        }

        if (*bij_cmd) {
            const Permutation p = Permutation::parse(perm_text);
            const PairMap map = map_name == "phi" ? PairMap::phi : PairMap::phi_prime;
            if (!other_text.empty()) {
                const Permutation w = Permutation::parse(other_text);
                if (w.size() != p.size()) throw SizeMismatch(p.size(), w.size());
                if (map == PairMap::phi_prime) {
                    // v^{-1} u = w  <=>  u^{-1} v = w^{-1}
                    const auto [u, v] = invert_phi(p, inverse(w));
                    out << (as_json ? nlohmann::json{{"u", u.to_string()}, {"v", v.to_string()}}.dump()
                                    : u.to_string() + " " + v.to_string())
                        << '\n';
                } else {
                    const auto [u, v] = invert_phi(p, w);
                    out << (as_json ? nlohmann::json{{"u", u.to_string()}, {"v", v.to_string()}}.dump()
                                    : u.to_string() + " " + v.to_string())
                        << '\n';
                }
                return kExitOk;
            }
            warn_force(factorial(p.size()), 96);
            const PairTable table = pair_table(p, map, force);
            if (bij_check) {
                const BijectionReport r = check_bijection(table);
                if (as_json) {
                    out << to_json(r).dump(2) << '\n';
                } else {
                    out << "bijection: " << (r.is_bijection ? "yes" : "no") << "\ndomain: " << r.domain_size
                        << "\nimage: " << r.image_size << "\ncollisions: " << r.collisions.size() << '\n';
                    for (const auto& c : r.collisions) {
                        out << "  " << c.w.to_string() << " <-";
                        for (const auto& [u, v] : c.preimages) out << " (" << u.to_string() << ", " << v.to_string() << ")";
                        out << '\n';
                    }
                }
                return r.is_bijection ? kExitOk : kExitDomain;
            }
            out << pair_table_csv(table);
            return kExitOk;
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    }
    return kExitUsage;
}

}  // namespace bruhat
