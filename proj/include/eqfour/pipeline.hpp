// Orchestration: the per-h strategy ladder, append-only JSONL persistence
// with resume, re-verification of record files, and the minimal-solution
// report ranked by weight = A^4 + h*B^4.
//
// Record format: one JSON object per line, fields exactly
//   {h, a, b, c, d, method, weight, ts}
// with every integer as a decimal string (weights exceed 64-bit range).
#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <ctime>
#include <numeric>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "eqfour/arith.hpp"
#include "eqfour/brute.hpp"
#include "eqfour/elliptic.hpp"
#include "eqfour/families.hpp"
#include "eqfour/meet.hpp"
#include "eqfour/model.hpp"
#include "eqfour/quartic.hpp"

namespace eqfour::pipeline {

inline Rat parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(text));
        return make_rational(Int(text.substr(0, slash)), Int(text.substr(slash + 1)));
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_rational: expected NUM or NUM/DEN, got '" + text + "'");
    }
}

inline std::string format_rational(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

struct SeedPoint {
    std::int64_t h = 0;
    Int a = 1, b = 1;
    Rat X, Y;
};

struct SearchConfig {
    std::int64_t h_min = 2;
    std::int64_t h_max = 100;
    std::vector<std::string> methods{"families", "brute", "meet", "quartic", "elliptic"};
    bool stop_on_first = false;
    int workers = 1;

    std::int64_t family_param_bound = 50;

    brute::BruteBounds brute_bounds{1, 300, 200, 200};

    std::int64_t meet_p = 331, meet_q = 347; // default collision primes
    std::int64_t meet_a_max = 20000, meet_b_max = 2000;

    std::int64_t quartic_ab_bound = 20;
    std::int64_t quartic_q_max = 30;
    std::int64_t quartic_p_max = 1000;

    std::vector<SeedPoint> elliptic_seeds;
    std::int64_t elliptic_max_multiple = 4;
    std::int64_t elliptic_ab_bound = 3;
    std::int64_t elliptic_num_bound = 200;
    std::int64_t elliptic_den_bound = 2;
};

enum class SearchStatus { Solved, Unsolved, SkippedFourthPower };

struct MethodAttempt {
    std::string method;
    std::size_t found = 0;
    double elapsed_s = 0.0;
};

struct SearchOutcome {
    std::int64_t h = 0;
    SearchStatus status = SearchStatus::Unsolved;
    std::string method;                     // first method that solved
    std::vector<model::Solution> solutions; // distinct, discovery order
    std::vector<MethodAttempt> attempts;
    double elapsed_s = 0.0;
};

namespace detail {

inline void validate_methods(const std::vector<std::string>& methods) {
    static const std::set<std::string> known{"families", "brute", "meet", "quartic", "elliptic"};
    if (methods.empty()) throw std::invalid_argument("config: methods must be nonempty");
    for (const auto& m : methods)
        if (!known.count(m)) throw std::invalid_argument("config: unknown method '" + m + "'");
}

struct Collector {
    std::set<model::SolutionKey> seen;
    std::vector<model::Solution>& out;
    bool stop_on_first;
    bool stopped = false;
    std::size_t method_found = 0;

    bool offer(const model::Solution& s) {
        if (seen.insert(model::key(s)).second) {
            out.push_back(s);
            ++method_found;
            if (stop_on_first) { stopped = true; return false; }
        }
        return true;
    }
};

inline std::size_t run_quartic_method(std::int64_t h, const SearchConfig& cfg, Collector& col) {
    std::size_t found = 0;
    for (std::int64_t a = 1; a <= cfg.quartic_ab_bound && !col.stopped; ++a) {
        for (std::int64_t b = 1; b <= cfg.quartic_ab_bound && !col.stopped; ++b) {
            if (std::gcd(a, b) != 1) continue;
            const auto curve = quartic::build_quartic(Int(a), Int(b), Int(h));
            for (std::int64_t q = 1; q <= cfg.quartic_q_max && !col.stopped; ++q) {
                for (const auto& pt : quartic::rational_points_for_q(curve, q, cfg.quartic_p_max)) {
                    for (int sign : {+1, -1}) {
                        auto sol = quartic::recover_solution(curve, pt.u, sign > 0 ? pt.v : -pt.v);
                        if (!sol) continue;
                        ++found;
                        if (!col.offer(*sol)) return found;
                    }
                }
            }
        }
    }
    return found;
}

inline std::size_t run_elliptic_method(std::int64_t h, const SearchConfig& cfg, Collector& col) {
    std::size_t found = 0;
    auto drive = [&](const Int& a, const Int& b, const elliptic::CurvePoint& P) {
        try {
            elliptic::solutions_from_point(a, b, Int(h), P, cfg.elliptic_max_multiple,
                                           [&](const model::Solution& s) {
                                               ++found;
                                               return col.offer(s);
                                           });
        } catch (const elliptic::coordinate_limit_error&) {
            // seed grew past the cap; drop this chain, keep searching
        }
    };
    bool had_seed = false;
    for (const auto& seed : cfg.elliptic_seeds) {
        if (seed.h != h || col.stopped) continue;
        had_seed = true;
        drive(seed.a, seed.b, elliptic::CurvePoint(seed.X, seed.Y));
    }
    if (had_seed || col.stopped) return found;
    // no user seed for this h: bounded scan over small substitution pairs
    for (std::int64_t a = 1; a <= cfg.elliptic_ab_bound && !col.stopped; ++a) {
        for (std::int64_t b = 1; b <= cfg.elliptic_ab_bound && !col.stopped; ++b) {
            if (std::gcd(a, b) != 1) continue;
            elliptic::WeierstrassCurve curve;
            try {
                curve = elliptic::build_curve(Int(a), Int(b), Int(h));
            } catch (const elliptic::singular_curve_error&) {
                continue;
            }
            for (const auto& P : elliptic::small_point_search(curve, cfg.elliptic_num_bound,
                                                              cfg.elliptic_den_bound)) {
                if (col.stopped) break;
                drive(Int(a), Int(b), P);
            }
        }
    }
    return found;
}

} // namespace detail

inline SearchOutcome search_h(std::int64_t h, const SearchConfig& cfg) {
    if (h < 1) throw std::invalid_argument("search_h: h must be >= 1");
    detail::validate_methods(cfg.methods);
    SearchOutcome outcome;
    outcome.h = h;
    const auto t0 = std::chrono::steady_clock::now();
    if (arith::is_fourth_power(Int(h))) {
        outcome.status = SearchStatus::SkippedFourthPower;
        return outcome;
    }
    detail::Collector col{{}, outcome.solutions, cfg.stop_on_first};
    for (const auto& method : cfg.methods) {
        const auto m0 = std::chrono::steady_clock::now();
        col.method_found = 0;
        if (method == "families") {
            for (const auto& hit : families::families_matching_h(Int(h), cfg.family_param_bound)) {
                if (!col.offer(hit.solution)) break;
            }
        } else if (method == "brute") {
            brute::brute_search(h, cfg.brute_bounds,
                                [&](const model::Solution& s) { return col.offer(s); });
        } else if (method == "meet") {
            meet::meet_search(h, cfg.meet_p, cfg.meet_q, cfg.meet_a_max, cfg.meet_b_max,
                              [&](const model::Solution& s) { return col.offer(s); });
        } else if (method == "quartic") {
            detail::run_quartic_method(h, cfg, col);
        } else if (method == "elliptic") {
            detail::run_elliptic_method(h, cfg, col);
        }
        const auto m1 = std::chrono::steady_clock::now();
        outcome.attempts.push_back({method, col.method_found,
                                    std::chrono::duration<double>(m1 - m0).count()});
        if (outcome.method.empty() && col.method_found > 0) outcome.method = method;
        if (col.stopped) break;
    }
    outcome.status = outcome.solutions.empty() ? SearchStatus::Unsolved : SearchStatus::Solved;
    outcome.elapsed_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return outcome;
}

// ---------------------------------------------------------------------------
// Record persistence

struct SolutionRecord {
    Int h, a, b, c, d;
    std::string method;
    Int weight;
    std::string ts;
};

inline std::string iso_timestamp_utc() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline SolutionRecord to_record(const model::Solution& s, std::string ts = iso_timestamp_utc()) {
    return SolutionRecord{s.h, s.A, s.B, s.C, s.D, s.method,
                          model::weight(s).value, std::move(ts)};
}

inline std::string record_line(const SolutionRecord& r) {
    nlohmann::ordered_json j;
    j["h"] = r.h.str();
    j["a"] = r.a.str();
    j["b"] = r.b.str();
    j["c"] = r.c.str();
    j["d"] = r.d.str();
    j["method"] = r.method;
    j["weight"] = r.weight.str();
    j["ts"] = r.ts;
    return j.dump();
}

// Returns the parsed record or an error message.
inline std::optional<SolutionRecord> parse_record(const std::string& line, std::string& error) {
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) { error = "not a JSON object"; return std::nullopt; }
    for (const char* field : {"h", "a", "b", "c", "d", "method", "weight", "ts"})
        if (!j.contains(field)) { error = std::string("missing field '") + field + "'"; return std::nullopt; }
    auto as_int = [&](const char* field, Int& out) {
        const auto& v = j.at(field);
        try {
            if (v.is_string()) out = Int(v.get<std::string>());
            else if (v.is_number_integer()) out = Int(v.get<long long>());
            else { error = std::string("field '") + field + "' is not an integer"; return false; }
        } catch (const std::exception&) {
            error = std::string("field '") + field + "' is not a decimal integer";
            return false;
        }
        return true;
    };
    SolutionRecord r;
    if (!as_int("h", r.h) || !as_int("a", r.a) || !as_int("b", r.b) ||
        !as_int("c", r.c) || !as_int("d", r.d) || !as_int("weight", r.weight))
        return std::nullopt;
    if (!j.at("method").is_string() || !j.at("ts").is_string()) {
        error = "method and ts must be strings";
        return std::nullopt;
    }
    r.method = j.at("method").get<std::string>();
    r.ts = j.at("ts").get<std::string>();
    return r;
}

// Equation, primitivity, nontriviality, weight consistency.
inline std::optional<std::string> check_record(const SolutionRecord& r) {
    if (r.h < 1) return "h must be >= 1";
    if (r.a < 0 || r.b < 0 || r.c < 0 || r.d < 0) return "entries must be nonnegative";
    if (!model::verify(r.h, r.a, r.b, r.c, r.d)) return "equation does not hold";
    auto norm = model::normalize(r.h, r.a, r.b, r.c, r.d);
    if (!norm) return "solution is trivial";
    const Int g = gcd(gcd(r.a, r.b), gcd(r.c, r.d));
    if (g != 1) return "solution is not primitive (gcd = " + g.str() + ")";
    if (pow4(r.a) + r.h * pow4(r.b) != r.weight) return "weight field mismatch";
    return std::nullopt;
}

struct VerifyReport {
    struct Failure {
        std::size_t line_no = 0; // 1-based
        std::string message;
    };
    std::size_t lines = 0;   // non-blank lines examined
    std::size_t passed = 0;
    std::vector<Failure> failures;

    bool ok() const { return failures.empty(); }
};

inline VerifyReport verify_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("verify_file: cannot open " + path.string());
    VerifyReport report;
    std::string line;
    for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ++report.lines;
        std::string error;
        auto rec = parse_record(line, error);
        if (!rec) {
            report.failures.push_back({line_no, error});
            continue;
        }
        if (auto bad = check_record(*rec)) {
            report.failures.push_back({line_no, *bad});
            continue;
        }
        ++report.passed;
    }
    return report;
}

// Strict load: throws on the first malformed or failing record.
inline std::vector<SolutionRecord> load_records(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_records: cannot open " + path.string());
    std::vector<SolutionRecord> out;
    std::string line;
    for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::string error;
        auto rec = parse_record(line, error);
        if (!rec)
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": " + error);
        out.push_back(std::move(*rec));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Range driver

struct RangeSummary {
    std::size_t solved = 0;
    std::size_t unsolved = 0;
    std::size_t skipped = 0; // perfect fourth powers
    std::size_t resumed = 0; // h values already present in the output file
    std::vector<std::int64_t> unsolved_h;
};

inline RangeSummary run_range(const SearchConfig& cfg, const std::filesystem::path& out_path) {
    if (cfg.h_min < 1 || cfg.h_min > cfg.h_max)
        throw std::invalid_argument("run_range: invalid h range");
    if (cfg.workers < 1) throw std::invalid_argument("run_range: workers must be >= 1");
    detail::validate_methods(cfg.methods);

    std::set<std::int64_t> already;
    if (std::filesystem::exists(out_path)) {
        for (const auto& r : load_records(out_path)) {
            if (auto bad = check_record(r))
                throw std::runtime_error("run_range: existing record for h = " + r.h.str() +
                                         " fails re-verification: " + *bad);
            if (r.h >= cfg.h_min && r.h <= cfg.h_max)
                already.insert(static_cast<std::int64_t>(r.h));
        }
    }

    std::vector<std::int64_t> todo;
    for (std::int64_t h = cfg.h_min; h <= cfg.h_max; ++h)
        if (!already.count(h)) todo.push_back(h);

    std::ofstream out(out_path, std::ios::app);
    if (!out) throw std::runtime_error("run_range: cannot open " + out_path.string() + " for append");

    RangeSummary summary;
    summary.resumed = already.size();

    std::map<std::int64_t, SearchOutcome> done;
    std::exception_ptr worker_error;
    std::mutex mu;
    std::condition_variable cv;
    std::atomic<std::size_t> next_index{0};
    std::atomic<bool> abort{false};

    auto work = [&]() {
        while (!abort.load()) {
            const std::size_t i = next_index.fetch_add(1);
            if (i >= todo.size()) return;
            try {
                SearchOutcome outcome = search_h(todo[i], cfg);
                std::lock_guard lock(mu);
                done.emplace(todo[i], std::move(outcome));
                cv.notify_all();
            } catch (...) {
                std::lock_guard lock(mu);
                if (!worker_error) worker_error = std::current_exception();
                abort.store(true);
                cv.notify_all();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    const std::size_t nworkers = std::min<std::size_t>(static_cast<std::size_t>(cfg.workers),
                                                       std::max<std::size_t>(todo.size(), 1));
    pool.reserve(nworkers);
    for (std::size_t i = 0; i < nworkers; ++i) pool.emplace_back(work);

    // single writer, ascending h; a crash leaves a valid record prefix
    try {
        for (const std::int64_t h : todo) {
            SearchOutcome outcome;
            {
                std::unique_lock lock(mu);
                cv.wait(lock, [&] { return done.count(h) || worker_error; });
                if (worker_error) std::rethrow_exception(worker_error);
                outcome = std::move(done.at(h));
                done.erase(h);
            }
            switch (outcome.status) {
            case SearchStatus::SkippedFourthPower: ++summary.skipped; break;
            case SearchStatus::Unsolved:
                ++summary.unsolved;
                summary.unsolved_h.push_back(h);
                break;
            case SearchStatus::Solved:
                ++summary.solved;
                for (const auto& s : outcome.solutions) {
                    out << record_line(to_record(s)) << '\n';
                    if (!out) throw std::runtime_error("run_range: write failed at h = " + std::to_string(h));
                }
                out.flush();
                break;
            }
        }
    } catch (...) {
        abort.store(true);
        next_index.store(todo.size());
        for (auto& t : pool) t.join();
        throw;
    }
    for (auto& t : pool) t.join();
    return summary;
}

// ---------------------------------------------------------------------------
// Minimal-solution report

// The user-declared exhaustive region behind a record file; used to decide
// whether the winning record is provably minimal.
struct SearchBox {
    std::int64_t a_max = 0, b_max = 0, c_max = 0;
};

struct ReportRow {
    Int h;
    SolutionRecord best;
    bool established = false; // unconfirmed minimality is printed as "???"
};

inline std::vector<ReportRow> minimal_report(const std::filesystem::path& path,
                                             std::optional<SearchBox> box = std::nullopt) {
    std::map<Int, SolutionRecord> best;
    for (auto& r : load_records(path)) {
        if (auto bad = check_record(r))
            throw std::runtime_error("minimal_report: failing record for h = " + r.h.str() + ": " + *bad);
        auto it = best.find(r.h);
        if (it == best.end()) {
            best.emplace(r.h, std::move(r));
            continue;
        }
        const auto& cur = it->second;
        if (std::tie(r.weight, r.a, r.b) < std::tie(cur.weight, cur.a, cur.b))
            it->second = std::move(r);
    }
    std::vector<ReportRow> rows;
    rows.reserve(best.size());
    for (auto& [h, rec] : best) {
        ReportRow row{h, rec, false};
        if (box && rec.weight >= 1) {
            // a smaller-weight solution w' <= w-1 has A,C <= (w-1)^(1/4) and
            // B,D <= ((w-1)/h)^(1/4); minimality is established when the box
            // covers that whole region
            const Int entry_cap = arith::fourth_root_floor(rec.weight - 1);
            const Int bd_cap = arith::fourth_root_floor((rec.weight - 1) / h);
            row.established = Int(box->a_max) >= entry_cap && Int(box->c_max) >= entry_cap &&
                              Int(box->b_max) >= bd_cap;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Config file: `key = value` lines, '#' comments; keys mirror the CLI flags.

inline std::map<std::string, std::vector<std::string>>
parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path.string());
    std::map<std::string, std::vector<std::string>> kv;
    std::string line;
    std::size_t line_no = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: " + path.string() + ":" + std::to_string(line_no) +
                                     ": expected key = value");
        kv[trim(line.substr(0, eq))].push_back(trim(line.substr(eq + 1)));
    }
    return kv;
}

inline void apply_config_entry(SearchConfig& cfg, const std::string& key, const std::string& value) {
    auto to_i64 = [&](const std::string& v) {
        try {
            return std::stoll(v);
        } catch (const std::exception&) {
            throw std::invalid_argument("config: key '" + key + "' needs an integer, got '" + v + "'");
        }
    };
    auto to_bool = [&](const std::string& v) {
        if (v == "true" || v == "1" || v == "yes") return true;
        if (v == "false" || v == "0" || v == "no") return false;
        throw std::invalid_argument("config: key '" + key + "' needs a boolean, got '" + v + "'");
    };
    if (key == "h-min") cfg.h_min = to_i64(value);
    else if (key == "h-max") cfg.h_max = to_i64(value);
    else if (key == "methods") {
        cfg.methods.clear();
        std::stringstream ss(value);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) cfg.methods.push_back(tok);
    } else if (key == "stop-on-first") cfg.stop_on_first = to_bool(value);
    else if (key == "workers") cfg.workers = static_cast<int>(to_i64(value));
    else if (key == "family-param-bound") cfg.family_param_bound = to_i64(value);
    else if (key == "brute-a-min") cfg.brute_bounds.a_min = to_i64(value);
    else if (key == "brute-a-max") cfg.brute_bounds.a_max = to_i64(value);
    else if (key == "brute-b-max") cfg.brute_bounds.b_max = to_i64(value);
    else if (key == "brute-c-max") cfg.brute_bounds.c_max = to_i64(value);
    else if (key == "meet-p") cfg.meet_p = to_i64(value);
    else if (key == "meet-q") cfg.meet_q = to_i64(value);
    else if (key == "meet-a-max") cfg.meet_a_max = to_i64(value);
    else if (key == "meet-b-max") cfg.meet_b_max = to_i64(value);
    else if (key == "quartic-ab-bound") cfg.quartic_ab_bound = to_i64(value);
    else if (key == "quartic-q-max") cfg.quartic_q_max = to_i64(value);
    else if (key == "quartic-p-max") cfg.quartic_p_max = to_i64(value);
    else if (key == "elliptic-max-multiple") cfg.elliptic_max_multiple = to_i64(value);
    else if (key == "elliptic-ab-bound") cfg.elliptic_ab_bound = to_i64(value);
    else if (key == "elliptic-num-bound") cfg.elliptic_num_bound = to_i64(value);
    else if (key == "elliptic-den-bound") cfg.elliptic_den_bound = to_i64(value);
    else if (key == "elliptic-seed") {
        // h:a:b:X:Y with X, Y as NUM or NUM/DEN
        std::stringstream ss(value);
        std::string part;
        std::vector<std::string> parts;
        while (std::getline(ss, part, ':')) parts.push_back(part);
        if (parts.size() != 5)
            throw std::invalid_argument("config: elliptic-seed needs h:a:b:X:Y, got '" + value + "'");
        SeedPoint seed;
        seed.h = to_i64(parts[0]);
        seed.a = Int(parts[1]);
        seed.b = Int(parts[2]);
        seed.X = parse_rational(parts[3]);
        seed.Y = parse_rational(parts[4]);
        cfg.elliptic_seeds.push_back(std::move(seed));
    } else {
        throw std::invalid_argument("config: unknown key '" + key + "'");
    }
}

inline void apply_config_file(SearchConfig& cfg, const std::filesystem::path& path) {
    for (const auto& [key, values] : parse_config_file(path))
        for (const auto& v : values) apply_config_entry(cfg, key, v);
}

} // namespace eqfour::pipeline
