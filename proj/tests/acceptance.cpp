// Acceptance suite: one line per criterion, exit code = number of failures.
// Criterion 10 is an opt-in, hours-scale run (pass --extended or set
// EQFOUR_EXTENDED=1); it reports solved/unsolved counts without a gate.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "eqfour/eqfour.hpp"
#include "oracle.hpp"

using namespace eqfour;
namespace fs = std::filesystem;

namespace {

struct Runner {
    int failures = 0;

    template <typename F>
    void criterion(int number, double budget_s, const std::string& what, F&& body) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (elapsed > budget_s) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + std::string("over budget of ") +
                      std::to_string(budget_s) + " s";
        }
        std::ostringstream line;
        line << "C" << number << (ok ? " PASS" : " FAIL") << "  (";
        line.precision(2);
        line << std::fixed << elapsed << " s)  " << what;
        if (!detail.empty()) line << "  -- " << detail;
        std::cout << line.str() << std::endl;
        if (!ok) ++failures;
    }
};

model::SolutionKey key_of(std::int64_t h, const char* A, const char* B, const char* C,
                          const char* D) {
    return {Int(h), Int(A), Int(B), Int(C), Int(D)};
}

bool criterion1(std::string&) {
    return model::verify(5, 417, 117, 19, 281) && model::verify(2, 139, 34, 61, 116) &&
           model::verify(4117, 10497, 2303, 2263, 2361) &&
           model::verify(2518, 61916, 1481, 58948, 5687) &&
           model::verify(2572, 799298, 61171, 623018, 103357) &&
           model::verify(Int(9069), Int("11390652421"), Int("504256282"), Int("6436474351"),
                         Int("1147136408")) &&
           !model::verify(2, 139, 34, 61, 117);
}

bool criterion2(std::string& detail) {
    std::set<model::SolutionKey> found;
    brute::brute_search(4117, {1, 10500, 2400, 2300}, [&](const model::Solution& s) {
        found.insert(model::key(s));
        return true;
    });
    detail = std::to_string(found.size()) + " solution(s) in the box";
    return found.size() == 1 &&
           found.count(key_of(4117, "10497", "2303", "2263", "2361")) == 1;
}

bool criterion3(std::string& detail) {
    const auto bucket = meet::bucket_enumerate(2518, {331, 347, 304, 35}, 65000, 6000);
    bool found = false;
    meet::meet_search(2518, 331, 347, 65000, 6000, [&](const model::Solution& s) {
        if (model::key(s) == key_of(2518, "61916", "1481", "58948", "5687")) {
            found = true;
            return false; // solution located; stop the sweep
        }
        return true;
    });
    detail = "solution bucket holds " + std::to_string(bucket.size()) +
             " entries (expected about 3.4e3)";
    return found && bucket.size() < 10000;
}

bool criterion4(std::string&) {
    const auto curve = quartic::build_quartic(15, 14, 2572);
    const auto pts = quartic::rational_points_for_q(curve, 267, 10000);
    for (const auto& pt : pts) {
        if (pt.u.p != 9002 || pt.u.q != 267) continue;
        const auto sol = quartic::recover_solution(curve, pt.u, pt.v);
        return sol && model::key(*sol) == key_of(2572, "799298", "61171", "623018", "103357");
    }
    return false;
}

bool criterion5(std::string&) {
    const auto curve = elliptic::build_curve(3, 1, 9069);
    const elliptic::CurvePoint gen1(Rat(Int("11633949063"), Int("14161")),
                                    Rat(Int("1164093129464040"), Int("1685159")));
    const elliptic::CurvePoint gen2(Rat(Int("4587889797054"), Int("6723649")),
                                    Rat(Int("-8597517313555330650"), Int("17434421857")));
    if (!elliptic::on_curve(curve, gen1) || !elliptic::on_curve(curve, gen2)) return false;
    const auto uv = elliptic::to_quartic(curve, gen1);
    if (!uv || uv->first != Rat(Int("74903894"), Int("2701177"))) return false;
    std::set<model::SolutionKey> found;
    elliptic::solutions_from_point(3, 1, 9069, gen1, 1, [&](const model::Solution& s) {
        found.insert(model::key(s));
        return true;
    });
    return found.count(key_of(9069, "11390652421", "504256282", "6436474351", "1147136408")) == 1;
}

bool criterion6(std::string& detail) {
    const std::int64_t box = 150;
    std::size_t total = 0;
    for (const std::int64_t h : {2, 3, 5, 6, 7, 10, 11, 12, 13, 17}) {
        testing::SolutionSet engines;
        brute::brute_search(h, {1, box, box, box}, [&](const model::Solution& s) {
            if (s.D <= box) engines.insert(model::key(s)); // oracle bounds all four entries
            return true;
        });
        meet::meet_search(h, 3, 7, box, box, [&](const model::Solution& s) {
            engines.insert(model::key(s));
            return true;
        });
        const auto expected = testing::oracle_solutions(h, box);
        if (engines != expected) {
            detail = "mismatch at h = " + std::to_string(h);
            return false;
        }
        total += expected.size();
    }
    detail = std::to_string(total) + " solutions matched across 10 coefficients";
    return true;
}

bool criterion7(std::string& detail) {
    std::size_t admissible = 0;
    for (const auto& fam : families::catalog()) {
        const auto res = families::identity_sweep(fam, 2, 50);
        if (!res.ok) {
            detail = "identity failure in family " + fam.name;
            return false;
        }
        admissible += res.admissible;
    }
    detail = std::to_string(admissible) + " admissible parameter points verified across " +
             std::to_string(families::catalog().size()) + " families";
    return true;
}

bool criterion8(std::string& detail) {
    struct Seed {
        std::int64_t a, b, h;
        Rat X, Y;
    };
    const std::vector<Seed> seeds = {
        {3, 1, 9069, Rat(Int("11633949063"), Int("14161")), Rat(Int("1164093129464040"), Int("1685159"))},
        {3, 1, 9069, Rat(Int("4587889797054"), Int("6723649")), Rat(Int("-8597517313555330650"), Int("17434421857"))},
        {1, 1, 3, Rat(7), Rat(8)},
        {1, 2, 3, Rat(61), Rat(343)},
        {2, 1, 5, Rat(45), Rat(95)},
        {2, 1, 7, Rat(74), Rat(414)},
        {2, 1, 2, Rat(20), Rat(0)}, // two-torsion
    };
    std::size_t points = 0;
    std::set<std::pair<std::int64_t, std::int64_t>> curves;
    for (const auto& seed : seeds) {
        const auto c = elliptic::build_curve(seed.a, seed.b, seed.h);
        const elliptic::CurvePoint P(seed.X, seed.Y);
        if (!elliptic::on_curve(c, P)) {
            detail = "seed off curve";
            return false;
        }
        curves.insert({seed.h, seed.a * 100 + seed.b});
        std::vector<elliptic::CurvePoint> sample;
        for (int n = -8; n <= 8; ++n) sample.push_back(elliptic::multiply(c, n, P));
        for (const auto& p : sample) {
            ++points;
            if (!elliptic::on_curve(c, p)) return false; // closure
            if (!(elliptic::add(c, p, elliptic::CurvePoint::at_infinity()) == p)) return false;
            if (!elliptic::add(c, p, elliptic::negate(p)).infinity) return false;
        }
        for (const auto& p : sample) {
            for (const auto& q : sample) {
                if (!(elliptic::add(c, p, q) == elliptic::add(c, q, p))) return false;
            }
        }
        // multiply-additivity across |n|, |m| <= 5
        for (int n = -5; n <= 5; ++n) {
            for (int m = -5; m <= 5; ++m) {
                const auto lhs = elliptic::multiply(c, n + m, P);
                const auto rhs =
                    elliptic::add(c, elliptic::multiply(c, n, P), elliptic::multiply(c, m, P));
                if (!(lhs == rhs)) return false;
            }
        }
        // associativity spot checks
        for (const auto& [i, j, k] : {std::array<int, 3>{1, 5, 12}, {0, 9, 16}, {3, 8, 11}}) {
            const auto& A = sample[static_cast<std::size_t>(i)];
            const auto& B = sample[static_cast<std::size_t>(j)];
            const auto& C = sample[static_cast<std::size_t>(k)];
            if (!(elliptic::add(c, elliptic::add(c, A, B), C) ==
                  elliptic::add(c, A, elliptic::add(c, B, C))))
                return false;
        }
    }
    detail = std::to_string(points) + " sampled points on " + std::to_string(curves.size()) +
             " curves";
    return points >= 100 && curves.size() >= 5;
}

bool criterion9(std::string& detail) {
    const fs::path dir = fs::temp_directory_path() / "eqfour_acceptance_c9";
    fs::remove_all(dir);
    fs::create_directories(dir);

    pipeline::SearchConfig cfg;
    cfg.h_min = 2;
    cfg.h_max = 30;
    cfg.methods = {"families", "brute"};
    cfg.family_param_bound = 30;
    cfg.brute_bounds = {1, 300, 200, 200};

    auto set_of = [](const fs::path& p) {
        std::set<std::string> s;
        for (const auto& r : pipeline::load_records(p)) {
            std::ostringstream key;
            key << r.h << "|" << r.a << "|" << r.b << "|" << r.c << "|" << r.d << "|" << r.method
                << "|" << r.weight; // ts excluded
            s.insert(key.str());
        }
        return s;
    };

    cfg.workers = 1;
    pipeline::run_range(cfg, dir / "w1.jsonl");
    const auto s1 = set_of(dir / "w1.jsonl");
    cfg.workers = 4;
    pipeline::run_range(cfg, dir / "w4.jsonl");
    const auto s4 = set_of(dir / "w4.jsonl");
    if (s1 != s4) {
        detail = "worker count changed the record set";
        return false;
    }

    // interrupted-then-resumed run
    cfg.workers = 2;
    cfg.h_max = 14;
    pipeline::run_range(cfg, dir / "resume.jsonl");
    cfg.h_max = 30;
    pipeline::run_range(cfg, dir / "resume.jsonl");
    if (set_of(dir / "resume.jsonl") != s1) {
        detail = "resumed run diverged";
        return false;
    }
    detail = std::to_string(s1.size()) + " records, workers 1 = workers 4 = resumed";
    fs::remove_all(dir);
    return true;
}

bool criterion10(bool extended, std::string& detail) {
    if (!extended) {
        detail = "opt-in extended run not requested (use --extended or EQFOUR_EXTENDED=1); "
                 "full h < 20000 coverage and the A < 50000 production bounds are out of desk scale";
        return true; // informational, no gate
    }
    const fs::path dir = fs::temp_directory_path() / "eqfour_acceptance_c10";
    fs::remove_all(dir);
    fs::create_directories(dir);
    pipeline::SearchConfig cfg;
    cfg.h_min = 2;
    cfg.h_max = 101;
    cfg.workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    cfg.brute_bounds = {1, 2000, 600, 600};
    cfg.meet_a_max = 20000;
    cfg.meet_b_max = 2000;
    const auto summary = pipeline::run_range(cfg, dir / "extended.jsonl");
    std::ostringstream os;
    os << "h <= 101 ladder run: solved " << summary.solved << ", unsolved " << summary.unsolved
       << ", skipped " << summary.skipped;
    if (!summary.unsolved_h.empty()) {
        os << "; unsolved h:";
        for (const auto h : summary.unsolved_h) os << ' ' << h;
    }
    detail = os.str();
    return true; // reported without a pass/fail gate
}

} // namespace

int main(int argc, char** argv) {
    bool extended = false;
    for (int i = 1; i < argc; ++i)
        if (std::string(argv[i]) == "--extended") extended = true;
    if (const char* env = std::getenv("EQFOUR_EXTENDED"); env && std::string(env) == "1")
        extended = true;

    Runner r;
    r.criterion(1, 1.0, "classical identities verify exactly", criterion1);
    r.criterion(2, 60.0, "brute reproduces (10497, 2303, 2263, 2361) at h = 4117", criterion2);
    r.criterion(3, 600.0, "sorted sum reproduces (61916, 1481, 58948, 5687) at h = 2518",
                criterion3);
    r.criterion(4, 60.0, "quartic point U = 9002/267 recovers the h = 2572 quadruple",
                criterion4);
    r.criterion(5, 5.0, "elliptic generators map to the h = 9069 quadruple", criterion5);
    r.criterion(6, 300.0, "brute + meet equal the quadruple-loop oracle on 10 coefficients",
                criterion6);
    r.criterion(7, 10.0, "identity sweeps pass for all 25 families over 2..50", criterion7);
    r.criterion(8, 60.0, "exact group law suite over sampled points", criterion8);
    r.criterion(9, 600.0, "pipeline determinism across workers and resume", criterion9);
    r.criterion(10, 86400.0, "extended h <= 101 ladder (opt-in, no gate)",
                [&](std::string& d) { return criterion10(extended, d); });

    std::cout << (r.failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: " + std::to_string(r.failures))
              << std::endl;
    return r.failures;
}
