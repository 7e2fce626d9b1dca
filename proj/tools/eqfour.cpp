// Command-line driver: batch range searches with resume, record
// verification, minimal-solution reports, family evaluation, and
// seed-driven elliptic curve solution generation.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eqfour/eqfour.hpp"

namespace {

using namespace eqfour;

std::string status_name(pipeline::SearchStatus s) {
    switch (s) {
    case pipeline::SearchStatus::Solved: return "solved";
    case pipeline::SearchStatus::Unsolved: return "unsolved";
    case pipeline::SearchStatus::SkippedFourthPower: return "skipped-fourth-power";
    }
    return "?";
}

void print_solution(std::ostream& os, const model::Solution& s) {
    os << "h=" << s.h << "  (A,B,C,D)=(" << s.A << ", " << s.B << ", " << s.C << ", " << s.D
       << ")  weight=" << model::weight(s).value << "  [" << s.method << "]";
}

struct SearchFlags {
    std::optional<std::int64_t> h_min, h_max;
    std::optional<std::string> methods;
    std::optional<int> workers;
    bool stop_on_first = false;
    std::optional<std::string> config_path;
    std::map<std::string, std::int64_t> bounds; // config-key -> value
    std::vector<std::string> seeds;             // h:a:b:X:Y
    std::string out;
};

int run_search(const SearchFlags& f) {
    pipeline::SearchConfig cfg;
    if (f.config_path) pipeline::apply_config_file(cfg, *f.config_path);
    if (f.h_min) cfg.h_min = *f.h_min;
    if (f.h_max) cfg.h_max = *f.h_max;
    if (f.methods) pipeline::apply_config_entry(cfg, "methods", *f.methods);
    if (f.workers) cfg.workers = *f.workers;
    if (f.stop_on_first) cfg.stop_on_first = true;
    for (const auto& [key, value] : f.bounds)
        pipeline::apply_config_entry(cfg, key, std::to_string(value));
    for (const auto& seed : f.seeds) pipeline::apply_config_entry(cfg, "elliptic-seed", seed);

    const auto summary = pipeline::run_range(cfg, f.out);
    std::cout << "range [" << cfg.h_min << ", " << cfg.h_max << "]  solved=" << summary.solved
              << "  unsolved=" << summary.unsolved << "  skipped=" << summary.skipped
              << "  resumed=" << summary.resumed << "\n";
    if (!summary.unsolved_h.empty()) {
        std::cout << "unsolved h:";
        for (const auto h : summary.unsolved_h) std::cout << ' ' << h;
        std::cout << "\n";
    }
    return 0;
}

int run_verify(const std::string& path) {
    const auto report = pipeline::verify_file(path);
    for (const auto& fail : report.failures)
        std::cout << path << ":" << fail.line_no << ": " << fail.message << "\n";
    std::cout << report.passed << "/" << report.lines << " records verified\n";
    return report.ok() ? 0 : 1;
}

int run_report(const std::string& path, std::optional<pipeline::SearchBox> box) {
    const auto rows = pipeline::minimal_report(path, box);
    std::cout << "h\tA\tB\tC\tD\tweight\tmethod\tflag\n";
    for (const auto& row : rows) {
        const auto& r = row.best;
        std::cout << r.h << '\t' << r.a << '\t' << r.b << '\t' << r.c << '\t' << r.d << '\t'
                  << r.weight << '\t' << r.method << '\t' << (row.established ? "" : "???")
                  << "\n";
    }
    return 0;
}

int run_family(const std::string& id, const std::string& params_csv) {
    const auto* fam = families::family_by_name(id);
    if (!fam) {
        std::cerr << "unknown family '" << id << "'; known:";
        for (const auto& f : families::catalog()) std::cerr << ' ' << f.name;
        std::cerr << "\n";
        return 2;
    }
    std::vector<Int> params;
    std::stringstream ss(params_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) params.emplace_back(tok);
    if (static_cast<int>(params.size()) != fam->arity) {
        std::cerr << "family '" << id << "' takes " << fam->arity << " parameter(s)\n";
        return 2;
    }
    const auto r = families::generate(*fam, params[0], fam->arity == 2 ? params[1] : Int(0));
    std::cout << "h = " << r.h << "\nraw (A,B,C,D) = (" << r.raw[0] << ", " << r.raw[1] << ", "
              << r.raw[2] << ", " << r.raw[3] << ")\n";
    switch (r.status) {
    case families::GenerateStatus::Ok:
        std::cout << "normalized: ";
        print_solution(std::cout, *r.solution);
        std::cout << "\n";
        break;
    case families::GenerateStatus::NonPositiveH:
        std::cout << "inadmissible: h <= 0\n";
        break;
    case families::GenerateStatus::FourthPowerH:
        std::cout << "inadmissible: h is a perfect fourth power\n";
        break;
    case families::GenerateStatus::Trivial:
        std::cout << "inadmissible: quadruple is trivial\n";
        break;
    case families::GenerateStatus::IdentityFailed:
        std::cout << "identity FAILED at this parameter\n";
        return 1;
    }
    return 0;
}

int run_elliptic(std::int64_t h, std::int64_t a, std::int64_t b, const std::string& seed_x,
                 const std::string& seed_y, std::int64_t max_multiple,
                 const std::string& out_path) {
    const elliptic::CurvePoint seed(pipeline::parse_rational(seed_x),
                                    pipeline::parse_rational(seed_y));
    const auto curve = elliptic::build_curve(Int(a), Int(b), Int(h));
    if (!elliptic::on_curve(curve, seed)) {
        std::cerr << "seed point is not on Y^2 = X^3 + (" << curve.coef_a << ")X + ("
                  << curve.coef_b << ")\n";
        return 2;
    }
    std::ofstream out;
    if (!out_path.empty()) {
        out.open(out_path, std::ios::app);
        if (!out) {
            std::cerr << "cannot open " << out_path << "\n";
            return 2;
        }
    }
    std::size_t printed = 0;
    elliptic::solutions_from_point(Int(a), Int(b), Int(h), seed, max_multiple,
                                   [&](const model::Solution& s) {
                                       print_solution(std::cout, s);
                                       std::cout << "\n";
                                       if (out) out << pipeline::record_line(pipeline::to_record(s)) << "\n";
                                       ++printed;
                                       return true;
                                   });
    if (printed == 0) std::cout << "no nontrivial solutions from this seed\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact search for integer solutions of A^4 + h B^4 = C^4 + h D^4"};
    app.require_subcommand(1);

    // search
    SearchFlags sf;
    auto* search = app.add_subcommand("search", "run the method ladder over a range of h");
    search->add_option("--h-min", sf.h_min, "first h");
    search->add_option("--h-max", sf.h_max, "last h");
    search->add_option("--methods", sf.methods, "comma list from families,brute,meet,quartic,elliptic");
    search->add_option("--out", sf.out, "output records file (JSONL, append)")->required();
    search->add_flag("--stop-on-first", sf.stop_on_first, "stop each h at the first solution");
    search->add_option("--workers", sf.workers, "parallel workers over h values");
    search->add_option("--config", sf.config_path, "config file (key = value; flags override)");
    search->add_option("--elliptic-seed", sf.seeds, "seed point h:a:b:X:Y (repeatable)");
    for (const char* key :
         {"family-param-bound", "brute-a-min", "brute-a-max", "brute-b-max", "brute-c-max",
          "meet-p", "meet-q", "meet-a-max", "meet-b-max", "quartic-ab-bound", "quartic-q-max",
          "quartic-p-max", "elliptic-max-multiple", "elliptic-ab-bound", "elliptic-num-bound",
          "elliptic-den-bound"}) {
        search->add_option_function<std::int64_t>(
            std::string("--") + key,
            [&sf, key = std::string(key)](std::int64_t v) { sf.bounds[key] = v; },
            "method bound (see README)");
    }

    // verify
    std::string verify_path;
    auto* verify = app.add_subcommand("verify", "re-verify every record in a file");
    verify->add_option("file", verify_path, "records file")->required();

    // report
    std::string report_path;
    std::optional<std::int64_t> box_a, box_b, box_c;
    auto* report = app.add_subcommand("report", "per-h minimal solutions (weight = A^4 + h B^4)");
    report->add_option("file", report_path, "records file")->required();
    report->add_option("--a-max", box_a, "search box A/C bound used to produce the records");
    report->add_option("--b-max", box_b, "search box B/D bound used to produce the records");
    report->add_option("--c-max", box_c, "search box C bound (defaults to --a-max)");

    // family
    std::string fam_id, fam_params;
    auto* family = app.add_subcommand("family", "evaluate a parametric family");
    family->add_option("--id", fam_id, "family name (e.g. gerardin, t1r4, derived-b)")->required();
    family->add_option("--params", fam_params, "P or P,Q")->required();

    // elliptic
    std::int64_t el_h = 0, el_a = 0, el_b = 0, el_max = 3;
    std::string el_x, el_y, el_out;
    auto* ell = app.add_subcommand("elliptic", "derive solutions from a seed point");
    ell->set_help_flag("--help", "print help"); // frees -h so --h can be the coefficient
    ell->add_option("--h", el_h)->required();
    ell->add_option("--a", el_a)->required();
    ell->add_option("--b", el_b)->required();
    ell->add_option("--seed-x", el_x, "X as NUM or NUM/DEN")->required();
    ell->add_option("--seed-y", el_y, "Y as NUM or NUM/DEN")->required();
    ell->add_option("--max-multiple", el_max, "multiples of the seed to walk");
    ell->add_option("--out", el_out, "append solutions to this records file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*search) return run_search(sf);
        if (*verify) return run_verify(verify_path);
        if (*report) {
            std::optional<eqfour::pipeline::SearchBox> box;
            if (box_a && box_b)
                box = eqfour::pipeline::SearchBox{*box_a, *box_b, box_c.value_or(*box_a)};
            return run_report(report_path, box);
        }
        if (*family) return run_family(fam_id, fam_params);
        if (*ell) return run_elliptic(el_h, el_a, el_b, el_x, el_y, el_max, el_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
