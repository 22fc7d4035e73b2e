// lunar: command-line front end for lunar arithmetic and magic-square search.
//
// Exit codes: 0 found/verified, 1 well-formed but negative outcome, 2 usage
// or format error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lunar/expr.hpp"
#include "lunar/io.hpp"
#include "lunar/lunar.hpp"

namespace {

using lunar::io::json;

constexpr int exit_ok = 0;
constexpr int exit_negative = 1;
constexpr int exit_usage = 2;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void print_grid(std::ostream& out, const lunar::grid3& g) {
    std::size_t width = 1;
    for (const auto& c : g.cells) width = std::max(width, lunar::format(c).size());
    for (std::size_t r = 0; r < 3; ++r) {
        out << " ";
        for (std::size_t c = 0; c < 3; ++c) out << ' ' << std::setw(static_cast<int>(width)) << lunar::format(g.at(r, c));
        out << '\n';
    }
}

unsigned default_threads() {
    if (const char* env = std::getenv("LUNAR_THREADS")) {
        try {
            unsigned long v = std::stoul(env);
            if (v >= 1 && v <= 1024) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return 1;
}

// ---------------------------------------------------------------------------

struct eval_opts {
    unsigned base = 10;
    std::string expr;
};

int run_eval(const eval_opts& o) {
    try {
        std::cout << lunar::format(lunar::evaluate(o.expr, o.base)) << '\n';
        return exit_ok;
    } catch (const lunar::syntax_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

// ---------------------------------------------------------------------------

struct verify_opts {
    std::string file;
    bool json_out = false;
};

int run_verify(const verify_opts& o) {
    lunar::grid3 g = lunar::io::parse_grid(read_file(o.file));
    auto total = lunar::magic_total(g);
    if (!total) {
        auto sums = lunar::line_sums(g);
        std::size_t bad = *lunar::first_failing_line(g);
        if (o.json_out) {
            std::cout << json{{"type", "verify"}, {"magic", false}, {"failing_line", lunar::square_line_name(bad)},
                              {"line_sum", lunar::format(sums[bad])}, {"expected", lunar::format(sums[0])}}
                             .dump()
                      << '\n';
        } else {
            std::cout << "not magic: " << lunar::square_line_name(bad) << " sums to " << lunar::format(sums[bad])
                      << ", row 1 sums to " << lunar::format(sums[0]) << '\n';
        }
        return exit_negative;
    }
    const bool distinct = lunar::has_distinct_entries(g);
    const bool dominated = lunar::all_dominated_by(g, *total);
    const std::size_t planes = std::max<std::size_t>(1, total->length());
    bool planes_ok = true;
    for (std::size_t i = 0; i < planes; ++i) {
        auto t = lunar::magic_total(lunar::digit_plane(g, i));
        planes_ok = planes_ok && t && *t == lunar::number::from_normalized(g.base, {(*total)[i]});
    }
    if (o.json_out) {
        std::cout << json{{"type", "verify"},   {"magic", true},          {"total", lunar::format(*total)},
                          {"distinct", distinct}, {"dominated", dominated}, {"digit_planes_magic", planes_ok},
                          {"planes", planes}}
                         .dump()
                  << '\n';
    } else {
        std::cout << "magic, total " << lunar::format(*total) << ", " << (distinct ? "distinct" : "NOT distinct") << '\n'
                  << "every entry dominated by the total: " << (dominated ? "yes" : "no") << '\n'
                  << "digit planes magic: " << planes << " of " << planes << (planes_ok ? "" : " (FAILED)") << '\n';
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------

struct construct_opts {
    unsigned base = 10;
    std::string a, b, c, d, alpha, beta, gamma, delta;
    std::string from;
    unsigned power = 1;
    bool json_out = false;
};

int run_construct(const construct_opts& o) {
    lunar::grid3 g;
    if (!o.from.empty()) {
        g = lunar::io::parse_grid(read_file(o.from));
    } else {
        for (const std::string* s : {&o.a, &o.b, &o.c, &o.d, &o.alpha, &o.beta, &o.gamma, &o.delta}) {
            if (s->empty()) throw usage_error("construct needs --a --b --c --d --alpha --beta --gamma --delta or --from");
        }
        auto p = [&](const std::string& s) { return lunar::parse(s, o.base); };
        g = lunar::construct({p(o.a), p(o.b), p(o.c), p(o.d), p(o.alpha), p(o.beta), p(o.gamma), p(o.delta)});
    }
    if (o.power != 1) g = lunar::power_family(g, o.power);
    auto total = lunar::magic_total(g);
    json doc = lunar::io::to_json(g);
    if (o.json_out) {
        std::cout << doc.dump() << '\n';
    } else {
        std::cout << doc.dump(2) << '\n';
    }
    std::cerr << (total ? "magic, total " + lunar::format(*total) : std::string("not magic")) << '\n';
    return total ? exit_ok : exit_negative;
}

// ---------------------------------------------------------------------------

struct enumerate_opts {
    std::string kind;
    unsigned base = 10;
    std::size_t max_digits = 3;
    std::size_t max_leg_digits = 2;
    bool count = false;
};

int run_enumerate(const enumerate_opts& o) {
    std::vector<std::string> lines;
    if (o.kind == "squares") {
        for (const auto& n : lunar::enumerate_squares(o.base, o.max_digits)) lines.push_back(lunar::format(n));
    } else if (o.kind == "primes") {
        for (const auto& n : lunar::enumerate_primes(o.base, o.max_digits)) lines.push_back(lunar::format(n));
    } else {
        for (const auto& t : lunar::find_triples(o.base, o.max_leg_digits)) {
            lines.push_back(lunar::format(t.a) + " " + lunar::format(t.b) + " " + lunar::format(t.c));
        }
    }
    if (o.count) {
        std::cout << lines.size() << '\n';
    } else {
        for (const auto& l : lines) std::cout << l << '\n';
    }
    return lines.empty() ? exit_negative : exit_ok;
}

// ---------------------------------------------------------------------------

struct search_opts {
    unsigned base = 10;
    std::string total;
    bool smallest = false;
    std::string entries = "any";
    bool distinct = false;
    std::size_t max_total_digits = 0;
    std::uint64_t budget = 1'000'000'000;
    std::size_t limit = 0;
    bool canonical = false;
    unsigned threads = 1;
    bool json_out = false;
    bool count = false;
    bool pairs = false;
    bool no_timing = false;
    // cube only
    std::string verify;
    bool face_diagonals = false;
};

lunar::search_spec make_spec(const search_opts& o) {
    lunar::search_spec spec;
    spec.base = o.base;
    auto entries = lunar::parse_entry_constraint(o.entries);
    if (!entries) throw usage_error("--entries must be any, squares or power:N");
    spec.entries = *entries;
    spec.require_distinct = o.distinct;
    if (!o.total.empty()) {
        if (o.smallest) throw usage_error("--total and --smallest-total are mutually exclusive");
        spec.total = lunar::parse(o.total, o.base);
    }
    spec.max_total_digits = o.max_total_digits != 0 ? o.max_total_digits : (spec.total ? spec.total->length() : 3);
    if (spec.total && spec.total->length() > spec.max_total_digits) {
        throw usage_error("--total " + o.total + " has more digits than --max-total-digits");
    }
    spec.budget = o.budget;
    if (o.limit != 0) spec.emit_limit = o.limit;
    spec.canonical = o.canonical;
    spec.count_only = o.count;
    spec.threads = o.threads;
    lunar::validate(spec);
    return spec;
}

template <class Report>
json manifest(const std::string& subcommand, const search_opts& o, const lunar::search_spec& spec, const Report& r,
              double wall_ms) {
    json m = {
        {"type", "manifest"},
        {"subcommand", subcommand},
        {"version", lunar::io::version},
        {"params", lunar::io::to_json(spec)},
        {"nodes_explored", r.nodes_explored},
        {"exhausted", r.exhausted},
        {"limit_reached", r.limit_reached},
        {"totals_searched", r.totals_searched},
    };
    m["params"]["smallest_total"] = o.smallest;
    if (!o.no_timing) m["wall_time_ms"] = wall_ms;
    return m;
}

class stopwatch {
public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void print_manifest(const search_opts& o, json m) {
    if (o.json_out) {
        std::cout << m.dump() << '\n';
    } else {
        std::cout << "manifest " << m.dump() << '\n';
    }
}

int run_pairs(const search_opts& o, const lunar::search_spec& spec) {
    stopwatch clock;
    auto report = lunar::find_sum_pairs(spec);
    for (std::size_t i = 0; i < report.results.size(); ++i) {
        const auto& p = report.results[i];
        if (o.json_out) {
            std::cout << lunar::io::result_record(p, i).dump() << '\n';
        } else {
            std::cout << "pair " << i + 1 << ": totals " << lunar::format(*lunar::magic_total(p.first)) << " + "
                      << lunar::format(*lunar::magic_total(p.second)) << " = "
                      << lunar::format(*lunar::magic_total(p.sum)) << '\n';
            print_grid(std::cout, p.first);
            std::cout << "  +\n";
            print_grid(std::cout, p.second);
            std::cout << "  =\n";
            print_grid(std::cout, p.sum);
        }
    }
    if (report.results.empty() && !o.json_out) std::cout << "no results\n";
    json m = manifest("search", o, spec, report, clock.ms());
    m["params"]["pairs"] = true;
    m["result_count"] = report.results.size();
    m["pairs_checked"] = report.pairs_checked;
    print_manifest(o, m);
    return report.results.empty() ? exit_negative : exit_ok;
}

int run_search(const search_opts& o) {
    if (!o.smallest && o.total.empty() && !o.pairs) throw usage_error("search needs --total, --smallest-total or --pairs");
    lunar::search_spec spec = make_spec(o);
    if (o.pairs) return run_pairs(o, spec);

    stopwatch clock;
    std::size_t shown = 0;
    auto show = [&](const lunar::grid3& g) {
        if (o.json_out) {
            std::cout << lunar::io::result_record(g, shown).dump() << '\n' << std::flush;
        } else {
            std::cout << "result " << shown + 1 << " (total " << lunar::format(*lunar::magic_total(g)) << ")\n";
            print_grid(std::cout, g);
        }
        ++shown;
    };
    lunar::search_report report;
    if (spec.total) {
        report = lunar::find_squares_with_total(spec, show);
    } else {
        report = lunar::find_smallest_total(spec);
        for (const auto& g : report.results) show(g);
    }
    if (report.result_count == 0 && !o.json_out) std::cout << "no results\n";
    json m = manifest("search", o, spec, report, clock.ms());
    m["result_count"] = report.result_count;
    m["total"] = report.total ? json(lunar::format(*report.total)) : json(nullptr);
    print_manifest(o, m);
    return report.result_count > 0 ? exit_ok : exit_negative;
}

int run_cube(const search_opts& o) {
    const auto set = o.face_diagonals ? lunar::cube_line_set::axes_space_and_face_diagonals
                                      : lunar::cube_line_set::axes_and_space_diagonals;
    if (!o.verify.empty()) {
        lunar::cube3 c = lunar::io::parse_cube(read_file(o.verify));
        auto total = lunar::cube_magic_total(c);
        const bool distinct = lunar::has_distinct_entries(c);
        if (o.json_out) {
            json j = {{"type", "verify"}, {"magic", total.has_value()}, {"line_set", lunar::to_string(c.line_set)},
                      {"distinct", distinct}};
            if (total) j["total"] = lunar::format(*total);
            std::cout << j.dump() << '\n';
        } else if (total) {
            std::cout << "magic cube (" << lunar::to_string(c.line_set) << "), total " << lunar::format(*total) << ", "
                      << (distinct ? "distinct" : "NOT distinct") << '\n';
        } else {
            std::cout << "not magic (" << lunar::to_string(c.line_set) << ")\n";
        }
        return total ? exit_ok : exit_negative;
    }
    if (o.canonical) throw usage_error("--canonical applies to squares only");
    lunar::search_spec spec = make_spec(o);
    stopwatch clock;
    std::size_t shown = 0;
    auto show = [&](const lunar::cube3& c) {
        if (o.json_out) {
            std::cout << lunar::io::result_record(c, shown).dump() << '\n' << std::flush;
        } else {
            std::cout << "cube " << shown + 1 << " (total " << lunar::format(*lunar::cube_magic_total(c)) << ")\n";
            for (std::size_t z = 0; z < 3; ++z) {
                std::cout << " layer " << z + 1 << '\n';
                print_grid(std::cout, c.layer(z));
            }
        }
        ++shown;
    };
    lunar::cube_report report;
    if (spec.total) {
        report = lunar::find_magic_cubes(spec, set, show);
    } else {
        report = lunar::find_magic_cubes(spec, set);
        for (const auto& c : report.results) show(c);
    }
    if (report.result_count == 0 && !o.json_out) std::cout << "no results\n";
    json m = manifest("cube", o, spec, report, clock.ms());
    m["params"]["line_set"] = lunar::to_string(set);
    m["result_count"] = report.result_count;
    m["total"] = report.total ? json(lunar::format(*report.total)) : json(nullptr);
    print_manifest(o, m);
    return report.result_count > 0 ? exit_ok : exit_negative;
}

void add_search_flags(CLI::App* cmd, search_opts& o) {
    cmd->add_option("--base", o.base, "Number base")->check(CLI::Range(2, 36));
    cmd->add_option("--total", o.total, "Search this total (digit string)");
    cmd->add_flag("--smallest-total", o.smallest, "Find the smallest total (length-lex order) admitting a result");
    cmd->add_option("--entries", o.entries, "Entry constraint: any, squares or power:N");
    cmd->add_flag("--distinct", o.distinct, "Require pairwise distinct entries");
    cmd->add_option("--max-total-digits", o.max_total_digits, "Largest total length considered (default 3)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--budget", o.budget, "Node budget")->check(CLI::PositiveNumber);
    cmd->add_option("--limit", o.limit, "Stop after this many results")->check(CLI::PositiveNumber);
    cmd->add_option("--threads", o.threads, "Worker threads (default $LUNAR_THREADS or 1)")
        ->check(CLI::Range(1, 1024));
    cmd->add_flag("--json", o.json_out, "One JSON record per line");
    cmd->add_flag("--count", o.count, "Count results without printing them");
    cmd->add_flag("--no-timing", o.no_timing, "Omit wall time from the manifest");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lunar (dismal) arithmetic and lunar magic squares"};
    app.require_subcommand(1);

    eval_opts eo;
    auto* eval = app.add_subcommand("eval", "Evaluate an expression with lunar + * and ^");
    eval->add_option("expr", eo.expr, "Expression, e.g. \"15+83\"")->required();
    eval->add_option("--base", eo.base, "Number base")->check(CLI::Range(2, 36));

    verify_opts vo;
    auto* verify = app.add_subcommand("verify", "Check whether a grid document is a magic square");
    verify->add_option("file", vo.file, "Grid document (JSON)")->required();
    verify->add_flag("--json", vo.json_out, "JSON output");

    construct_opts co;
    auto* construct = app.add_subcommand("construct", "Build a magic square from (a,b,c,d) and (alpha,beta,gamma,delta)");
    construct->add_option("--base", co.base, "Number base")->check(CLI::Range(2, 36));
    construct->add_option("--a", co.a);
    construct->add_option("--b", co.b);
    construct->add_option("--c", co.c);
    construct->add_option("--d", co.d);
    construct->add_option("--alpha", co.alpha);
    construct->add_option("--beta", co.beta);
    construct->add_option("--gamma", co.gamma);
    construct->add_option("--delta", co.delta);
    construct->add_option("--from", co.from, "Take the roots from a grid document instead");
    construct->add_option("--power", co.power, "Raise every entry to this power")->check(CLI::PositiveNumber);
    construct->add_flag("--json", co.json_out, "Compact single-line document");

    enumerate_opts no;
    auto* enumerate = app.add_subcommand("enumerate", "List lunar squares, primes or Pythagorean triples");
    enumerate->add_option("kind", no.kind, "squares | primes | triples")
        ->required()
        ->check(CLI::IsMember({"squares", "primes", "triples"}));
    enumerate->add_option("--base", no.base, "Number base")->check(CLI::Range(2, 36));
    enumerate->add_option("--max-digits", no.max_digits, "Largest value length (squares, primes)")
        ->check(CLI::PositiveNumber);
    enumerate->add_option("--max-leg-digits", no.max_leg_digits, "Largest leg length (triples)")
        ->check(CLI::PositiveNumber);
    enumerate->add_flag("--count", no.count, "Print only the count");

    search_opts so;
    so.threads = default_threads();
    auto* search = app.add_subcommand("search", "Search for magic squares by total");
    add_search_flags(search, so);
    search->add_flag("--canonical", so.canonical, "Report one square per rotation/reflection class");
    search->add_flag("--pairs", so.pairs, "Search pairs of squares whose cellwise sum is also a solution");

    search_opts uo;
    uo.threads = default_threads();
    auto* cube = app.add_subcommand("cube", "Verify or search 3x3x3 magic cubes");
    add_search_flags(cube, uo);
    cube->add_option("--verify", uo.verify, "Cube document to verify");
    cube->add_flag("--face-diagonals", uo.face_diagonals, "Also require the 12 outer face diagonals");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*eval) return run_eval(eo);
        if (*verify) return run_verify(vo);
        if (*construct) return run_construct(co);
        if (*enumerate) return run_enumerate(no);
        if (*search) return run_search(so);
        if (*cube) return run_cube(uo);
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const lunar::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
