#include "cli.hpp"

#include <fgsolve/errors.hpp>
#include <fgsolve/functional_graph.hpp>
#include <fgsolve/oracle.hpp>
#include <fgsolve/solve_abstraction.hpp>
#include <fgsolve/solve_graph.hpp>
#include <fgsolve/tabstraction.hpp>

#include <CLI11.hpp>
#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace fgsolve::cli {

namespace {

using Clock = std::chrono::steady_clock;

// Thrown for bad inputs that are not I/O failures.
struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

auto read_text(const std::string & path) -> std::string
{
    std::ifstream in(path);
    if (! in)
        throw std::ios_base::failure("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

auto load_connected(const std::string & path, const char * what) -> FunctionalGraph
{
    auto g = parse_fg(read_text(path));
    if (g.empty() || ! is_connected(g))
        throw UsageError(std::string(what) + " (" + path + ") is not a connected functional graph");
    return g;
}

// A matrix in bracket layout, or a graph whose abstraction is taken.
auto load_abstraction(const std::string & path, const char * what) -> TAbstraction
{
    const auto text = read_text(path);
    if (text.find('[') != std::string::npos || text.find("∅") != std::string::npos)
        return TAbstraction::parse(text);
    auto g = parse_fg(text);
    if (g.empty() || ! is_connected(g))
        throw UsageError(std::string(what) + " (" + path + ") is not a connected functional graph");
    return t_abstraction(g);
}

auto cycle_lengths(std::size_t pa, std::size_t pb, std::size_t px, bool all) -> std::vector<std::size_t>
{
    if (all)
        return compatible_cycle_lengths(pa, pb);
    if (px == 0 || std::lcm(pa, px) != pb)
        throw UsageError("p_x = " + std::to_string(px) + " is invalid: lcm(" + std::to_string(pa) + ", p_x) must be " +
                         std::to_string(pb));
    return {px};
}

auto deadline_after(std::uint64_t ms) -> std::optional<Clock::time_point>
{
    if (ms == 0)
        return std::nullopt;
    return Clock::now() + std::chrono::milliseconds(ms);
}

struct SolveArgs
{
    std::string a_path;
    std::string b_path;
    std::size_t px = 0;
    bool px_given = false;
    bool all_px = false;
    bool abstraction_only = false;
    std::size_t columns = 0;
    bool naive = false;
    bool no_height_pruning = false;
    bool first_only = false;
    std::uint64_t timeout_ms = 0;
};

auto cmd_solve_abstraction(const SolveArgs & args, std::ostream & out) -> int
{
    const auto ta = load_abstraction(args.a_path, "A");
    const auto tb = load_abstraction(args.b_path, "B");
    const auto lengths = cycle_lengths(ta.rows(), tb.rows(), args.px, args.all_px || ! args.px_given);
    std::size_t found = 0;
    for (auto px : lengths) {
        for (std::size_t i = 0; i < ta.rows(); ++i) {
            const auto tx = args.columns > 0 ? solve_abstraction_prefix(ta, tb, px, i, args.columns)
                                             : solve_abstraction_at(ta, tb, px, i);
            if (! tx)
                continue;
            ++found;
            out << "# abstraction p_x=" << px << " alignment=" << i << '\n' << tx->to_string() << '\n';
            if (args.first_only)
                return Exit::ok;
        }
    }
    out << "# " << found << " abstraction solution(s)\n";
    return found > 0 ? Exit::ok : Exit::no_solution;
}

auto cmd_solve(const SolveArgs & args, std::ostream & out) -> int
{
    if (args.abstraction_only)
        return cmd_solve_abstraction(args, out);
    const auto a = load_connected(args.a_path, "A");
    const auto b = load_connected(args.b_path, "B");
    const auto lengths = cycle_lengths(cycle_length(a), cycle_length(b), args.px, args.all_px || ! args.px_given);
    const auto algorithm =
        args.naive ? Algorithm::naive : (args.no_height_pruning ? Algorithm::exact : Algorithm::exact_height);
    SolveOptions options;
    options.first_only = args.first_only;
    options.parallel = true;
    options.deadline = deadline_after(args.timeout_ms);

    std::size_t found = 0;
    SolveStats total;
    for (auto px : lengths) {
        const auto r = solve(a, b, px, algorithm, options);
        total.explored_assignments += r.stats.explored_assignments;
        total.backtracks += r.stats.backtracks;
        total.timed_out = total.timed_out || r.stats.timed_out;
        for (const auto & s : r.solutions) {
            ++found;
            out << "# solution " << found << " p_x=" << px << " alignment=" << s.alignment << '\n';
            write_fg(out, s.x);
        }
        if (total.timed_out || (args.first_only && found > 0))
            break;
    }
    out << "# " << found << " solution(s), explored_assignments=" << total.explored_assignments
        << ", backtracks=" << total.backtracks << (total.timed_out ? ", timed out (partial)" : "") << '\n';
    if (total.timed_out)
        return Exit::timed_out;
    return found > 0 ? Exit::ok : Exit::no_solution;
}

auto cmd_verify(const std::string & a_path, const std::string & x_path, const std::string & b_path,
                std::ostream & out) -> int
{
    const auto a = load_connected(a_path, "A");
    const auto x = load_connected(x_path, "X");
    const auto b = load_connected(b_path, "B");
    const auto hits = matching_components(a, x, b);
    for (auto s : hits)
        out << "component alignment=" << s << '\n';
    out << "# " << hits.size() << " matching component(s)\n";
    return hits.empty() ? Exit::no_solution : Exit::ok;
}

struct GenArgs
{
    InstanceSpec spec;
    std::size_t count = 1;
    std::string out_dir;
};

auto cmd_gen(const GenArgs & args, std::ostream & out) -> int
{
    SplitMix64 seeds(args.spec.seed);
    for (std::size_t k = 0; k < args.count; ++k) {
        auto spec = args.spec;
        spec.seed = seeds.next();
        const auto stem = "instance_" + std::to_string(k);
        const auto inst = gen_instance(spec);
        save_instance(args.out_dir, stem, inst);
        out << stem << ' ' << spec.to_string() << " n_b=" << inst.b.size() << '\n';
    }
    return Exit::ok;
}

// "pa=2,3;px=5;na=60;nx=60;deg=4;instances=10;height=0"
struct Grid
{
    std::vector<std::size_t> pa, px, na, nx, height;
    std::vector<std::uint32_t> deg;
    std::size_t instances = 1;
};

auto parse_list(const std::string & key, const std::string & text) -> std::vector<std::size_t>
{
    std::vector<std::size_t> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty())
            continue;
        std::size_t used = 0;
        std::size_t v = 0;
        try {
            v = std::stoull(item, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used != item.size())
            throw UsageError("bad value '" + item + "' for " + key);
        out.push_back(v);
    }
    return out;
}

auto parse_grid(const std::string & text) -> Grid
{
    Grid g{{2}, {3}, {60}, {60}, {0}, {4}, 10};
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, ';')) {
        if (part.empty())
            continue;
        const auto eq = part.find('=');
        if (eq == std::string::npos)
            throw UsageError("expected key=values in suite, got '" + part + "'");
        const auto key = part.substr(0, eq);
        const auto values = parse_list(key, part.substr(eq + 1));
        if (key == "pa")
            g.pa = values;
        else if (key == "px")
            g.px = values;
        else if (key == "na")
            g.na = values;
        else if (key == "nx")
            g.nx = values;
        else if (key == "height")
            g.height = values;
        else if (key == "deg")
            g.deg.assign(values.begin(), values.end());
        else if (key == "instances") {
            if (values.size() != 1)
                throw UsageError("instances takes one value");
            g.instances = values[0];
        } else
            throw UsageError("unknown suite key '" + key + "'");
    }
    return g;
}

struct BenchArgs
{
    std::string suite;
    std::uint64_t timeout_ms = 1000;
    std::string csv;
    std::uint64_t seed = 1;
    std::string algorithms = "naive,exact,exact+height";
};

struct Job
{
    std::string cell;
    std::string id;
    InstanceSpec spec;
};

struct Record
{
    std::string line;
    bool solved = false;
};

constexpr const char * csv_header = "instance_id,n_a,n_x,n_b,p_a,p_x,p_b,max_indegree,algorithm,time_ms,solutions_found,"
                                    "explored_assignments,timed_out";

auto cmd_bench(const BenchArgs & args, std::ostream & out) -> int
{
    const auto grid = parse_grid(args.suite);
    std::vector<Algorithm> algorithms;
    {
        std::istringstream in(args.algorithms);
        std::string name;
        while (std::getline(in, name, ','))
            try {
                algorithms.push_back(parse_algorithm(name));
            } catch (const std::invalid_argument & e) {
                throw UsageError(e.what());
            }
    }

    SplitMix64 seeds(args.seed);
    std::vector<Job> jobs;
    std::vector<std::string> cells;
    for (auto pa : grid.pa)
        for (auto px : grid.px)
            for (auto na : grid.na)
                for (auto nx : grid.nx)
                    for (auto deg : grid.deg)
                        for (auto h : grid.height) {
                            std::ostringstream cell;
                            cell << "pa" << pa << "_px" << px << "_na" << na << "_nx" << nx << "_deg" << deg << "_h"
                                 << h;
                            cells.push_back(cell.str());
                            for (std::size_t k = 0; k < grid.instances; ++k) {
                                InstanceSpec spec{na, nx, pa, px, deg, seeds.next(), static_cast<std::uint32_t>(h)};
                                jobs.push_back({cell.str(), cell.str() + "_i" + std::to_string(k), spec});
                            }
                        }

    // Generate up front so infeasible specs fail before any solving.
    std::vector<Instance> instances;
    instances.reserve(jobs.size());
    for (const auto & j : jobs)
        instances.push_back(gen_instance(j.spec));

    const auto csv_path = std::filesystem::path(args.csv);
    if (csv_path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(csv_path.parent_path(), ec);
    }
    const bool fresh = ! std::filesystem::exists(csv_path) || std::filesystem::file_size(csv_path) == 0;
    std::ofstream csv(args.csv, std::ios::app);
    if (! csv)
        throw std::ios_base::failure("cannot write " + args.csv);
    if (fresh)
        csv << csv_header << '\n';

    std::vector<std::vector<Record>> records(jobs.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t k = 0; k < jobs.size(); ++k) {
        const auto & inst = instances[k];
        const auto & spec = jobs[k].spec;
        for (auto algorithm : algorithms) {
            SolveOptions options;
            const auto start = Clock::now();
            options.deadline = deadline_after(args.timeout_ms);
            const auto r = solve(inst.a, inst.b, spec.p_x, algorithm, options);
            const std::chrono::duration<double, std::milli> elapsed = Clock::now() - start;
            std::ostringstream line;
            line << jobs[k].id << ',' << inst.a.size() << ',' << inst.x.size() << ',' << inst.b.size() << ','
                 << spec.p_a << ',' << spec.p_x << ',' << std::lcm(spec.p_a, spec.p_x) << ',' << spec.max_indegree
                 << ',' << algorithm_name(algorithm) << ',' << std::fixed << std::setprecision(3) << elapsed.count()
                 << ',' << r.solutions.size() << ',' << r.stats.explored_assignments << ','
                 << (r.stats.timed_out ? 1 : 0);
            records[k].push_back({line.str(), ! r.stats.timed_out});
        }
    }

    std::map<std::string, std::vector<std::size_t>> solved;
    for (std::size_t k = 0; k < jobs.size(); ++k) {
        auto & tally = solved[jobs[k].cell];
        tally.resize(algorithms.size(), 0);
        for (std::size_t a = 0; a < algorithms.size(); ++a) {
            csv << records[k][a].line << '\n';
            tally[a] += records[k][a].solved ? 1 : 0;
        }
    }
    csv.flush();
    if (! csv)
        throw std::ios_base::failure("write failed: " + args.csv);

    for (const auto & cell : cells) {
        out << cell;
        const auto it = solved.find(cell);
        for (std::size_t a = 0; a < algorithms.size(); ++a) {
            const auto n = it == solved.end() ? 0 : it->second[a];
            out << ' ' << algorithm_name(algorithms[a]) << '=' << n << '/' << grid.instances;
        }
        out << '\n';
    }
    return Exit::ok;
}

void apply_thread_override()
{
    if (const char * env = std::getenv("FGSOLVE_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0)
            omp_set_num_threads(n);
    }
}

} // namespace

auto run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int
{
    apply_thread_override();
    CLI::App app{"Solve equations A x X = B over connected functional graphs"};
    app.name("fgsolve");
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto * solve_cmd = app.add_subcommand("solve", "Find every connected X with a component of A x X isomorphic to B");
    solve_cmd->add_option("A", solve_args.a_path, "A as .fg (or a matrix with --abstraction-only)")->required();
    solve_cmd->add_option("B", solve_args.b_path, "B as .fg (or a matrix with --abstraction-only)")->required();
    auto * px_opt = solve_cmd->add_option("--px", solve_args.px, "Cycle length of X");
    solve_cmd->add_flag("--all-px", solve_args.all_px, "Try every k with lcm(p_A, k) = p_B (default)")->excludes(px_opt);
    solve_cmd->add_flag("--abstraction-only", solve_args.abstraction_only, "Only reconstruct T^X");
    solve_cmd->add_option("--columns", solve_args.columns, "With --abstraction-only: stop after this many columns");
    solve_cmd->add_flag("--naive", solve_args.naive, "Use the naive wiring enumeration");
    solve_cmd->add_flag("--no-height-pruning", solve_args.no_height_pruning, "Disable height pruning");
    solve_cmd->add_flag("--first-only", solve_args.first_only, "Stop at the first solution");
    solve_cmd->add_option("--timeout", solve_args.timeout_ms, "Timeout in ms (0 = none)");

    std::string va, vx, vb;
    auto * verify_cmd = app.add_subcommand("verify", "Check that some component of A x X is isomorphic to B");
    verify_cmd->add_option("A", va)->required();
    verify_cmd->add_option("X", vx)->required();
    verify_cmd->add_option("B", vb)->required();

    GenArgs gen_args;
    auto * gen_cmd = app.add_subcommand("gen", "Generate random (A, X, B) instances");
    gen_cmd->add_option("--na", gen_args.spec.n_a, "Nodes of A")->required();
    gen_cmd->add_option("--nx", gen_args.spec.n_x, "Nodes of X")->required();
    gen_cmd->add_option("--pa", gen_args.spec.p_a, "Cycle length of A")->required();
    gen_cmd->add_option("--px", gen_args.spec.p_x, "Cycle length of X")->required();
    gen_cmd->add_option("--max-indegree", gen_args.spec.max_indegree, "Indegree cap")->capture_default_str();
    gen_cmd->add_option("--height", gen_args.spec.height, "Depth cap (0 = none)")->capture_default_str();
    gen_cmd->add_option("--seed", gen_args.spec.seed, "RNG seed")->required();
    gen_cmd->add_option("--count", gen_args.count, "Number of instances")->capture_default_str();
    gen_cmd->add_option("--out", gen_args.out_dir, "Output directory")->required();

    BenchArgs bench_args;
    auto * bench_cmd = app.add_subcommand("bench", "Run every algorithm on a grid of random instances");
    bench_cmd->add_option("--suite", bench_args.suite, "Grid, e.g. pa=2,3,5;px=3,5,7;na=60;nx=60;deg=4;instances=10")
        ->required();
    bench_cmd->add_option("--timeout", bench_args.timeout_ms, "Per-run timeout in ms")->capture_default_str();
    bench_cmd->add_option("--csv", bench_args.csv, "CSV to append to")->required();
    bench_cmd->add_option("--seed", bench_args.seed, "RNG seed")->capture_default_str();
    bench_cmd->add_option("--algorithms", bench_args.algorithms, "Comma-separated algorithms")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        solve_args.px_given = px_opt->count() > 0;
    } catch (const CLI::ParseError & e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Exit::ok : Exit::usage;
    }

    try {
        if (*solve_cmd)
            return cmd_solve(solve_args, out);
        if (*verify_cmd)
            return cmd_verify(va, vx, vb, out);
        if (*gen_cmd)
            return cmd_gen(gen_args, out);
        return cmd_bench(bench_args, out);
    } catch (const std::ios_base::failure & e) {
        err << "fgsolve: " << e.what() << '\n';
        return Exit::io_error;
    } catch (const std::exception & e) {
        err << "fgsolve: " << e.what() << '\n';
        return Exit::usage;
    }
}

} // namespace fgsolve::cli
