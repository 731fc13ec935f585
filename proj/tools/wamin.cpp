#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "wamin/bench.hpp"
#include "wamin/driver.hpp"
#include "wamin/generators.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFalse = 1;         // semantic "no"
constexpr int kInputError = 2;    // unreadable or malformed input
constexpr int kPrecondition = 3;  // valid input outside an operation's domain

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw wamin::ParseError("cannot open " + path + " for writing");
    out << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw wamin::ParseError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// "8..12" (inclusive), "2^8..2^12" (powers of two), or a comma list
std::vector<long> parse_param_range(const std::string& text) {
    auto parse_value = [](const std::string& s) -> long {
        if (s.rfind("2^", 0) == 0) return 1L << std::stol(s.substr(2));
        return std::stol(s);
    };
    std::vector<long> out;
    if (text.find(',') != std::string::npos) {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(parse_value(item));
        return out;
    }
    auto dots = text.find("..");
    if (dots == std::string::npos) return {parse_value(text)};
    std::string lo_s = text.substr(0, dots), hi_s = text.substr(dots + 2);
    bool powers = lo_s.rfind("2^", 0) == 0;
    long lo = parse_value(lo_s), hi = parse_value(hi_s);
    if (lo > hi) throw std::invalid_argument("empty parameter range");
    for (long v = lo; v <= hi; v = powers ? v * 2 : v + 1) out.push_back(v);
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"semiring-weighted automaton minimisation toolkit"};
    app.require_subcommand(1);

    // min
    auto* cmd_min = app.add_subcommand("min", "minimise an automaton (writes its quotient)");
    std::string min_input, min_output, min_algo = "auto", min_partition_path;
    cmd_min->add_option("input", min_input, "automaton file")->required();
    cmd_min->add_option("-o,--output", min_output, "output file (default: stdout)");
    cmd_min->add_option("--algo", min_algo, "dsa | pcsa | fpcsa | auto")
        ->check(CLI::IsMember({"dsa", "pcsa", "fpcsa", "auto"}));
    cmd_min->add_option("--emit-partition", min_partition_path,
                        "also write the coarsest congruence, one class per line");

    // check
    auto* cmd_check = app.add_subcommand("check", "is the given partition a congruence?");
    std::string check_input, check_partition;
    cmd_check->add_option("input", check_input, "automaton file")->required();
    cmd_check->add_option("partition", check_partition, "partition file")->required();

    // quotient
    auto* cmd_quotient =
        app.add_subcommand("quotient", "quotient an automaton by a congruence file");
    std::string quot_input, quot_partition, quot_output;
    cmd_quotient->add_option("input", quot_input, "automaton file")->required();
    cmd_quotient->add_option("partition", quot_partition, "partition file")->required();
    cmd_quotient->add_option("-o,--output", quot_output, "output file (default: stdout)");

    // equiv
    auto* cmd_equiv =
        app.add_subcommand("equiv", "compare word coefficients up to a length bound");
    std::string equiv_a, equiv_b;
    int equiv_len = 8;
    cmd_equiv->add_option("a", equiv_a, "first automaton")->required();
    cmd_equiv->add_option("b", equiv_b, "second automaton")->required();
    cmd_equiv->add_option("-L,--length", equiv_len, "maximum word length (default 8)")
        ->check(CLI::NonNegativeNumber);

    // gen
    auto* cmd_gen = app.add_subcommand("gen", "generate a benchmark or random automaton");
    std::string gen_family, gen_output, gen_semiring = "Z";
    long gen_param = 0;
    int gen_states = 4, gen_alphabet = 2;
    double gen_density = 0.3;
    std::uint64_t gen_seed = 1;
    cmd_gen->add_option("family", gen_family, "fibonacci | railroad | random")
        ->required()
        ->check(CLI::IsMember({"fibonacci", "railroad", "random"}));
    cmd_gen->add_option("param", gen_param, "k for fibonacci, n for railroad");
    cmd_gen->add_option("-o,--output", gen_output, "output file (default: stdout)");
    cmd_gen->add_option("--states", gen_states, "random: state count");
    cmd_gen->add_option("--alphabet-size", gen_alphabet, "random: alphabet size");
    cmd_gen->add_option("--density", gen_density, "random: transition probability");
    cmd_gen->add_option("--semiring", gen_semiring, "random: B | Z | min-plus")
        ->check(CLI::IsMember({"B", "Z", "min-plus"}));
    cmd_gen->add_option("--seed", gen_seed, "random: seed");

    // bench
    auto* cmd_bench = app.add_subcommand("bench", "time the minimisation algorithms");
    std::string bench_family, bench_range, bench_algos = "dsa,pcsa,fpcsa", bench_output;
    int bench_reps = 3;
    double bench_timeout = 0;
    cmd_bench->add_option("family", bench_family, "fibonacci | railroad")
        ->required()
        ->check(CLI::IsMember({"fibonacci", "railroad"}));
    cmd_bench->add_option("params", bench_range, "e.g. 10..16, 2^8..2^12 or 10,12,14")
        ->required();
    cmd_bench->add_option("algos", bench_algos, "comma list of dsa,pcsa,fpcsa");
    cmd_bench->add_option("--reps", bench_reps, "repetitions per cell (median is kept)");
    cmd_bench->add_option("--timeout", bench_timeout,
                          "skip larger parameters once a cell exceeds this many seconds");
    cmd_bench->add_option("-o,--output", bench_output, "report file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    if (app.got_subcommand(cmd_min)) {
        auto aut = wamin::load_automaton(min_input);
        wamin::Algo algo = *wamin::algo_from_name(min_algo);
        wamin::MinimiseOutcome outcome;
        try {
            outcome = wamin::minimise_automaton(aut, algo);
        } catch (const wamin::NotSimplifiableError& e) {
            std::cerr << "error: " << e.what()
                      << "; use --algo pcsa (or auto) to fall back\n";
            return kPrecondition;
        }
        auto quotient = wamin::quotient_automaton(aut, outcome.partition);
        write_output(wamin::serialize_automaton(quotient), min_output);
        if (!min_partition_path.empty())
            write_output(
                wamin::format_partition(outcome.partition, wamin::true_state_count(aut)),
                min_partition_path);
        return kOk;
    }

    if (app.got_subcommand(cmd_check)) {
        auto aut = wamin::load_automaton(check_input);
        auto partition =
            wamin::parse_partition(read_file(check_partition), wamin::true_state_count(aut));
        return wamin::congruence_of(aut, partition) ? kOk : kFalse;
    }

    if (app.got_subcommand(cmd_quotient)) {
        auto aut = wamin::load_automaton(quot_input);
        auto partition =
            wamin::parse_partition(read_file(quot_partition), wamin::true_state_count(aut));
        if (!wamin::congruence_of(aut, partition)) {
            std::cerr << "error: the partition is not a congruence of the input\n";
            return kPrecondition;
        }
        write_output(wamin::serialize_automaton(wamin::quotient_automaton(aut, partition)),
                     quot_output);
        return kOk;
    }

    if (app.got_subcommand(cmd_equiv)) {
        auto a = wamin::load_automaton(equiv_a);
        auto b = wamin::load_automaton(equiv_b);
        std::optional<std::string> witness;
        try {
            witness = wamin::first_difference_word(a, b, equiv_len);
        } catch (const std::invalid_argument& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kInputError;
        }
        if (witness) {
            std::cout << "differ on \"" << *witness << "\"\n";
            return kFalse;
        }
        std::cout << "equivalent up to length " << equiv_len << "\n";
        return kOk;
    }

    if (app.got_subcommand(cmd_gen)) {
        wamin::AnyAutomaton aut;
        if (gen_family == "fibonacci") {
            if (gen_param < 1 || gen_param > 26) {
                std::cerr << "error: fibonacci parameter must be in 1..26\n";
                return kInputError;
            }
            aut = wamin::fibonacci_automaton(static_cast<int>(gen_param));
        } else if (gen_family == "railroad") {
            if (gen_param < 1 || gen_param > (1L << 20)) {
                std::cerr << "error: railroad parameter must be in 1..2^20\n";
                return kInputError;
            }
            aut = wamin::railroad_automaton(gen_param);
        } else {
            if (gen_semiring == "B")
                aut = wamin::random_automaton<wamin::Boolean>(gen_states, gen_alphabet,
                                                              gen_density, gen_seed);
            else if (gen_semiring == "Z")
                aut = wamin::random_automaton<wamin::Integers>(gen_states, gen_alphabet,
                                                               gen_density, gen_seed);
            else
                aut = wamin::random_automaton<wamin::MinPlus>(gen_states, gen_alphabet,
                                                              gen_density, gen_seed);
        }
        write_output(wamin::serialize_automaton(aut), gen_output);
        return kOk;
    }

    if (app.got_subcommand(cmd_bench)) {
        std::vector<wamin::Algo> algos;
        std::stringstream ss(bench_algos);
        std::string name;
        while (std::getline(ss, name, ',')) {
            auto a = wamin::algo_from_name(name);
            if (!a || *a == wamin::Algo::Auto) {
                std::cerr << "error: unknown algorithm '" << name << "'\n";
                return kInputError;
            }
            algos.push_back(*a);
        }
        wamin::BenchConfig cfg;
        cfg.reps = bench_reps;
        cfg.timeout_seconds = bench_timeout;
        auto records = wamin::bench_run(bench_family, parse_param_range(bench_range), algos, cfg);
        write_output(wamin::format_report(records), bench_output);
        return kOk;
    }

    return kInputError;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const wamin::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
}
