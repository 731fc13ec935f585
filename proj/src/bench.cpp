#include "wamin/bench.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <stdexcept>

#include "wamin/generators.hpp"

namespace wamin {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <Semiring S>
BenchRecord run_cell(const Automaton<S>& aut, Algo algo, const BenchConfig& cfg) {
    Augmented<S> aug(aut);
    auto run_once = [&](MinimiseStats* st) {
        MinimiseOptions opt;
        opt.stats = st;
        switch (algo) {
            case Algo::Dsa: dsa_minimise(aug, opt); break;
            case Algo::Pcsa: pcsa_minimise(aug, opt); break;
            case Algo::Fpcsa: fpcsa_minimise(aug, opt); break;
            default: throw std::invalid_argument("bench cells need a concrete algorithm");
        }
    };

    BenchRecord rec;
    std::tie(rec.n, rec.m) = aut.stats();
    rec.algorithm = algo_name(algo);

    MinimiseStats stats;
    run_once(&stats);  // warm-up, and the counters
    rec.transitions_touched = stats.transitions_touched;
    rec.dequeues = stats.states_dequeued;
    rec.splits = stats.splits;

    std::vector<double> times;
    for (int r = 0; r < cfg.reps; ++r) {
        int iters = 0;
        auto t0 = Clock::now();
        double elapsed = 0;
        do {
            run_once(nullptr);
            ++iters;
            elapsed = seconds_since(t0);
        } while (elapsed < cfg.min_measure_seconds);
        times.push_back(elapsed / iters);
    }
    std::sort(times.begin(), times.end());
    rec.seconds = times[times.size() / 2];
    return rec;
}

}  // namespace

std::vector<BenchRecord> bench_run(const std::string& family, const std::vector<long>& params,
                                   const std::vector<Algo>& algos, const BenchConfig& cfg) {
    if (family != "fibonacci" && family != "railroad")
        throw std::invalid_argument("unknown bench family: " + family);
    std::vector<BenchRecord> records;
    for (Algo algo : algos) {
        bool timed_out = false;
        for (long param : params) {
            if (timed_out) break;  // mirror the blank cells of slow algorithms
            BenchRecord rec;
            if (family == "fibonacci")
                rec = run_cell(fibonacci_automaton(static_cast<int>(param)), algo, cfg);
            else
                rec = run_cell(railroad_automaton(param), algo, cfg);
            rec.family = family;
            rec.param = param;
            if (cfg.timeout_seconds > 0 && rec.seconds > cfg.timeout_seconds) timed_out = true;
            records.push_back(std::move(rec));
        }
    }
    return records;
}

std::string format_report(const std::vector<BenchRecord>& records) {
    std::ostringstream out;
    out << "family\tparam\tn\tm\talgorithm\tseconds\ttransitions_touched\tdequeues\tsplits\n";
    for (const auto& r : records) {
        out << r.family << '\t' << r.param << '\t' << r.n << '\t' << r.m << '\t' << r.algorithm
            << '\t' << r.seconds << '\t' << r.transitions_touched << '\t' << r.dequeues << '\t'
            << r.splits << '\n';
    }
    return out.str();
}

}  // namespace wamin
