#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wamin/driver.hpp"

namespace wamin {

struct BenchRecord {
    std::string family;
    long param = 0;  // k for fibonacci, n for railroad
    long n = 0;      // states of the generated automaton
    long m = 0;      // transitions of the generated automaton
    std::string algorithm;
    double seconds = 0;  // median minimisation wall time over the repetitions
    std::uint64_t transitions_touched = 0;
    std::uint64_t dequeues = 0;  // states dequeued: sum of |D| over processed classes
    std::uint64_t splits = 0;
};

struct BenchConfig {
    int reps = 3;
    double timeout_seconds = 0;      // > 0: once a cell exceeds it, later params of
                                     // the same algorithm are skipped
    double min_measure_seconds = 0.02;  // each measurement loops until this long
};

// Runs family cells sequentially (wall time is recorded) and returns one
// record per completed (param, algorithm) cell.
std::vector<BenchRecord> bench_run(const std::string& family, const std::vector<long>& params,
                                   const std::vector<Algo>& algos, const BenchConfig& cfg = {});

// Tab-separated report, header line included.
std::string format_report(const std::vector<BenchRecord>& records);

}  // namespace wamin
