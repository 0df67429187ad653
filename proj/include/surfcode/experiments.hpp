#ifndef SURFCODE_EXPERIMENTS_HPP
#define SURFCODE_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "surfcode/projgeo.hpp"

namespace surfcode::experiments {

struct TrialRecord {
    uint64_t seed;  // trial seed (derived from the master seed)
    int q;
    int degree;
    int m;
    int n;     // code length = number of affine points
    int k;     // functional code dimension
    int rank;  // parity matrix rank
    bool positive;
    int gap;                  // (n - k) - rank
    int rejected_singular;    // surfaces discarded by the smoothness screen
    int rejected_no_points;   // smooth surfaces discarded for lack of affine points
};

struct TableSummary {
    int q;
    int degree;
    int m;
    int trials;
    int positives;
    double rate;
    double mean_gap_negative;  // mean of gap over negative trials (0 if none)
    double mean_length;
    projgeo::SmoothMode smooth_mode;
    uint64_t master_seed;
    int rejected_singular;
    int rejected_no_points;
};

/// Seed of trial i under master seed s: splitmix64 output at state s + i.
uint64_t trial_seed(uint64_t master_seed, int trial_index);

/// Samples random surfaces (rejecting singular ones and ones without
/// affine points) until one qualifies, then runs the rank comparison.
/// Requires d == m + 2 and q > 2.  Throws after retry_cap rejections.
TrialRecord run_trial(const gf::Field& f, int d, int m, uint64_t seed,
                      projgeo::SmoothMode mode = projgeo::SmoothMode::Full,
                      int retry_cap = 10000);

/// Aggregates `trials` independent trials; deterministic in
/// (field, d, m, trials, master_seed) regardless of thread count.
TableSummary run_table(const gf::Field& f, int d, int m, int trials, uint64_t master_seed,
                       projgeo::SmoothMode mode = projgeo::SmoothMode::Full, int threads = 0,
                       std::vector<TrialRecord>* records = nullptr);

std::string csv_header();
std::string to_csv(const TableSummary& t);

}  // namespace surfcode::experiments

#endif
