#include "surfcode/experiments.hpp"

#include <atomic>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "surfcode/parity.hpp"

namespace surfcode::experiments {

uint64_t trial_seed(uint64_t master_seed, int trial_index) {
    uint64_t state = master_seed + static_cast<uint64_t>(trial_index);
    return projgeo::splitmix64(state);
}

TrialRecord run_trial(const gf::Field& f, int d, int m, uint64_t seed, projgeo::SmoothMode mode,
                      int retry_cap) {
    if (d != m + 2) throw std::invalid_argument("experiments: requires d == m + 2");
    if (f.size() <= 2) throw std::invalid_argument("experiments: requires q > 2");
    TrialRecord rec{};
    rec.seed = seed;
    rec.q = f.size();
    rec.degree = d;
    rec.m = m;
    uint64_t state = seed;
    for (int attempt = 0; attempt < retry_cap; ++attempt) {
        const uint64_t surface_seed = projgeo::splitmix64(state);
        const projgeo::Surface s = projgeo::random_surface(f, d, surface_seed);
        if (!projgeo::is_smooth(s, mode)) {
            ++rec.rejected_singular;
            continue;
        }
        const auto pts = projgeo::surface_points(s).affine;
        if (pts.empty()) {
            ++rec.rejected_no_points;
            continue;
        }
        const parity::PositiveTest t = parity::is_positive_test(s, m, pts);
        rec.n = t.n;
        rec.k = t.k;
        rec.rank = t.rank;
        rec.positive = t.positive;
        rec.gap = t.gap;
        return rec;
    }
    throw std::runtime_error("experiments: retry cap exhausted while sampling a smooth surface");
}

TableSummary run_table(const gf::Field& f, int d, int m, int trials, uint64_t master_seed,
                       projgeo::SmoothMode mode, int threads, std::vector<TrialRecord>* records) {
    std::vector<TrialRecord> recs(trials);
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    threads = std::min(threads, std::max(trials, 1));

    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::string error;
    std::mutex error_mutex;
    auto worker = [&]() {
        while (true) {
            const int i = next.fetch_add(1);
            if (i >= trials || failed.load()) return;
            try {
                recs[i] = run_trial(f, d, m, trial_seed(master_seed, i), mode);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                error = e.what();
                failed.store(true);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failed.load()) throw std::runtime_error(error);

    TableSummary sum{};
    sum.q = f.size();
    sum.degree = d;
    sum.m = m;
    sum.trials = trials;
    sum.smooth_mode = mode;
    sum.master_seed = master_seed;
    long gap_total = 0;
    long length_total = 0;
    int negatives = 0;
    for (const TrialRecord& r : recs) {
        sum.positives += r.positive;
        if (!r.positive) {
            ++negatives;
            gap_total += r.gap;
        }
        length_total += r.n;
        sum.rejected_singular += r.rejected_singular;
        sum.rejected_no_points += r.rejected_no_points;
    }
    sum.rate = trials ? static_cast<double>(sum.positives) / trials : 0.0;
    sum.mean_gap_negative = negatives ? static_cast<double>(gap_total) / negatives : 0.0;
    sum.mean_length = trials ? static_cast<double>(length_total) / trials : 0.0;
    if (records) *records = std::move(recs);
    return sum;
}

std::string csv_header() {
    return "field,degree,m,trials,positives,rate,mean_gap_negative,mean_length,smooth_mode,"
           "master_seed";
}

std::string to_csv(const TableSummary& t) {
    std::ostringstream out;
    out << t.q << ',' << t.degree << ',' << t.m << ',' << t.trials << ',' << t.positives << ','
        << t.rate << ',' << t.mean_gap_negative << ',' << t.mean_length << ','
        << (t.smooth_mode == projgeo::SmoothMode::Full ? "full" : "rational") << ','
        << t.master_seed;
    return out.str();
}

}  // namespace surfcode::experiments
