#ifndef SURFCODE_LDPC_HPP
#define SURFCODE_LDPC_HPP

#include <cstdint>
#include <vector>

#include "surfcode/gf.hpp"
#include "surfcode/linalg.hpp"

namespace surfcode::ldpc {

/// Additive integer costs with a saturating infinity.
using Cost = uint32_t;
constexpr Cost kInfCost = 1u << 30;
inline Cost cost_add(Cost a, Cost b) {
    const Cost s = a + b;
    return s >= kInfCost ? kInfCost : s;
}

/// Cost table: one extended nonnegative integer per field element.
using CostTable = std::vector<Cost>;

/// Weighted bipartite bit/check graph of a parity matrix over F_q.
class TannerGraph {
public:
    struct Edge {
        int bit;
        int check;
        uint8_t weight;  // nonzero
    };

    TannerGraph(const gf::Field& f, int nbits, int nchecks);
    static TannerGraph from_matrix(const linalg::Matrix& h);

    const gf::Field& field() const { return *f_; }
    int nbits() const { return nbits_; }
    int nchecks() const { return nchecks_; }
    int nedges() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& bit_edges(int i) const { return by_bit_[i]; }
    const std::vector<int>& check_edges(int j) const { return by_check_[j]; }

    void add_edge(int bit, int check, uint8_t weight);

private:
    const gf::Field* f_;
    int nbits_, nchecks_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> by_bit_, by_check_;
};

/// Message state: one table per edge in each direction.
struct MinSumState {
    std::vector<CostTable> mu;  // bit -> check
    std::vector<CostTable> nu;  // check -> bit
};

MinSumState initial_state(const TannerGraph& g);

/// Local cost of assigning bit i the value alpha: 0 if y_i == alpha else 1.
std::vector<CostTable> local_costs(const TannerGraph& g, const std::vector<uint8_t>& y);

/// One synchronous flooding iteration: all mu from the previous nu, then
/// all nu from the new mu.  The check-node update minimizes over the
/// assignments of the other neighbors that satisfy the weighted parity
/// constraint (forward/backward sweep keyed by partial weighted sums).
void min_sum_iterate(const TannerGraph& g, MinSumState& state,
                     const std::vector<CostTable>& local);

/// Brute-force check-node update over all q^(deg-1) assignments; test oracle
/// for the sweep implementation.
CostTable check_update_bruteforce(const TannerGraph& g, const MinSumState& state, int edge);

enum class TiePolicy { Undecided, KeepReceived };

struct DecodeResult {
    /// Element index per bit; -1 where no strict minimizer exists
    /// (TiePolicy::Undecided only).
    std::vector<int> decided;
    std::vector<CostTable> global;
    int iterations;

    bool fully_decided() const {
        for (int d : decided)
            if (d < 0) return false;
        return true;
    }
};

DecodeResult decide(const TannerGraph& g, const MinSumState& state,
                    const std::vector<CostTable>& local, const std::vector<uint8_t>& y,
                    TiePolicy policy = TiePolicy::Undecided);

/// Per-iteration snapshots for trace tests and the trace output.
struct Trace {
    std::vector<MinSumState> states;         // after each iteration
    std::vector<DecodeResult> decisions;     // decision if taken after each iteration
};

DecodeResult decode(const TannerGraph& g, const std::vector<uint8_t>& y, int max_iters,
                    TiePolicy policy = TiePolicy::Undecided, Trace* trace = nullptr);

}  // namespace surfcode::ldpc

#endif
