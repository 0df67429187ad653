#include "surfcode/ldpc.hpp"

#include <stdexcept>

namespace surfcode::ldpc {

TannerGraph::TannerGraph(const gf::Field& f, int nbits, int nchecks)
    : f_(&f), nbits_(nbits), nchecks_(nchecks), by_bit_(nbits), by_check_(nchecks) {}

void TannerGraph::add_edge(int bit, int check, uint8_t weight) {
    if (!weight) throw std::invalid_argument("ldpc: zero edge weight");
    for (int e : by_bit_[bit])
        if (edges_[e].check == check) throw std::invalid_argument("ldpc: duplicate edge");
    by_bit_[bit].push_back(static_cast<int>(edges_.size()));
    by_check_[check].push_back(static_cast<int>(edges_.size()));
    edges_.push_back(Edge{bit, check, weight});
}

TannerGraph TannerGraph::from_matrix(const linalg::Matrix& h) {
    TannerGraph g(h.field(), h.cols(), h.rows());
    for (int j = 0; j < h.rows(); ++j)
        for (int i = 0; i < h.cols(); ++i)
            if (h(j, i)) g.add_edge(i, j, h(j, i));
    return g;
}

MinSumState initial_state(const TannerGraph& g) {
    MinSumState s;
    s.mu.assign(g.nedges(), CostTable(g.field().size(), 0));
    s.nu.assign(g.nedges(), CostTable(g.field().size(), 0));
    return s;
}

std::vector<CostTable> local_costs(const TannerGraph& g, const std::vector<uint8_t>& y) {
    if (static_cast<int>(y.size()) != g.nbits())
        throw std::invalid_argument("ldpc: received word length mismatch");
    const int q = g.field().size();
    std::vector<CostTable> local(g.nbits(), CostTable(q, 1));
    for (int i = 0; i < g.nbits(); ++i) local[i][y[i]] = 0;
    return local;
}

namespace {

// min-plus convolution over the additive group of F_q.
CostTable conv(const gf::Field& f, const CostTable& a, const CostTable& b) {
    const int q = f.size();
    CostTable r(q, kInfCost);
    for (int s1 = 0; s1 < q; ++s1) {
        if (a[s1] >= kInfCost) continue;
        for (int s2 = 0; s2 < q; ++s2) {
            const int s = f.add(static_cast<uint8_t>(s1), static_cast<uint8_t>(s2));
            const Cost c = cost_add(a[s1], b[s2]);
            if (c < r[s]) r[s] = c;
        }
    }
    return r;
}

// Table of  s -> min cost of assigning this bit a value alpha with
// weight*alpha == s.
CostTable weighted(const gf::Field& f, const CostTable& mu, uint8_t w) {
    const int q = f.size();
    CostTable r(q, kInfCost);
    for (int alpha = 0; alpha < q; ++alpha) r[f.mul(w, static_cast<uint8_t>(alpha))] = mu[alpha];
    return r;
}

CostTable delta_zero(int q) {
    CostTable r(q, kInfCost);
    r[0] = 0;
    return r;
}

}  // namespace

void min_sum_iterate(const TannerGraph& g, MinSumState& state,
                     const std::vector<CostTable>& local) {
    const gf::Field& f = g.field();
    const int q = f.size();

    // Data -> relation messages from the previous relation -> data ones.
    std::vector<CostTable> mu(g.nedges());
    for (int i = 0; i < g.nbits(); ++i) {
        for (int e : g.bit_edges(i)) {
            CostTable t = local[i];
            for (int e2 : g.bit_edges(i)) {
                if (e2 == e) continue;
                for (int a = 0; a < q; ++a) t[a] = cost_add(t[a], state.nu[e2][a]);
            }
            mu[e] = std::move(t);
        }
    }
    state.mu = std::move(mu);

    // Relation -> data messages via prefix/suffix min-plus sweeps over the
    // weighted partial sums of each check's neighbors.
    for (int j = 0; j < g.nchecks(); ++j) {
        const auto& es = g.check_edges(j);
        const int r = static_cast<int>(es.size());
        std::vector<CostTable> pre(r + 1), suf(r + 1);
        pre[0] = delta_zero(q);
        for (int t = 0; t < r; ++t)
            pre[t + 1] = conv(f, pre[t], weighted(f, state.mu[es[t]], g.edges()[es[t]].weight));
        suf[r] = delta_zero(q);
        for (int t = r - 1; t >= 0; --t)
            suf[t] = conv(f, suf[t + 1], weighted(f, state.mu[es[t]], g.edges()[es[t]].weight));
        for (int t = 0; t < r; ++t) {
            const CostTable others = conv(f, pre[t], suf[t + 1]);
            const uint8_t w = g.edges()[es[t]].weight;
            CostTable nu(q);
            for (int alpha = 0; alpha < q; ++alpha) {
                const uint8_t need = f.neg(f.mul(w, static_cast<uint8_t>(alpha)));
                nu[alpha] = others[need];
            }
            state.nu[es[t]] = std::move(nu);
        }
    }
}

CostTable check_update_bruteforce(const TannerGraph& g, const MinSumState& state, int edge) {
    const gf::Field& f = g.field();
    const int q = f.size();
    const auto& e = g.edges()[edge];
    std::vector<int> others;
    for (int e2 : g.check_edges(e.check))
        if (e2 != edge) others.push_back(e2);
    CostTable nu(q, kInfCost);
    const size_t r = others.size();
    std::vector<uint8_t> assign(r, 0);
    while (true) {
        uint8_t sum = 0;
        Cost c = 0;
        for (size_t t = 0; t < r; ++t) {
            const auto& oe = g.edges()[others[t]];
            sum = f.add(sum, f.mul(oe.weight, assign[t]));
            c = cost_add(c, state.mu[others[t]][assign[t]]);
        }
        for (int alpha = 0; alpha < q; ++alpha) {
            if (f.add(f.mul(e.weight, static_cast<uint8_t>(alpha)), sum) == 0)
                if (c < nu[alpha]) nu[alpha] = c;
        }
        size_t pos = 0;
        while (pos < r && assign[pos] == q - 1) assign[pos++] = 0;
        if (pos == r) break;
        ++assign[pos];
    }
    return nu;
}

DecodeResult decide(const TannerGraph& g, const MinSumState& state,
                    const std::vector<CostTable>& local, const std::vector<uint8_t>& y,
                    TiePolicy policy) {
    const int q = g.field().size();
    DecodeResult res;
    res.iterations = 0;
    res.global.resize(g.nbits());
    res.decided.resize(g.nbits());
    for (int i = 0; i < g.nbits(); ++i) {
        CostTable glob = local[i];
        for (int e : g.bit_edges(i))
            for (int a = 0; a < q; ++a) glob[a] = cost_add(glob[a], state.nu[e][a]);
        int best = 0;
        bool unique = true;
        for (int a = 1; a < q; ++a) {
            if (glob[a] < glob[best]) {
                best = a;
                unique = true;
            } else if (glob[a] == glob[best]) {
                unique = false;
            }
        }
        res.global[i] = std::move(glob);
        if (unique)
            res.decided[i] = best;
        else
            res.decided[i] = policy == TiePolicy::KeepReceived ? y[i] : -1;
    }
    return res;
}

DecodeResult decode(const TannerGraph& g, const std::vector<uint8_t>& y, int max_iters,
                    TiePolicy policy, Trace* trace) {
    if (max_iters < 1) throw std::invalid_argument("ldpc: need at least one iteration");
    const std::vector<CostTable> local = local_costs(g, y);
    MinSumState state = initial_state(g);
    for (int it = 0; it < max_iters; ++it) {
        min_sum_iterate(g, state, local);
        if (trace) {
            trace->states.push_back(state);
            trace->decisions.push_back(decide(g, state, local, y, policy));
        }
    }
    DecodeResult res = decide(g, state, local, y, policy);
    res.iterations = max_iters;
    return res;
}

}  // namespace surfcode::ldpc
