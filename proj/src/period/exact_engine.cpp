#include "cyp/error.hpp"
#include "cyp/period/period.hpp"

#include <algorithm>
#include <unordered_map>

namespace cyp::detail {

namespace {

using State = std::array<int, 4>;

struct StateHash {
    size_t operator()(const State &e) const noexcept
    {
        uint64_t h = 0;
        for (int x : e)
            h = (h ^ static_cast<uint32_t>(x)) * 0x9E3779B97F4A7C15ULL;
        return static_cast<size_t>(h ^ (h >> 29));
    }
};

using StateMap = std::unordered_map<State, Rational, StateHash>;

State shifted(const State &e, const std::array<int, 4> &m)
{
    return {e[0] + m[0], e[1] + m[1], e[2] + m[2], e[3] + m[3]};
}

void check_box(const CTSetup &s, const State &e)
{
    for (int x : e)
        if (std::abs(x) > s.box)
            computation_error("box-overflow", "exponent state left the box |e_i| <= N*B");
}

void drop_zeros(StateMap &m)
{
    for (auto it = m.begin(); it != m.end();)
        it = it->second.is_zero() ? m.erase(it) : std::next(it);
}

} // namespace

std::vector<Rational> exact_engine(const CTSetup &s, CTStats &stats)
{
    const int N = s.order;
    int kmax = 0;
    for (auto &m : s.positive)
        kmax = std::max(kmax, m.k);
    long B = N > 0 ? s.box / N : 0;
    stats.iteration_bound = static_cast<long>(N) * (2 * B + 1) * 4;

    std::vector<StateMap> S(static_cast<size_t>(N));
    std::vector<Rational> ct(static_cast<size_t>(N));
    for (int d = 0; d < N; ++d) {
        int R = N - 1 - d;
        StateMap cur;
        if (d == 0)
            cur[State{}] = 1;
        for (auto &m : s.positive) {
            if (m.k > d)
                continue;
            for (auto &[e, v] : S[static_cast<size_t>(d - m.k)]) {
                State t = shifted(e, m.e);
                if (!feasible(s, t, R))
                    continue;
                check_box(s, t);
                cur[t] += m.c * v;
            }
        }
        drop_zeros(cur);

        // S <- R + V0 S until stable; each sweep adds the next V0 layer.
        StateMap delta = cur;
        long sweeps = 0;
        while (!delta.empty() && !s.zero.empty()) {
            if (++sweeps > stats.iteration_bound)
                computation_error("iteration-bound", "fixpoint did not stabilize within N(2B+1)4 sweeps");
            StateMap next;
            for (auto &m : s.zero)
                for (auto &[e, v] : delta) {
                    State t = shifted(e, m.e);
                    if (!feasible(s, t, R))
                        continue;
                    check_box(s, t);
                    next[t] += m.c * v;
                }
            drop_zeros(next);
            for (auto &[e, v] : next)
                cur[e] += v;
            delta = std::move(next);
        }
        drop_zeros(cur);
        stats.iterations += sweeps + 1;
        stats.states += static_cast<long>(cur.size());
        if (auto it = cur.find(State{}); it != cur.end())
            ct[static_cast<size_t>(d)] = it->second;
        S[static_cast<size_t>(d)] = std::move(cur);
        if (d >= kmax)
            S[static_cast<size_t>(d - kmax)].clear();
    }
    return ct;
}

} // namespace cyp::detail
