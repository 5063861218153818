#include "ssqec/noise.hpp"

#include <algorithm>

namespace ssqec {

namespace {

void check_rate(double r, const char* name) {
    if (!(r >= 0.0 && r <= 1.0))
        throw std::invalid_argument(std::string("[noise] rate out of range: ") + name);
}

// Walker geometry on the 2D torus. Path p < L is the x-direction loop along
// row j = p (edges (0, k, j), k ascending); path p >= L is the y-direction
// loop along column i = p - L (edges (1, i, k)). A walker that has crossed
// edges 0..next-1 is an open string from lattice vertex start to vertex end.
std::size_t t2_edge(std::size_t L, std::uint32_t path, std::uint32_t k) {
    if (path < L) return (std::size_t(path) * L + k) * 2;      // (0, k, j=path)
    return (std::size_t(k) * L + (path - L)) * 2 + 1;          // (1, i=path-L, k)
}

std::pair<std::size_t, std::size_t> t2_endpoints(std::size_t L, const WalkerPos& w) {
    std::size_t tip = w.next_edge % L;
    if (w.path < L) {
        std::size_t j = w.path;
        return {j * L + 0, j * L + tip};
    }
    std::size_t i = w.path - L;
    return {0 * L + i, tip * L + i};
}

} // namespace

void validate_spec(const NoiseModelSpec& spec, const StabilizerCode& code) {
    check_rate(spec.lambda, "lambda");
    check_rate(spec.eta, "eta");
    check_rate(spec.q_fault, "q_fault");
    check_rate(spec.per_use, "per_use");
    check_rate(spec.rho_spawn, "rho_spawn");
    if (spec.kind == NoiseKind::markov_walker && code.family != CodeFamily::toric2d)
        throw std::invalid_argument("[noise] walker adversary requires the 2D torus family");
}

std::size_t walker_path_count(const NoiseModelSpec& spec, const StabilizerCode& code) {
    std::size_t L = code.size_param;
    return spec.paths == PathFamily::rows ? L : 2 * L;
}

PauliOp sample_data_noise(const NoiseModelSpec& spec, const StabilizerCode& code,
                          AdversaryState& state, const CounterRng& rng, std::uint64_t trial,
                          std::uint32_t round) {
    validate_spec(spec, code);
    const std::size_t n = code.n;
    PauliOp out = PauliOp::identity(n);

    switch (spec.kind) {
        case NoiseKind::iid_local: {
            for (std::size_t q = 0; q < n; ++q) {
                if (rng.bernoulli(spec.lambda, trial, round, std::uint32_t(2 + q)))
                    out.x.set(q, true);
                if (spec.depolarize &&
                    rng.bernoulli(spec.lambda, trial, round, std::uint32_t(2 + n + q)))
                    out.z.set(q, true);
            }
            return out;
        }
        case NoiseKind::fabrication: {
            if (!state.faulty_ready) {
                CounterRng fab(rng.seed(), noise_stream_fabrication);
                state.faulty = BitVec(n);
                for (std::size_t q = 0; q < n; ++q)
                    if (fab.bernoulli(spec.q_fault, trial, 0, std::uint32_t(q)))
                        state.faulty.set(q, true);
                state.faulty_ready = true;
            }
            state.faulty.for_each_set([&](std::size_t q) {
                if (rng.bernoulli(spec.per_use, trial, round, std::uint32_t(2 + q)))
                    out.x.set(q, true);
            });
            return out;
        }
        case NoiseKind::markov_walker: {
            const std::size_t L = code.size_param;
            if (rng.bernoulli(spec.rho_spawn, trial, round, 0)) {
                std::size_t npaths = walker_path_count(spec, code);
                auto pid = std::uint32_t(rng.bounded(npaths, trial, round, 1));
                bool occupied = std::any_of(state.walkers.begin(), state.walkers.end(),
                                            [&](const WalkerPos& w) { return w.path == pid; });
                if (!occupied) state.walkers.push_back({pid, 0});
            }
            for (auto& w : state.walkers) {
                out.x.flip(t2_edge(L, w.path, w.next_edge));
                ++w.next_edge;
            }
            std::erase_if(state.walkers, [&](const WalkerPos& w) { return w.next_edge >= L; });
            return out;
        }
    }
    throw std::invalid_argument("[noise] unknown noise kind");
}

BitVec sample_measurement_flips(const NoiseModelSpec& spec, const StabilizerCode& code,
                                const AdversaryState& state, const CounterRng& rng,
                                std::uint64_t trial, std::uint32_t round) {
    validate_spec(spec, code);
    const std::size_t nc = code.n_checks();
    BitVec y(nc);

    if (spec.kind == NoiseKind::markov_walker) {
        const std::size_t L = code.size_param;
        for (const auto& w : state.walkers) {
            if (w.next_edge % L == 0) continue; // closed or empty string: nothing to hide
            auto [a, b] = t2_endpoints(L, w);
            y.flip(a);
            y.flip(b);
        }
        return y;
    }

    const std::size_t base = 2 + 2 * code.n;
    for (std::size_t c = 0; c < nc; ++c)
        if (rng.bernoulli(spec.eta, trial, round, std::uint32_t(base + c))) y.set(c, true);
    return y;
}

} // namespace ssqec
