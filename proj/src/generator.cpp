#include "netalign/generator.hpp"

#include <algorithm>
#include <string>

namespace netalign {

DelayNetwork generate_network(const GenParams& params) {
    if (params.relays < 0) throw std::invalid_argument("relay count must be non-negative");
    if (params.edges < 3) throw std::invalid_argument("at least three edges are required");
    if (params.min_delay < 1 || params.max_delay < params.min_delay)
        throw std::invalid_argument("delay range must satisfy 1 <= min <= max");
    if (params.retries < 0) throw std::invalid_argument("retry budget must be non-negative");

    std::vector<std::string> names;
    for (int i = 1; i <= 3; ++i) names.push_back("s" + std::to_string(i));
    for (int r = 1; r <= params.relays; ++r) names.push_back("r" + std::to_string(r));
    for (int j = 1; j <= 3; ++j) names.push_back("t" + std::to_string(j));
    const int count = static_cast<int>(names.size());
    const int first_dest = count - 3;

    std::vector<std::pair<int, int>> candidates;
    for (int a = 0; a < first_dest; ++a)
        for (int b = std::max(a + 1, 3); b < count; ++b) candidates.emplace_back(a, b);
    if (static_cast<std::size_t>(params.edges) > candidates.size())
        throw std::invalid_argument(std::to_string(params.edges) + " edges exceed the " +
                                    std::to_string(candidates.size()) + " available node pairs");

    const std::array<std::string, 3> sources{"s1", "s2", "s3"};
    const std::array<std::string, 3> destinations{"t1", "t2", "t3"};
    Rng rng(params.seed);
    std::uniform_int_distribution<int> delay(params.min_delay, params.max_delay);

    for (int attempt = 0; attempt <= params.retries; ++attempt) {
        auto pool = candidates;
        std::shuffle(pool.begin(), pool.end(), rng);
        pool.resize(static_cast<std::size_t>(params.edges));
        std::sort(pool.begin(), pool.end());

        std::vector<EdgeSpec> specs;
        for (auto [a, b] : pool)
            specs.push_back({"e" + std::to_string(specs.size() + 1), names[static_cast<std::size_t>(a)],
                             names[static_cast<std::size_t>(b)], delay(rng)});
        DelayNetwork net(names, specs, sources, destinations);
        try {
            if (validate(net).full()) return net;
        } catch (const InvalidNetwork&) {
            // some S_i cannot reach T_i
        }
    }
    throw Error("no network with all nine source-destination pairs connected after " +
                std::to_string(params.retries + 1) + " attempts");
}

}  // namespace netalign
