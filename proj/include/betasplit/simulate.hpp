#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace betasplit::sim {

/// Stream generator. Every substream is a std::mt19937_64 seeded with
/// splitmix64 applied to (seed, stream index).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    static Rng for_stream(std::uint64_t seed, std::uint64_t index);

    std::uint64_t next() { return engine_(); }
    /// Uniform on (0, 1] with 53-bit resolution.
    double uniform() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }
    double exponential(double rate) { return -std::log(uniform()) / rate; }
    bool coin() { return (engine_() >> 63) != 0; }

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

inline constexpr std::int64_t kHarmonicSampleCutoff = 100000;
inline constexpr std::int64_t kTreeBudgetN = 100000000;

/// J in {1..m} with Pr(J = j) = (1/j)/h_m.
std::int64_t sample_harmonic(std::int64_t m, Rng& rng);
/// i ~ q(m, .).
std::int64_t sample_split(std::int64_t m, Rng& rng);

struct ChainSample {
    double d = 0.0;
    std::int64_t l = 0;
    std::vector<std::int64_t> visited;  // in visiting order, starting with n
};

ChainSample simulate_chain(std::int64_t n, Rng& rng);

struct TreeSample {
    double length = 0.0;
    double leaf_height_sum = 0.0;
};

TreeSample simulate_tree(std::int64_t n, Rng& rng);

/// Size of the clade of leaf 1 at time t, divided by n.
double clade_fraction(std::int64_t n, double t, Rng& rng);

enum class Mode { chain, tree, clade_fraction };

std::string mode_name(Mode m);
Mode parse_mode(const std::string& name);

struct SimConfig {
    std::int64_t n = 1000;
    std::int64_t samples = 1000;
    std::uint64_t seed = 1;
    Mode mode = Mode::chain;
    double t = 1.0;
    int streams = 8;
    std::vector<double> x_grid;  // tail thresholds x for Pr(D_n > x log n)
    int threads = 0;             // 0: default_threads()
    bool keep_samples = false;
};

struct SummaryStats {
    std::int64_t count = 0;
    double mean = 0.0;
    double variance = 0.0;
    double std_error = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::map<std::string, double> extra;
    std::vector<double> samples;  // only with keep_samples
};

/// Thread count from BETASPLIT_THREADS, else hardware concurrency.
int default_threads();

SummaryStats run(const SimConfig& config);

}  // namespace betasplit::sim
