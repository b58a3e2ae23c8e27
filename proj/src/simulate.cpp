#include "betasplit/simulate.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <thread>

#include "betasplit/errors.hpp"
#include "betasplit/mgf_ldp.hpp"
#include "betasplit/specfun.hpp"

namespace betasplit::sim {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

Rng Rng::for_stream(std::uint64_t seed, std::uint64_t index) {
    return Rng(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL)));
}

namespace {

const std::vector<double>& prefix_table() {
    static const std::vector<double> table = [] {
        std::vector<double> h(static_cast<std::size_t>(kHarmonicSampleCutoff) + 1);
        for (std::int64_t j = 0; j <= kHarmonicSampleCutoff; ++j) h[static_cast<std::size_t>(j)] = specfun::harmonic(j);
        return h;
    }();
    return table;
}

}  // namespace

std::int64_t sample_harmonic(std::int64_t m, Rng& rng) {
    if (m < 1) throw DomainError("sample_harmonic: m must be >= 1");
    if (m == 1) return 1;
    const std::vector<double>& h = prefix_table();
    const double hm = (m <= kHarmonicSampleCutoff) ? h[static_cast<std::size_t>(m)] : specfun::harmonic(m);
    const double target = rng.uniform() * hm;
    if (target <= h.back()) {
        const std::int64_t top = std::min(m, kHarmonicSampleCutoff);
        const auto it = std::lower_bound(h.begin() + 1, h.begin() + top + 1, target);
        return std::min<std::int64_t>(it - h.begin(), m);
    }
    // h_j ~ log j + gamma, so j ~ exp(target - gamma); then correct locally.
    const double euler = static_cast<double>(specfun::kEulerGamma);
    std::int64_t j = static_cast<std::int64_t>(std::exp(target - euler));
    j = std::clamp<std::int64_t>(j, kHarmonicSampleCutoff, m);
    while (j > 1 && specfun::harmonic(j - 1) >= target) --j;
    while (j < m && specfun::harmonic(j) < target) ++j;
    return j;
}

std::int64_t sample_split(std::int64_t m, Rng& rng) {
    if (m < 2) throw DomainError("sample_split: m must be >= 2");
    const bool heads = rng.coin();
    const std::int64_t j = sample_harmonic(m - 1, rng);
    return heads ? j : m - j;
}

ChainSample simulate_chain(std::int64_t n, Rng& rng) {
    if (n < 1) throw DomainError("simulate_chain: n must be >= 1");
    ChainSample s;
    std::int64_t x = n;
    s.visited.push_back(x);
    while (x > 1) {
        s.d += rng.exponential(specfun::harmonic(x - 1));
        x -= sample_harmonic(x - 1, rng);
        ++s.l;
        s.visited.push_back(x);
    }
    return s;
}

TreeSample simulate_tree(std::int64_t n, Rng& rng) {
    if (n < 2) throw DomainError("simulate_tree: n must be >= 2");
    if (n > kTreeBudgetN) throw ResourceError("simulate_tree: n exceeds budget");
    TreeSample s;
    struct Clade {
        std::int64_t size;
        double birth;
    };
    std::vector<Clade> work;
    work.push_back({n, 0.0});
    while (!work.empty()) {
        const Clade c = work.back();
        work.pop_back();
        if (c.size == 1) {
            s.leaf_height_sum += c.birth;
            continue;
        }
        const double life = rng.exponential(specfun::harmonic(c.size - 1));
        s.length += life;
        const std::int64_t i = sample_split(c.size, rng);
        work.push_back({i, c.birth + life});
        work.push_back({c.size - i, c.birth + life});
    }
    return s;
}

double clade_fraction(std::int64_t n, double t, Rng& rng) {
    if (n < 1) throw DomainError("clade_fraction: n must be >= 1");
    if (t < 0.0) throw DomainError("clade_fraction: t must be >= 0");
    std::int64_t k = n;
    double time = 0.0;
    while (k > 1) {
        time += rng.exponential(specfun::harmonic(k - 1));
        if (time > t) break;
        k -= sample_harmonic(k - 1, rng);
    }
    return static_cast<double>(k) / static_cast<double>(n);
}

std::string mode_name(Mode m) {
    switch (m) {
        case Mode::chain: return "chain";
        case Mode::tree: return "tree";
        case Mode::clade_fraction: return "clade_fraction";
    }
    return "";
}

Mode parse_mode(const std::string& name) {
    if (name == "chain") return Mode::chain;
    if (name == "tree") return Mode::tree;
    if (name == "clade_fraction") return Mode::clade_fraction;
    throw UsageError("unknown mode '" + name + "' (expected chain, tree, clade_fraction)");
}

int default_threads() {
    if (const char* env = std::getenv("BETASPLIT_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

namespace {

constexpr int kVisitMax = 6;
constexpr std::array<double, 3> kPaintboxExponents = {1.0, 1.5, 2.0};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

struct Partial {
    std::int64_t count = 0;
    double mean = 0.0, m2 = 0.0;
    double min = 0.0, max = 0.0;
    std::map<std::string, double> sums;
    std::vector<double> samples;

    void add(double v) {
        if (count == 0) min = max = v;
        min = std::min(min, v);
        max = std::max(max, v);
        ++count;
        const double delta = v - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (v - mean);
    }

    void merge(const Partial& o) {
        if (o.count == 0) return;
        if (count == 0) {
            *this = o;
            return;
        }
        const double na = static_cast<double>(count), nb = static_cast<double>(o.count);
        const double delta = o.mean - mean;
        const double n = na + nb;
        mean += delta * nb / n;
        m2 += o.m2 + delta * delta * na * nb / n;
        min = std::min(min, o.min);
        max = std::max(max, o.max);
        count += o.count;
        for (const auto& [k, v] : o.sums) sums[k] += v;
        samples.insert(samples.end(), o.samples.begin(), o.samples.end());
    }
};

Partial run_stream(const SimConfig& c, std::int64_t count, std::uint64_t index) {
    Rng rng = Rng::for_stream(c.seed, index);
    Partial p;
    const mgf::CltParams clt = mgf::clt_params();
    const double logn = std::log(static_cast<double>(c.n));
    const double scale = std::sqrt(clt.sigma2 * logn);
    for (std::int64_t r = 0; r < count; ++r) {
        double v = 0.0;
        switch (c.mode) {
            case Mode::chain: {
                const ChainSample s = simulate_chain(c.n, rng);
                v = s.d;
                p.sums["L"] += static_cast<double>(s.l);
                if (c.n > 1) {
                    const double zs = (s.d - clt.mu * logn) / scale;
                    p.sums["z1"] += zs;
                    p.sums["z2"] += zs * zs;
                    p.sums["z3"] += zs * zs * zs;
                }
                for (double x : c.x_grid) {
                    if (s.d > x * logn) p.sums["tail_x=" + fmt(x)] += 1.0;
                }
                for (std::int64_t state : s.visited) {
                    if (state >= 2 && state <= kVisitMax && state <= c.n) p.sums["visit_" + std::to_string(state)] += 1.0;
                }
                break;
            }
            case Mode::tree: {
                const TreeSample s = simulate_tree(c.n, rng);
                v = s.length;
                const double lh = s.leaf_height_sum / static_cast<double>(c.n);
                p.sums["lh"] += lh;
                p.sums["lh2"] += lh * lh;
                break;
            }
            case Mode::clade_fraction: {
                v = clade_fraction(c.n, c.t, rng);
                for (double s : kPaintboxExponents) {
                    const double w = std::pow(v, s);
                    p.sums["m" + fmt(s)] += w;
                    p.sums["m" + fmt(s) + "_sq"] += w * w;
                }
                break;
            }
        }
        p.add(v);
        if (c.keep_samples) p.samples.push_back(v);
    }
    return p;
}

}  // namespace

SummaryStats run(const SimConfig& c) {
    if (c.samples < 1) throw DomainError("run: samples must be >= 1");
    if (c.streams < 1) throw DomainError("run: streams must be >= 1");
    if (c.n < 1) throw DomainError("run: n must be >= 1");
    if (c.mode == Mode::tree && c.n < 2) throw DomainError("run: tree mode needs n >= 2");
    if (c.mode == Mode::tree && c.n > kTreeBudgetN) throw ResourceError("run: n exceeds the tree budget");

    const int streams = c.streams;
    std::vector<Partial> partials(static_cast<std::size_t>(streams));
    const std::int64_t base = c.samples / streams, extra = c.samples % streams;
    const int threads = std::max(1, std::min(c.threads > 0 ? c.threads : default_threads(), streams));

    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(streams));
    auto worker = [&]() {
        for (int i = next++; i < streams; i = next++) {
            try {
                const std::int64_t count = base + (i < extra ? 1 : 0);
                partials[static_cast<std::size_t>(i)] = run_stream(c, count, static_cast<std::uint64_t>(i));
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    Partial total;
    for (const Partial& p : partials) total.merge(p);

    SummaryStats out;
    out.count = total.count;
    out.mean = total.mean;
    out.variance = total.count > 1 ? total.m2 / static_cast<double>(total.count - 1) : 0.0;
    out.std_error = std::sqrt(out.variance / static_cast<double>(total.count));
    out.min = total.min;
    out.max = total.max;
    out.samples = std::move(total.samples);
    const double N = static_cast<double>(total.count);
    auto avg = [&](const std::string& key) {
        const auto it = total.sums.find(key);
        return it == total.sums.end() ? 0.0 : it->second / N;
    };
    switch (c.mode) {
        case Mode::chain: {
            out.extra["mean_L"] = avg("L");
            if (c.n > 1) {
                const double m1 = avg("z1"), m2 = avg("z2"), m3 = avg("z3");
                out.extra["std_mean"] = m1;
                out.extra["std_var"] = m2 - m1 * m1;
                out.extra["std_third_central"] = m3 - 3.0 * m1 * m2 + 2.0 * m1 * m1 * m1;
            }
            for (double x : c.x_grid) out.extra["tail_x=" + fmt(x)] = avg("tail_x=" + fmt(x));
            for (int j = 2; j <= kVisitMax && j <= c.n; ++j) out.extra["visit_" + std::to_string(j)] = avg("visit_" + std::to_string(j));
            break;
        }
        case Mode::tree: {
            const double m = avg("lh");
            out.extra["leaf_height_mean"] = m;
            out.extra["leaf_height_var"] = N > 1 ? (avg("lh2") - m * m) * N / (N - 1) : 0.0;
            break;
        }
        case Mode::clade_fraction: {
            for (double s : kPaintboxExponents) {
                const double m = avg("m" + fmt(s));
                out.extra["moment_s=" + fmt(s)] = m;
                out.extra["moment_s=" + fmt(s) + "_stderr"] = N > 1 ? std::sqrt(std::max(0.0, avg("m" + fmt(s) + "_sq") - m * m) / (N - 1)) : 0.0;
            }
            break;
        }
    }
    return out;
}

}  // namespace betasplit::sim
