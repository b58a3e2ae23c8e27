#include "betasplit/hd_exact.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/multiprecision/mpfr.hpp>

#include "betasplit/errors.hpp"
#include "betasplit/specfun.hpp"

namespace betasplit::hd {

using specfun::harmonic;
using specfun::harmonic_ld;
using boost::multiprecision::mpfr_float;

SplitKernel build_kernel(int m) {
    if (m < 2) throw DomainError("build_kernel: m must be >= 2");
    SplitKernel k;
    k.m = m;
    k.rate = harmonic(m - 1);
    k.split_probs.resize(static_cast<std::size_t>(m - 1));
    k.descent_probs.resize(static_cast<std::size_t>(m - 1));
    const double scale = static_cast<double>(m) / (2.0 * k.rate);
    for (int i = 1; i < m; ++i) {
        k.split_probs[static_cast<std::size_t>(i - 1)] = scale / (static_cast<double>(i) * static_cast<double>(m - i));
        k.descent_probs[static_cast<std::size_t>(i - 1)] = 1.0 / (k.rate * static_cast<double>(m - i));
    }
    // Mirror so q(m, i) = q(m, m - i) holds bit for bit.
    for (int i = 1; 2 * i < m; ++i) {
        k.split_probs[static_cast<std::size_t>(m - i - 1)] = k.split_probs[static_cast<std::size_t>(i - 1)];
    }
    return k;
}

long double ExactTables::var_D(int n) const {
    const long double m1 = ED(n);
    return moment(2, n) - m1 * m1;
}

double ExactTables::occupancy(int n, int j) const {
    if (n > occupancy_nmax) throw ResourceError("occupancy: row " + std::to_string(n) + " not tabulated");
    if (j < 1 || j > n) throw DomainError("occupancy: need 1 <= j <= n");
    return occupancy_rows[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)];
}

namespace {

// sum_{i=1}^{n-1} e[i] / (n - i)
long double descent_sum(const std::vector<long double>& e, const std::vector<long double>& inv, int n) {
    long double acc = 0.0L;
    for (int i = 1; i < n; ++i) acc += e[static_cast<std::size_t>(i)] * inv[static_cast<std::size_t>(n - i)];
    return acc;
}

std::vector<long double> reciprocals(int nmax) {
    std::vector<long double> inv(static_cast<std::size_t>(nmax) + 1, 0.0L);
    for (int t = 1; t <= nmax; ++t) inv[static_cast<std::size_t>(t)] = 1.0L / t;
    return inv;
}

}  // namespace

std::vector<double> occupancy_column(int j, int nmax) {
    if (j < 1) throw DomainError("occupancy_column: j must be >= 1");
    std::vector<double> col(static_cast<std::size_t>(std::max(nmax, 0)) + 1, 0.0);
    if (j > nmax) return col;
    // rinv[t] = 1/(nmax - t), so sum_i a(i)/(n - i) is a forward dot product
    // over a contiguous window of rinv.
    std::vector<double> rinv(static_cast<std::size_t>(nmax) + 1, 0.0);
    for (int t = 0; t < nmax; ++t) rinv[static_cast<std::size_t>(t)] = 1.0 / static_cast<double>(nmax - t);
    col[static_cast<std::size_t>(j)] = 1.0;
    const double* a = col.data();
    for (int n = j + 1; n <= nmax; ++n) {
        const double* r = rinv.data() + (nmax - n);
        double acc = 0.0;
#pragma omp simd reduction(+ : acc)
        for (int i = j; i < n; ++i) acc += a[i] * r[i];
        col[static_cast<std::size_t>(n)] = acc / harmonic(n - 1);
    }
    return col;
}

ExactTables build_exact_tables(int nmax, int kmax, TableOptions options) {
    if (nmax < 1) throw DomainError("build_exact_tables: nmax must be >= 1");
    if (kmax < 1 || kmax > kMaxMomentOrder) throw DomainError("build_exact_tables: kmax must be in 1..6");
    if (nmax > kMeansBudgetN) {
        throw ResourceError("build_exact_tables: nmax " + std::to_string(nmax) + " exceeds budget " +
                            std::to_string(kMeansBudgetN));
    }
    const int occ = std::min(options.occupancy_nmax, nmax);
    if (occ > kOccupancyBudgetN) throw ResourceError("build_exact_tables: occupancy triangle exceeds budget");

    ExactTables t;
    t.nmax = nmax;
    t.kmax = kmax;
    t.occupancy_nmax = std::max(occ, 0);
    const std::size_t len = static_cast<std::size_t>(nmax) + 1;
    t.moments_D.assign(static_cast<std::size_t>(kmax) + 1, std::vector<long double>(len, 0.0L));
    std::fill(t.moments_D[0].begin(), t.moments_D[0].end(), 1.0L);
    t.mean_L.assign(len, 0.0L);
    t.mean_length.assign(len, 0.0L);

    const std::vector<long double> inv = reciprocals(nmax);
    std::vector<long double> fact(static_cast<std::size_t>(kmax) + 1, 1.0L);
    for (int k = 1; k <= kmax; ++k) fact[static_cast<std::size_t>(k)] = fact[static_cast<std::size_t>(k - 1)] * k;
    auto binom = [&fact](int k, int j) { return fact[static_cast<std::size_t>(k)] / (fact[static_cast<std::size_t>(j)] * fact[static_cast<std::size_t>(k - j)]); };

    std::vector<long double> S(static_cast<std::size_t>(kmax) + 1);
    for (int n = 2; n <= nmax; ++n) {
        const long double h = harmonic_ld(n - 1);
        S[0] = 1.0L;
        for (int k = 1; k <= kmax; ++k) S[static_cast<std::size_t>(k)] = descent_sum(t.moments_D[static_cast<std::size_t>(k)], inv, n) / h;
        for (int k = 1; k <= kmax; ++k) {
            long double v = 0.0L;
            long double hp = 1.0L;  // h^j
            for (int j = 0; j <= k; ++j) {
                v += binom(k, j) * fact[static_cast<std::size_t>(j)] / hp * S[static_cast<std::size_t>(k - j)];
                hp *= h;
            }
            t.moments_D[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)] = v;
        }
        t.mean_L[static_cast<std::size_t>(n)] = 1.0L + descent_sum(t.mean_L, inv, n) / h;
        // q(n, i) = n/(2h) (1/i + 1/(n-i))/n; by symmetry the two halves of
        // sum_i q(n,i)(L_i + L_{n-i}) coincide.
        long double acc = 0.0L;
        for (int i = 1; i < n; ++i) {
            acc += t.mean_length[static_cast<std::size_t>(i)] * (inv[static_cast<std::size_t>(i)] + inv[static_cast<std::size_t>(n - i)]);
        }
        t.mean_length[static_cast<std::size_t>(n)] = 1.0L / h + acc / h;
    }

    if (t.occupancy_nmax >= 1) {
        t.occupancy_rows.resize(static_cast<std::size_t>(t.occupancy_nmax) + 1);
        for (int n = 1; n <= t.occupancy_nmax; ++n) t.occupancy_rows[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(n) + 1, 0.0);
        for (int j = 1; j <= t.occupancy_nmax; ++j) {
            const std::vector<double> col = occupancy_column(j, t.occupancy_nmax);
            for (int n = j; n <= t.occupancy_nmax; ++n) t.occupancy_rows[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)] = col[static_cast<std::size_t>(n)];
        }
    }
    return t;
}

namespace {

unsigned working_digits(int n, int digits) {
    if (n > 200) throw PrecisionError("alternating sums are only supported for n <= 200");
    if (digits < 30) throw PrecisionError("alternating sums need at least 30 digits");
    return static_cast<unsigned>(digits + n / 3 + 10);
}

}  // namespace

double alt_sum_ED(int n, int digits) {
    if (n < 2) throw DomainError("alt_sum_ED: n must be >= 2");
    const unsigned prec = working_digits(n, digits);
    mpfr_float::default_precision(prec);
    mpfr_float h = 0, binom = 1, sum = 0;
    for (int j = 1; j <= n - 1; ++j) {
        h += mpfr_float(1) / j;
        binom = binom * (n - j) / j;  // C(n-1, j)
        if (j % 2 == 1) sum += binom / h;
        else sum -= binom / h;
    }
    return sum.convert_to<double>();
}

double occupancy_closed_form(int n, int j, int digits) {
    if (j < 2 || j > n) throw DomainError("occupancy_closed_form: need 2 <= j <= n");
    const unsigned prec = working_digits(n, digits);
    mpfr_float::default_precision(prec);
    std::vector<mpfr_float> h(static_cast<std::size_t>(n) + 1);
    h[0] = 0;
    for (int i = 1; i <= n; ++i) h[static_cast<std::size_t>(i)] = h[static_cast<std::size_t>(i - 1)] + mpfr_float(1) / i;
    // multinomial(n-1; j-1, k, n-j-k) = C(n-1, j-1) C(n-j, k)
    mpfr_float lead = 1;
    for (int i = 1; i <= j - 1; ++i) lead = lead * (n - i) / i;
    mpfr_float c = 1, sum = 0;
    for (int k = 0; k <= n - j; ++k) {
        if (k > 0) c = c * (n - j - k + 1) / k;
        const mpfr_float term = c / h[static_cast<std::size_t>(j + k - 1)];
        if (k % 2 == 0) sum += term;
        else sum -= term;
    }
    sum *= lead * h[static_cast<std::size_t>(j - 1)];
    return sum.convert_to<double>();
}

std::vector<double> subtree_counts(int n, const ExactTables& tables) {
    if (n < 1 || n > tables.occupancy_nmax) throw DomainError("subtree_counts: n outside the occupancy table");
    std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
    for (int j = 2; j <= n; ++j) out[static_cast<std::size_t>(j)] = n * tables.occupancy(n, j) / j;
    return out;
}

double HopPmf::mean() const {
    long double m = 0.0L;
    for (std::size_t k = 0; k < probs.size(); ++k) m += static_cast<long double>(k) * probs[k];
    return static_cast<double>(m);
}

HopPmf hop_pmf(int n) {
    if (n < 1) throw DomainError("hop_pmf: n must be >= 1");
    if (n > kHopPmfBudgetN) throw ResourceError("hop_pmf: n exceeds budget " + std::to_string(kHopPmfBudgetN));
    // pmf[m][k] = Pr(L_m = k); supports are trimmed once the tail underflows.
    std::vector<std::vector<double>> pmf(static_cast<std::size_t>(n) + 1);
    pmf[1] = {1.0};
    std::vector<double> acc;
    for (int m = 2; m <= n; ++m) {
        std::size_t width = 0;
        for (int i = 1; i < m; ++i) width = std::max(width, pmf[static_cast<std::size_t>(i)].size());
        acc.assign(width + 1, 0.0);
        const double h = harmonic(m - 1);
        for (int i = 1; i < m; ++i) {
            const double w = 1.0 / (h * static_cast<double>(m - i));
            const std::vector<double>& p = pmf[static_cast<std::size_t>(i)];
            for (std::size_t k = 0; k < p.size(); ++k) acc[k + 1] += w * p[k];
        }
        while (acc.size() > 1 && acc.back() == 0.0) acc.pop_back();
        pmf[static_cast<std::size_t>(m)] = acc;
    }
    HopPmf out;
    out.n = n;
    out.probs = pmf[static_cast<std::size_t>(n)];
    return out;
}

long double mgf_exact_ld(int n, long double z) {
    if (!(z < 1.0L)) throw DomainError("mgf_exact: the MGF of D_n diverges for z >= 1");
    if (n < 1) throw DomainError("mgf_exact: n must be >= 1");
    if (n > kMeansBudgetN) throw ResourceError("mgf_exact: n exceeds budget");
    const std::vector<long double> inv = reciprocals(n);
    std::vector<long double> phi(static_cast<std::size_t>(n) + 1, 0.0L);
    phi[1] = 1.0L;
    for (int m = 2; m <= n; ++m) {
        const long double h = harmonic_ld(m - 1);
        phi[static_cast<std::size_t>(m)] = descent_sum(phi, inv, m) / (h - z);
    }
    return phi[static_cast<std::size_t>(n)];
}

double mgf_exact(int n, double z) { return static_cast<double>(mgf_exact_ld(n, z)); }

}  // namespace betasplit::hd
