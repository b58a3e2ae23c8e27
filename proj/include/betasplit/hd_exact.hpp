#pragma once

#include <cstdint>
#include <vector>

namespace betasplit::hd {

struct SplitKernel {
    int m = 0;
    std::vector<double> split_probs;    // q(m, i), i = 1..m-1 at index i-1
    std::vector<double> descent_probs;  // q*(m, i), i = 1..m-1 at index i-1
    double rate = 0.0;                  // h_{m-1}
};

SplitKernel build_kernel(int m);

inline constexpr int kMaxMomentOrder = 6;
inline constexpr int kMeansBudgetN = 20000;
inline constexpr int kOccupancyBudgetN = 5000;
inline constexpr int kHopPmfBudgetN = 2000;

struct TableOptions {
    // Rows n <= occupancy_nmax of the a(n, j) triangle are filled; 0 skips it.
    int occupancy_nmax = kOccupancyBudgetN;
};

/// Exact per-n values. Vectors are indexed directly by n (index 0 unused).
struct ExactTables {
    int nmax = 0;
    int kmax = 0;
    int occupancy_nmax = 0;
    std::vector<std::vector<long double>> moments_D;  // [k][n] = E[D_n^k]
    std::vector<long double> mean_L;
    std::vector<long double> mean_length;
    // Row n holds a(n, j) for j = 0..n (entries 0 unused).
    std::vector<std::vector<double>> occupancy_rows;

    long double ED(int n) const { return moments_D.at(1).at(static_cast<std::size_t>(n)); }
    long double moment(int k, int n) const {
        return moments_D.at(static_cast<std::size_t>(k)).at(static_cast<std::size_t>(n));
    }
    long double var_D(int n) const;
    double occupancy(int n, int j) const;
};

/// Builds every table up to nmax. Throws ResourceError when nmax exceeds
/// kMeansBudgetN or occupancy_nmax exceeds kOccupancyBudgetN.
ExactTables build_exact_tables(int nmax, int kmax, TableOptions options = {});

/// a(n, j) for fixed j and n = 0..nmax (entries below j are zero).
std::vector<double> occupancy_column(int j, int nmax);

/// Alternating binomial sum for E[D_n] in MPFR arithmetic.
double alt_sum_ED(int n, int digits);

/// Alternating multinomial closed form for a(n, j) in MPFR arithmetic.
double occupancy_closed_form(int n, int j, int digits);

/// E[N_n(j)] = n a(n, j)/j, indexed by j = 0..n (entries 0, 1 unused).
std::vector<double> subtree_counts(int n, const ExactTables& tables);

struct HopPmf {
    int n = 0;
    std::vector<double> probs;  // probs[k] = Pr(L_n = k)
    double mean() const;
};

HopPmf hop_pmf(int n);

/// E[exp(z D_n)] for z < 1.
double mgf_exact(int n, double z);
long double mgf_exact_ld(int n, long double z);

}  // namespace betasplit::hd
